//! Generators on ℓ²(ℤ²) (coordinates (i, j)) and ℓ²(ℤ) (coordinate p).

use num_complex::Complex64;

use crate::qparam::QParam;
use crate::shiftop::{AffineForm, AffineMap, CoeffExpr, FnFactor, QuadForm, ShiftOperator};

pub(crate) fn form(d: usize, pairs: &[(usize, i64)], offset: i64) -> AffineForm {
    let mut f = AffineForm::zero(d);
    for &(k, c) in pairs {
        f.coeffs[k] += c;
    }
    f.offset = offset;
    f
}

pub(crate) fn shift(q: QParam, b: &[i64], coeff: CoeffExpr) -> ShiftOperator {
    ShiftOperator::monomial(q, AffineMap::translation(b), coeff)
}

/// `|q|^{ℓ/2}·e^{iθφ/2}` with ℓ, φ linear.
pub(crate) fn coeff(d: usize, modulus2: &[(usize, i64)], phase2: &[(usize, i64)]) -> CoeffExpr {
    CoeffExpr::one(d)
        .with_modulus(form(d, modulus2, 0))
        .with_phase(QuadForm::from_linear(form(d, phase2, 0)))
}

/// Tensor product of operators placed on consecutive coordinates.
pub fn tensor(parts: &[&ShiftOperator]) -> ShiftOperator {
    let big: usize = parts.iter().map(|p| p.dim()).sum();
    let q = *parts[0].q();
    let mut out = ShiftOperator::identity(big, q);
    let mut at = 0;
    for p in parts {
        let legs: Vec<usize> = (at..at + p.dim()).collect();
        out = out.compose(&p.embed_legs(&legs, big).unwrap()).unwrap();
        at += p.dim();
    }
    out
}

/// v e_{i,j} = e_{i−1,j}.
pub fn v(q: QParam) -> ShiftOperator {
    shift(q, &[-1, 0], CoeffExpr::one(2))
}

/// n e_{i,j} = q^i e_{i,j+1}.
pub fn n(q: QParam) -> ShiftOperator {
    shift(q, &[0, 1], coeff(2, &[(0, 2)], &[(0, 2)]))
}

/// n⁻¹ e_{i,j} = q^{−i} e_{i,j−1}.
pub fn n_inv(q: QParam) -> ShiftOperator {
    shift(q, &[0, -1], coeff(2, &[(0, -2)], &[(0, -2)]))
}

/// P e_{i,j} = ζ^{−j} e_{i,j}.
pub fn p(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, coeff(2, &[], &[(1, -4)]))
}

/// Q_L e_{i,j} = |q|^j e_{i,j}.
pub fn q_l(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, coeff(2, &[(1, 2)], &[]))
}

/// |n| e_{i,j} = |q|^i e_{i,j}.
pub fn n_modulus(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, coeff(2, &[(0, 2)], &[]))
}

/// Ph(n) e_{i,j} = Ph(q)^i e_{i,j+1}.
pub fn n_phase(q: QParam) -> ShiftOperator {
    shift(q, &[0, 1], coeff(2, &[], &[(0, 2)]))
}

/// z e_p = e_{p+1}.
pub fn z(q: QParam) -> ShiftOperator {
    shift(q, &[1], CoeffExpr::one(1))
}

/// N̂ e_p = p e_p.
pub fn n_hat(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, CoeffExpr::one(1).with_factor(FnFactor::Linear(form(1, &[(0, 1)], 0))))
}

/// P′ e_p = ζ^{−p} e_p.
pub fn p_prime(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, coeff(1, &[], &[(0, -4)]))
}

/// Ṽ e_p = ζ^{−p} e_p, the image of z in the Heisenberg pair.
pub fn v_tilde(q: QParam) -> ShiftOperator {
    p_prime(q)
}

/// W e_k⊗e_l = e_k⊗e_{l+k}.
pub fn w(q: QParam) -> ShiftOperator {
    ShiftOperator::monomial(q, AffineMap::new(2, &[1, 0, 1, 1], &[0, 0]).unwrap(), CoeffExpr::one(2))
}

/// U e_{i,j}⊗e_p = e_{i,j}⊗e_{p+j}.
pub fn u(q: QParam) -> ShiftOperator {
    ShiftOperator::monomial(
        q,
        AffineMap::new(3, &[1, 0, 0, 0, 1, 0, 0, 1, 1], &[0, 0, 0]).unwrap(),
        CoeffExpr::one(3),
    )
}

/// U_β e_{k,l}⊗e_p = ζ^{−pl} e_{k,l}⊗e_p.
pub fn u_beta(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, CoeffExpr::one(3).with_phase(QuadForm::product(3, 1, 2, -4)))
}

/// Swap of two ℓ²(ℤ²) factors.
pub fn flip(q: QParam) -> ShiftOperator {
    ShiftOperator::monomial(q, AffineMap::permutation(&[2, 3, 0, 1]), CoeffExpr::one(4))
}

pub fn scalar(q: QParam, d: usize, c: Complex64) -> ShiftOperator {
    ShiftOperator::identity(d, q).scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_and_u_actions() {
        let q = QParam::default_q();
        let e = w(q).apply_basis(&[3, 1].into()).unwrap();
        assert_eq!(e.get(&[3, 4].into()), Complex64::new(1.0, 0.0));
        let e = u(q).apply_basis(&[2, 5, -1].into()).unwrap();
        assert_eq!(e.get(&[2, 5, 4].into()), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn n_inv_inverts_n() {
        let q = QParam::default_q();
        let id = n_inv(q).compose(&n(q)).unwrap();
        for x in [[0, 0], [5, -3], [-7, 2]] {
            let e = id.apply_basis(&x.into()).unwrap();
            assert!((e.get(&x.into()) - 1.0).norm() < 1e-13);
        }
    }
}
