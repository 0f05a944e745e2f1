//! The braiding Ψ = Z∘Σ on ℓ²(ℤ²)⊗ℓ²(ℤ²), coordinates (i, j, k, l).

use crate::qparam::QParam;
use crate::shiftop::{CoeffExpr, QuadForm, ShiftOperator};

use super::generators::flip;

/// Z e_{i,j}⊗e_{k,l} = ζ^{−jl} e_{i,j}⊗e_{k,l}.
pub fn z_op(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, CoeffExpr::one(4).with_phase(QuadForm::product(4, 1, 3, -4)))
}

/// Ψ e_{i,j}⊗e_{k,l} = ζ^{−jl} e_{k,l}⊗e_{i,j}.
pub fn braiding(q: QParam) -> ShiftOperator {
    z_op(q).compose(&flip(q)).unwrap()
}

/// Z̃ ē_{i,j}⊗e_{k,l} = ζ^{jl} ē_{i,j}⊗e_{k,l}; the conjugate leg is an ordinary lattice pair.
pub fn z_tilde(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, CoeffExpr::one(4).with_phase(QuadForm::product(4, 1, 3, 4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn braiding_examples() {
        let q = QParam::default_q();
        let e = braiding(q).apply_basis(&[4, 0, 2, -3].into()).unwrap();
        assert_eq!(e.get(&[2, -3, 4, 0].into()), Complex64::new(1.0, 0.0));
        let e = braiding(q).apply_basis(&[0, 1, 0, 1].into()).unwrap();
        assert!((e.get(&[0, 1, 0, 1].into()) - q.zeta_pow(-1)).norm() < 1e-16);
        let e = z_tilde(q).apply_basis(&[0, 2, 0, 3].into()).unwrap();
        assert!((e.get(&[0, 2, 0, 3].into()) - q.zeta_pow(6)).norm() < 1e-16);
    }
}
