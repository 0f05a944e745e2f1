//! The normal operators X = n⁻¹vP⊗vn and X̃, split into modulus form and phase term.

use num_complex::Complex64;
use thiserror::Error;

use crate::qparam::QParam;
use crate::shiftop::{AffineForm, AffineMap, CoeffExpr, MonomialTerm, QuadForm, ShiftOperator};

use super::generators::{form, n, n_inv, p, tensor, v};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolarError {
    #[error("operator is not a single monomial term")]
    NotMonomial,
    #[error("coefficient carries function factors")]
    HasFactors,
    #[error("modulus exponent is not integral")]
    HalfIntegerModulus,
    #[error("constant is not unimodular")]
    ConstantNotUnimodular,
}

/// Normal monomial N = |q|^{modulus(x)}·Ph(N).
#[derive(Clone, Debug)]
pub struct NormalMonomial {
    pub modulus: AffineForm,
    pub phase: MonomialTerm,
}

impl NormalMonomial {
    pub fn as_operator(&self, q: QParam) -> ShiftOperator {
        let t = MonomialTerm::new(
            self.phase.map.clone(),
            self.phase.coeff.clone().with_modulus(self.modulus.scale(2)),
        );
        ShiftOperator::from_term(q, t)
    }

    pub fn phase_operator(&self, q: QParam) -> ShiftOperator {
        ShiftOperator::from_term(q, self.phase.clone())
    }

    pub fn modulus_operator(&self, q: QParam) -> ShiftOperator {
        let d = self.modulus.dim();
        ShiftOperator::diagonal(q, CoeffExpr::one(d).with_modulus(self.modulus.scale(2)))
    }
}

/// Polar decomposition of a single-term operator with integral modulus exponent.
pub fn polar_split(op: &ShiftOperator) -> Result<NormalMonomial, PolarError> {
    let [t] = op.terms() else {
        return Err(PolarError::NotMonomial);
    };
    let c = &t.coeff;
    if !c.factors.is_empty() {
        return Err(PolarError::HasFactors);
    }
    if c.modulus.offset % 2 != 0 || c.modulus.coeffs.iter().any(|k| k % 2 != 0) {
        return Err(PolarError::HalfIntegerModulus);
    }
    if (c.constant.norm() - 1.0).abs() > 1e-14 {
        return Err(PolarError::ConstantNotUnimodular);
    }
    let modulus = AffineForm {
        coeffs: c.modulus.coeffs.iter().map(|k| k / 2).collect(),
        offset: c.modulus.offset / 2,
    };
    let mut pc = c.clone();
    pc.modulus = AffineForm::zero(c.dim());
    Ok(NormalMonomial {
        modulus,
        phase: MonomialTerm::new(t.map.clone(), pc),
    })
}

/// X from its factorisation n⁻¹vP ⊗ vn.
pub fn x_factored(q: QParam) -> ShiftOperator {
    let left = n_inv(q).compose(&v(q)).unwrap().compose(&p(q)).unwrap();
    let right = v(q).compose(&n(q)).unwrap();
    tensor(&[&left, &right])
}

/// X from its explicit polar formula: |X| = |q|^{k−i+1},
/// Ph(X) e_{i,j}⊗e_{k,l} = ζ^{−j}Ph(q)^{k−i+1} e_{i−1,j−1}⊗e_{k−1,l+1}.
pub fn x_normal() -> NormalMonomial {
    let d = 4;
    let phase = MonomialTerm::new(
        AffineMap::translation(&[-1, -1, -1, 1]),
        CoeffExpr::one(d).with_phase(QuadForm::from_linear(form(d, &[(1, -4), (2, 2), (0, -2)], 2))),
    );
    NormalMonomial {
        modulus: form(d, &[(2, 1), (0, -1)], 1),
        phase,
    }
}

/// X̃: |X̃| = |q|^{k−i+1}, Ph(X̃) ē_{i,j}⊗e_{k,l} = −Ph(q)^{k−i} ē_{i+1,j+1}⊗e_{k+1,l+1}.
pub fn x_tilde_normal() -> NormalMonomial {
    let d = 4;
    let phase = MonomialTerm::new(
        AffineMap::translation(&[1, 1, 1, 1]),
        CoeffExpr::constant(d, Complex64::new(-1.0, 0.0))
            .with_phase(QuadForm::from_linear(form(d, &[(2, 2), (0, -2)], 0))),
    );
    NormalMonomial {
        modulus: form(d, &[(2, 1), (0, -1)], 1),
        phase,
    }
}
