//! Yetter–Drinfeld data: the corepresentation V and its dual V̂.

use crate::qparam::QParam;
use crate::shiftop::{CoeffExpr, QuadForm, ShiftOperator};

/// V e_{i,j}⊗e_p = ζ^{−pj} e_{i,j}⊗e_p, coordinates (i, j, p).
pub fn corep_v(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, CoeffExpr::one(3).with_phase(QuadForm::product(3, 1, 2, -4)))
}

/// V̂ e_p⊗e_{i,j} = ζ^{pj} e_p⊗e_{i,j}, coordinates (p, i, j).
pub fn ducorep_v_hat(q: QParam) -> ShiftOperator {
    ShiftOperator::diagonal(q, CoeffExpr::one(3).with_phase(QuadForm::product(3, 0, 2, 4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn phases() {
        let q = QParam::default_q();
        let e = corep_v(q).apply_basis(&[0, 0, 5].into()).unwrap();
        assert_eq!(e.get(&[0, 0, 5].into()), Complex64::new(1.0, 0.0));
        // ζ^{6} = e^{3iπ/2} at θ = π/8
        let e = ducorep_v_hat(q).apply_basis(&[2, 0, 3].into()).unwrap();
        assert_eq!(e.get(&[2, 0, 3].into()), Complex64::new(0.0, -1.0));
    }
}
