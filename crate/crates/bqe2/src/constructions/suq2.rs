//! SU_q(2) generators on the half lattice i ≥ 0 and the contraction to E_q(2).

use num_complex::Complex64;

use crate::qexp::grid_exponent;
use crate::qparam::QParam;
use crate::shiftop::{CoeffExpr, FnFactor, ShiftOperator};

use super::comult::{j1, j2};
use super::generators::{coeff, form, shift, tensor, v};

/// α e_{i,j} = √(1−|q|^{2i}) e_{i−1,j} for i ≥ 0.
pub fn alpha(q: QParam) -> ShiftOperator {
    let i = form(2, &[(0, 1)], 0);
    shift(
        q,
        &[-1, 0],
        CoeffExpr::one(2)
            .with_factor(FnFactor::IndicatorGe0(i.clone()))
            .with_factor(FnFactor::Sqrt1m(i)),
    )
}

/// γ e_{i,j} = q^i e_{i,j−1} for i ≥ 0.
pub fn gamma(q: QParam) -> ShiftOperator {
    shift(
        q,
        &[0, -1],
        coeff(2, &[(0, 2)], &[(0, 2)]).with_factor(FnFactor::IndicatorGe0(form(2, &[(0, 1)], 0))),
    )
}

/// t^{power2/2}, t e_{i,j} = ∏_{k=1}^{depth} (1 − |q|^{2k+2i}) e_{i,j} on i ≥ 0.
pub fn t_pow(q: QParam, depth: Option<u32>, power2: i32) -> ShiftOperator {
    let i = form(2, &[(0, 1)], 0);
    ShiftOperator::diagonal(
        q,
        CoeffExpr::one(2)
            .with_factor(FnFactor::IndicatorGe0(i.clone()))
            .with_factor(FnFactor::QPoch { arg: i, depth, power2 }),
    )
}

/// τ^k(a) = v^k a v^{−k}.
pub fn tau(a: &ShiftOperator, k: i64) -> ShiftOperator {
    let vk = v(*a.q()).pow(k);
    vk.compose(a).unwrap().compose(&vk.adjoint()).unwrap()
}

/// (τ^l ⊠ τ^l)(a) = (v⊗v)^l a (v⊗v)^{−l}.
pub fn tau_tensor(a: &ShiftOperator, l: i64) -> ShiftOperator {
    let q = *a.q();
    let vv = tensor(&[&v(q), &v(q)]).pow(l);
    vv.compose(a).unwrap().compose(&vv.adjoint()).unwrap()
}

/// Δ_SU(α) = j₁(α)j₂(α) − q·j₁(γ)*·j₂(γ).
pub fn delta_alpha(q: QParam) -> ShiftOperator {
    let a = j1(&alpha(q)).compose(&j2(&alpha(q))).unwrap();
    let b = j1(&gamma(q)).adjoint().compose(&j2(&gamma(q))).unwrap().scale(-q.q());
    a.add(&b).unwrap()
}

/// Δ_SU(γ) = j₁(γ)j₂(α) + j₁(α)*·j₂(γ).
pub fn delta_gamma(q: QParam) -> ShiftOperator {
    let a = j1(&gamma(q)).compose(&j2(&alpha(q))).unwrap();
    let b = j1(&alpha(q)).adjoint().compose(&j2(&gamma(q))).unwrap();
    a.add(&b).unwrap()
}

/// Σ_{r=0}^{r_max} ∏_{i=1}^{r}(1−|q|^{2i})^{−1}·(−q·j₁(γ*)j₂(γ))^r·(j₁(v)j₂(v))^{−r}.
pub fn contraction_y(q: QParam, r_max: u32) -> ShiftOperator {
    let base = j1(&gamma(q).adjoint())
        .compose(&j2(&gamma(q)))
        .unwrap()
        .scale(-q.q());
    let vv_inv = j1(&v(q)).compose(&j2(&v(q))).unwrap().adjoint();
    let mut total = ShiftOperator::identity(4, q);
    let mut pow = ShiftOperator::identity(4, q);
    let mut vv_pow = ShiftOperator::identity(4, q);
    let mut c = 1.0;
    for r in 1..=r_max {
        c /= 1.0 - q.modulus_pow(2 * r as i64);
        pow = pow.compose(&base).unwrap();
        vv_pow = vv_pow.compose(&vv_inv).unwrap();
        total = total.add(&pow.compose(&vv_pow).unwrap().scale(Complex64::new(c, 0.0))).unwrap();
    }
    total
}

/// g_θ(λ) = λ·e^{−iθm} for |λ| = |q|^m, g_θ(0) = 0.
pub fn g_theta(lambda: Complex64, q: &QParam, tol: f64) -> Option<Complex64> {
    if lambda == Complex64::default() {
        return Some(lambda);
    }
    let m = grid_exponent(q.modulus(), lambda.norm(), tol)?;
    Some(lambda * q.phase_pow(-m))
}

/// f_α(λ) = √(1−|λ|²)·χ(|λ| ≤ 1).
pub fn f_alpha(lambda: Complex64, q: &QParam, tol: f64) -> Option<f64> {
    if lambda == Complex64::default() {
        return Some(1.0);
    }
    let m = grid_exponent(q.modulus(), lambda.norm(), tol)?;
    Some(if m >= 0 { (1.0 - q.modulus_pow(2 * m)).sqrt() } else { 0.0 })
}

/// f_γ(λ) = λ̄·χ(|λ| ≤ 1).
pub fn f_gamma(lambda: Complex64, q: &QParam, tol: f64) -> Option<Complex64> {
    if lambda == Complex64::default() {
        return Some(lambda);
    }
    let m = grid_exponent(q.modulus(), lambda.norm(), tol)?;
    Some(if m >= 0 { lambda.conj() } else { Complex64::default() })
}

/// g_θ applied to a normal monomial operator through its polar form.
pub fn g_theta_op(op: &ShiftOperator) -> ShiftOperator {
    let q = *op.q();
    let nm = super::xops::polar_split(op).expect("normal monomial");
    // g_θ(|q|^m·u) = |q|^m·u·e^{−iθm}
    let c = nm
        .phase
        .coeff
        .clone()
        .with_modulus(nm.modulus.scale(2))
        .with_phase(crate::shiftop::QuadForm::from_linear(nm.modulus.scale(-2)));
    ShiftOperator::monomial(q, nm.phase.map.clone(), c)
}
