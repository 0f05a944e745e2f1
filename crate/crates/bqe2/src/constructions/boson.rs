//! Bosonisation: ℓ²(ℤ)⊗ℓ²(ℤ²) with coordinates (p; i, j), and the unitary 𝒲 on two copies,
//! coordinates (p; i, j; s; k, l).

use crate::qexp::QexpError;
use crate::qparam::QParam;
use crate::shiftop::ShiftOperator;

use super::fops::{qexp_normal, Banding};
use super::generators::{n, n_inv, p, p_prime, tensor, v, w, z};
use super::xops::{polar_split, NormalMonomial};

/// j_C(z) = z⊗1.
pub fn jc_z(q: QParam) -> ShiftOperator {
    z(q).embed_legs(&[0], 3).unwrap()
}

/// j_B(v) = 1⊗v.
pub fn jb_v(q: QParam) -> ShiftOperator {
    v(q).embed_legs(&[1, 2], 3).unwrap()
}

/// j_B(n) = P′⊗n.
pub fn jb_n(q: QParam) -> ShiftOperator {
    tensor(&[&p_prime(q), &n(q)])
}

/// n⁻¹vP ⊗ P′ ⊗ vn on coordinates (i, j; s; k, l).
pub fn boson_normal(q: QParam) -> NormalMonomial {
    let left = n_inv(q).compose(&v(q)).unwrap().compose(&p(q)).unwrap();
    let right = v(q).compose(&n(q)).unwrap();
    polar_split(&tensor(&[&left, &p_prime(q), &right])).expect("monomial with integral modulus")
}

/// 𝒲 = W₁₄W₃₄·F_q(n⁻¹vP⊗P′⊗vn)₂₃₄₅₆·W₂₅W₃₅.
pub fn boson_w(q: QParam, b: &Banding) -> Result<ShiftOperator, QexpError> {
    // leg numbers refer to (p, i, j, s, k, l) = coordinates 0..6
    let wl = |from: usize, to: usize| w(q).embed_legs(&[from, to], 6).unwrap();
    let fq = qexp_normal(q, &boson_normal(q), b)?.embed_legs(&[1, 2, 3, 4, 5], 6).unwrap();
    Ok(wl(0, 3)
        .compose(&wl(2, 3))
        .unwrap()
        .compose(&fq)
        .unwrap()
        .compose(&wl(1, 4))
        .unwrap()
        .compose(&wl(2, 4))
        .unwrap())
}

/// Δ_C(j_C(z)) = j_C(z)⊗j_C(z).
pub fn delta_c_z(q: QParam) -> ShiftOperator {
    tensor(&[&jc_z(q), &jc_z(q)])
}

/// Δ_C(j_B(v)) = j_B(v)⊗j_B(v).
pub fn delta_c_v(q: QParam) -> ShiftOperator {
    tensor(&[&jb_v(q), &jb_v(q)])
}

/// Δ_C(j_B(n)) = j_B(n)⊗j_C(z)j_B(v*) ∔ j_B(v)⊗j_B(n).
pub fn delta_c_n(q: QParam) -> ShiftOperator {
    let zv = jc_z(q).compose(&jb_v(q).adjoint()).unwrap();
    tensor(&[&jb_n(q), &zv]).add(&tensor(&[&jb_v(q), &jb_n(q)])).unwrap()
}
