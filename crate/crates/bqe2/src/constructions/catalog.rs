//! Named operators with their leg signatures and documented basis actions.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lattice::LatticeIndex;
use crate::qparam::QParam;
use crate::shiftop::ShiftOperator;

use super::fops::{f_op, f_tilde, t_prime, Banding, Lambda};
use super::*;

/// Documented action on one basis vector: list of (target index, coefficient).
pub type Reference = fn(&[i64], &QParam) -> Vec<(Vec<i64>, Complex64)>;

#[derive(Clone)]
pub struct NamedOperator {
    pub name: &'static str,
    pub legs: &'static str,
    pub formula: &'static str,
    pub op: ShiftOperator,
    pub reference: Option<Reference>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub legs: &'static str,
    pub formula: &'static str,
    pub dim: usize,
    pub terms: usize,
}

impl NamedOperator {
    pub fn entry(&self) -> CatalogEntry {
        CatalogEntry {
            name: self.name,
            legs: self.legs,
            formula: self.formula,
            dim: self.op.dim(),
            terms: self.op.terms().len(),
        }
    }

    /// Largest relative deviation from the documented action over `count` random indices.
    pub fn self_test(&self, count: usize, radius: i64, seed: u64) -> Result<f64, String> {
        let Some(reference) = self.reference else {
            return Ok(0.0);
        };
        let q = *self.op.q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..count {
            let x: Vec<i64> = (0..self.op.dim()).map(|_| rng.gen_range(-radius..=radius)).collect();
            let got = self.op.apply_basis(&LatticeIndex::new(&x)).map_err(|e| e.to_string())?;
            let want = reference(&x, &q);
            let scale = want.iter().map(|(_, c)| c.norm()).fold(1.0, f64::max);
            let mut seen = 0;
            for (y, c) in &want {
                let g = got.get(&LatticeIndex::new(y));
                worst = worst.max((g - c).norm() / scale);
                if c.norm() > 0.0 {
                    seen += 1;
                }
            }
            if got.len() > seen {
                return Err(format!("{}: extra support at {x:?}", self.name));
            }
        }
        Ok(worst)
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

macro_rules! named {
    ($name:expr, $legs:expr, $formula:expr, $op:expr, $r:expr) => {
        NamedOperator {
            name: $name,
            legs: $legs,
            formula: $formula,
            op: $op,
            reference: $r,
        }
    };
}

/// Every operator with a closed basis action; banded ones are appended when `banding` is given.
pub fn catalog(q: QParam, banding: Option<&Banding>) -> Vec<NamedOperator> {
    let mut out = vec![
        named!("v", "(i,j)", "v e_{i,j} = e_{i-1,j}", generators::v(q), Some(|x, _| vec![(vec![x[0] - 1, x[1]], one())])),
        named!("n", "(i,j)", "n e_{i,j} = q^i e_{i,j+1}", generators::n(q), Some(|x, q| vec![(vec![x[0], x[1] + 1], q.q_pow(x[0]))])),
        named!("n_inv", "(i,j)", "n^{-1} e_{i,j} = q^{-i} e_{i,j-1}", generators::n_inv(q), Some(|x, q| vec![(vec![x[0], x[1] - 1], q.q_pow(-x[0]))])),
        named!("P", "(i,j)", "P e_{i,j} = zeta^{-j} e_{i,j}", generators::p(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(-x[1]))])),
        named!("Q_L", "(i,j)", "Q_L e_{i,j} = |q|^j e_{i,j}", generators::q_l(q), Some(|x, q| vec![(x.to_vec(), real(q.modulus_pow(x[1])))])),
        named!("z", "(p)", "z e_p = e_{p+1}", generators::z(q), Some(|x, _| vec![(vec![x[0] + 1], one())])),
        named!("N_hat", "(p)", "N e_p = p e_p", generators::n_hat(q), Some(|x, _| vec![(x.to_vec(), real(x[0] as f64))])),
        named!("P_prime", "(p)", "P' e_p = zeta^{-p} e_p", generators::p_prime(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(-x[0]))])),
        named!("V_tilde", "(p)", "V~ e_p = zeta^{-p} e_p", generators::v_tilde(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(-x[0]))])),
        named!("W", "(k)(l)", "W e_k (x) e_l = e_k (x) e_{l+k}", generators::w(q), Some(|x, _| vec![(vec![x[0], x[1] + x[0]], one())])),
        named!("U", "(i,j)(p)", "U e_{i,j} (x) e_p = e_{i,j} (x) e_{p+j}", generators::u(q), Some(|x, _| vec![(vec![x[0], x[1], x[2] + x[1]], one())])),
        named!("U_beta", "(k,l)(p)", "U_b e_{k,l} (x) e_p = zeta^{-pl} e_{k,l} (x) e_p", generators::u_beta(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(-x[2] * x[1]))])),
        named!("Z", "(i,j)(k,l)", "Z e_{i,j} (x) e_{k,l} = zeta^{-jl} e_{i,j} (x) e_{k,l}", braiding::z_op(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(-x[1] * x[3]))])),
        named!("Psi", "(i,j)(k,l)", "Psi e_{i,j} (x) e_{k,l} = zeta^{-jl} e_{k,l} (x) e_{i,j}", braiding::braiding(q), Some(|x, q| vec![(vec![x[2], x[3], x[0], x[1]], q.zeta_pow(-x[1] * x[3]))])),
        named!("Z_tilde", "(i,j)~(k,l)", "Z~ e~_{i,j} (x) e_{k,l} = zeta^{jl} e~_{i,j} (x) e_{k,l}", braiding::z_tilde(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(x[1] * x[3]))])),
        named!("X", "(i,j)(k,l)", "X = n^{-1}vP (x) vn: e_{i,j,k,l} -> zeta^{-j} q^{k-i+1} e_{i-1,j-1,k-1,l+1}", xops::x_factored(q), Some(|x, q| vec![(vec![x[0] - 1, x[1] - 1, x[2] - 1, x[3] + 1], q.zeta_pow(-x[1]) * q.q_pow(x[2] - x[0] + 1))])),
        named!("Ph_X_tilde", "(i,j)~(k,l)", "Ph(X~) e~_{i,j} (x) e_{k,l} = -Ph(q)^{k-i} e~_{i+1,j+1} (x) e_{k+1,l+1}", xops::x_tilde_normal().phase_operator(q), Some(|x, q| vec![(x.iter().map(|c| c + 1).collect(), -q.phase_pow(x[2] - x[0]))])),
        named!("Y", "(i,j)(k,l)", "Y = W13 W23: e_{i,j} (x) e_{k,l} -> e_{i,j} (x) e_{k+i+j,l}", fops::y(q), Some(|x, _| vec![(vec![x[0], x[1], x[2] + x[0] + x[1], x[3]], one())])),
        named!("Y_tilde", "(i,j)~(k,l)", "Y~ e~_{i,j} (x) e_{k,l} = e~_{i,j} (x) e_{k+i+j,l}", fops::y_tilde(q), Some(|x, _| vec![(vec![x[0], x[1], x[2] + x[0] + x[1], x[3]], one())])),
        named!("j2_n", "(i,j)(k,l)", "j2(n) = Psi (n (x) 1) Psi^* = P (x) n", comult::j2(&generators::n(q)), Some(|x, q| vec![(vec![x[0], x[1], x[2], x[3] + 1], q.zeta_pow(-x[1]) * q.q_pow(x[2]))])),
        named!("j2_v", "(i,j)(k,l)", "j2(v) = 1 (x) v", comult::j2(&generators::v(q)), Some(|x, _| vec![(vec![x[0], x[1], x[2] - 1, x[3]], one())])),
        named!("Delta_v", "(i,j)(k,l)", "Delta(v) = v (x) v", comult::delta_v(q), Some(|x, _| vec![(vec![x[0] - 1, x[1], x[2] - 1, x[3]], one())])),
        named!("Delta_n", "(i,j)(k,l)", "Delta(n) = n (x) v^* + vP (x) n", comult::delta_n(q), Some(|x, q| vec![
            (vec![x[0], x[1] + 1, x[2] + 1, x[3]], q.q_pow(x[0])),
            (vec![x[0] - 1, x[1], x[2], x[3] + 1], q.zeta_pow(-x[1]) * q.q_pow(x[2])),
        ])),
        named!("jC_z", "(p)(i,j)", "j_C(z) = z (x) 1", boson::jc_z(q), Some(|x, _| vec![(vec![x[0] + 1, x[1], x[2]], one())])),
        named!("jB_v", "(p)(i,j)", "j_B(v) = 1 (x) v", boson::jb_v(q), Some(|x, _| vec![(vec![x[0], x[1] - 1, x[2]], one())])),
        named!("jB_n", "(p)(i,j)", "j_B(n) = P' (x) n", boson::jb_n(q), Some(|x, q| vec![(vec![x[0], x[1], x[2] + 1], q.zeta_pow(-x[0]) * q.q_pow(x[1]))])),
        named!("V", "(i,j)(p)", "V e_{i,j} (x) e_p = zeta^{-pj} e_{i,j} (x) e_p", yd::corep_v(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(-x[2] * x[1]))])),
        named!("V_hat", "(p)(i,j)", "V^ e_p (x) e_{i,j} = zeta^{pj} e_p (x) e_{i,j}", yd::ducorep_v_hat(q), Some(|x, q| vec![(x.to_vec(), q.zeta_pow(x[0] * x[2]))])),
        named!("alpha", "(i,j)", "alpha e_{i,j} = sqrt(1-|q|^{2i}) e_{i-1,j}, i >= 0", suq2::alpha(q), Some(|x, q| {
            let c = if x[0] >= 0 { (1.0 - q.modulus_pow(2 * x[0])).sqrt() } else { 0.0 };
            vec![(vec![x[0] - 1, x[1]], real(c))]
        })),
        named!("gamma", "(i,j)", "gamma e_{i,j} = q^i e_{i,j-1}, i >= 0", suq2::gamma(q), Some(|x, q| {
            let c = if x[0] >= 0 { q.q_pow(x[0]) } else { Complex64::default() };
            vec![(vec![x[0], x[1] - 1], c)]
        })),
        named!("t", "(i,j)", "t e_{i,j} = prod_{k>=1} (1-|q|^{2k+2i}) e_{i,j}, i >= 0", suq2::t_pow(q, None, 2), Some(|x, q| {
            let c = if x[0] >= 0 {
                (1..400).map(|k| 1.0 - q.modulus_pow(2 * k + 2 * x[0])).product()
            } else {
                0.0
            };
            vec![(x.to_vec(), real(c))]
        })),
    ];
    if let Some(b) = banding {
        if let Ok(f) = f_op(q, b) {
            out.push(named!("F", "(i,j)(k,l)", "F = F_q(X) Y", f, None));
        }
        if let Ok(f) = f_tilde(q, b) {
            out.push(named!("F_tilde", "(i,j)~(k,l)", "F~ = F_q(X~)^* Z~^2 Y~", f, None));
        }
        if let Ok(t) = t_prime(q, Lambda::q_pow(1), b) {
            out.push(named!("T_prime", "(i,j)(k,l)(s,t)", "T'(q) = F_q(q n^{-1}vP (x) P (x) vn) Y13", t, None));
        }
        if let Ok(w) = boson::boson_w(q, b) {
            out.push(named!("W_boson", "(p)(i,j)(s)(k,l)", "W14 W34 F_q(n^{-1}vP (x) P' (x) vn)_{23456} W25 W35", w, None));
        }
    }
    out
}
