//! The braided multiplicative unitary 𝔽 = F_q(X)·Y and its relatives.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qexp::{qexp_of_normal, FourierTable, QexpError};
use crate::qparam::QParam;
use crate::shiftop::{MonomialTerm, ShiftOperator};

use super::braiding::z_tilde;
use super::generators::{n, n_inv, p, tensor, v, w};
use super::xops::{polar_split, x_normal, x_tilde_normal, NormalMonomial};

/// Shared Fourier table plus the band limit M used for every F_q(·).
#[derive(Clone, Debug)]
pub struct Banding {
    pub table: Arc<FourierTable>,
    pub band: i64,
}

/// A point of ℂ̄^{|q|}: zero, or |q|^exponent · Ph(q)^q_phase · e^{iπ·num/den}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lambda {
    Zero,
    Grid {
        exponent: i64,
        q_phase: i64,
        angle_pi: (i64, i64),
    },
}

impl Lambda {
    /// q^k.
    pub fn q_pow(k: i64) -> Self {
        Lambda::Grid {
            exponent: k,
            q_phase: k,
            angle_pi: (0, 1),
        }
    }

    pub fn phase(&self, q: &QParam) -> Complex64 {
        match *self {
            Lambda::Zero => Complex64::default(),
            Lambda::Grid {
                q_phase,
                angle_pi: (a, b),
                ..
            } => q.phase_pow(q_phase) * Complex64::cis(PI * a as f64 / b as f64),
        }
    }

    pub fn value(&self, q: &QParam) -> Complex64 {
        match *self {
            Lambda::Zero => Complex64::default(),
            Lambda::Grid { exponent, .. } => self.phase(q) * q.modulus_pow(exponent),
        }
    }

    /// λ·N as a normal monomial, or `None` for λ = 0.
    pub fn times(&self, q: &QParam, nm: &NormalMonomial) -> Option<NormalMonomial> {
        match *self {
            Lambda::Zero => None,
            Lambda::Grid { exponent, .. } => Some(NormalMonomial {
                modulus: nm.modulus.shifted(exponent),
                phase: MonomialTerm::new(nm.phase.map.clone(), nm.phase.coeff.clone().scaled(self.phase(q))),
            }),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Zero => write!(f, "0"),
            Lambda::Grid {
                exponent,
                q_phase,
                angle_pi: (a, b),
            } => write!(f, "{exponent},{q_phase},{a}/{b}"),
        }
    }
}

impl FromStr for Lambda {
    type Err = String;

    /// `"0"`, `"q"`, `"q^k"`, or `"e,k,a/b"` for |q|^e·Ph(q)^k·e^{iπa/b}.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(Lambda::Zero);
        }
        if s == "q" {
            return Ok(Lambda::q_pow(1));
        }
        if let Some(k) = s.strip_prefix("q^") {
            return k.parse().map(Lambda::q_pow).map_err(|e| format!("bad power in {s:?}: {e}"));
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected \"e,k,a/b\", got {s:?}"));
        }
        let exponent = parts[0].parse().map_err(|e| format!("{s:?}: {e}"))?;
        let q_phase = parts[1].parse().map_err(|e| format!("{s:?}: {e}"))?;
        let angle_pi = parse_ratio(parts[2])?;
        Ok(Lambda::Grid {
            exponent,
            q_phase,
            angle_pi,
        })
    }
}

/// `"a/b"` or `"a"`.
pub fn parse_ratio(s: &str) -> Result<(i64, i64), String> {
    let s = s.trim();
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let a: i64 = a.parse().map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let b: i64 = b.parse().map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if b == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok((a, b))
}

/// F_q(N) for a normal monomial, banded.
pub fn qexp_normal(q: QParam, nm: &NormalMonomial, b: &Banding) -> Result<ShiftOperator, QexpError> {
    qexp_of_normal(q, &nm.modulus, &nm.phase, b.band, &b.table)
}

/// F_q(λN); λ = 0 gives the identity.
pub fn qexp_scaled(q: QParam, lambda: Lambda, nm: &NormalMonomial, b: &Banding) -> Result<ShiftOperator, QexpError> {
    match lambda.times(&q, nm) {
        None => Ok(ShiftOperator::identity(nm.modulus.dim(), q)),
        Some(ln) => qexp_normal(q, &ln, b),
    }
}

/// Y e_{i,j}⊗e_{k,l} = e_{i,j}⊗e_{k+i+j,l}, built as W₁₃W₂₃ on the coordinates (i, j, k).
pub fn y(q: QParam) -> ShiftOperator {
    let w13 = w(q).embed_legs(&[0, 2], 4).unwrap();
    let w23 = w(q).embed_legs(&[1, 2], 4).unwrap();
    w13.compose(&w23).unwrap()
}

/// T(λ) = F_q(λX).
pub fn t_lambda(q: QParam, lambda: Lambda, b: &Banding) -> Result<ShiftOperator, QexpError> {
    qexp_scaled(q, lambda, &x_normal(), b)
}

/// 𝔽 = F_q(X)·Y.
pub fn f_op(q: QParam, b: &Banding) -> Result<ShiftOperator, QexpError> {
    f_lambda(q, Lambda::q_pow(0), b)
}

/// 𝔽^λ = F_q(λX)·Y.
pub fn f_lambda(q: QParam, lambda: Lambda, b: &Banding) -> Result<ShiftOperator, QexpError> {
    Ok(t_lambda(q, lambda, b)?.compose(&y(q)).unwrap())
}

/// n⁻¹vP ⊗ P ⊗ vn on six coordinates.
pub fn tprime_normal(q: QParam) -> NormalMonomial {
    let left = n_inv(q).compose(&v(q)).unwrap().compose(&p(q)).unwrap();
    let right = v(q).compose(&n(q)).unwrap();
    polar_split(&tensor(&[&left, &p(q), &right])).expect("monomial with integral modulus")
}

/// T′(λ) = F_q(λ n⁻¹vP⊗P⊗vn)·Y₁₃.
pub fn t_prime(q: QParam, lambda: Lambda, b: &Banding) -> Result<ShiftOperator, QexpError> {
    let y13 = y(q).embed_legs(&[0, 1, 4, 5], 6).unwrap();
    Ok(qexp_scaled(q, lambda, &tprime_normal(q), b)?.compose(&y13).unwrap())
}

/// n⁻¹vP ⊗ v²P ⊗ vn on six coordinates.
pub fn lemma_normal(q: QParam) -> NormalMonomial {
    let left = n_inv(q).compose(&v(q)).unwrap().compose(&p(q)).unwrap();
    let mid = v(q).pow(2).compose(&p(q)).unwrap();
    let right = v(q).compose(&n(q)).unwrap();
    polar_split(&tensor(&[&left, &mid, &right])).expect("monomial with integral modulus")
}

/// Ỹ ē_{i,j}⊗e_{k,l} = ē_{i,j}⊗e_{k+i+j,l}.
pub fn y_tilde(q: QParam) -> ShiftOperator {
    y(q)
}

/// 𝔽̃ = F_q(X̃)*·Z̃²·Ỹ.
pub fn f_tilde(q: QParam, b: &Banding) -> Result<ShiftOperator, QexpError> {
    let fx = qexp_normal(q, &x_tilde_normal(), b)?.adjoint();
    Ok(fx.compose(&z_tilde(q).pow(2)).unwrap().compose(&y_tilde(q)).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_parsing() {
        assert_eq!("q".parse::<Lambda>().unwrap(), Lambda::q_pow(1));
        assert_eq!("q^2".parse::<Lambda>().unwrap(), Lambda::q_pow(2));
        assert_eq!(
            "1,0,1/3".parse::<Lambda>().unwrap(),
            Lambda::Grid {
                exponent: 1,
                q_phase: 0,
                angle_pi: (1, 3)
            }
        );
        assert!("1,0".parse::<Lambda>().is_err());
        assert!("1,0,1/0".parse::<Lambda>().is_err());
        let q = QParam::default_q();
        assert!((Lambda::q_pow(2).value(&q) - q.q() * q.q()).norm() < 1e-16);
    }

    #[test]
    fn y_action() {
        let q = QParam::default_q();
        let e = y(q).apply_basis(&[2, -1, 3, 7].into()).unwrap();
        assert_eq!(e.get(&[2, -1, 4, 7].into()), Complex64::new(1.0, 0.0));
    }
}
