//! Symbolic coefficients κ·(−1)^σ·|q|^{ℓ/2}·e^{iθφ/2}·∏ f_j.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use smallvec::SmallVec;
use thiserror::Error;

use super::affine::{check_legs, AffineError, AffineMap};
use crate::qexp::FourierTable;
use crate::qparam::QParam;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoeffError {
    #[error("{factor} undefined at argument {arg}")]
    Undefined { factor: &'static str, arg: i64 },
    #[error("Fourier table has no row for n = {n}")]
    TableRange { n: i64 },
}

/// Integer affine form x ↦ c·x + offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub coeffs: SmallVec<[i64; 9]>,
    pub offset: i64,
}

impl AffineForm {
    pub fn zero(dim: usize) -> Self {
        AffineForm {
            coeffs: SmallVec::from_elem(0, dim),
            offset: 0,
        }
    }

    pub fn new(coeffs: &[i64], offset: i64) -> Self {
        AffineForm {
            coeffs: SmallVec::from_slice(coeffs),
            offset,
        }
    }

    /// The form picking out coordinate `k`.
    pub fn coord(dim: usize, k: usize) -> Self {
        let mut f = AffineForm::zero(dim);
        f.coeffs[k] = 1;
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.offset == 0 && self.coeffs.iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn eval(&self, x: &[i64]) -> i64 {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.offset, |acc, (c, v)| acc + c * v)
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        assert_eq!(self.dim(), other.dim());
        AffineForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            offset: self.offset + other.offset,
        }
    }

    pub fn scale(&self, k: i64) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            offset: self.offset * k,
        }
    }

    pub fn shifted(&self, k: i64) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.clone(),
            offset: self.offset + k,
        }
    }

    /// x ↦ self(Ax + b).
    pub fn substitute(&self, m: &AffineMap) -> AffineForm {
        let d = self.dim();
        let coeffs = (0..d)
            .map(|c| (0..d).map(|r| self.coeffs[r] * m.a(r, c)).sum())
            .collect();
        let offset = self.offset + self.coeffs.iter().zip(m.b()).map(|(c, b)| c * b).sum::<i64>();
        AffineForm { coeffs, offset }
    }

    pub fn embed(&self, legs: &[usize], big: usize) -> AffineForm {
        let mut f = AffineForm::zero(big);
        for (k, &l) in legs.iter().enumerate() {
            f.coeffs[l] = self.coeffs[k];
        }
        f.offset = self.offset;
        f
    }
}

/// Quadratic form Σ q_ab x_a x_b (a ≤ b) + linear part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    /// Sparse upper-triangular entries (a, b, coefficient), a ≤ b.
    pub quad: SmallVec<[(usize, usize, i64); 4]>,
    pub linear: AffineForm,
}

impl QuadForm {
    pub fn zero(dim: usize) -> Self {
        QuadForm {
            quad: SmallVec::new(),
            linear: AffineForm::zero(dim),
        }
    }

    pub fn from_linear(linear: AffineForm) -> Self {
        QuadForm {
            quad: SmallVec::new(),
            linear,
        }
    }

    /// `c · x_a · x_b`.
    pub fn product(dim: usize, a: usize, b: usize, c: i64) -> Self {
        let mut q = QuadForm::zero(dim);
        q.quad.push((a.min(b), a.max(b), c));
        q
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    #[inline]
    pub fn eval(&self, x: &[i64]) -> i64 {
        self.quad
            .iter()
            .fold(self.linear.eval(x), |acc, &(a, b, c)| acc + c * x[a] * x[b])
    }

    fn from_dense(dim: usize, dense: &[i64], linear: AffineForm) -> Self {
        let mut quad = SmallVec::new();
        for a in 0..dim {
            for b in a..dim {
                let c = if a == b {
                    dense[a * dim + a]
                } else {
                    dense[a * dim + b] + dense[b * dim + a]
                };
                if c != 0 {
                    quad.push((a, b, c));
                }
            }
        }
        QuadForm { quad, linear }
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        let d = self.dim();
        let mut dense = vec![0i64; d * d];
        for &(a, b, c) in self.quad.iter().chain(&other.quad) {
            dense[a * d + b] += c;
        }
        QuadForm::from_dense(d, &dense, self.linear.add(&other.linear))
    }

    pub fn neg(&self) -> QuadForm {
        QuadForm {
            quad: self.quad.iter().map(|&(a, b, c)| (a, b, -c)).collect(),
            linear: self.linear.scale(-1),
        }
    }

    /// x ↦ self(Ax + b).
    pub fn substitute(&self, m: &AffineMap) -> QuadForm {
        let d = self.dim();
        let mut dense = vec![0i64; d * d];
        let mut linear = self.linear.substitute(m);
        for &(a, b, c) in &self.quad {
            // (A_a·x + b_a)(A_b·x + b_b)
            for p in 0..d {
                let ap = m.a(a, p);
                if ap == 0 {
                    continue;
                }
                for r in 0..d {
                    dense[p * d + r] += c * ap * m.a(b, r);
                }
            }
            for p in 0..d {
                linear.coeffs[p] += c * (m.b()[b] * m.a(a, p) + m.b()[a] * m.a(b, p));
            }
            linear.offset += c * m.b()[a] * m.b()[b];
        }
        QuadForm::from_dense(d, &dense, linear)
    }

    pub fn embed(&self, legs: &[usize], big: usize) -> QuadForm {
        let mut quad: SmallVec<[(usize, usize, i64); 4]> = SmallVec::new();
        for &(a, b, c) in &self.quad {
            let (la, lb) = (legs[a], legs[b]);
            quad.push((la.min(lb), la.max(lb), c));
        }
        QuadForm {
            quad,
            linear: self.linear.embed(legs, big),
        }
    }
}

/// Registered real-valued function factors. All are their own conjugates.
#[derive(Clone)]
pub enum FnFactor {
    /// √(1 − |q|^{2·arg}).
    Sqrt1m(AffineForm),
    /// (∏_{k=1}^{depth} (1 − |q|^{2k+2·arg}))^{power2/2}; `depth = None` means to convergence.
    QPoch {
        arg: AffineForm,
        depth: Option<u32>,
        power2: i32,
    },
    /// F_m(|q|^{arg}), read from a banded table.
    QexpFourier {
        arg: AffineForm,
        m: i64,
        table: Arc<FourierTable>,
    },
    /// 1 if arg ≥ 0, else 0.
    IndicatorGe0(AffineForm),
    /// The integer value of arg itself.
    Linear(AffineForm),
}

impl fmt::Debug for FnFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnFactor::QexpFourier { arg, m, .. } => {
                write!(f, "qexp_fourier[m={m}]({:?}, {})", arg.coeffs.as_slice(), arg.offset)
            }
            other => write!(f, "{}({:?}, {})", other.name(), other.arg().coeffs.as_slice(), other.arg().offset),
        }
    }
}

impl FnFactor {
    pub fn name(&self) -> &'static str {
        match self {
            FnFactor::Sqrt1m(_) => "sqrt1m",
            FnFactor::QPoch { .. } => "qpoch",
            FnFactor::QexpFourier { .. } => "qexp_fourier",
            FnFactor::IndicatorGe0(_) => "indicator_ge0",
            FnFactor::Linear(_) => "linear",
        }
    }

    pub fn arg(&self) -> &AffineForm {
        match self {
            FnFactor::Sqrt1m(a) | FnFactor::IndicatorGe0(a) | FnFactor::Linear(a) => a,
            FnFactor::QPoch { arg, .. } | FnFactor::QexpFourier { arg, .. } => arg,
        }
    }

    fn map_arg(&self, f: impl Fn(&AffineForm) -> AffineForm) -> FnFactor {
        match self {
            FnFactor::Sqrt1m(a) => FnFactor::Sqrt1m(f(a)),
            FnFactor::IndicatorGe0(a) => FnFactor::IndicatorGe0(f(a)),
            FnFactor::Linear(a) => FnFactor::Linear(f(a)),
            FnFactor::QPoch { arg, depth, power2 } => FnFactor::QPoch {
                arg: f(arg),
                depth: *depth,
                power2: *power2,
            },
            FnFactor::QexpFourier { arg, m, table } => FnFactor::QexpFourier {
                arg: f(arg),
                m: *m,
                table: table.clone(),
            },
        }
    }

    /// Registered conjugate. Every registered factor is real.
    pub fn conj(&self) -> FnFactor {
        self.clone()
    }

    fn eval_rank(&self) -> u8 {
        match self {
            FnFactor::IndicatorGe0(_) => 0,
            FnFactor::QexpFourier { .. } => 1,
            _ => 2,
        }
    }

    pub fn eval(&self, x: &[i64], q: &QParam) -> Result<f64, CoeffError> {
        let a = self.arg().eval(x);
        match self {
            FnFactor::IndicatorGe0(_) => Ok(if a >= 0 { 1.0 } else { 0.0 }),
            FnFactor::Linear(_) => Ok(a as f64),
            FnFactor::Sqrt1m(_) => {
                let v = 1.0 - q.modulus_pow(2 * a);
                if v < 0.0 {
                    Err(CoeffError::Undefined {
                        factor: "sqrt1m",
                        arg: a,
                    })
                } else {
                    Ok(v.sqrt())
                }
            }
            FnFactor::QPoch { depth, power2, .. } => {
                let p = qpoch(q.modulus(), a, *depth);
                if p == 0.0 && *power2 < 0 {
                    return Err(CoeffError::Undefined {
                        factor: "qpoch",
                        arg: a,
                    });
                }
                Ok(if *power2 % 2 == 0 {
                    p.powi(*power2 / 2)
                } else {
                    p.sqrt().powi(*power2)
                })
            }
            FnFactor::QexpFourier { m, table, .. } => {
                table.banded(a, *m).ok_or(CoeffError::TableRange { n: a })
            }
        }
    }
}

/// ∏_{k=1}^{depth} (1 − |q|^{2k+2a}); runs to relative tail < 1e−15 when `depth` is `None`.
/// A product that reaches a zero factor (a ≤ −1) is exactly 0.
pub fn qpoch(modulus: f64, a: i64, depth: Option<u32>) -> f64 {
    if a < 0 && depth.is_none_or(|k| i64::from(k) >= -a) {
        return 0.0;
    }
    let r2 = modulus * modulus;
    let mut term = r2.powf((a + 1) as f64);
    let mut p = 1.0;
    let mut k = 1u32;
    loop {
        if let Some(kmax) = depth {
            if k > kmax {
                break;
            }
        } else if term.abs() < 1e-17 {
            break;
        }
        p *= 1.0 - term;
        term *= r2;
        k += 1;
    }
    p
}

#[derive(Clone, Debug)]
pub struct CoeffExpr {
    pub constant: Complex64,
    pub sign: AffineForm,
    pub modulus: AffineForm,
    pub phase: QuadForm,
    pub factors: Vec<FnFactor>,
}

impl CoeffExpr {
    pub fn one(dim: usize) -> Self {
        CoeffExpr::constant(dim, Complex64::new(1.0, 0.0))
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        CoeffExpr {
            constant: c,
            sign: AffineForm::zero(dim),
            modulus: AffineForm::zero(dim),
            phase: QuadForm::zero(dim),
            factors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.sign.dim()
    }

    pub fn with_modulus(mut self, doubled: AffineForm) -> Self {
        self.modulus = self.modulus.add(&doubled);
        self
    }

    pub fn with_phase(mut self, doubled: QuadForm) -> Self {
        self.phase = self.phase.add(&doubled);
        self
    }

    pub fn with_sign(mut self, sign: AffineForm) -> Self {
        self.sign = self.sign.add(&sign);
        self
    }

    pub fn with_factor(mut self, f: FnFactor) -> Self {
        self.factors.push(f);
        self.factors.sort_by_key(FnFactor::eval_rank);
        self
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        self.constant *= c;
        self
    }

    pub fn is_unimodular_constant_only(&self) -> bool {
        self.factors.is_empty() && self.modulus.is_zero() && (self.constant.norm() - 1.0).abs() < 1e-14
    }

    pub fn eval(&self, x: &[i64], q: &QParam) -> Result<Complex64, CoeffError> {
        let mut real = 1.0;
        for f in &self.factors {
            let v = f.eval(x, q)?;
            if v == 0.0 {
                return Ok(Complex64::default());
            }
            real *= v;
        }
        if self.sign.eval(x) & 1 != 0 {
            real = -real;
        }
        let ell = self.modulus.eval(x);
        if ell != 0 {
            real *= q.modulus_half_pow(ell);
        }
        let phi = self.phase.eval(x);
        let c = if phi != 0 {
            self.constant * q.half_phase(phi)
        } else {
            self.constant
        };
        Ok(c * real)
    }

    pub fn mul(&self, other: &CoeffExpr) -> CoeffExpr {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        factors.sort_by_key(FnFactor::eval_rank);
        CoeffExpr {
            constant: self.constant * other.constant,
            sign: self.sign.add(&other.sign),
            modulus: self.modulus.add(&other.modulus),
            phase: self.phase.add(&other.phase),
            factors,
        }
    }

    /// x ↦ self(Ax + b).
    pub fn substitute(&self, m: &AffineMap) -> CoeffExpr {
        CoeffExpr {
            constant: self.constant,
            sign: self.sign.substitute(m),
            modulus: self.modulus.substitute(m),
            phase: self.phase.substitute(m),
            factors: self.factors.iter().map(|f| f.map_arg(|a| a.substitute(m))).collect(),
        }
    }

    pub fn conj(&self) -> CoeffExpr {
        CoeffExpr {
            constant: self.constant.conj(),
            sign: self.sign.clone(),
            modulus: self.modulus.clone(),
            phase: self.phase.neg(),
            factors: self.factors.iter().map(FnFactor::conj).collect(),
        }
    }

    pub fn embed(&self, legs: &[usize], big: usize) -> Result<CoeffExpr, AffineError> {
        check_legs(legs, self.dim(), big)?;
        Ok(CoeffExpr {
            constant: self.constant,
            sign: self.sign.embed(legs, big),
            modulus: self.modulus.embed(legs, big),
            phase: self.phase.embed(legs, big),
            factors: self.factors.iter().map(|f| f.map_arg(|a| a.embed(legs, big))).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn q_power_coefficient() {
        let q = QParam::default_q();
        // q^i: |q|^{2i/2} e^{iθ·2i/2}
        let c = CoeffExpr::one(2)
            .with_modulus(AffineForm::new(&[2, 0], 0))
            .with_phase(QuadForm::from_linear(AffineForm::new(&[2, 0], 0)));
        let v = c.eval(&[2, 0], &q).unwrap();
        assert!((v - Complex64::from_polar(0.25, PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn braiding_phase() {
        let q = QParam::default_q();
        // ζ^{-jl} = e^{iθ(-4jl)/2}
        let c = CoeffExpr::one(4).with_phase(QuadForm::product(4, 1, 3, -4));
        let v = c.eval(&[0, 1, 0, 1], &q).unwrap();
        assert!((v - Complex64::cis(-PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn signed_modulus_power() {
        let q = QParam::default_q();
        // (−|q|)^{l−b} on coordinates (l, b)
        let f = AffineForm::new(&[1, -1], 0);
        let c = CoeffExpr::one(2).with_sign(f.clone()).with_modulus(f.scale(2));
        assert_eq!(c.eval(&[3, 0], &q).unwrap(), Complex64::new(-0.125, 0.0));
        assert_eq!(c.eval(&[1, 3], &q).unwrap(), Complex64::new(4.0, 0.0));
    }

    #[test]
    fn indicator_masks_undefined_sqrt() {
        let q = QParam::default_q();
        let i = AffineForm::coord(2, 0);
        let bare = CoeffExpr::one(2).with_factor(FnFactor::Sqrt1m(i.clone()));
        assert!(bare.eval(&[-1, 0], &q).is_err());
        let guarded = bare.with_factor(FnFactor::IndicatorGe0(i));
        assert_eq!(guarded.eval(&[-1, 0], &q).unwrap(), Complex64::default());
        assert_eq!(guarded.eval(&[0, 0], &q).unwrap(), Complex64::default());
    }

    #[test]
    fn qpoch_values() {
        let p = qpoch(0.5, 0, None);
        let direct: f64 = (1..200).map(|k| 1.0 - 0.25f64.powi(k)).product();
        assert!((p - direct).abs() < 1e-15);
        assert_eq!(qpoch(0.5, -1, None), 0.0);
        assert_eq!(qpoch(0.5, -3, Some(2)), (1.0 - 16.0) * (1.0 - 4.0));
        assert!((qpoch(0.5, 2, Some(1)) - (1.0 - 0.25f64.powi(3))).abs() < 1e-16);
    }

    #[test]
    fn quadratic_substitution() {
        // φ = x0·x1 under (x0, x1) ↦ (x0 + 2, x1 + x0)
        let m = AffineMap::new(2, &[1, 0, 1, 1], &[2, 0]).unwrap();
        let f = QuadForm::product(2, 0, 1, 1);
        let g = f.substitute(&m);
        for x in -3..4 {
            for y in -3..4 {
                assert_eq!(g.eval(&[x, y]), (x + 2) * (y + x));
            }
        }
    }
}
