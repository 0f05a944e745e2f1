//! The quantum exponential F(z) = ∏_{k≥0} (1 + |q|^{2k} z̄)/(1 + |q|^{2k} z) on ℂ̄^{|q|},
//! its Fourier coefficients on the circles |z| = |q|^n, and F_q(N) for normal monomials N.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;
use thiserror::Error;

use crate::shiftop::{AffineForm, CoeffExpr, FnFactor, MonomialTerm, ShiftOperator};
use crate::qparam::QParam;

/// Imaginary parts of Fourier coefficients above this are reported as errors.
pub const IMAG_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QexpError {
    #[error("|z| = {0} is not on the |q|-grid")]
    OffGrid(f64),
    #[error("need at least 4M+4 = {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("band cutoff exceeds cap {cap} (|q| too close to 1 for this budget)")]
    CapExceeded { cap: i64 },
    #[error("n = {0} outside the table range")]
    OutOfRange(i64),
    #[error("phase term is not unimodular")]
    PhaseNotUnimodular,
    #[error("modulus form is not invariant under the phase term's index map")]
    NotNormal,
    #[error("epsilon must be positive")]
    BadEpsilon,
}

/// F(|q|^n e^{iφ}) for integer n; the singular points −|q|^{−2k} (k ≥ 0) give exactly −1.
pub fn qexp_polar(modulus: f64, n: i64, phi: f64) -> Complex64 {
    let (s, c) = phi.sin_cos();
    if n <= 0 && n % 2 == 0 && s.abs() <= 1e-15 && c < 0.0 {
        return Complex64::new(-1.0, 0.0);
    }
    let r2 = modulus * modulus;
    let mut rho = modulus.powf(n as f64);
    let mut total = 0.0;
    // each factor is conj(w)/w with w = 1 + ρe^{iφ}
    while rho >= 1e-17 {
        total -= 2.0 * (rho * s).atan2(1.0 + rho * c);
        rho *= r2;
    }
    Complex64::cis(total)
}

/// Grid exponent n with |z| = |q|^n, if |z| lies on the grid within relative `tol`.
pub fn grid_exponent(modulus: f64, abs_z: f64, tol: f64) -> Option<i64> {
    if !(abs_z > 0.0) || !abs_z.is_finite() {
        return None;
    }
    let n = (abs_z.ln() / modulus.ln()).round();
    let back = modulus.powf(n);
    ((abs_z / back - 1.0).abs() <= tol).then_some(n as i64)
}

/// F(z). `tol` is the relative tolerance for grid membership of |z|.
pub fn qexp_value(z: Complex64, q: &QParam, tol: f64) -> Result<Complex64, QexpError> {
    if z == Complex64::default() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = grid_exponent(q.modulus(), z.norm(), tol).ok_or(QexpError::OffGrid(z.norm()))?;
    Ok(qexp_polar(q.modulus(), n, z.arg()))
}

/// Coefficients F_m(|q|^n) for |m| ≤ m_max on one circle.
#[derive(Clone, Debug, Serialize)]
pub struct FourierRow {
    pub n: i64,
    pub m_max: i64,
    /// Index `m + m_max`.
    pub values: Vec<f64>,
    pub imag_residue: f64,
}

impl FourierRow {
    pub fn get(&self, m: i64) -> Option<f64> {
        (m.abs() <= self.m_max).then(|| self.values[(m + self.m_max) as usize])
    }

    /// Σ_m F_m e^{imφ}.
    pub fn reconstruct(&self, phi: f64) -> Complex64 {
        (-self.m_max..=self.m_max)
            .map(|m| Complex64::cis(m as f64 * phi) * self.values[(m + self.m_max) as usize])
            .sum()
    }

    pub fn parseval(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Offset trapezoid rule on φ_j = 2π(j + ½)/samples, evaluated with one FFT.
pub fn fourier_coeffs(n: i64, m_max: i64, samples: usize, modulus: f64) -> Result<FourierRow, QexpError> {
    let need = (4 * m_max + 4).max(0) as usize;
    if samples < need || samples == 0 {
        return Err(QexpError::TooFewSamples { need, got: samples });
    }
    let nf = samples as f64;
    let mut buf: Vec<Complex64> = (0..samples)
        .map(|j| qexp_polar(modulus, n, 2.0 * PI * (j as f64 + 0.5) / nf))
        .collect();
    FftPlanner::new().plan_fft_forward(samples).process(&mut buf);
    let mut values = Vec::with_capacity((2 * m_max + 1) as usize);
    let mut imag_residue: f64 = 0.0;
    for m in -m_max..=m_max {
        let k = m.rem_euclid(samples as i64) as usize;
        let c = buf[k] * Complex64::cis(-PI * m as f64 / nf) / nf;
        imag_residue = imag_residue.max(c.im.abs());
        values.push(c.re);
    }
    Ok(FourierRow {
        n,
        m_max,
        values,
        imag_residue,
    })
}

/// Rows F_m(|q|^n) for n in `[-n_span, n_span]`, filled on first use.
/// Banded reads drop entries below `eps_band`.
pub struct FourierTable {
    modulus: f64,
    samples: usize,
    m_store: i64,
    eps_band: f64,
    n_span: i64,
    rows: Vec<OnceLock<FourierRow>>,
}

impl std::fmt::Debug for FourierTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierTable")
            .field("modulus", &self.modulus)
            .field("samples", &self.samples)
            .field("m_store", &self.m_store)
            .field("eps_band", &self.eps_band)
            .field("n_span", &self.n_span)
            .finish()
    }
}

impl FourierTable {
    pub fn new(modulus: f64, samples: usize, m_store: i64, eps_band: f64, n_span: i64) -> Result<Self, QexpError> {
        let need = (4 * m_store + 4) as usize;
        if samples < need {
            return Err(QexpError::TooFewSamples { need, got: samples });
        }
        if !(eps_band > 0.0) {
            return Err(QexpError::BadEpsilon);
        }
        Ok(FourierTable {
            modulus,
            samples,
            m_store,
            eps_band,
            n_span,
            rows: (0..=2 * n_span).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Largest storable band for a given sample count.
    pub fn max_store(samples: usize) -> i64 {
        (samples as i64 - 4) / 4
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn eps_band(&self) -> f64 {
        self.eps_band
    }

    pub fn m_store(&self) -> i64 {
        self.m_store
    }

    pub fn n_span(&self) -> i64 {
        self.n_span
    }

    pub fn row(&self, n: i64) -> Option<&FourierRow> {
        if n.abs() > self.n_span {
            return None;
        }
        Some(self.rows[(n + self.n_span) as usize].get_or_init(|| {
            fourier_coeffs(n, self.m_store, self.samples, self.modulus).expect("sample count validated in new")
        }))
    }

    /// Fill rows `lo..=hi` (concurrently when the `parallel` feature is on).
    pub fn prefill(&self, lo: i64, hi: i64) {
        let ns: Vec<i64> = (lo.max(-self.n_span)..=hi.min(self.n_span)).collect();
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            ns.par_iter().for_each(|&n| {
                self.row(n);
            });
        }
        #[cfg(not(feature = "parallel"))]
        for n in ns {
            self.row(n);
        }
    }

    pub fn value(&self, n: i64, m: i64) -> Option<f64> {
        self.row(n).map(|r| r.get(m).unwrap_or(0.0))
    }

    /// F_m(|q|^n) with entries below ε_band dropped.
    pub fn banded(&self, n: i64, m: i64) -> Option<f64> {
        self.value(n, m).map(|v| if v.abs() < self.eps_band { 0.0 } else { v })
    }

    /// Smallest M with |F_m(|q|^n)| < ε for every M ≤ |m| ≤ m_store and n in the range.
    pub fn band_cutoff(&self, n_lo: i64, n_hi: i64, eps: f64, cap: i64) -> Result<i64, QexpError> {
        if !(eps > 0.0) {
            return Err(QexpError::BadEpsilon);
        }
        self.prefill(n_lo, n_hi);
        let mut needed = 0i64;
        for n in n_lo..=n_hi {
            let row = self.row(n).ok_or(QexpError::OutOfRange(n))?;
            if let Some(m) = (-row.m_max..=row.m_max).filter(|&m| row.get(m).unwrap().abs() >= eps).map(i64::abs).max() {
                needed = needed.max(m + 1);
            }
        }
        if needed > cap {
            return Err(QexpError::CapExceeded { cap });
        }
        Ok(needed)
    }
}

/// F_q(N) for the normal monomial N = |q|^{modulus_form}·phase_term, as Σ_{|m|≤M} Ph(N)^m F_m(|N|).
pub fn qexp_of_normal(
    q: QParam,
    modulus_form: &AffineForm,
    phase_term: &MonomialTerm,
    band: i64,
    table: &Arc<FourierTable>,
) -> Result<ShiftOperator, QexpError> {
    let c = &phase_term.coeff;
    if !c.factors.is_empty() || !c.modulus.is_zero() || (c.constant.norm() - 1.0).abs() > 1e-13 {
        return Err(QexpError::PhaseNotUnimodular);
    }
    if modulus_form.substitute(&phase_term.map) != *modulus_form {
        return Err(QexpError::NotNormal);
    }
    let d = phase_term.dim();
    let ph = ShiftOperator::from_term(q, phase_term.clone());
    let mut terms = Vec::with_capacity((2 * band + 1) as usize);
    for m in -band..=band {
        let diag = MonomialTerm::new(
            crate::shiftop::AffineMap::identity(d),
            CoeffExpr::one(d).with_factor(FnFactor::QexpFourier {
                arg: modulus_form.clone(),
                m,
                table: table.clone(),
            }),
        );
        let pm = ph.pow(m);
        debug_assert_eq!(pm.terms().len(), 1);
        terms.push(pm.terms()[0].after(&diag));
    }
    Ok(ShiftOperator::from_terms(d, q, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_singular_points() {
        let q = QParam::default_q();
        assert_eq!(qexp_value(Complex64::default(), &q, 1e-9).unwrap(), Complex64::new(1.0, 0.0));
        for k in 0..4 {
            let z = Complex64::new(-q.modulus_pow(-2 * k), 0.0);
            assert_eq!(qexp_value(z, &q, 1e-9).unwrap(), Complex64::new(-1.0, 0.0));
        }
        assert!(qexp_value(Complex64::new(0.3, 0.0), &q, 1e-9).is_err());
    }

    #[test]
    fn product_matches_naive_off_the_real_axis() {
        // naive complex product as an oracle
        let r: f64 = 0.5;
        for n in -4..5 {
            for &phi in &[0.3, 1.7, -2.9] {
                let z = Complex64::from_polar(r.powi(n), phi);
                let mut p = Complex64::new(1.0, 0.0);
                for k in 0..200 {
                    let c = r.powi(2 * k);
                    p *= (Complex64::new(1.0, 0.0) + z.conj() * c) / (Complex64::new(1.0, 0.0) + z * c);
                }
                assert!((qexp_polar(r, n as i64, phi) - p).norm() < 1e-12, "n={n} phi={phi}");
            }
        }
    }

    #[test]
    fn row_is_real_and_unimodular() {
        let row = fourier_coeffs(2, 60, 4096, 0.5).unwrap();
        assert!(row.imag_residue < IMAG_TOLERANCE);
        assert!((row.parseval() - 1.0).abs() < 1e-12);
        // frozen from an independent numpy evaluation
        assert!((row.get(3).unwrap() - -0.0207177150390734).abs() < 1e-13);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(fourier_coeffs(0, 10, 40, 0.5), Err(QexpError::TooFewSamples { .. })));
    }

    #[test]
    fn band_cutoff_loose_eps() {
        let t = FourierTable::new(0.5, 4096, 200, 1e-10, 50).unwrap();
        assert!(t.band_cutoff(-6, 6, 1.0, 512).unwrap() <= 1);
        let m = t.band_cutoff(-6, 6, 1e-10, 512).unwrap();
        assert!(m <= 60, "M = {m}");
        assert!(matches!(t.band_cutoff(-6, 6, 1e-10, 5), Err(QexpError::CapExceeded { .. })));
    }
}
