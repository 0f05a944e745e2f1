//! Residual measurement on probe boxes and the suite runner.

mod checks;
mod clock;
mod sweep;

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfigError, RunConfig};
use crate::constructions::Banding;
use crate::lattice::{basis_vector, LatticeIndex, StateVector, Window};
use crate::qexp::FourierTable;
use crate::qparam::QParam;
use crate::shiftop::{OpChain, ShiftError};

pub use checks::{registry, CheckSpec};
pub use sweep::{sweep, SweepCell, SweepError, SweepRow};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("probe {probe:?} leaked amplitude to {at:?} outside {window:?}")]
    OutOfWindow {
        probe: Vec<i64>,
        at: Vec<i64>,
        window: Vec<(i64, i64)>,
    },
    #[error("dimension mismatch: lhs {lhs}, rhs {rhs}, window {window}")]
    Dimension { lhs: usize, rhs: usize, window: usize },
    #[error("{0}")]
    Build(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceClass {
    Exact,
    Banded,
    Decay,
    Table,
}

/// All probe-box points when there are few, otherwise a seeded uniform sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbePolicy {
    pub max_all: u64,
    pub sample: usize,
    pub seed: u64,
}

impl ProbePolicy {
    pub fn select(&self, w: &Window) -> Vec<LatticeIndex> {
        if w.volume() <= self.max_all {
            return w.points().collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.sample)
            .map(|_| LatticeIndex::new(&w.bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect::<Vec<_>>()))
            .collect()
    }
}

/// Outcome of comparing two operator chains on probes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub probe_box: Vec<(i64, i64)>,
    pub window: Vec<(i64, i64)>,
    pub probes: usize,
    pub max_residual: f64,
}

fn max_over<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64, VerifyError> + Sync + Send) -> Result<f64, VerifyError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).try_fold(0.0_f64, |a, b| Ok(a.max(b?)))
    }
}

/// max over probes e of ‖lhs·e − rhs·e‖.
///
/// The truncation window is the probe box grown by the reach of both sides, so
/// the probe box is exactly its interior; any amplitude leaving it is a margin bug.
pub fn residual(lhs: &OpChain, rhs: &OpChain, probe_box: &Window, policy: &ProbePolicy) -> Result<Measurement, VerifyError> {
    if lhs.dim() != rhs.dim() || lhs.dim() != probe_box.dim() {
        return Err(VerifyError::Dimension {
            lhs: lhs.dim(),
            rhs: rhs.dim(),
            window: probe_box.dim(),
        });
    }
    let (a, b) = (lhs.reach(probe_box), rhs.reach(probe_box));
    let window = Window::new(
        a.bounds()
            .iter()
            .zip(b.bounds())
            .map(|(&(l1, h1), &(l2, h2))| (l1.min(l2), h1.max(h2)))
            .collect(),
    )
    .expect("union of windows");
    let probes = policy.select(probe_box);
    let leak = |x: &LatticeIndex, v: &StateVector| match v.escapes(&window) {
        Some(at) => Err(VerifyError::OutOfWindow {
            probe: x.coords().to_vec(),
            at: at.coords().to_vec(),
            window: window.bounds().to_vec(),
        }),
        None => Ok(()),
    };
    let max_residual = max_over(&probes, |x| {
        let e = basis_vector(x.clone());
        let l = lhs.apply(&e)?;
        let r = rhs.apply(&e)?;
        leak(x, &l)?;
        leak(x, &r)?;
        Ok(l.sub(&r).expect("same dimension").norm())
    })?;
    Ok(Measurement {
        probe_box: probe_box.bounds().to_vec(),
        window: window.bounds().to_vec(),
        probes: probes.len(),
        max_residual,
    })
}

/// Residual sequence over a range of l and its fitted geometric ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub ls: Vec<i64>,
    pub residuals: Vec<f64>,
    /// exp of the least-squares slope of ln residual against l; `None` when every residual is zero.
    pub ratio: Option<f64>,
    /// Points used in the fit (residuals below 1e-15 end the fit range).
    pub fitted: usize,
    pub monotonicity_violations: usize,
}

pub const DECAY_FLOOR: f64 = 1e-15;

pub fn fit_decay(ls: &[i64], residuals: &[f64]) -> DecayFit {
    let usable = residuals.iter().take_while(|&&r| r >= DECAY_FLOOR).count();
    let ratio = if usable >= 2 {
        let xs: Vec<f64> = ls[..usable].iter().map(|&l| l as f64).collect();
        let ys: Vec<f64> = residuals[..usable].iter().map(|r| r.ln()).collect();
        let n = usable as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        Some((sxy / sxx).exp())
    } else if residuals.iter().all(|&r| r == 0.0) {
        None
    } else {
        Some(0.0)
    };
    DecayFit {
        ls: ls.to_vec(),
        residuals: residuals.to_vec(),
        ratio,
        fitted: usable,
        monotonicity_violations: residuals.windows(2).filter(|w| w[1] > w[0]).count(),
    }
}

/// Residuals of `family(l)` against `target` on the probe box for each l.
pub fn decay_sequence(
    family: impl Fn(i64) -> OpChain,
    target: &OpChain,
    probe_box: &Window,
    policy: &ProbePolicy,
    l_range: std::ops::RangeInclusive<i64>,
) -> Result<DecayFit, VerifyError> {
    let ls: Vec<i64> = l_range.collect();
    let mut res = Vec::with_capacity(ls.len());
    for &l in &ls {
        res.push(residual(&family(l), target, probe_box, policy)?.max_residual);
    }
    Ok(fit_decay(&ls, &res))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartResult {
    pub label: String,
    pub class: ToleranceClass,
    pub probe_box: Vec<(i64, i64)>,
    pub window: Vec<(i64, i64)>,
    pub probes: usize,
    /// For decay parts this is |ratio/expected − 1|.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecayReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub expected_ratio: f64,
    #[serde(flatten)]
    pub fit: DecayFit,
}

impl PartResult {
    pub fn from_measurement(label: impl Into<String>, class: ToleranceClass, m: Measurement, tolerance: f64) -> Self {
        PartResult {
            label: label.into(),
            class,
            passed: m.max_residual <= tolerance,
            probe_box: m.probe_box,
            window: m.window,
            probes: m.probes,
            residual: m.max_residual,
            tolerance,
            decay: None,
        }
    }

    pub fn scalar(label: impl Into<String>, class: ToleranceClass, probes: usize, residual: f64, tolerance: f64) -> Self {
        PartResult {
            label: label.into(),
            class,
            probe_box: Vec::new(),
            window: Vec::new(),
            probes,
            residual,
            tolerance,
            passed: residual <= tolerance,
            decay: None,
        }
    }

    pub fn from_decay(label: impl Into<String>, probe_box: &Window, probes: usize, fit: DecayFit, expected: f64, band: f64) -> Self {
        let residual = match fit.ratio {
            None => 0.0,
            Some(r) => (r / expected - 1.0).abs(),
        };
        PartResult {
            label: label.into(),
            class: ToleranceClass::Decay,
            probe_box: probe_box.bounds().to_vec(),
            window: Vec::new(),
            probes,
            residual,
            tolerance: band,
            passed: residual <= band,
            decay: Some(DecayReport {
                expected_ratio: expected,
                fit,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    pub formula: String,
    pub class: ToleranceClass,
    pub probes: usize,
    /// Largest residual/tolerance ratio over the parts, reported as that part's residual.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub parts: Vec<PartResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    fn new(spec: &CheckSpec, parts: Result<Vec<PartResult>, String>, elapsed_ms: f64) -> Self {
        let mut r = CheckResult {
            id: spec.id.into(),
            name: spec.name.into(),
            formula: spec.formula.into(),
            class: spec.class,
            probes: 0,
            max_residual: 0.0,
            tolerance: 0.0,
            passed: false,
            elapsed_ms,
            parts: Vec::new(),
            error: None,
        };
        match parts {
            Err(e) => r.error = Some(e),
            Ok(parts) => {
                r.probes = parts.iter().map(|p| p.probes).sum();
                let worst = parts.iter().max_by(|a, b| severity(a).total_cmp(&severity(b)));
                if let Some(w) = worst {
                    r.max_residual = w.residual;
                    r.tolerance = w.tolerance;
                }
                r.passed = !parts.is_empty() && parts.iter().all(|p| p.passed);
                r.parts = parts;
            }
        }
        r
    }
}

fn severity(p: &PartResult) -> f64 {
    if p.residual.is_nan() {
        f64::INFINITY
    } else if p.tolerance > 0.0 {
        p.residual / p.tolerance
    } else if p.residual > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub q: QEcho,
    pub band: Option<i64>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QEcho {
    pub modulus: f64,
    pub angle: f64,
    pub angle_pi: Option<(i64, i64)>,
    pub re: f64,
    pub im: f64,
}

impl From<&QParam> for QEcho {
    fn from(q: &QParam) -> Self {
        QEcho {
            modulus: q.modulus(),
            angle: q.angle(),
            angle_pi: q.angle_pi(),
            re: q.q().re,
            im: q.q().im,
        }
    }
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// Same report with every timing field zeroed.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.total_ms = 0.0;
        for c in &mut r.checks {
            c.elapsed_ms = 0.0;
        }
        r
    }
}

/// Shared state for one suite run: the parameter and a lazily built Fourier table.
pub struct Context {
    pub config: RunConfig,
    pub q: QParam,
    banding: OnceLock<Result<Banding, String>>,
    exact_table: OnceLock<Result<Banding, String>>,
}

impl Context {
    pub fn new(config: RunConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let q = config.q()?;
        Ok(Context {
            config,
            q,
            banding: OnceLock::new(),
            exact_table: OnceLock::new(),
        })
    }

    fn build_banding(&self, eps: f64) -> Result<Banding, String> {
        let c = &self.config;
        let store = FourierTable::max_store(c.samples).min(c.m_cap);
        let table = FourierTable::new(self.q.modulus(), c.samples, store, eps, c.n_span).map_err(|e| e.to_string())?;
        let band = table
            .band_cutoff(-c.cutoff_span, c.cutoff_span, c.eps_band, c.m_cap)
            .map_err(|e| e.to_string())?;
        Ok(Banding {
            table: std::sync::Arc::new(table),
            band,
        })
    }

    /// Fourier table with the band limit M taken at ε_band.
    pub fn banding(&self) -> Result<&Banding, String> {
        self.banding
            .get_or_init(|| self.build_banding(self.config.eps_drop))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Same band limit, but entries inside the band are never thresholded.
    pub fn unthresholded(&self) -> Result<&Banding, String> {
        self.exact_table
            .get_or_init(|| self.build_banding(f64::MIN_POSITIVE))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn band(&self) -> Option<i64> {
        match self.banding.get() {
            Some(Ok(b)) => Some(b.band),
            _ => None,
        }
    }

    pub fn policy(&self, salt: &str) -> ProbePolicy {
        self.policy_with(salt, self.config.sample_probes)
    }

    pub fn policy_with(&self, salt: &str, sample: usize) -> ProbePolicy {
        // mix the check id into the seed so checks draw independent probes
        let h = salt.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        ProbePolicy {
            max_all: self.config.max_all_points,
            sample,
            seed: self.config.seed ^ h,
        }
    }

    pub fn radius(&self, spec: &CheckSpec, default: i64) -> i64 {
        let w = &self.config.windows;
        w.get(spec.id).or_else(|| w.get(spec.name)).copied().unwrap_or(default)
    }
}

pub fn find_check(name: &str) -> Option<CheckSpec> {
    registry()
        .into_iter()
        .find(|c| c.id.eq_ignore_ascii_case(name) || c.name.eq_ignore_ascii_case(name))
}

pub fn run_spec(spec: &CheckSpec, ctx: &Context) -> CheckResult {
    let t = clock::Stopwatch::start();
    let parts = (spec.run)(spec, ctx);
    CheckResult::new(spec, parts, t.elapsed_ms())
}

pub fn run_check(name: &str, ctx: &Context) -> Option<CheckResult> {
    find_check(name).map(|spec| run_spec(&spec, ctx))
}

/// Run the configured checks (all by default); results are sorted by id.
pub fn run_suite(ctx: &Context) -> Result<Report, VerifyError> {
    let t = clock::Stopwatch::start();
    let mut specs = Vec::new();
    if ctx.config.checks.is_empty() {
        specs = registry();
    } else {
        for name in &ctx.config.checks {
            specs.push(find_check(name).ok_or_else(|| VerifyError::Build(format!("unknown check {name:?}")))?);
        }
    }
    let mut checks: Vec<CheckResult> = specs.iter().map(|s| run_spec(s, ctx)).collect();
    checks.sort_by_key(|c| check_order(&c.id));
    let summary = Summary {
        total: checks.len(),
        passed: checks.iter().filter(|c| c.passed).count(),
        failed: checks.iter().filter(|c| !c.passed && c.error.is_none()).count(),
        errored: checks.iter().filter(|c| c.error.is_some()).count(),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        config: ctx.config.clone(),
        q: (&ctx.q).into(),
        band: ctx.band(),
        checks,
        summary,
        total_ms: t.elapsed_ms(),
    })
}

/// "C7" sorts before "C10".
pub fn check_order(id: &str) -> (u32, String) {
    (id.trim_start_matches('C').parse().unwrap_or(u32::MAX), id.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::generators::{v, w};
    use num_complex::Complex64;

    fn all(seed: u64) -> ProbePolicy {
        ProbePolicy {
            max_all: 2000,
            sample: 500,
            seed,
        }
    }

    #[test]
    fn identical_sides_give_zero() {
        let q = QParam::default_q();
        let m = residual(&v(q).into(), &v(q).into(), &Window::cube(2, 3), &all(1)).unwrap();
        assert_eq!(m.max_residual, 0.0);
        assert_eq!(m.probes, 49);
        assert_eq!(m.window, vec![(-4, 3), (-3, 3)]);
    }

    #[test]
    fn calibration() {
        let q = QParam::default_q();
        let scaled = v(q).scale(Complex64::new(1.0 + 1e-6, 0.0));
        let m = residual(&v(q).into(), &scaled.into(), &Window::cube(2, 3), &all(1)).unwrap();
        assert!((m.max_residual - 1e-6).abs() < 1e-15);
    }

    #[test]
    fn sampling_is_seeded() {
        let p = all(9);
        let w = Window::cube(3, 8);
        assert_eq!(p.select(&w).len(), 500);
        assert_eq!(p.select(&w), p.select(&w));
        assert_ne!(p.select(&w), all(10).select(&w));
    }

    #[test]
    fn w_pentagon_on_large_window() {
        let q = QParam::default_q();
        let at = |a, b| w(q).embed_legs(&[a, b], 3).unwrap();
        let lhs = OpChain::new(vec![at(1, 2), at(0, 1)]);
        let rhs = OpChain::new(vec![at(0, 1), at(0, 2), at(1, 2)]);
        let m = residual(&lhs, &rhs, &Window::cube(3, 8), &ProbePolicy { max_all: 2000, sample: 200, seed: 3 }).unwrap();
        assert!(m.max_residual <= 1e-14);
        assert_eq!(m.probes, 200);
    }

    #[test]
    fn decay_fit_recovers_ratio() {
        let ls: Vec<i64> = (1..=8).collect();
        let r: Vec<f64> = ls.iter().map(|&l| 3.0 * 0.25f64.powi(l as i32)).collect();
        let f = fit_decay(&ls, &r);
        assert!((f.ratio.unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(f.monotonicity_violations, 0);
        assert_eq!(fit_decay(&ls, &[0.0; 8]).ratio, None);
        let f = fit_decay(&ls, &[1e-3, 1e-6, 1e-9, 1e-12, 1e-16, 1e-17, 0.0, 0.0]);
        assert_eq!(f.fitted, 4);
        assert!((f.ratio.unwrap() - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn check_ids_sort_numerically() {
        let mut ids = vec!["C10", "C2", "C1", "C22"];
        ids.sort_by_key(|s| check_order(s));
        assert_eq!(ids, ["C1", "C2", "C10", "C22"]);
    }
}
