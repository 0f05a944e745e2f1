//! Run configuration: a flat TOML file, every key optional.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::fops::{parse_ratio, Lambda};
use crate::qparam::{QParam, QParamError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Q(#[from] QParamError),
    #[error("invalid value for {key}: {msg}")]
    Invalid { key: &'static str, msg: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub q_modulus: f64,
    /// Angle of q as a multiple of π, `"a/b"` or a decimal.
    pub q_angle_pi: String,
    /// Angle in radians; overrides `q_angle_pi` when set.
    pub q_angle: Option<f64>,
    /// Cartesian q; overrides both angle keys and the modulus when both parts are set.
    pub q_re: Option<f64>,
    pub q_im: Option<f64>,

    pub eps_band: f64,
    /// In-band Fourier entries below this are treated as zero.
    pub eps_drop: f64,
    pub samples: usize,
    pub m_cap: i64,
    /// Band limit is the cutoff over rows n in [-cutoff_span, cutoff_span].
    pub cutoff_span: i64,
    /// Fourier rows are available for n in [-n_span, n_span].
    pub n_span: i64,
    pub fourier_m: i64,
    pub fourier_n: i64,

    pub lambdas: Vec<String>,
    pub r_max: u32,
    /// Pochhammer depth for t; 0 runs until the tail is negligible.
    pub depth: u32,
    pub l_lo: i64,
    pub l_hi: i64,
    pub t_power: i64,

    pub exact_radius: i64,
    pub banded_radius: i64,
    pub boson_radius: i64,
    pub manage_radius: i64,
    /// Per-check radius overrides, keyed by check id or name.
    pub windows: BTreeMap<String, i64>,

    pub tol_exact: f64,
    pub tol_banded: f64,
    pub tol_table: f64,
    pub decay_band: f64,

    pub max_all_points: u64,
    pub sample_probes: usize,
    pub boson_probes: usize,
    pub seed: u64,

    /// Restrict a run to these checks; empty runs everything.
    pub checks: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q_modulus: 0.5,
            q_angle_pi: "1/8".into(),
            q_angle: None,
            q_re: None,
            q_im: None,
            eps_band: 1e-10,
            eps_drop: 1e-15,
            samples: 4096,
            m_cap: 512,
            cutoff_span: 40,
            n_span: 400,
            fourier_m: 40,
            fourier_n: 6,
            lambdas: vec!["q".into(), "q^2".into(), "1,0,1/3".into()],
            r_max: 4,
            depth: 0,
            l_lo: 1,
            l_hi: 8,
            t_power: 40,
            exact_radius: 8,
            banded_radius: 6,
            boson_radius: 3,
            manage_radius: 4,
            windows: BTreeMap::new(),
            tol_exact: 1e-12,
            tol_banded: 1e-8,
            tol_table: 1e-9,
            decay_band: 0.1,
            max_all_points: 2000,
            sample_probes: 500,
            boson_probes: 100,
            seed: 20_240_917,
            checks: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn q(&self) -> Result<QParam, ConfigError> {
        if let (Some(re), Some(im)) = (self.q_re, self.q_im) {
            let z = num_complex::Complex64::new(re, im);
            return Ok(QParam::new(z.norm(), z.arg())?);
        }
        if let Some(a) = self.q_angle {
            return Ok(QParam::new(self.q_modulus, a)?);
        }
        match parse_ratio(&self.q_angle_pi) {
            Ok((a, b)) => Ok(QParam::with_angle_pi(self.q_modulus, a, b)?),
            Err(_) => {
                let x: f64 = self.q_angle_pi.trim().parse().map_err(|_| ConfigError::Invalid {
                    key: "q_angle_pi",
                    msg: format!("{:?} is neither a/b nor a number", self.q_angle_pi),
                })?;
                Ok(QParam::new(self.q_modulus, x * std::f64::consts::PI)?)
            }
        }
    }

    pub fn lambda_values(&self) -> Result<Vec<Lambda>, ConfigError> {
        self.lambdas
            .iter()
            .map(|s| s.parse().map_err(|msg| ConfigError::Invalid { key: "lambdas", msg }))
            .collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.q()?;
        self.lambda_values()?;
        let bad = |key, msg: &str| Err(ConfigError::Invalid { key, msg: msg.into() });
        if !(self.eps_band > 0.0) {
            return bad("eps_band", "must be positive");
        }
        if !(self.eps_drop > 0.0) {
            return bad("eps_drop", "must be positive");
        }
        if self.m_cap < 1 {
            return bad("m_cap", "must be at least 1");
        }
        if self.samples < 8 || !self.samples.is_multiple_of(2) {
            return bad("samples", "must be even and at least 8");
        }
        if self.cutoff_span < 0 || self.n_span < self.cutoff_span {
            return bad("n_span", "must be at least cutoff_span");
        }
        if self.l_lo < 1 || self.l_hi <= self.l_lo {
            return bad("l_lo", "need 1 <= l_lo < l_hi");
        }
        for (key, r) in [
            ("exact_radius", self.exact_radius),
            ("banded_radius", self.banded_radius),
            ("boson_radius", self.boson_radius),
            ("manage_radius", self.manage_radius),
        ] {
            if r < 0 {
                return bad(key, "must be non-negative");
            }
        }
        if self.windows.values().any(|&r| r < 0) {
            return bad("windows", "radii must be non-negative");
        }
        for (key, t) in [
            ("tol_exact", self.tol_exact),
            ("tol_banded", self.tol_banded),
            ("tol_table", self.tol_table),
            ("decay_band", self.decay_band),
        ] {
            if !(t >= 0.0) {
                return bad(key, "must be non-negative");
            }
        }
        if self.sample_probes == 0 {
            return bad("sample_probes", "must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = RunConfig::from_toml("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.q().unwrap(), QParam::default_q());
    }

    #[test]
    fn round_trip() {
        let mut c = RunConfig::default();
        c.windows.insert("C7".into(), 4);
        c.q_angle = Some(0.25);
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(RunConfig::from_toml("q_modulus = 1.5"), Err(ConfigError::Q(_))));
        assert!(RunConfig::from_toml("no_such_key = 1").is_err());
        assert!(RunConfig::from_toml("lambdas = [\"1,2\"]").is_err());
        assert!(RunConfig::from_toml("q_angle_pi = \"x\"").is_err());
    }

    #[test]
    fn angle_forms() {
        let c = RunConfig::from_toml("q_angle_pi = \"0.125\"").unwrap();
        assert!((c.q().unwrap().angle() - std::f64::consts::PI / 8.0).abs() < 1e-15);
        let c = RunConfig::from_toml("q_re = 0.0\nq_im = 0.5").unwrap();
        assert!((c.q().unwrap().angle() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
