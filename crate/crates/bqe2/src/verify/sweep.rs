//! The suite over a grid of q values.

use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, RunConfig};

use super::{run_suite, Context, QEcho, VerifyError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub id: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub q_modulus: f64,
    pub q_angle_pi: String,
    pub q: QEcho,
    pub band: Option<i64>,
    pub passed: usize,
    pub total: usize,
    pub cells: Vec<SweepCell>,
}

impl SweepRow {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// One suite run per (modulus, angle) pair, moduli outermost.
pub fn sweep(base: &RunConfig, moduli: &[f64], angles_pi: &[String]) -> Result<Vec<SweepRow>, SweepError> {
    let mut configs = Vec::new();
    for &m in moduli {
        for a in angles_pi {
            let mut cfg = base.clone();
            cfg.q_modulus = m;
            cfg.q_angle_pi = a.clone();
            cfg.q_angle = None;
            cfg.q_re = None;
            cfg.q_im = None;
            cfg.validate()?;
            configs.push(cfg);
        }
    }
    let mut rows = Vec::with_capacity(configs.len());
    for cfg in configs {
        let ctx = Context::new(cfg)?;
        let report = run_suite(&ctx)?;
        rows.push(SweepRow {
            q_modulus: ctx.config.q_modulus,
            q_angle_pi: ctx.config.q_angle_pi.clone(),
            q: report.q.clone(),
            band: report.band,
            passed: report.summary.passed,
            total: report.summary.total,
            cells: report
                .checks
                .iter()
                .map(|c| SweepCell {
                    id: c.id.clone(),
                    max_residual: c.max_residual,
                    tolerance: c.tolerance,
                    passed: c.passed,
                })
                .collect(),
        });
    }
    Ok(rows)
}
