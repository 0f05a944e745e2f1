//! The deformation parameter q = |q|e^{iθ}.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QParamError {
    #[error("|q| must lie in (0, 1), got {0}")]
    Modulus(f64),
    #[error("angle must be finite, got {0}")]
    Angle(f64),
    #[error("angle denominator must be nonzero")]
    ZeroDenominator,
}

/// Every phase in the crate is derived from here. When the angle is a rational
/// multiple of π, phases e^{iθk/2} are reduced exactly before evaluation, so
/// θ = 0 yields exactly 1 and quarter turns yield exact ±1, ±i.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QParam {
    modulus: f64,
    angle: f64,
    angle_pi: Option<(i64, i64)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl QParam {
    pub fn new(modulus: f64, angle: f64) -> Result<Self, QParamError> {
        check_modulus(modulus)?;
        if !angle.is_finite() {
            return Err(QParamError::Angle(angle));
        }
        Ok(QParam {
            modulus,
            angle,
            angle_pi: None,
        })
    }

    /// q = modulus · e^{iπ num/den}.
    pub fn with_angle_pi(modulus: f64, num: i64, den: i64) -> Result<Self, QParamError> {
        check_modulus(modulus)?;
        if den == 0 {
            return Err(QParamError::ZeroDenominator);
        }
        let g = gcd(num, den).max(1) * den.signum();
        let (p, r) = (num / g, den / g);
        Ok(QParam {
            modulus,
            angle: PI * p as f64 / r as f64,
            angle_pi: Some((p, r)),
        })
    }

    /// The default parameter 0.5·e^{iπ/8}.
    pub fn default_q() -> Self {
        QParam::with_angle_pi(0.5, 1, 8).unwrap()
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn angle_pi(&self) -> Option<(i64, i64)> {
        self.angle_pi
    }

    pub fn is_real(&self) -> bool {
        match self.angle_pi {
            Some((p, _)) => p == 0,
            None => self.angle == 0.0,
        }
    }

    /// e^{iθk/2}.
    pub fn half_phase(&self, k: i64) -> Complex64 {
        match self.angle_pi {
            Some((p, r)) => {
                let period = 4 * r as i128;
                let t = ((p as i128 * k as i128) % period + period) % period;
                if t % r as i128 == 0 {
                    match t / r as i128 {
                        0 => Complex64::new(1.0, 0.0),
                        1 => Complex64::new(0.0, 1.0),
                        2 => Complex64::new(-1.0, 0.0),
                        _ => Complex64::new(0.0, -1.0),
                    }
                } else {
                    Complex64::cis(PI * t as f64 / (2 * r) as f64)
                }
            }
            None => Complex64::cis(self.angle * k as f64 / 2.0),
        }
    }

    /// |q|^{k/2}.
    pub fn modulus_half_pow(&self, k: i64) -> f64 {
        if k % 2 == 0 {
            self.modulus_pow(k / 2)
        } else {
            self.modulus.powf(k as f64 / 2.0)
        }
    }

    /// |q|^n.
    pub fn modulus_pow(&self, n: i64) -> f64 {
        match i32::try_from(n) {
            Ok(n) => self.modulus.powi(n),
            Err(_) => self.modulus.powf(n as f64),
        }
    }

    /// Ph(q)^k = e^{iθk}.
    pub fn phase_pow(&self, k: i64) -> Complex64 {
        self.half_phase(2 * k)
    }

    pub fn q(&self) -> Complex64 {
        self.phase_pow(1) * self.modulus
    }

    pub fn q_conj(&self) -> Complex64 {
        self.q().conj()
    }

    /// q^k with exact phase reduction.
    pub fn q_pow(&self, k: i64) -> Complex64 {
        self.phase_pow(k) * self.modulus_pow(k)
    }

    /// ζ = e^{2iθ} = q/q̄.
    pub fn zeta(&self) -> Complex64 {
        self.phase_pow(2)
    }

    pub fn zeta_pow(&self, k: i64) -> Complex64 {
        self.phase_pow(2 * k)
    }

    /// The same q with θ = 0.
    pub fn real_part_modulus(&self) -> QParam {
        QParam::with_angle_pi(self.modulus, 0, 1).unwrap()
    }
}

fn check_modulus(m: f64) -> Result<(), QParamError> {
    if m.is_finite() && m > 0.0 && m < 1.0 {
        Ok(())
    } else {
        Err(QParamError::Modulus(m))
    }
}
