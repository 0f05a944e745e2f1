//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! The exported functions return JSON strings; the plain functions below
//! them carry the logic and are what the native tests exercise.

use bqe2::config::RunConfig;
use bqe2::qexp::fourier_coeffs;
use bqe2::verify::{registry, run_check, Context};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct CheckInfo {
    id: &'static str,
    name: &'static str,
    formula: &'static str,
}

#[derive(Serialize)]
struct Curve {
    label: String,
    ls: Vec<i64>,
    residuals: Vec<f64>,
    ratio: Option<f64>,
    expected: f64,
}

fn config(modulus: f64, angle_pi: &str) -> Result<RunConfig, String> {
    let cfg = RunConfig {
        q_modulus: modulus,
        q_angle_pi: angle_pi.to_string(),
        ..RunConfig::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

pub fn checks_json() -> String {
    let list: Vec<CheckInfo> = registry()
        .into_iter()
        .map(|c| CheckInfo {
            id: c.id,
            name: c.name,
            formula: c.formula,
        })
        .collect();
    serde_json::to_string(&list).expect("serializes")
}

/// F_m(|q|^n) for |m| <= m_max.
pub fn fourier_values(modulus: f64, n: i64, m_max: i64) -> Result<Vec<f64>, String> {
    if !(0.0 < modulus && modulus < 1.0) {
        return Err(format!("|q| must lie in (0, 1), got {modulus}"));
    }
    if !(0..=200).contains(&m_max) {
        return Err("m_max must be in [0, 200]".into());
    }
    let samples = ((4 * m_max + 4) as usize).next_power_of_two().max(1024);
    fourier_coeffs(n, m_max, samples, modulus)
        .map(|row| row.values)
        .map_err(|e| e.to_string())
}

pub fn check_json(name: &str, modulus: f64, angle_pi: &str, radius: Option<i64>) -> Result<String, String> {
    let mut cfg = config(modulus, angle_pi)?;
    if let Some(r) = radius {
        cfg.windows.insert(name.to_string(), r);
    }
    let ctx = Context::new(cfg).map_err(|e| e.to_string())?;
    let r = run_check(name, &ctx).ok_or_else(|| format!("unknown check {name:?}"))?;
    Ok(serde_json::to_string(&r).expect("serializes"))
}

/// Residual sequences of the contraction checks, one curve per decay part.
pub fn decay_json(modulus: f64, angle_pi: &str) -> Result<String, String> {
    let ctx = Context::new(config(modulus, angle_pi)?).map_err(|e| e.to_string())?;
    let mut curves = Vec::new();
    for id in ["C20", "C21"] {
        let r = run_check(id, &ctx).expect("registered");
        if let Some(e) = r.error {
            return Err(e);
        }
        for p in r.parts {
            if let Some(d) = p.decay {
                curves.push(Curve {
                    label: p.label,
                    ls: d.fit.ls,
                    residuals: d.fit.residuals,
                    ratio: d.fit.ratio,
                    expected: d.expected_ratio,
                });
            }
        }
    }
    Ok(serde_json::to_string(&curves).expect("serializes"))
}

#[wasm_bindgen(js_name = listChecks)]
pub fn list_checks() -> String {
    checks_json()
}

#[wasm_bindgen(js_name = fourierRow)]
pub fn fourier_row(modulus: f64, n: i32, m_max: i32) -> Result<Vec<f64>, JsValue> {
    fourier_values(modulus, n as i64, m_max as i64).map_err(|e| JsValue::from_str(&e))
}

/// `radius` below zero keeps the check's default probe box.
#[wasm_bindgen(js_name = runCheck)]
pub fn run_check_js(name: &str, modulus: f64, angle_pi: &str, radius: i32) -> Result<String, JsValue> {
    let radius = (radius >= 0).then_some(radius as i64);
    check_json(name, modulus, angle_pi, radius).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = decayCurves)]
pub fn decay_curves(modulus: f64, angle_pi: &str) -> Result<String, JsValue> {
    decay_json(modulus, angle_pi).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_row_is_unit_norm() {
        let v = fourier_values(0.5, 0, 40).unwrap();
        assert_eq!(v.len(), 81);
        let s: f64 = v.iter().map(|x| x * x).sum();
        assert!((s - 1.0).abs() < 1e-8);
        assert!(fourier_values(1.2, 0, 10).is_err());
    }

    #[test]
    fn check_round_trips_as_json() {
        let s = check_json("C14", 0.5, "1/8", Some(3)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["passed"], true);
        assert!(check_json("nope", 0.5, "1/8", None).is_err());
        assert!(check_json("C14", 0.5, "x", None).is_err());
    }

    #[test]
    fn decay_curves_have_expected_ratios() {
        let v: serde_json::Value = serde_json::from_str(&decay_json(0.5, "1/8").unwrap()).unwrap();
        let curves = v.as_array().unwrap();
        assert!(curves.len() >= 4);
        for c in curves {
            assert_eq!(c["ls"].as_array().unwrap().len(), c["residuals"].as_array().unwrap().len());
        }
    }

    #[test]
    fn every_check_is_listed() {
        let v: serde_json::Value = serde_json::from_str(&checks_json()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 22);
    }
}
