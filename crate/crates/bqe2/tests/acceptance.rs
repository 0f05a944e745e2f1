//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use bqe2::config::RunConfig;
use bqe2::constructions::braiding::braiding;
use bqe2::constructions::generators::flip;
use bqe2::verify::{residual, run_suite, CheckResult, Context, ProbePolicy, Report};
use bqe2::{OpChain, Window};

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(cfg: RunConfig, ids: &[&str]) -> Report {
    let cfg = RunConfig {
        checks: ids.iter().map(|s| s.to_string()).collect(),
        ..cfg
    };
    run_suite(&Context::new(cfg).expect("valid config")).expect("suite runs")
}

fn failures(checks: &[CheckResult]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| match &c.error {
            Some(e) => format!("{} error: {e}", c.id),
            None => format!("{} {:.2e} > {:.0e}", c.id, c.max_residual, c.tolerance),
        })
        .collect()
}

fn exact_identities() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig {
        exact_radius: 8,
        tol_exact: 1e-12,
        ..RunConfig::default()
    };
    let r = suite(cfg, &["C1", "C2", "C3", "C15", "C16", "C19", "C22"]);
    let secs = start.elapsed().as_secs_f64();
    let mut bad = failures(&r.checks);
    bad.extend(r.checks.iter().filter(|c| c.probes < 200).map(|c| format!("{} has {} probes", c.id, c.probes)));
    if secs > 30.0 {
        bad.push(format!("took {secs:.1} s"));
    }
    let worst = r.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    Outcome {
        passed: bad.is_empty(),
        detail: format!("7 checks, worst {worst:.2e}, {secs:.1} s {}", bad.join("; ")),
    }
}

fn fourier_layer() -> Outcome {
    let mut bad = Vec::new();
    let mut worst = Vec::new();
    for m in [0.3, 0.5, 0.7] {
        let cfg = RunConfig {
            q_modulus: m,
            fourier_m: 40,
            fourier_n: 6,
            samples: 4096,
            tol_table: 1e-9,
            tol_banded: 1e-8,
            ..RunConfig::default()
        };
        let r = suite(cfg, &["C5"]);
        let c = &r.checks[0];
        for label in ["symmetry", "row Parseval", "reconstruction at 32 angles", "F(-|q|^{-2k}) = -1, k = 0..3"] {
            if !c.parts.iter().any(|p| p.label == label) {
                bad.push(format!("|q| = {m}: missing part {label}"));
            }
        }
        bad.extend(failures(&r.checks).into_iter().map(|f| format!("|q| = {m}: {f}")));
        worst.push(format!("{m}: {:.1e}", c.max_residual));
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("C5 at |q| {} {}", worst.join(", "), bad.join("; ")),
    }
}

fn banded_identities() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig {
        eps_band: 1e-10,
        samples: 4096,
        banded_radius: 6,
        boson_radius: 3,
        boson_probes: 100,
        tol_banded: 1e-8,
        ..RunConfig::default()
    };
    let ids = ["C4", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14", "C17", "C18"];
    let r = suite(cfg, &ids);
    let secs = start.elapsed().as_secs_f64();
    let mut bad = failures(&r.checks);
    for c in &r.checks {
        if c.elapsed_ms > 120_000.0 {
            bad.push(format!("{} took {:.0} s", c.id, c.elapsed_ms / 1000.0));
        }
    }
    let c17 = r.checks.iter().find(|c| c.id == "C17").expect("C17 ran");
    if c17.probes < 100 || c17.parts.iter().any(|p| p.probe_box.iter().any(|&b| b != (-3, 3)) || p.probe_box.len() != 9) {
        bad.push("C17 not on [-3,3]^9 with 100 probes".into());
    }
    for c in r.checks.iter().filter(|c| c.id != "C17" && c.id != "C11") {
        for p in &c.parts {
            if p.probe_box.iter().any(|&b| b != (-6, 6)) {
                bad.push(format!("{} part {:?} not on [-6,6]^d", c.id, p.label));
            }
        }
    }
    if secs > 900.0 {
        bad.push(format!("suite took {secs:.0} s"));
    }
    let worst = r.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{} checks, worst {worst:.2e}, {secs:.1} s {}", ids.len(), bad.join("; ")),
    }
}

fn manageability() -> Outcome {
    let cfg = RunConfig {
        manage_radius: 4,
        tol_banded: 1e-8,
        ..RunConfig::default()
    };
    let r = suite(cfg, &["C11"]);
    let c = &r.checks[0];
    let mut bad = failures(&r.checks);
    if c.parts.len() != 3 {
        bad.push(format!("expected three pairwise comparisons, got {}", c.parts.len()));
    }
    let parts: Vec<String> = c.parts.iter().map(|p| format!("{} {:.1e}", p.label, p.residual)).collect();
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{} tuples; {} {}", c.parts.first().map_or(0, |p| p.probes), parts.join(", "), bad.join("; ")),
    }
}

fn contraction_decay() -> Outcome {
    let cfg = RunConfig {
        l_lo: 1,
        l_hi: 8,
        t_power: 40,
        decay_band: 0.1,
        ..RunConfig::default()
    };
    let r = suite(cfg, &["C20", "C21"]);
    let mut bad = failures(&r.checks);
    let mut ratios = Vec::new();
    for c in &r.checks {
        for p in &c.parts {
            match &p.decay {
                Some(d) => ratios.push(format!("{:.3}/{:.3}", d.fit.ratio.unwrap_or(f64::NAN), d.expected_ratio)),
                None => ratios.push(format!("k=40 {:.1e}", p.residual)),
            }
        }
    }
    if !r.checks.iter().flat_map(|c| &c.parts).any(|p| p.decay.is_none() && p.tolerance == 1e-10) {
        bad.push("no k = 40 comparison at 1e-10".into());
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{} {}", ratios.join(", "), bad.join("; ")),
    }
}

fn real_q() -> Outcome {
    let cfg = RunConfig {
        q_angle_pi: "0".into(),
        ..RunConfig::default()
    };
    let ctx = Context::new(cfg.clone()).unwrap();
    let all = ProbePolicy {
        max_all: u64::MAX,
        sample: 0,
        seed: 0,
    };
    let flip_res = residual(
        &OpChain::single(braiding(ctx.q)),
        &OpChain::single(flip(ctx.q)),
        &Window::cube(4, 4),
        &all,
    )
    .unwrap()
    .max_residual;
    let r = run_suite(&ctx).unwrap();
    let mut bad = failures(&r.checks);
    if flip_res != 0.0 {
        bad.push(format!("Psi - Sigma = {flip_res:e}"));
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!(
            "Psi = Sigma residual {flip_res}, suite {}/{} {}",
            r.summary.passed,
            r.summary.total,
            bad.join("; ")
        ),
    }
}

fn dense_oracles() -> Outcome {
    let mut devs: Vec<(String, f64)> = common::composition_cases()
        .into_iter()
        .map(|(name, window, e)| (name.to_string(), common::compare(window, &e).0))
        .collect();
    devs.extend(common::functional_cases().into_iter().map(|(n, d)| (n.to_string(), d)));
    let bad: Vec<String> = devs
        .iter()
        .filter(|(_, d)| !(*d <= common::TOL))
        .map(|(n, d)| format!("{n} {d:.1e}"))
        .collect();
    let worst = devs.iter().map(|d| d.1).fold(0.0, f64::max);
    Outcome {
        passed: bad.is_empty() && devs.len() >= 20,
        detail: format!("{} expressions, worst {worst:.1e} {}", devs.len(), bad.join("; ")),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("exact identities on [-8,8]^d at 1e-12", exact_identities),
        ("Fourier layer at |q| = 0.3, 0.5, 0.7", fourier_layer),
        ("banded identities at 1e-8", banded_identities),
        ("manageability three-way agreement", manageability),
        ("contraction decay and t^(1/2) limit", contraction_decay),
        ("real q: braiding is the flip, suite passes", real_q),
        ("dense oracles within 1e-10", dense_oracles),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.passed;
        println!("criterion {}: {} - {name}: {}", k + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail.trim());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
