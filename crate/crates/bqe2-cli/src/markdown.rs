use std::fmt::Write;

use bqe2::verify::{Report, SweepRow};

fn status(passed: bool, error: Option<&str>) -> &'static str {
    match (passed, error) {
        (_, Some(_)) => "ERROR",
        (true, None) => "pass",
        (false, None) => "FAIL",
    }
}

/// Human summary of a suite run: one table row per check, then the parts.
pub fn report(r: &Report) -> String {
    let mut s = String::new();
    let q = &r.q;
    let _ = writeln!(s, "# bqe2 report\n");
    let _ = writeln!(
        s,
        "q = {:.6} + {:.6}i (|q| = {}, arg = {:.6} rad), band M = {}\n",
        q.re,
        q.im,
        q.modulus,
        q.angle,
        r.band.map_or("-".to_string(), |m| m.to_string())
    );
    let _ = writeln!(
        s,
        "{} of {} checks passed ({} failed, {} errored) in {:.1} s.\n",
        r.summary.passed,
        r.summary.total,
        r.summary.failed,
        r.summary.errored,
        r.total_ms / 1000.0
    );
    let _ = writeln!(s, "| id | name | class | formula | residual | tolerance | probes | status |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|");
    for c in &r.checks {
        let _ = writeln!(
            s,
            "| {} | {} | {:?} | `{}` | {:.3e} | {:.1e} | {} | {} |",
            c.id,
            c.name,
            c.class,
            c.formula.replace('|', "\\|"),
            c.max_residual,
            c.tolerance,
            c.probes,
            status(c.passed, c.error.as_deref())
        );
    }
    for c in &r.checks {
        let _ = writeln!(s, "\n## {} {}\n", c.id, c.name);
        if let Some(e) = &c.error {
            let _ = writeln!(s, "error: {e}\n");
        }
        for p in &c.parts {
            let _ = write!(
                s,
                "- {}: {:.3e} (tol {:.1e}, {} probes) {}",
                p.label,
                p.residual,
                p.tolerance,
                p.probes,
                status(p.passed, None)
            );
            if let Some(d) = &p.decay {
                match d.fit.ratio {
                    Some(ratio) => {
                        let _ = write!(s, "; fitted ratio {ratio:.4} vs {:.4}", d.expected_ratio);
                    }
                    None => {
                        let _ = write!(s, "; sequence below the floor");
                    }
                }
            }
            let _ = writeln!(s);
        }
    }
    s
}

pub fn sweep(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let Some(first) = rows.first() else {
        return s;
    };
    let _ = write!(s, "| \\|q\\| | arg/pi | M |");
    for c in &first.cells {
        let _ = write!(s, " {} |", c.id);
    }
    let _ = write!(s, "\n|---|---|---|");
    for _ in &first.cells {
        let _ = write!(s, "---|");
    }
    let _ = writeln!(s);
    for r in rows {
        let _ = write!(
            s,
            "| {} | {} | {} |",
            r.q_modulus,
            r.q_angle_pi,
            r.band.map_or("-".to_string(), |m| m.to_string())
        );
        for c in &r.cells {
            let mark = if c.passed { "" } else { " FAIL" };
            let _ = write!(s, " {:.1e}{mark} |", c.max_residual);
        }
        let _ = writeln!(s);
    }
    s
}
