mod fourier;
mod markdown;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bqe2::config::RunConfig;
use bqe2::constructions::catalog;
use bqe2::qexp::FourierTable;
use bqe2::verify::{find_check, registry, run_spec, run_suite, sweep, CheckResult, Context};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bqe2", version, about = "Identity checks for braided quantum E(2) on a lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Default)]
struct QArgs {
    /// Config file; command-line values override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "q-mod")]
    q_mod: Option<f64>,
    /// Angle of q as a multiple of pi, "a/b" or a decimal.
    #[arg(long = "q-arg-pi", allow_hyphen_values = true)]
    q_arg_pi: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

impl QArgs {
    fn config(&self) -> Result<RunConfig, String> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p).map_err(|e| e.to_string())?,
            None => RunConfig::default(),
        };
        if let Some(m) = self.q_mod {
            cfg.q_modulus = m;
            cfg.q_re = None;
            cfg.q_im = None;
        }
        if let Some(a) = &self.q_arg_pi {
            cfg.q_angle_pi = a.clone();
            cfg.q_angle = None;
            cfg.q_re = None;
            cfg.q_im = None;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured suite and write report.json and report.md.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a single check by id or name.
    Check {
        name: String,
        #[command(flatten)]
        q: QArgs,
        /// Probe-box radius for this check.
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// List the registered checks.
    List,
    /// List the operator catalog with leg signatures.
    ListOps {
        #[command(flatten)]
        q: QArgs,
    },
    /// Fourier coefficients F_m(|q|^n) with their symmetry mirror, as CSV.
    Fourier {
        #[arg(long = "n-lo", allow_hyphen_values = true, default_value_t = -6)]
        n_lo: i64,
        #[arg(long = "n-hi", allow_hyphen_values = true, default_value_t = 6)]
        n_hi: i64,
        #[arg(long = "m-max", default_value_t = 40)]
        m_max: i64,
        #[command(flatten)]
        q: QArgs,
        /// Write fourier.csv here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the suite over a grid of q values.
    Sweep {
        #[arg(long = "q-mods", value_delimiter = ',', default_value = "0.3,0.5,0.7")]
        q_mods: Vec<f64>,
        #[arg(long = "q-args-pi", value_delimiter = ',', default_value = "0,1/8,1/3")]
        q_args_pi: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write sweep.json and sweep.md here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("bqe2: {msg}");
            ExitCode::from(2)
        }
    }
}

fn context(cfg: RunConfig) -> Result<Context, Failure> {
    Context::new(cfg).map_err(|e| Failure::Usage(e.to_string()))
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn print_check(r: &CheckResult) {
    let status = if r.error.is_some() {
        "ERROR"
    } else if r.passed {
        "pass"
    } else {
        "FAIL"
    };
    println!(
        "{:<4} {:<24} {:<6} {:.3e} / {:.1e}  {}",
        r.id,
        r.name,
        status,
        r.max_residual,
        r.tolerance,
        r.formula
    );
    if let Some(e) = &r.error {
        println!("     error: {e}");
    }
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Run { config, out } => {
            let cfg = RunConfig::load(&config).map_err(|e| Failure::Usage(e.to_string()))?;
            let ctx = context(cfg)?;
            let report = run_suite(&ctx).map_err(|e| Failure::Usage(e.to_string()))?;
            for c in &report.checks {
                print_check(c);
            }
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            write(&out, "report.json", &json)?;
            write(&out, "report.md", &markdown::report(&report))?;
            println!("{} of {} passed", report.summary.passed, report.summary.total);
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Check { name, q, radius, json } => {
            let spec = find_check(&name).ok_or_else(|| Failure::Usage(format!("unknown check {name:?}; see `bqe2 list`")))?;
            let mut cfg = q.config().map_err(Failure::Usage)?;
            if let Some(r) = radius {
                cfg.windows.insert(spec.id.to_string(), r);
            }
            let ctx = context(cfg)?;
            let r = run_spec(&spec, &ctx);
            if json {
                println!("{}", serde_json::to_string_pretty(&r).expect("result serializes"));
            } else {
                print_check(&r);
                for p in &r.parts {
                    println!("     {:<56} {:.3e} / {:.1e} ({} probes)", p.label, p.residual, p.tolerance, p.probes);
                }
            }
            if r.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::List => {
            for c in registry() {
                println!("{:<4} {:<24} {:<7} {}", c.id, c.name, format!("{:?}", c.class).to_lowercase(), c.formula);
            }
            Ok(())
        }
        Command::ListOps { q } => {
            let ctx = context(q.config().map_err(Failure::Usage)?)?;
            let band = ctx.banding().map_err(Failure::Usage)?;
            for op in catalog(ctx.q, Some(band)) {
                let e = op.entry();
                println!("{:<10} {:<8} d={} terms={:<5} {}", e.name, e.legs, e.dim, e.terms, e.formula);
            }
            Ok(())
        }
        Command::Fourier { n_lo, n_hi, m_max, q, out } => {
            if n_lo > n_hi || m_max < 0 {
                return Err(Failure::Usage("need n-lo <= n-hi and m-max >= 0".into()));
            }
            let cfg = q.config().map_err(Failure::Usage)?;
            let samples = cfg.samples.max(((4 * m_max + 4) as usize).next_power_of_two());
            if m_max > FourierTable::max_store(samples) {
                return Err(Failure::Usage(format!("m-max {m_max} too large for {samples} samples")));
            }
            let modulus = cfg.q().map_err(|e| Failure::Usage(e.to_string()))?.modulus();
            let recs = fourier::records(modulus, n_lo, n_hi, m_max, samples)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &recs {
                w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let text = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8");
            match out {
                Some(dir) => write(&dir, "fourier.csv", &text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Sweep { q_mods, q_args_pi, config, out } => {
            let base = match &config {
                Some(p) => RunConfig::load(p).map_err(|e| Failure::Usage(e.to_string()))?,
                None => RunConfig::default(),
            };
            let rows = sweep(&base, &q_mods, &q_args_pi).map_err(|e| Failure::Usage(e.to_string()))?;
            let table = markdown::sweep(&rows);
            print!("{table}");
            if let Some(dir) = out {
                write(&dir, "sweep.json", &serde_json::to_string_pretty(&rows).expect("rows serialize"))?;
                write(&dir, "sweep.md", &table)?;
            }
            if rows.iter().all(|r| r.all_passed()) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}
