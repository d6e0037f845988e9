//! Command-line front end: verification suites, simulations and transfer-matrix tables.
//!
//! Exit codes: 0 when everything passes, 1 on a failed check or an aborted integration,
//! 2 on a usage or configuration error.

pub mod config;
pub mod report;
pub mod simulate;
pub mod transfer;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use config::{ConfigError, RunConfig};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "elevenvertex", version, about = "Exact checks and simulations for the rational 11-vertex hierarchy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and print a JSON report.
    Verify(Common),
    /// Integrate a model, write CSV trajectories and print a JSON summary.
    Simulate(Common),
    /// Evaluate chain transfer matrices at sampled points and certify commutativity.
    Transfer(Common),
}

/// Flags shared by every subcommand. Each overrides the matching config-file field.
#[derive(Debug, Default, Args)]
pub struct Common {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory for reports, trajectories and summaries.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// rmatrix, poisson, tops, manybody, gaudin, chain, field-jets or all.
    #[arg(long)]
    pub suite: Option<String>,
    /// top, top-eta, rs, cm, gaudin, ll, chiral or ll-gaudin.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Constraint branch of the LL field: true for S² = −λ² (default), false for S² = λ².
    #[arg(long)]
    pub elliptic: Option<bool>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long = "grid-n")]
    pub grid_n: Option<usize>,
    #[arg(long)]
    pub every: Option<usize>,
    /// Comma-separated site positions.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub z: Option<Vec<f64>>,
    /// Comma-separated per-site eta values.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub etas: Option<Vec<f64>>,
    /// Compare a two-body trajectory with the mapped top trajectory.
    #[arg(long = "cross-check")]
    pub cross_check: bool,
    /// Negative control: perturb the quadratic bracket entry "A,B" by 1.
    #[arg(long)]
    pub corrupt: Option<String>,
}

impl Common {
    fn overrides(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            suite: self.suite.clone(),
            model: self.model.clone(),
            out: self.out.clone(),
            points: self.points,
            eta: self.eta,
            eps: self.eps,
            nu: self.nu,
            c: self.c,
            lambda: self.lambda,
            elliptic: self.elliptic,
            k: self.k,
            n: self.n,
            dt: self.dt,
            steps: self.steps,
            grid_n: self.grid_n,
            every: self.every,
            z: self.z.clone(),
            etas: self.etas.clone(),
            cross_check: self.cross_check.then_some(true),
            corrupt_entry: self.corrupt.clone(),
            ..Default::default()
        }
    }

    /// Config file, then flags on top.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        Ok(base.merge(self.overrides()))
    }
}

/// Parse `args` (including the program name) and run. Output goes to `out`, diagnostics to
/// `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), ConfigError> {
    std::fs::create_dir_all(dir).map_err(|e| ConfigError(format!("{}: {e}", dir.display())))?;
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| ConfigError(format!("{}: {e}", p.display())))
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, ConfigError> {
    let io = |e: std::io::Error| ConfigError(format!("write failed: {e}"));
    match cmd {
        Command::Verify(c) => {
            let cfg = c.resolve()?;
            let suite = cfg.suite.clone().unwrap_or_else(|| "all".into());
            let params = verify::Params::from_config(&cfg)?;
            let checks = verify::run_suite(&suite, &params)?;
            let report = Report::new("verify", &suite, params.seed, checks);
            let text = report.to_json();
            if let Some(dir) = &cfg.out {
                write_file(dir, "report.json", &text)?;
            }
            out.write_all(text.as_bytes()).map_err(io)?;
            for chk in report.checks.iter().filter(|c| !c.pass) {
                writeln!(err, "FAILED {}: {}", chk.name, chk.max_residual).map_err(io)?;
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Simulate(c) => {
            let cfg = c.resolve()?;
            let model = cfg.model.clone().unwrap_or_else(|| "top".into());
            let seed = cfg.resolved_seed()?;
            let sim = simulate::simulate(&model, &cfg, seed)?;
            let summary = sim.summary_json(&model, seed);
            match &cfg.out {
                Some(dir) => {
                    for (stem, table) in &sim.tables {
                        write_file(dir, &format!("{stem}.csv"), &table.to_csv())?;
                    }
                    write_file(dir, "summary.json", &summary)?;
                }
                None => {
                    if let Some((_, t)) = sim.tables.first() {
                        write!(err, "{}", t.to_csv()).map_err(io)?;
                    }
                }
            }
            out.write_all(summary.as_bytes()).map_err(io)?;
            if let Some((step, reason)) = &sim.unstable {
                writeln!(err, "unstable at step {step}: {reason}; last stable step {}", step.saturating_sub(1)).map_err(io)?;
            }
            for chk in sim.checks.iter().filter(|c| !c.pass) {
                writeln!(err, "FAILED {}: {}", chk.name, chk.max_residual).map_err(io)?;
            }
            Ok(if sim.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Transfer(c) => {
            let cfg = c.resolve()?;
            let seed = cfg.resolved_seed()?;
            let t = transfer::transfer(&cfg, seed)?;
            for w in &t.warnings {
                writeln!(err, "warning: {w}").map_err(io)?;
            }
            let text = serde_json::to_string_pretty(&t.doc).expect("serializes") + "\n";
            if let Some(dir) = &cfg.out {
                write_file(dir, "transfer.json", &text)?;
            }
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(if t.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
