//! Command-line front end: admissibility checks, falsification runs, order
//! tables, lemma suites and the consolidated reproduction table.
//!
//! Exit codes: 0 success, 1 violation or failed check, 2 inconclusive or
//! vacuous, 3 malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod expr;
pub mod report;

use config::RunConfig;
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("expression: {0}")]
    Expression(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] subord_core::Error),
}

#[derive(Debug, Parser)]
#[command(name = "subord", version, about = "Second-order differential subordination toolkit")]
pub struct Cli {
    /// TOML config file; its values override flags. Defaults to $SUBORD_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Falsification sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    /// Lemma trial count.
    #[arg(long, global = true)]
    pub trials: Option<usize>,

    #[arg(long, global = true)]
    pub theta_points: Option<usize>,

    #[arg(long, global = true)]
    pub m_points: Option<usize>,

    /// Angles of the verification grid.
    #[arg(long, global = true)]
    pub angles: Option<usize>,

    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Truncation degree for series built from `--function`.
    #[arg(long, global = true)]
    pub degree: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide admissibility of psi for (Omega, q, n, beta).
    Admissible(ProblemArgs),
    /// Search for counterexamples to the subordination implication.
    Falsify(FalsifyArgs),
    /// Orders of starlikeness and square-root bounds as functions of |a2|.
    Order(OrderArgs),
    /// Numerical checks of the Schwarz and contact lemmas.
    Lemma(LemmaArgs),
    /// Recompute every tabulated constant and compare with its closed form.
    Reproduce,
}

/// A worked example, or a custom structured problem.
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Example name (sum-disk, quadratic-disk, ...) or numeric label 4.1 .. 4.5.
    #[arg(long)]
    pub example: Option<String>,

    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long)]
    pub beta: Option<f64>,

    /// Radius of the dominant disk (sum-disk example).
    #[arg(long = "M")]
    pub big_m: Option<f64>,

    /// Replace the example's disk radius.
    #[arg(long)]
    pub radius: Option<f64>,

    /// Custom psi = c0 + c_r r + c_r2 r^2 + c_s s + c_t t, as five comma-separated constants.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<String>,

    /// Custom dominant: disk(M, a), halfplane(alpha, a) or affine(a0, a1).
    #[arg(long)]
    pub q: Option<String>,

    /// Custom region: disk(center, R) or halfplane(gamma, w0).
    #[arg(long)]
    pub omega: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FalsifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    /// Replace the conclusion by the disk of this radius about q(0).
    #[arg(long)]
    pub shrink_conclusion: Option<f64>,

    /// Replace the conclusion by q(rho z).
    #[arg(long)]
    pub dilate: Option<f64>,

    /// State the hypothesis as psi(...) subordinate to h instead of psi(...) in Omega.
    #[arg(long)]
    pub h_form: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    /// starlike, sqrt-derivative or sqrt-ratio (numeric labels 5.1 .. 5.3).
    #[arg(long)]
    pub theorem: String,

    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<f64>,

    /// Sweep `lo:hi:count`; defaults to the full coefficient range.
    #[arg(long)]
    pub sweep: Option<String>,

    /// Check the bound on the convex test corpus.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LemmaArgs {
    /// schwarz, interior, contact, growth or min-re (numeric labels 2.1 .. 2.4).
    #[arg(long)]
    pub which: String,

    /// Function of z to check instead of random trials.
    #[arg(long, allow_hyphen_values = true)]
    pub function: Option<String>,

    /// Contact point; located numerically when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<String>,

    /// Dominant for the contact check with `--function`.
    #[arg(long)]
    pub q: Option<String>,
}

impl Cli {
    fn flags(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            samples: self.samples,
            trials: self.trials,
            theta_points: self.theta_points,
            m_points: self.m_points,
            angles: self.angles,
            radii: None,
            tol: self.tol,
            degree: self.degree,
            output: self.output.clone(),
        }
    }
}

/// A command's result: exit code, report, and the human-readable preamble
/// printed above the table.
pub struct Outcome {
    pub code: i32,
    pub report: Report,
    pub summary: String,
}

/// Parses `args` (including the program name), runs the command and writes
/// human output to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = write!(out, "{}", o.summary);
            if !o.report.rows.is_empty() {
                let _ = write!(out, "{}", o.report.table());
            }
            if let Some(path) = &o.report.config.output {
                if let Err(e) = o.report.write(path) {
                    let _ = writeln!(out, "error: {e}");
                    return EXIT_MALFORMED;
                }
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_MALFORMED
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::from_file_or_env(cli.config.as_deref())?.over(cli.flags());
    cfg.validate()?;
    match &cli.command {
        Command::Admissible(a) => commands::admissible(a, &cfg),
        Command::Falsify(a) => commands::falsify(a, &cfg),
        Command::Order(a) => commands::order(a, &cfg),
        Command::Lemma(a) => commands::lemma(a, &cfg),
        Command::Reproduce => commands::reproduce(&cfg),
    }
}
