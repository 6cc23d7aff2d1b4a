//! Command-line front end for the `semiflat` library.
//!
//! Each subcommand writes one CSV per experiment into `--out` plus a
//! `<subcommand>.json` sidecar holding the resolved configuration, the
//! library version and the wall-clock time. Feeding the sidecar back
//! through `semiflat replay` repeats the run.
//!
//! Exit codes: 0 success, 2 invalid input (nothing written),
//! 3 numerical non-convergence (partial CSV kept), 4 I/O failure.

pub mod config;
pub mod run;
pub mod schema;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{default_suite, Experiment, ExperimentConfig, FamilyArg, GridSpec, Suite, DEFAULT_SEED};
pub use run::{execute, run, RunError, RunReport, EXIT_IO, EXIT_NONCONVERGENCE, EXIT_OK, EXIT_VALIDATION};
pub use schema::csv_schema;

#[derive(Debug, Parser)]
#[command(name = "semiflat", version, about = "Experiments on Liouville and Möbius polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial sums L(x) and M(x) on a grid of x.
    Sieve(RunArgs),
    /// Discrete-mean to integral ratios for random ±1 polynomials.
    Norms(RunArgs),
    /// ‖P_N‖_α/√N curves with fitted growth exponents.
    Flatness(RunArgs),
    /// The roots-of-unity statistic with the node at 1 removed.
    Cvt(RunArgs),
    /// Normalized moments of lacunary cosine sums.
    Lacunary(RunArgs),
    /// Zeta, xi and Dirichlet-series checks.
    ZetaCheck(RunArgs),
    /// Rudin–Shapiro identity and sup norms.
    RudinShapiro(RunArgs),
    /// Every subcommand with default settings.
    All {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Repeat the run described by a JSON sidecar.
    Replay {
        sidecar: PathBuf,
        /// Write into this directory instead of the recorded one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Comma-separated exponents.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    /// Largest N (or x, or degree) of the grid.
    #[arg(long, allow_negative_numbers = true)]
    pub nmax: Option<u64>,
    /// Smallest N of the grid.
    #[arg(long)]
    pub nmin: Option<u64>,
    /// Geometric grid ratio.
    #[arg(long, allow_negative_numbers = true)]
    pub ratio: Option<f64>,
    /// Relative tolerance for sampled norms.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Sieve cache directory; defaults to $SEMIFLAT_CACHE_DIR.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Write the largest polynomial of the run as `index,re,im` CSV.
    #[arg(long)]
    pub dump_poly: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Comma-separated real points for zeta-check.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub s: Vec<f64>,
    #[arg(long)]
    pub terms: Option<u64>,
    /// Polynomials per degree (norms) or Monte-Carlo draws (lacunary).
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub kmax: Option<u32>,
    /// `geometric:<q>` or `double-exp`.
    #[arg(long)]
    pub gap: Option<String>,
}

impl RunArgs {
    pub fn into_config(self, subcommand: Experiment) -> ExperimentConfig {
        let mut c = ExperimentConfig::defaults(subcommand, self.out);
        if let Some(v) = self.family {
            c.family = v;
        }
        if !self.alpha.is_empty() {
            c.alpha = self.alpha;
        }
        if let Some(v) = self.nmax {
            c.grid.max = v;
        }
        if let Some(v) = self.nmin {
            c.grid.min = v;
        }
        if let Some(v) = self.ratio {
            c.grid.ratio = v;
        }
        if let Some(v) = self.tol {
            c.tol = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        c.cache = self.cache.or_else(cache_from_env);
        c.dump_poly = self.dump_poly;
        if let Some(v) = self.suite {
            c.suite = v;
        }
        if !self.s.is_empty() {
            c.s = self.s;
        }
        if let Some(v) = self.terms {
            c.terms = v;
        }
        if let Some(v) = self.trials {
            c.trials = v;
        }
        if let Some(v) = self.kmax {
            c.kmax = v;
        }
        if let Some(v) = self.gap {
            c.gap = v;
        }
        c
    }
}

fn cache_from_env() -> Option<PathBuf> {
    std::env::var_os(config::CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Reads a config from a sidecar (its `config` field) or a bare config
/// JSON file.
pub fn load_config(path: &std::path::Path) -> Result<ExperimentConfig, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })?;
    let invalid = |e: serde_json::Error| RunError {
        code: EXIT_VALIDATION,
        message: format!("{}: {e}", path.display()),
    };
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(invalid)?;
    if let Some(inner) = value.get_mut("config") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(invalid)
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let (e, args) = match cli.command {
        Command::Sieve(a) => (Experiment::Sieve, a),
        Command::Norms(a) => (Experiment::Norms, a),
        Command::Flatness(a) => (Experiment::Flatness, a),
        Command::Cvt(a) => (Experiment::Cvt, a),
        Command::Lacunary(a) => (Experiment::Lacunary, a),
        Command::ZetaCheck(a) => (Experiment::ZetaCheck, a),
        Command::RudinShapiro(a) => (Experiment::RudinShapiro, a),
        Command::All { out, seed, cache } => {
            let cache = cache.or_else(cache_from_env);
            let mut worst = EXIT_OK;
            for mut c in default_suite(out) {
                c.seed = seed.unwrap_or(c.seed);
                c.cache = cache.clone();
                worst = worst.max(run(&c));
            }
            return worst;
        }
        Command::Replay { sidecar, out } => {
            return match load_config(&sidecar) {
                Ok(mut c) => {
                    if let Some(out) = out {
                        c.out = out;
                    }
                    run(&c)
                }
                Err(e) => {
                    eprintln!("error: {}", e.message);
                    e.code
                }
            };
        }
    };
    run(&args.into_config(e))
}
