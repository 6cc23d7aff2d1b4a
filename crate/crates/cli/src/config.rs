use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use semiflat::flatness::Family;
use semiflat::polys::{GapKind, RUDIN_SHAPIRO_MAX_K};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const CACHE_ENV: &str = "SEMIFLAT_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Sieve,
    Norms,
    Flatness,
    Cvt,
    Lacunary,
    ZetaCheck,
    RudinShapiro,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Sieve,
        Experiment::Norms,
        Experiment::Flatness,
        Experiment::Cvt,
        Experiment::Lacunary,
        Experiment::ZetaCheck,
        Experiment::RudinShapiro,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Sieve => "sieve",
            Experiment::Norms => "norms",
            Experiment::Flatness => "flatness",
            Experiment::Cvt => "cvt",
            Experiment::Lacunary => "lacunary",
            Experiment::ZetaCheck => "zeta-check",
            Experiment::RudinShapiro => "rudin-shapiro",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Liouville,
    Moebius,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Liouville => Family::Liouville,
            FamilyArg::Moebius => Family::Moebius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Values,
    Xi,
    Bose,
    All,
}

impl Suite {
    pub fn includes(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: u64,
    pub max: u64,
    pub ratio: f64,
}

/// Fully resolved run description. Every field has a value, so the JSON
/// sidecar alone reproduces a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub subcommand: Experiment,
    pub family: FamilyArg,
    pub alpha: Vec<f64>,
    pub grid: GridSpec,
    pub tol: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub cache: Option<PathBuf>,
    pub dump_poly: Option<PathBuf>,
    /// zeta-check suite.
    pub suite: Suite,
    /// Real points for zeta-check.
    pub s: Vec<f64>,
    /// Dirichlet partial-sum length for zeta-check.
    pub terms: u64,
    /// Polynomials per degree for norms; Monte-Carlo draws for lacunary.
    pub trials: u64,
    /// Largest k for rudin-shapiro.
    pub kmax: u32,
    /// Lacunary gaps: `double-exp` or `geometric:<q>`.
    pub gap: String,
}

impl ExperimentConfig {
    /// Defaults for one subcommand, writing into `out`.
    pub fn defaults(subcommand: Experiment, out: PathBuf) -> Self {
        let (alpha, grid, trials) = match subcommand {
            Experiment::Sieve => (vec![], grid(1, 1_000_000, 2.0), 0),
            Experiment::Norms => (vec![1.5, 3.0, 4.0], grid(8, 1024, 2.0), 20),
            Experiment::Flatness => (vec![4.0, 6.0, 2.5, 3.0], grid(1, 1 << 16, std::f64::consts::SQRT_2), 0),
            Experiment::Cvt => (vec![4.0], grid(2, 4096, std::f64::consts::SQRT_2), 0),
            Experiment::Lacunary => (vec![1.0], grid(4, 16, 2.0), 1_000_000),
            Experiment::ZetaCheck => (vec![], grid(1, 1, 2.0), 0),
            Experiment::RudinShapiro => (vec![], grid(1, 1, 2.0), 0),
        };
        ExperimentConfig {
            subcommand,
            family: FamilyArg::Liouville,
            alpha,
            grid,
            tol: semiflat::flatness::DEFAULT_TOL,
            seed: DEFAULT_SEED,
            out,
            cache: None,
            dump_poly: None,
            suite: Suite::All,
            s: vec![2.0, 3.0],
            terms: 100_000,
            trials,
            kmax: 12,
            gap: "geometric:2".into(),
        }
    }

    pub fn gap_kind(&self) -> Result<GapKind, String> {
        parse_gap(&self.gap)
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), String> {
        let e = self.subcommand;
        let uses_alpha = !matches!(e, Experiment::Sieve | Experiment::ZetaCheck | Experiment::RudinShapiro);
        if uses_alpha {
            if self.alpha.is_empty() {
                return Err(format!("{e}: give at least one --alpha"));
            }
            for &a in &self.alpha {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(format!("--alpha must be positive and finite, got {a}"));
                }
                match e {
                    Experiment::Norms if a <= 1.0 => {
                        return Err(format!("norms: discrete means need --alpha > 1, got {a}"));
                    }
                    Experiment::Lacunary if a >= 2.0 => {
                        return Err(format!("lacunary: --alpha must lie in (0, 2), got {a}"));
                    }
                    _ => {}
                }
            }
        }
        let uses_grid = !matches!(e, Experiment::ZetaCheck | Experiment::RudinShapiro);
        if uses_grid {
            let g = self.grid;
            if g.min == 0 || g.max < g.min {
                return Err(format!("grid needs 1 <= --nmin <= --nmax, got {}..{}", g.min, g.max));
            }
            if !(g.ratio > 1.0 && g.ratio.is_finite()) {
                return Err(format!("--ratio must exceed 1, got {}", g.ratio));
            }
            if e == Experiment::Cvt && g.min < 2 {
                return Err("cvt: --nmin must be at least 2".into());
            }
            if e == Experiment::Lacunary && g.max > u32::MAX as u64 {
                return Err("lacunary: --nmax too large".into());
            }
            if g.max > semiflat::arith::MAX_N {
                return Err(format!("--nmax must not exceed {}", semiflat::arith::MAX_N));
            }
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(format!("--tol must lie in (0, 1), got {}", self.tol));
        }
        match e {
            Experiment::ZetaCheck => {
                if self.terms == 0 || self.terms > semiflat::arith::MAX_N {
                    return Err(format!("--terms must lie in 1..={}", semiflat::arith::MAX_N));
                }
                if self.s.is_empty() {
                    return Err("zeta-check: give at least one --s".into());
                }
                for &s in &self.s {
                    if !s.is_finite() {
                        return Err(format!("--s must be finite, got {s}"));
                    }
                    if self.suite.includes(Suite::Identities) && s <= 1.0 {
                        return Err(format!("identity checks need --s > 1, got {s}"));
                    }
                    if self.suite.includes(Suite::Bose) && s <= 1.0 {
                        return Err(format!("Bose integral needs --s > 1, got {s}"));
                    }
                }
            }
            Experiment::Norms | Experiment::Lacunary if self.trials == 0 => {
                return Err(format!("{e}: --trials must be positive"));
            }
            Experiment::RudinShapiro if self.kmax > RUDIN_SHAPIRO_MAX_K => {
                return Err(format!("--kmax must not exceed {RUDIN_SHAPIRO_MAX_K}"));
            }
            Experiment::Lacunary => {
                self.gap_kind()?;
            }
            _ => {}
        }
        Ok(())
    }
}

fn grid(min: u64, max: u64, ratio: f64) -> GridSpec {
    GridSpec { min, max, ratio }
}

pub fn parse_gap(s: &str) -> Result<GapKind, String> {
    if s == "double-exp" {
        return Ok(GapKind::DoubleExp);
    }
    match s.strip_prefix("geometric:").map(str::parse::<u64>) {
        Some(Ok(q)) if q >= 2 => Ok(GapKind::Geometric(q)),
        _ => Err(format!("--gap must be `double-exp` or `geometric:<q>` with integer q >= 2, got `{s}`")),
    }
}

pub fn gap_label(g: GapKind) -> String {
    match g {
        GapKind::DoubleExp => "double-exp".into(),
        GapKind::Geometric(q) => format!("geometric:{q}"),
    }
}

/// One default config per subcommand, all writing into `out`.
pub fn default_suite(out: PathBuf) -> Vec<ExperimentConfig> {
    Experiment::ALL
        .iter()
        .map(|&e| ExperimentConfig::defaults(e, out.clone()))
        .collect()
}
