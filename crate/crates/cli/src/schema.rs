use crate::config::Experiment;

/// Columns of the lower-bound chain file written next to Liouville
/// flatness curves.
pub const CHAIN_COLUMNS: &[&str] = &[
    "N",
    "alpha",
    "L",
    "single_term",
    "node_mean",
    "lhs",
    "discrete_mean",
    "norm_alpha",
    "ratio",
    "littlewood_rhs",
];

/// Column list of the main CSV of a subcommand.
pub fn columns(e: Experiment) -> &'static [&'static str] {
    match e {
        Experiment::Flatness => &["N", "stat", "fitted_exponent", "method", "rel_err", "status"],
        Experiment::Cvt => &["N", "alpha", "statistic", "decomposition_residual"],
        Experiment::Sieve => &["x", "L", "M"],
        Experiment::Norms => &["degree", "alpha", "trials", "min_ratio", "max_ratio"],
        Experiment::Lacunary => &["N", "alpha", "gap", "empirical", "gamma_reference", "mc_reference"],
        Experiment::ZetaCheck => &["check", "s_re", "s_im", "terms", "residual", "envelope", "status"],
        Experiment::RudinShapiro => &["k", "max_identity_rel_err", "sup_norm", "sup_bound"],
    }
}

/// Column list by subcommand name.
pub fn csv_schema(subcommand: &str) -> Result<&'static [&'static str], String> {
    Experiment::ALL
        .iter()
        .find(|e| e.name() == subcommand)
        .map(|&e| columns(e))
        .ok_or_else(|| format!("unknown subcommand `{subcommand}`"))
}
