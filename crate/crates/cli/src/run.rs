use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use semiflat::arith::{read_cache, sieve_liouville, sieve_moebius, write_cache, SieveKind, SieveTable};
use semiflat::flatness::{
    cvt_decomposition_residual, cvt_statistic, geometric_grid, lacunary_limit, littlewood_rhs,
    lower_bound_chain, semiflat_curve_with, CurveOptions, Family, PointStatus,
};
use semiflat::norms::{mz_ratio_experiment, sup_norm_estimate, DEFAULT_MAX_NODES};
use semiflat::polys::{build_lacunary, build_rudin_shapiro, eval_at_roots, write_csv, CoeffPoly};
use semiflat::zeta::{
    bose_integral_check, c, dirichlet_identity_check, e_fn, strip_grid, xi_fn, zeta_eta, zeta_fe,
    DirichletIdentity,
};
use semiflat::{format_float, Error};

use crate::config::{gap_label, Experiment, ExperimentConfig, Suite};
use crate::schema::{columns, CHAIN_COLUMNS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug)]
pub struct RunError {
    pub code: i32,
    pub message: String,
}

impl RunError {
    fn validation(message: impl Into<String>) -> Self {
        RunError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn io(context: &Path, e: impl std::fmt::Display) -> Self {
        RunError {
            code: EXIT_IO,
            message: format!("{}: {e}", context.display()),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Format(_) => EXIT_IO,
            Error::Convergence { .. } | Error::Conditioning(_) => EXIT_NONCONVERGENCE,
            _ => EXIT_VALIDATION,
        };
        RunError {
            code,
            message: e.to_string(),
        }
    }
}

/// Files produced by a run and its exit code.
#[derive(Debug)]
pub struct RunReport {
    pub code: i32,
    pub files: Vec<PathBuf>,
}

struct Table {
    file: String,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(file: impl Into<String>, columns: &[&'static str]) -> Self {
        Table {
            file: file.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }
}

#[derive(Default)]
struct Output {
    tables: Vec<Table>,
    /// First non-convergence message; rows after it are missing.
    partial: Option<String>,
    dump: Option<CoeffPoly>,
}

fn numerical(e: &Error) -> bool {
    matches!(e, Error::Convergence { .. } | Error::Conditioning(_))
}

/// Keeps going on success, records a numerical failure, and propagates
/// anything else.
fn soft<T>(r: semiflat::Result<T>, partial: &mut Option<String>) -> Result<Option<T>, RunError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if numerical(&e) => {
            partial.get_or_insert(e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn f(x: f64) -> String {
    format_float(x)
}

fn alpha_label(a: f64) -> String {
    format!("{a}")
}

/// Runs one experiment and prints any error to standard error.
pub fn run(config: &ExperimentConfig) -> i32 {
    match execute(config) {
        Ok(report) => report.code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(config: &ExperimentConfig) -> Result<RunReport, RunError> {
    config.validate().map_err(RunError::validation)?;
    let start = Instant::now();
    let output = compute(config)?;
    let secs = start.elapsed().as_secs_f64();

    fs::create_dir_all(&config.out).map_err(|e| RunError::io(&config.out, e))?;
    let mut files = Vec::new();
    for table in &output.tables {
        let path = config.out.join(&table.file);
        write_table(&path, table)?;
        files.push(path);
    }
    if let (Some(path), Some(p)) = (&config.dump_poly, &output.dump) {
        let file = fs::File::create(path).map_err(|e| RunError::io(path, e))?;
        let mut w = BufWriter::new(file);
        write_csv(p, &mut w).map_err(|e| RunError::io(path, e))?;
        w.flush().map_err(|e| RunError::io(path, e))?;
        files.push(path.clone());
    }
    let code = if output.partial.is_some() {
        EXIT_NONCONVERGENCE
    } else {
        EXIT_OK
    };
    let sidecar = config.out.join(format!("{}.json", config.subcommand));
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    let doc = serde_json::json!({
        "config": config,
        "version": semiflat::VERSION,
        "cli_version": env!("CARGO_PKG_VERSION"),
        "wall_clock_secs": secs,
        "exit_code": code,
        "non_convergence": output.partial,
        "outputs": names,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| RunError::io(&sidecar, e))?;
    fs::write(&sidecar, text + "\n").map_err(|e| RunError::io(&sidecar, e))?;
    files.push(sidecar);
    if let Some(msg) = &output.partial {
        eprintln!("non-convergence, partial results kept: {msg}");
    }
    Ok(RunReport { code, files })
}

fn write_table(path: &Path, table: &Table) -> Result<(), RunError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| RunError::io(path, e))?;
    w.write_record(&table.columns).map_err(|e| RunError::io(path, e))?;
    for row in &table.rows {
        w.write_record(row).map_err(|e| RunError::io(path, e))?;
    }
    w.flush().map_err(|e| RunError::io(path, e))
}

fn compute(config: &ExperimentConfig) -> Result<Output, RunError> {
    match config.subcommand {
        Experiment::Sieve => sieve(config),
        Experiment::Norms => norms(config),
        Experiment::Flatness => flatness(config),
        Experiment::Cvt => cvt(config),
        Experiment::Lacunary => lacunary(config),
        Experiment::ZetaCheck => zeta_check(config),
        Experiment::RudinShapiro => rudin_shapiro(config),
    }
}

fn grid(config: &ExperimentConfig) -> Result<Vec<u64>, RunError> {
    let g = config.grid;
    Ok(geometric_grid(g.min, g.max, g.ratio)?)
}

/// Sieve table, read from or written to the cache directory when one
/// is configured.
pub fn load_table(kind: SieveKind, n_max: u64, cache: Option<&Path>) -> Result<SieveTable, RunError> {
    let sieve = |kind| match kind {
        SieveKind::Liouville => sieve_liouville(n_max),
        SieveKind::Moebius => sieve_moebius(n_max),
    };
    let Some(dir) = cache else {
        return Ok(sieve(kind)?);
    };
    let path = dir.join(format!("{}-{n_max}.sfl", kind.name()));
    if path.exists() {
        let file = fs::File::open(&path).map_err(|e| RunError::io(&path, e))?;
        let table = read_cache(std::io::BufReader::new(file)).map_err(|e| RunError::io(&path, e))?;
        if table.kind() != kind || table.n_max() != n_max {
            return Err(RunError::io(&path, "cache file does not match its name"));
        }
        return Ok(table);
    }
    let table = sieve(kind)?;
    fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
    let tmp = path.with_extension("sfl.tmp");
    let file = fs::File::create(&tmp).map_err(|e| RunError::io(&tmp, e))?;
    let mut w = BufWriter::new(file);
    write_cache(&table, &mut w).map_err(|e| RunError::io(&tmp, e))?;
    w.flush().map_err(|e| RunError::io(&tmp, e))?;
    drop(w);
    fs::rename(&tmp, &path).map_err(|e| RunError::io(&path, e))?;
    Ok(table)
}

fn sieve(config: &ExperimentConfig) -> Result<Output, RunError> {
    let xs = grid(config)?;
    let n = config.grid.max;
    let l = load_table(SieveKind::Liouville, n, config.cache.as_deref())?;
    let m = load_table(SieveKind::Moebius, n, config.cache.as_deref())?;
    let mut t = Table::new("sieve.csv", columns(Experiment::Sieve));
    for x in xs {
        t.rows.push(vec![
            x.to_string(),
            l.partial_sum(x)?.to_string(),
            m.partial_sum(x)?.to_string(),
        ]);
    }
    Ok(Output {
        tables: vec![t],
        ..Default::default()
    })
}

fn norms(config: &ExperimentConfig) -> Result<Output, RunError> {
    let degrees = grid(config)?;
    let mut out = Output::default();
    let mut t = Table::new("norms.csv", columns(Experiment::Norms));
    'outer: for &alpha in &config.alpha {
        for &d in &degrees {
            let r = mz_ratio_experiment(d as usize, alpha, config.trials as usize, config.seed);
            let Some((lo, hi)) = soft(r, &mut out.partial)? else {
                break 'outer;
            };
            t.rows.push(vec![d.to_string(), f(alpha), config.trials.to_string(), f(lo), f(hi)]);
        }
    }
    out.tables.push(t);
    Ok(out)
}

fn flatness(config: &ExperimentConfig) -> Result<Output, RunError> {
    let ns = grid(config)?;
    let family = Family::from(config.family);
    let table = load_table(family.table_kind(), config.grid.max, config.cache.as_deref())?;
    let opts = CurveOptions {
        tol: config.tol,
        max_nodes: DEFAULT_MAX_NODES,
    };
    let mut out = Output::default();
    for &alpha in &config.alpha {
        let curve = semiflat_curve_with(family, alpha, &ns, &table, opts)?;
        let fitted = curve.fitted_exponent().map(f).unwrap_or_default();
        let mut t = Table::new(
            format!("flatness-{}-alpha{}.csv", family.name(), alpha_label(alpha)),
            columns(Experiment::Flatness),
        );
        for p in &curve.points {
            let status = match &p.status {
                PointStatus::Ok => "ok".to_string(),
                PointStatus::Failed(msg) => {
                    out.partial.get_or_insert(format!("N = {}: {msg}", p.n));
                    format!("failed: {msg}")
                }
            };
            t.rows.push(vec![
                p.n.to_string(),
                f(p.stat),
                fitted.clone(),
                p.method.map(|m| m.name().to_string()).unwrap_or_default(),
                f(p.rel_err),
                status,
            ]);
        }
        out.tables.push(t);

        if family == Family::Liouville && alpha > 1.0 {
            let mut t = Table::new(format!("chain-alpha{}.csv", alpha_label(alpha)), CHAIN_COLUMNS);
            for &n in &ns {
                let Some(r) = soft(lower_bound_chain(n, alpha, &table), &mut out.partial)? else {
                    break;
                };
                t.rows.push(vec![
                    n.to_string(),
                    f(alpha),
                    r.partial_sum.to_string(),
                    f(r.single_term),
                    f(r.node_mean),
                    f(r.lhs),
                    f(r.discrete_mean),
                    f(r.norm_alpha),
                    r.ratio().map(f).unwrap_or_default(),
                    f(littlewood_rhs(n, alpha, &table)?),
                ]);
            }
            out.tables.push(t);
        }
    }
    if config.dump_poly.is_some() {
        out.dump = Some(family.build(config.grid.max, &table)?);
    }
    Ok(out)
}

fn cvt(config: &ExperimentConfig) -> Result<Output, RunError> {
    let ns = grid(config)?;
    let table = load_table(SieveKind::Liouville, config.grid.max, config.cache.as_deref())?;
    let mut t = Table::new("cvt.csv", columns(Experiment::Cvt));
    for &alpha in &config.alpha {
        for &n in &ns {
            t.rows.push(vec![
                n.to_string(),
                f(alpha),
                f(cvt_statistic(n, alpha, &table)?),
                f(cvt_decomposition_residual(n, alpha, &table)?),
            ]);
        }
    }
    Ok(Output {
        tables: vec![t],
        ..Default::default()
    })
}

fn lacunary(config: &ExperimentConfig) -> Result<Output, RunError> {
    let ns = grid(config)?;
    let gap = config.gap_kind().map_err(RunError::validation)?;
    let mut out = Output::default();
    let mut t = Table::new("lacunary.csv", columns(Experiment::Lacunary));
    'outer: for &alpha in &config.alpha {
        if alpha < 1.0 {
            eprintln!("warning: alpha = {alpha} is below 1, outside the range where the limit is asserted");
        }
        for &n in &ns {
            let r = lacunary_limit(n as u32, alpha, gap, config.trials as usize, config.seed);
            let Some(r) = soft(r, &mut out.partial)? else {
                break 'outer;
            };
            t.rows.push(vec![
                n.to_string(),
                f(alpha),
                gap_label(gap),
                f(r.empirical),
                f(r.gamma_reference),
                f(r.mc_reference),
            ]);
        }
    }
    out.tables.push(t);
    if config.dump_poly.is_some() {
        out.dump = Some(build_lacunary(config.grid.max as u32, gap)?);
    }
    Ok(out)
}

struct ZetaRows<'a> {
    table: Table,
    partial: &'a mut Option<String>,
}

impl ZetaRows<'_> {
    fn push(
        &mut self,
        check: &str,
        s: semiflat::Complex64,
        terms: Option<u64>,
        residual: semiflat::Result<f64>,
        envelope: f64,
    ) -> Result<(), RunError> {
        let (res, status) = match residual {
            Ok(r) if r < envelope => (f(r), "pass".to_string()),
            Ok(r) => (f(r), "fail".to_string()),
            Err(e) if numerical(&e) => {
                self.partial.get_or_insert(e.to_string());
                (f(f64::NAN), format!("error: {e}"))
            }
            Err(e) => return Err(e.into()),
        };
        self.table.rows.push(vec![
            check.to_string(),
            f(s.re),
            f(s.im),
            terms.map(|n| n.to_string()).unwrap_or_default(),
            res,
            f(envelope),
            status,
        ]);
        Ok(())
    }
}

fn zeta_check(config: &ExperimentConfig) -> Result<Output, RunError> {
    let mut out = Output::default();
    let mut rows = ZetaRows {
        table: Table::new("zeta-check.csv", columns(Experiment::ZetaCheck)),
        partial: &mut out.partial,
    };
    let suite = config.suite;
    if suite.includes(Suite::Values) {
        let two = c(2.0, 0.0);
        let want = std::f64::consts::PI.powi(2) / 6.0;
        rows.push("eta_zeta2", two, None, zeta_eta(two).map(|z| (z - want).norm()), 1e-10)?;
        let m1 = c(-1.0, 0.0);
        rows.push("fe_zeta_minus1", m1, None, zeta_fe(m1).map(|z| (z + 1.0 / 12.0).norm()), 1e-10)?;
        for k in 1..=5 {
            let s = c(-2.0 * k as f64, 0.0);
            rows.push("trivial_zero", s, None, zeta_fe(s).map(|z| z.norm()), 1e-8)?;
        }
    }
    if suite.includes(Suite::Identities) {
        let n = config.terms;
        let mu = load_table(SieveKind::Moebius, n, config.cache.as_deref())?;
        let lambda = load_table(SieveKind::Liouville, n, config.cache.as_deref())?;
        for &x in &config.s {
            let s = c(x, 0.0);
            for which in DirichletIdentity::ALL {
                let table = match which.table_kind() {
                    SieveKind::Liouville => &lambda,
                    SieveKind::Moebius => &mu,
                };
                let envelope = 10.0 * (n as f64).powf(1.0 - x);
                let r = dirichlet_identity_check(which, s, n, table).map(|r| r.residual);
                rows.push(which.name(), s, Some(n), r, envelope)?;
            }
        }
    }
    if suite.includes(Suite::Xi) {
        for s in strip_grid(50, 20.0, config.seed) {
            let r = xi_fn(s).and_then(|a| Ok((a - xi_fn(1.0 - s)?).norm()));
            rows.push("xi_symmetry", s, None, r, 1e-8)?;
        }
        for s in strip_grid(50, 20.0, config.seed) {
            // s = 1/2 + it
            let t = (s - 0.5) / c(0.0, 1.0);
            let r = e_fn(t).and_then(|a| Ok((a - e_fn(-t)?).norm()));
            rows.push("e_even", s, None, r, 1e-8)?;
        }
    }
    if suite.includes(Suite::Bose) {
        for &x in &config.s {
            let s = c(x, 0.0);
            rows.push("bose_integral", s, None, bose_integral_check(s).map(|b| b.residual), 1e-8)?;
        }
    }
    let table = rows.table;
    out.tables.push(table);
    Ok(out)
}

fn rudin_shapiro(config: &ExperimentConfig) -> Result<Output, RunError> {
    let mut out = Output::default();
    let mut t = Table::new("rudin-shapiro.csv", columns(Experiment::RudinShapiro));
    for k in 0..=config.kmax {
        let (p, q) = build_rudin_shapiro(k)?;
        let m = 1usize << (k + 3);
        let pv = eval_at_roots(&p, m)?;
        let qv = eval_at_roots(&q, m)?;
        let target = (1u64 << (k + 1)) as f64;
        let err = pv
            .values
            .iter()
            .zip(&qv.values)
            .map(|(a, b)| ((a.norm_sqr() + b.norm_sqr()) - target).abs() / target)
            .fold(0.0, f64::max);
        let sup = sup_norm_estimate(&p, 16)?;
        t.rows.push(vec![
            k.to_string(),
            f(err),
            f(sup.value),
            f(2f64.powf((k + 1) as f64 / 2.0)),
        ]);
        if k == config.kmax && config.dump_poly.is_some() {
            out.dump = Some(p);
        }
    }
    out.tables.push(t);
    Ok(out)
}
