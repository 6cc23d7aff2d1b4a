//! Semi-flatness experiments on the Liouville and Möbius polynomials
//! P_N(z) = Σ_{j=1}^{N} f(j) z^j.
//!
//! * [`semiflat_curve`]: ‖P_N‖_α / √N over a grid of N, with a log-log
//!   growth exponent.
//! * [`lower_bound_chain`]: the single-node lower bound
//!   |L(N)|^α / N^{α/2+1} against the N-node discrete mean and the true
//!   norm of P_N/√N.
//! * [`littlewood_rhs`]: |L(N)| / N^{1/2 + 1/α}.
//! * [`cvt_statistic`]: N^{−1−α/2} Σ_{k=1}^{N−1} |P_{N−1}(ξ_{N,k})|^α,
//!   i.e. the N-node sum of P_{N−1} with the node at 1 removed.
//! * [`lacunary_limit`]: normalized moments of lacunary cosine sums.
//!
//! Curve points are independent, computed in parallel and assembled in
//! grid order.

mod fit;
mod lacunary;

pub use fit::growth_exponent_fit;
pub use lacunary::{lacunary_limit, LacunaryRecord, LACUNARY_TOL};

use rayon::prelude::*;

use crate::arith::{SieveKind, SieveTable};
use crate::error::{Error, Result};
use crate::norms::{mz_discrete_mean, norm_auto, norm_auto_with, NormMethod, DEFAULT_MAX_NODES};
use crate::polys::{build_liouville_poly, build_mobius_poly, eval_at_roots, CoeffPoly};
use crate::sum::{abs_pow, chunked_sum};

/// Default relative tolerance for sampled norms.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOptions {
    pub tol: f64,
    pub max_nodes: usize,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions {
            tol: DEFAULT_TOL,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Liouville,
    Moebius,
}

impl Family {
    pub fn table_kind(self) -> SieveKind {
        match self {
            Family::Liouville => SieveKind::Liouville,
            Family::Moebius => SieveKind::Moebius,
        }
    }

    pub fn name(self) -> &'static str {
        self.table_kind().name()
    }

    pub fn build(self, n: u64, table: &SieveTable) -> Result<CoeffPoly> {
        match self {
            Family::Liouville => build_liouville_poly(n, table),
            Family::Moebius => build_mobius_poly(n, table),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointStatus {
    Ok,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub n: u64,
    /// ‖P_N‖_α / √N; NaN when the point failed.
    pub stat: f64,
    pub method: Option<NormMethod>,
    pub rel_err: f64,
    pub status: PointStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatnessCurve {
    pub alpha: f64,
    pub family: Family,
    pub points: Vec<CurvePoint>,
    /// Log-log slope and RMS residual over the successful points, when
    /// there are at least three of them.
    pub fit: Option<(f64, f64)>,
}

impl FlatnessCurve {
    pub fn fitted_exponent(&self) -> Option<f64> {
        self.fit.map(|f| f.0)
    }

    pub fn fit_residual(&self) -> Option<f64> {
        self.fit.map(|f| f.1)
    }

    pub fn all_ok(&self) -> bool {
        self.points.iter().all(|p| p.status == PointStatus::Ok)
    }
}

/// ⌊2^{k/2}⌋ for k = 0, 1, … up to `n_max`, duplicates removed.
pub fn default_grid(n_max: u64) -> Vec<u64> {
    let mut grid: Vec<u64> = Vec::new();
    for k in 0..128u32 {
        let base = 1u64.checked_shl(k / 2).unwrap_or(u64::MAX);
        let n = if k % 2 == 0 {
            base
        } else {
            (base as f64 * std::f64::consts::SQRT_2).floor() as u64
        };
        if n > n_max {
            break;
        }
        if grid.last() != Some(&n) {
            grid.push(n);
        }
    }
    grid
}

/// ⌊min · ratio^k⌋ up to `max`, duplicates removed.
pub fn geometric_grid(min: u64, max: u64, ratio: f64) -> Result<Vec<u64>> {
    if min == 0 || max < min {
        return Err(Error::arg(format!("grid needs 1 <= min <= max, got {min}..{max}")));
    }
    if !(ratio > 1.0 && ratio.is_finite()) {
        return Err(Error::arg(format!("grid ratio must exceed 1, got {ratio}")));
    }
    let mut grid: Vec<u64> = Vec::new();
    let mut k = 0i32;
    loop {
        let x = min as f64 * ratio.powi(k);
        // Guard against 3.9999999 for an intended 4.
        let n = (x * (1.0 + 1e-12)).floor() as u64;
        if n > max {
            break;
        }
        if grid.last() != Some(&n) {
            grid.push(n);
        }
        k += 1;
    }
    Ok(grid)
}

fn check_table(family: Family, table: &SieveTable) -> Result<()> {
    if table.kind() != family.table_kind() {
        return Err(Error::arg(format!(
            "{} family needs a {} table",
            family.name(),
            family.table_kind().name()
        )));
    }
    Ok(())
}

fn check_grid(grid: &[u64], n_max: u64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::arg("N grid is empty"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::arg("N grid must be strictly increasing"));
    }
    if grid[0] == 0 || *grid.last().unwrap() > n_max {
        return Err(Error::arg(format!("N grid must lie in 1..={n_max}")));
    }
    Ok(())
}

pub fn semiflat_curve(family: Family, alpha: f64, grid: &[u64], table: &SieveTable) -> Result<FlatnessCurve> {
    semiflat_curve_with(family, alpha, grid, table, CurveOptions::default())
}

/// stat(N) = ‖P_N‖_α / √N for every N in `grid`, exact for even integer
/// α and sampled to `opts.tol` otherwise. A failing point is kept, flagged,
/// and left out of the fit.
pub fn semiflat_curve_with(
    family: Family,
    alpha: f64,
    grid: &[u64],
    table: &SieveTable,
    opts: CurveOptions,
) -> Result<FlatnessCurve> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("alpha must be positive, got {alpha}")));
    }
    check_table(family, table)?;
    check_grid(grid, table.n_max())?;
    let points: Vec<CurvePoint> = grid
        .par_iter()
        .map(|&n| {
            let result = family
                .build(n, table)
                .and_then(|p| norm_auto_with(&p, alpha, opts.tol, opts.max_nodes));
            match result {
                Ok(est) => CurvePoint {
                    n,
                    stat: est.value / (n as f64).sqrt(),
                    method: Some(est.method),
                    rel_err: est.rel_error_bound,
                    status: PointStatus::Ok,
                },
                Err(e) => CurvePoint {
                    n,
                    stat: f64::NAN,
                    method: None,
                    rel_err: f64::NAN,
                    status: PointStatus::Failed(e.to_string()),
                },
            }
        })
        .collect();
    let good: Vec<(u64, f64)> = points
        .iter()
        .filter(|p| p.status == PointStatus::Ok && p.stat > 0.0)
        .map(|p| (p.n, p.stat))
        .collect();
    let fit = if good.len() >= 3 {
        growth_exponent_fit(&good).ok()
    } else {
        None
    };
    Ok(FlatnessCurve {
        alpha,
        family,
        points,
        fit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRecord {
    pub n: u64,
    pub alpha: f64,
    /// L(N), which is P_N(1).
    pub partial_sum: i64,
    /// |L(N)|^α / N: the ξ_{N,0} term of the discrete mean alone.
    pub single_term: f64,
    /// (1/N) Σ_j |P_N(ξ_{N,j})|^α.
    pub node_mean: f64,
    /// |L(N)|^α / N^{α/2+1}.
    pub lhs: f64,
    /// node_mean / N^{α/2}, the discrete mean of P_N/√N.
    pub discrete_mean: f64,
    /// ‖P_N/√N‖_α^α.
    pub norm_alpha: f64,
}

impl ChainRecord {
    /// norm_alpha / lhs, the empirical lower constant; `None` when L(N) = 0.
    pub fn ratio(&self) -> Option<f64> {
        (self.lhs > 0.0).then(|| self.norm_alpha / self.lhs)
    }
}

/// Lower-bound chain for the Liouville polynomial of size `n`.
///
/// `single_term ≤ node_mean` holds exactly in floating point: the node
/// at 1 is the directly summed coefficient sum, the other terms are
/// non-negative, and both sides share the same final division.
pub fn lower_bound_chain(n: u64, alpha: f64, table: &SieveTable) -> Result<ChainRecord> {
    check_table(Family::Liouville, table)?;
    let p = build_liouville_poly(n, table)?;
    let nf = n as f64;
    let at_one = p.coefficient_sum();
    let single_term = abs_pow(at_one, alpha) / nf;
    let node_mean = mz_discrete_mean(&p, alpha, n as usize)?;
    let scale = nf.powf(alpha / 2.0);
    let norm = norm_auto(&p, alpha, DEFAULT_TOL)?;
    Ok(ChainRecord {
        n,
        alpha,
        partial_sum: at_one.re as i64,
        single_term,
        node_mean,
        lhs: single_term / scale,
        discrete_mean: node_mean / scale,
        norm_alpha: norm.value.powf(alpha) / scale,
    })
}

/// |L(N)| / N^{1/2 + 1/α}.
pub fn littlewood_rhs(n: u64, alpha: f64, table: &SieveTable) -> Result<f64> {
    check_table(Family::Liouville, table)?;
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("alpha must exceed 1, got {alpha}")));
    }
    let l = table.partial_sum(n)?;
    Ok(l.unsigned_abs() as f64 / (n as f64).powf(0.5 + 1.0 / alpha))
}

fn cvt_parts(n: u64, alpha: f64, table: &SieveTable) -> Result<(f64, CoeffPoly)> {
    check_table(Family::Liouville, table)?;
    if n < 2 {
        return Err(Error::arg(format!("statistic needs N >= 2, got {n}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("alpha must be positive, got {alpha}")));
    }
    let p = build_liouville_poly(n - 1, table)?;
    let sample = eval_at_roots(&p, n as usize)?;
    let off_one = chunked_sum(&sample.values[1..], |v| abs_pow(*v, alpha));
    Ok((off_one / (n as f64).powf(1.0 + alpha / 2.0), p))
}

/// N^{−1−α/2} Σ_{k=1}^{N−1} |Σ_{m=1}^{N−1} λ(m) ξ_{N,k}^m|^α.
pub fn cvt_statistic(n: u64, alpha: f64, table: &SieveTable) -> Result<f64> {
    cvt_parts(n, alpha, table).map(|(s, _)| s)
}

/// Relative residual of
/// cvt_statistic + |L(N−1)|^α / N^{1+α/2} = N^{−α/2} · mz_discrete_mean(P_{N−1}, α, N).
pub fn cvt_decomposition_residual(n: u64, alpha: f64, table: &SieveTable) -> Result<f64> {
    let (stat, p) = cvt_parts(n, alpha, table)?;
    let nf = n as f64;
    let k0 = abs_pow(p.coefficient_sum(), alpha) / nf.powf(1.0 + alpha / 2.0);
    let total = mz_discrete_mean(&p, alpha, n as usize)? / nf.powf(alpha / 2.0);
    let lhs = stat + k0;
    Ok(if total == 0.0 { lhs.abs() } else { (lhs - total).abs() / total.abs() })
}
