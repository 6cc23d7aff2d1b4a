//! L^α norms on the unit circle with the normalized measure (‖1‖_α = 1).
//!
//! * [`norm_exact_even`]: α = 2m through the coefficients of P^m.
//! * [`norm_sampled`]: trapezoidal means over roots of unity, doubling the
//!   node count until the relative change drops below a tolerance.
//! * [`mz_discrete_mean`]: the raw mean (1/n) Σ_j |P(ξ_{n,j})|^α with a
//!   caller-chosen n, so undersampling (and aliasing) is possible on
//!   purpose.
//! * [`sup_norm_estimate`]: the largest sample on an oversampled grid.
//!
//! Node sums are reduced in fixed chunks and are independent of the
//! number of worker threads.

mod convolve;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polys::{eval_at_roots, eval_nodes, CoeffPoly};
use crate::sum::{abs_pow, chunked_sum};

/// Upper limit on m · degree for [`norm_exact_even`].
pub const CONVOLUTION_BUDGET: u64 = 1 << 26;
/// Default node cap for [`norm_sampled`].
pub const DEFAULT_MAX_NODES: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    ExactEven,
    Sampled,
    SupEstimate,
}

impl NormMethod {
    pub fn name(self) -> &'static str {
        match self {
            NormMethod::ExactEven => "exact_even",
            NormMethod::Sampled => "sampled",
            NormMethod::SupEstimate => "sup_estimate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    /// `f64::INFINITY` for sup estimates.
    pub alpha: f64,
    pub value: f64,
    pub method: NormMethod,
    /// 0 for exact norms; last relative change for sampled norms; the
    /// grid-spacing bound πn/M for sup estimates.
    pub rel_error_bound: f64,
    pub nodes_used: u64,
}

/// Whether `alpha` is a positive even integer.
pub fn is_even_integer(alpha: f64) -> bool {
    alpha >= 2.0 && alpha.fract() == 0.0 && (alpha as u64).is_multiple_of(2) && alpha <= u32::MAX as f64
}

/// ‖p‖_{2m} from Σ_k |c_k(p^m)|².
pub fn norm_exact_even(p: &CoeffPoly, two_m: u32) -> Result<NormEstimate> {
    if two_m == 0 || !two_m.is_multiple_of(2) {
        return Err(Error::arg(format!("exact norm needs an even positive order, got {two_m}")));
    }
    let m = two_m / 2;
    let coeffs = p.analytic_coeffs()?;
    // Dropping leading and trailing zeros multiplies by a power of z,
    // which leaves |P| unchanged on the circle.
    let lo = coeffs.iter().position(|c| *c != num_complex::Complex64::ZERO);
    let estimate = |value| NormEstimate {
        alpha: two_m as f64,
        value,
        method: NormMethod::ExactEven,
        rel_error_bound: 0.0,
        nodes_used: 0,
    };
    let Some(lo) = lo else {
        return Ok(estimate(0.0));
    };
    let hi = coeffs.iter().rposition(|c| *c != num_complex::Complex64::ZERO).unwrap();
    let trimmed = &coeffs[lo..=hi];
    let span = (hi - lo) as u64;
    if m as u64 * span > CONVOLUTION_BUDGET {
        return Err(Error::size(
            format!("self-convolution of order {m} at degree {span}"),
            CONVOLUTION_BUDGET,
        ));
    }
    let trimmed_poly = CoeffPoly::from_coeffs(trimmed.to_vec());
    let sum_sq = trimmed_poly
        .integer_coeffs()
        .and_then(|ints| convolve::int_power_sum_sq(&ints, m))
        .unwrap_or_else(|| convolve::float_power_sum_sq(trimmed, m));
    Ok(estimate(sum_sq.powf(1.0 / two_m as f64)))
}

/// Converged sampled norm with the default node cap.
pub fn norm_sampled(p: &CoeffPoly, alpha: f64, tol: f64) -> Result<NormEstimate> {
    norm_sampled_with(p, alpha, tol, DEFAULT_MAX_NODES)
}

/// ((1/M) Σ_j |P(ξ_{M,j})|^α)^{1/α}, starting at M = 4(degree + 1) and
/// doubling until two successive values differ by less than `tol`
/// relatively. Each doubling only evaluates the new (odd) nodes.
pub fn norm_sampled_with(
    p: &CoeffPoly,
    alpha: f64,
    tol: f64,
    max_nodes: usize,
) -> Result<NormEstimate> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("alpha must be positive, got {alpha}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::arg(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let mut m = 4 * (p.degree() as usize + 1);
    if m > max_nodes {
        return Err(Error::size(format!("{m} initial nodes"), max_nodes as u64));
    }
    let mut values = eval_nodes(p, m, false);
    values[0] = p.coefficient_sum();
    let mut sum = chunked_sum(&values, |v| abs_pow(*v, alpha));
    let mut norm = (sum / m as f64).powf(1.0 / alpha);
    let mut earlier = f64::NAN;
    loop {
        if 2 * m > max_nodes {
            return Err(Error::Convergence {
                what: format!("sampled L^{alpha} norm at {m} nodes"),
                previous: earlier,
                last: norm,
            });
        }
        let odd = eval_nodes(p, m, true);
        sum += chunked_sum(&odd, |v| abs_pow(*v, alpha));
        m *= 2;
        let next = (sum / m as f64).powf(1.0 / alpha);
        let change = if next == norm { 0.0 } else { (next - norm).abs() / next.abs().max(norm.abs()) };
        earlier = norm;
        norm = next;
        if change < tol {
            return Ok(NormEstimate {
                alpha,
                value: norm,
                method: NormMethod::Sampled,
                rel_error_bound: change,
                nodes_used: m as u64,
            });
        }
    }
}

/// Exact norm for even integer α, sampled norm otherwise.
pub fn norm_auto(p: &CoeffPoly, alpha: f64, tol: f64) -> Result<NormEstimate> {
    norm_auto_with(p, alpha, tol, DEFAULT_MAX_NODES)
}

pub fn norm_auto_with(p: &CoeffPoly, alpha: f64, tol: f64, max_nodes: usize) -> Result<NormEstimate> {
    if is_even_integer(alpha) {
        norm_exact_even(p, alpha as u32)
    } else {
        norm_sampled_with(p, alpha, tol, max_nodes)
    }
}

/// (1/n) Σ_{j<n} |P(ξ_{n,j})|^α.
///
/// No relation between `n_nodes` and the degree is enforced: with
/// `n_nodes ≤ degree` the monomials z^k and z^{k mod n} collide.
pub fn mz_discrete_mean(p: &CoeffPoly, alpha: f64, n_nodes: usize) -> Result<f64> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("discrete mean needs alpha > 1, got {alpha}")));
    }
    let sample = eval_at_roots(p, n_nodes)?;
    Ok(chunked_sum(&sample.values, |v| abs_pow(*v, alpha)) / n_nodes as f64)
}

/// Extremes over `trials` random polynomials Σ_{j=1}^{degree} ε_j z^j
/// (ε_j = ±1 from a seeded ChaCha8 stream) of
/// mz_discrete_mean(P, α, degree) / ‖P‖_α^α.
pub fn mz_ratio_experiment(degree: usize, alpha: f64, trials: usize, seed: u64) -> Result<(f64, f64)> {
    if degree == 0 {
        return Err(Error::arg("degree must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::arg("at least one trial is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<CoeffPoly> = (0..trials)
        .map(|_| {
            let mut signs = vec![0i8; degree + 1];
            for s in &mut signs[1..] {
                *s = if rng.random::<bool>() { 1 } else { -1 };
            }
            CoeffPoly::from_signs(&signs)
        })
        .collect();
    let ratios: Vec<f64> = polys
        .par_iter()
        .map(|p| {
            let mean = mz_discrete_mean(p, alpha, degree)?;
            let norm = norm_auto(p, alpha, 1e-10)?;
            Ok(mean / norm.value.powf(alpha))
        })
        .collect::<Result<_>>()?;
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((min, max))
}

/// max |P| over `oversample · (degree + 1)` equispaced nodes. This is a
/// lower bound on the sup norm; by Bernstein's inequality the true sup is
/// at most `value / (1 − rel_error_bound)`.
pub fn sup_norm_estimate(p: &CoeffPoly, oversample: usize) -> Result<NormEstimate> {
    if oversample < 4 {
        return Err(Error::arg(format!("oversample must be >= 4, got {oversample}")));
    }
    let degree = p.degree() as usize;
    let m = oversample * (degree + 1);
    let sample = eval_at_roots(p, m)?;
    let value = sample.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(NormEstimate {
        alpha: f64::INFINITY,
        value,
        method: NormMethod::SupEstimate,
        rel_error_bound: PI * degree as f64 / m as f64,
        nodes_used: m as u64,
    })
}
