use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::{c, check_finite, circle_average, gamma_fn, sin_pi, ComplexVal};
use crate::arith::primes_up_to;
use crate::error::{Error, Result};

/// Denominators 1 − 2^{1−s} smaller than this are treated as removable
/// points of the alternating-series formula.
const REMOVABLE_THRESHOLD: f64 = 1e-6;
const AVERAGE_RADIUS: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: ComplexVal,
    /// Estimate of the remaining error, N^{−Re s} (1/2 + |s| / (6N)).
    pub tail_bound: f64,
}

fn require_convergent(s: ComplexVal, what: &str) -> Result<()> {
    check_finite(s)?;
    if s.re > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs Re(s) > 1, got s = {s}")))
    }
}

#[inline]
pub(crate) fn pow_neg(n: u64, s: ComplexVal) -> ComplexVal {
    (-s * (n as f64).ln()).exp()
}

/// Σ_{n ≤ N} n^{−s} + N^{1−s}/(s − 1).
pub fn zeta_series(s: ComplexVal, n: u64) -> Result<SeriesValue> {
    require_convergent(s, "zeta series")?;
    if n == 0 {
        return Err(Error::arg("series needs at least one term"));
    }
    // Smallest terms first.
    let head: ComplexVal = (1..=n).rev().map(|k| pow_neg(k, s)).sum();
    let nf = n as f64;
    let tail = ((1.0 - s) * nf.ln()).exp() / (s - 1.0);
    Ok(SeriesValue {
        value: head + tail,
        tail_bound: nf.powf(-s.re) * (0.5 + s.norm() / (6.0 * nf)),
    })
}

/// Π_{p ≤ prime_limit} (1 − p^{−s})^{−1}.
pub fn zeta_euler(s: ComplexVal, prime_limit: u64) -> Result<ComplexVal> {
    require_convergent(s, "Euler product")?;
    let inverse: ComplexVal = primes_up_to(prime_limit)
        .into_iter()
        .rev()
        .map(|p| 1.0 - pow_neg(p, s))
        .product();
    Ok(1.0 / inverse)
}

/// ζ(s) = η(s) / (1 − 2^{1−s}) on Re s > 0, with η summed by Borwein's
/// accelerated alternating series.
pub fn zeta_eta(s: ComplexVal) -> Result<ComplexVal> {
    check_finite(s)?;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!("alternating series needs Re(s) > 0, got s = {s}")));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::Pole {
            at: s,
            residue: c(1.0, 0.0),
        });
    }
    if (s - 1.0).norm() < REMOVABLE_THRESHOLD {
        return Err(Error::Conditioning(format!("s = {s} is within {REMOVABLE_THRESHOLD:e} of the pole at 1")));
    }
    let denom = 1.0 - ((1.0 - s) * LN_2).exp();
    if denom.norm() < REMOVABLE_THRESHOLD {
        // s = 1 + 2πik/ln 2: η and the denominator vanish together.
        return circle_average(s, AVERAGE_RADIUS, zeta_eta);
    }
    Ok(eta_borwein(s) / denom)
}

/// Number of terms for an absolute error near 1e-17 · |η|: the error
/// decays like (3 + √8)^{−n} but grows like e^{π|t|} in the height t.
fn borwein_terms(t: f64) -> usize {
    let t = t.abs();
    let nats = PI * t + (3.0 * (1.0 + 2.0 * t)).ln() + 40.0;
    ((nats / (3.0 + 8f64.sqrt()).ln()).ceil() as usize).max(20)
}

fn eta_borwein(s: ComplexVal) -> ComplexVal {
    let n = borwein_terms(s.im);
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    d.push(term);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
        d.push(d[i - 1] + term);
    }
    let dn = d[n];
    let mut acc = Complex64::ZERO;
    for k in (0..n).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += pow_neg(k as u64 + 1, s) * (sign * (d[k] - dn));
    }
    -acc / dn
}

/// ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s) for Re s < 1/2, with the
/// right-hand ζ evaluated by [`zeta_eta`].
pub fn zeta_fe(s: ComplexVal) -> Result<ComplexVal> {
    check_finite(s)?;
    if s.re >= 0.5 {
        return Err(Error::Domain(format!("functional equation path needs Re(s) < 1/2, got s = {s}")));
    }
    if s == Complex64::ZERO {
        return Ok(c(-0.5, 0.0));
    }
    if s.norm() < REMOVABLE_THRESHOLD {
        return circle_average(s, AVERAGE_RADIUS, zeta_fe);
    }
    let two_s = (s * LN_2).exp();
    let pi_s = ((s - 1.0) * PI.ln()).exp();
    Ok(two_s * pi_s * sin_pi(s / 2.0) * gamma_fn(1.0 - s)? * zeta_eta(1.0 - s)?)
}
