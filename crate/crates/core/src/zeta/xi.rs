use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{c, check_finite, circle_average, gamma_fn, zeta, ComplexVal};
use crate::error::Result;

const NEAR: f64 = 1e-6;
const AVERAGE_RADIUS: f64 = 1e-3;

/// ξ(s) = s(s−1)/2 · π^{−s/2} Γ(s/2) ζ(s).
///
/// ξ is entire, but the factors are singular at s = 1 and at
/// s = 0, −2, −4, …; there ξ(0) = ξ(1) = 1/2 is returned exactly and the
/// other points are evaluated as a small circle average.
pub fn xi_fn(s: ComplexVal) -> Result<ComplexVal> {
    check_finite(s)?;
    if s == c(0.0, 0.0) || s == c(1.0, 0.0) {
        return Ok(c(0.5, 0.0));
    }
    if near_singular_factor(s) {
        return circle_average(s, AVERAGE_RADIUS, xi_direct);
    }
    xi_direct(s)
}

/// E(t) = ξ(1/2 + it).
pub fn e_fn(t: ComplexVal) -> Result<ComplexVal> {
    xi_fn(c(0.5, 0.0) + c(0.0, 1.0) * t)
}

/// `count` seeded uniform points with 0 < Re s < 1 and |Im s| ≤ `im_max`.
pub fn strip_grid(count: usize, im_max: f64, seed: u64) -> Vec<ComplexVal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let re: f64 = rng.random_range(1e-3..1.0 - 1e-3);
            let im: f64 = rng.random_range(-im_max..=im_max);
            c(re, im)
        })
        .collect()
}

fn xi_direct(s: ComplexVal) -> Result<ComplexVal> {
    let prefactor = s * (s - 1.0) / 2.0;
    let pi_pow = (-s / 2.0 * PI.ln()).exp();
    Ok(prefactor * pi_pow * gamma_fn(s / 2.0)? * zeta(s)?)
}

fn near_singular_factor(s: ComplexVal) -> bool {
    if (s - 1.0).norm() < NEAR {
        return true;
    }
    // Nearest non-positive even integer.
    let k = (s.re / 2.0).round().min(0.0) * 2.0;
    (s - k).norm() < NEAR
}
