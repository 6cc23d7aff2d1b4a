use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::norms::norm_sampled;
use crate::polys::{build_lacunary, GapKind};
use crate::zeta::{c, gamma_fn};

/// Relative stopping tolerance for the sampled lacunary norm. |P|^α has
/// kinks at the zeros of P, so the sampled mean converges only like M^{−2}.
pub const LACUNARY_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LacunaryRecord {
    pub terms: u32,
    pub alpha: f64,
    /// ‖P/‖P‖₂‖_α^α from the sampled norm.
    pub empirical: f64,
    pub empirical_rel_err: f64,
    /// Γ(α/2 + 1).
    pub gamma_reference: f64,
    /// Monte-Carlo mean of |G|^α, G standard normal.
    pub mc_reference: f64,
    /// α below 1, outside the range where the limit is asserted.
    pub below_range: bool,
}

/// Normalized α-th moment of a lacunary cosine sum next to two limit
/// references. Nothing is asserted here; callers compare.
pub fn lacunary_limit(
    terms: u32,
    alpha: f64,
    gap: GapKind,
    mc_trials: usize,
    seed: u64,
) -> Result<LacunaryRecord> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::arg(format!("lacunary limit needs alpha in (0, 2), got {alpha}")));
    }
    if mc_trials == 0 {
        return Err(Error::arg("Monte-Carlo reference needs at least one draw"));
    }
    let p = build_lacunary(terms, gap)?;
    let norm = norm_sampled(&p, alpha, LACUNARY_TOL)?;
    let l2 = p.l2_norm_sqr().sqrt();
    let empirical = (norm.value / l2).powf(alpha);
    let gamma_reference = gamma_fn(c(alpha / 2.0 + 1.0, 0.0))?.re;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0f64;
    for _ in 0..mc_trials {
        let g: f64 = rng.sample(StandardNormal);
        acc += g.abs().powf(alpha);
    }
    Ok(LacunaryRecord {
        terms,
        alpha,
        empirical,
        empirical_rel_err: norm.rel_error_bound * alpha,
        gamma_reference,
        mc_reference: acc / mc_trials as f64,
        below_range: alpha < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cosine() {
        let r = lacunary_limit(1, 1.0, GapKind::Geometric(2), 1000, 7).unwrap();
        assert!((r.empirical - 0.9003163161571061).abs() < 1e-5);
        assert!((r.gamma_reference - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        assert!(!r.below_range);
    }

    #[test]
    fn mc_reference_near_gaussian_moment() {
        let r = lacunary_limit(4, 1.0, GapKind::Geometric(2), 200_000, 1).unwrap();
        // E|G| = sqrt(2/π).
        assert!((r.mc_reference - (2.0 / std::f64::consts::PI).sqrt()).abs() < 0.01);
        let again = lacunary_limit(4, 1.0, GapKind::Geometric(2), 200_000, 1).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn validation() {
        assert!(lacunary_limit(4, 2.0, GapKind::Geometric(2), 10, 1).is_err());
        assert!(lacunary_limit(4, 0.0, GapKind::Geometric(2), 10, 1).is_err());
        assert!(lacunary_limit(4, 1.0, GapKind::Geometric(2), 0, 1).is_err());
        assert!(lacunary_limit(4, 0.5, GapKind::Geometric(2), 10, 1).unwrap().below_range);
    }
}
