//! Γ, ζ, ξ and E in double precision.
//!
//! ζ is available through four routes, each with its own domain:
//!
//! | route            | domain          | method                                   |
//! |------------------|-----------------|------------------------------------------|
//! | [`zeta_series`]  | Re s > 1        | partial sum plus integral tail           |
//! | [`zeta_euler`]   | Re s > 1        | truncated Euler product                  |
//! | [`zeta_eta`]     | Re s > 0, s ≠ 1 | accelerated alternating series           |
//! | [`zeta_fe`]      | Re s < 1/2      | functional equation onto [`zeta_eta`]   |
//!
//! [`zeta`] picks the alternating series on Re s ≥ 1/2 and the
//! functional equation to the left of it.

mod dirichlet;
mod gamma;
mod quad;
mod series;
mod xi;

pub use dirichlet::{dirichlet_identity_check, DirichletCheck, DirichletIdentity};
pub use gamma::gamma_fn;
pub use quad::{bose_integral_check, integrate, BoseCheck};
pub use series::{zeta_eta, zeta_euler, zeta_fe, zeta_series, SeriesValue};
pub use xi::{e_fn, strip_grid, xi_fn};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexVal = Complex64;

pub fn c(re: f64, im: f64) -> ComplexVal {
    Complex64::new(re, im)
}

pub fn zeta(s: ComplexVal) -> Result<ComplexVal> {
    if s.re >= 0.5 {
        zeta_eta(s)
    } else {
        zeta_fe(s)
    }
}

pub(crate) fn check_finite(s: ComplexVal) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {s}")))
    }
}

/// sin(πz) with the real part reduced modulo 2 first, so zeros at the
/// integers come out exact.
pub(crate) fn sin_pi(z: ComplexVal) -> ComplexVal {
    let x = z.re - 2.0 * (z.re / 2.0).round();
    let (s, co) = (std::f64::consts::PI * x).sin_cos();
    let y = std::f64::consts::PI * z.im;
    let (s, co) = if x.fract() == 0.0 { (0.0, co) } else { (s, co) };
    c(s * y.cosh(), co * y.sinh())
}

/// Mean of `f` over four points on a circle of radius `delta` around
/// `s`. For analytic f this equals f(s) up to O(δ⁴), and it sidesteps
/// removable singularities at `s` itself.
pub(crate) fn circle_average<F>(s: ComplexVal, delta: f64, f: F) -> Result<ComplexVal>
where
    F: Fn(ComplexVal) -> Result<ComplexVal>,
{
    let offsets = [c(delta, 0.0), c(0.0, delta), c(-delta, 0.0), c(0.0, -delta)];
    let mut acc = Complex64::ZERO;
    for o in offsets {
        acc += f(s + o)?;
    }
    Ok(acc / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_exact_zeros() {
        for k in -6..=6 {
            assert_eq!(sin_pi(c(k as f64, 0.0)).re, 0.0);
        }
        let v = sin_pi(c(0.5, 0.0));
        assert!((v.re - 1.0).abs() < 1e-16);
        let z = c(0.3, 0.7);
        let direct = (z * std::f64::consts::PI).sin();
        assert!((sin_pi(z) - direct).norm() < 1e-14);
    }

    #[test]
    fn dispatch() {
        let pi2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((zeta(c(2.0, 0.0)).unwrap().re - pi2).abs() < 1e-13);
        assert!((zeta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-13);
        assert!(zeta(c(f64::NAN, 0.0)).is_err());
    }
}
