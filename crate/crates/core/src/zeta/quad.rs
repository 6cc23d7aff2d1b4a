//! Adaptive Gauss–Kronrod (7/15) quadrature and the Bose-integral check
//! ζ(s)Γ(s) = ∫₀^∞ x^{s−1} / (e^x − 1) dx.

use num_complex::Complex64;

use super::{check_finite, gamma_fn, zeta_eta, ComplexVal};
use crate::error::{Error, Result};

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
/// Gauss weights for the odd-indexed Kronrod nodes.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 2000;

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    for i in 0..7 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += pair * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += pair * GAUSS_WEIGHTS[i / 2];
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// ∫_a^b f by globally adaptive bisection until the summed error
/// estimate is below `max(abs_tol, rel_tol · |I|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut intervals = vec![{
        let (v, e) = gk15(&f, a, b);
        (a, b, v, e)
    }];
    loop {
        let total: Complex64 = intervals.iter().map(|iv| iv.2).sum();
        let err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(total);
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Convergence {
                what: format!("quadrature on [{a}, {b}]"),
                previous: total.norm(),
                last: err,
            });
        }
        let (worst, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        for (l, h) in [(lo, mid), (mid, hi)] {
            let (v, e) = gk15(&f, l, h);
            intervals.push((l, h, v, e));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseCheck {
    pub integral: ComplexVal,
    pub closed_form: ComplexVal,
    pub residual: f64,
}

/// Taylor coefficients of x / (e^x − 1), i.e. B_k / k!, up to `count`.
fn bernoulli_over_factorial(count: usize) -> Vec<f64> {
    let mut fact = vec![1.0f64; count + 2];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * i as f64;
    }
    let mut a = vec![1.0f64];
    for k in 1..count {
        if k >= 3 && k % 2 == 1 {
            a.push(0.0);
            continue;
        }
        let s: f64 = (0..k).map(|j| a[j] / fact[k + 1 - j]).sum();
        a.push(-s);
    }
    a
}

/// Integrates x^{s−1}/(e^x − 1) over (0, ∞) and compares with
/// ζ(s)Γ(s). On (0, 1] the integrand is x^{s−2} Σ_k (B_k/k!) x^k, which
/// integrates termwise to Σ_k (B_k/k!)/(s − 1 + k); (1, X] is done by
/// adaptive quadrature, with X chosen so the dropped tail is below 1e-17.
pub fn bose_integral_check(s: ComplexVal) -> Result<BoseCheck> {
    check_finite(s)?;
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("Bose integral needs Re(s) > 1, got s = {s}")));
    }
    let head: Complex64 = bernoulli_over_factorial(48)
        .iter()
        .enumerate()
        .rev()
        .map(|(k, &a)| a / (s - 1.0 + k as f64))
        .sum();
    let sm1 = s - 1.0;
    let integrand = |x: f64| (sm1 * x.ln()).exp() / x.exp_m1();
    let upper = tail_cutoff(s.re);
    // Split at integer points so each panel sees a single hump.
    let mut body = Complex64::ZERO;
    let mut lo = 1.0;
    while lo < upper {
        let hi = (lo + 8.0).min(upper);
        body += integrate(integrand, lo, hi, 1e-18, 1e-15)?;
        lo = hi;
    }
    let integral = head + body;
    let closed_form = zeta_eta(s)? * gamma_fn(s)?;
    Ok(BoseCheck {
        integral,
        closed_form,
        residual: (integral - closed_form).norm(),
    })
}

/// Smallest X ≥ 40 with X^{σ−1} e^{−X} < 1e-17.
fn tail_cutoff(sigma: f64) -> f64 {
    let mut x = 40.0f64;
    while (sigma - 1.0) * x.ln() - x > -39.0 {
        x += 5.0;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::c;
    use std::f64::consts::PI;

    #[test]
    fn gk_polynomial_exact() {
        let v = integrate(|x| c(x.powi(5), 0.0), 0.0, 2.0, 1e-15, 1e-15).unwrap();
        assert!((v.re - 64.0 / 6.0).abs() < 1e-13);
    }

    #[test]
    fn gk_gaussian() {
        let v = integrate(|x| c((-x * x).exp(), 0.0), -10.0, 10.0, 1e-15, 1e-15).unwrap();
        assert!((v.re - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn bernoulli_coefficients() {
        let a = bernoulli_over_factorial(8);
        let want = [1.0, -0.5, 1.0 / 12.0, 0.0, -1.0 / 720.0, 0.0, 1.0 / 30240.0, 0.0];
        for (x, y) in a.iter().zip(want) {
            assert!((x - y).abs() <= 1e-14 * y.abs());
        }
    }

    #[test]
    fn bose_values() {
        let two = bose_integral_check(c(2.0, 0.0)).unwrap();
        assert!((two.integral.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(two.residual < 1e-8);
        assert!(bose_integral_check(c(4.0, 0.0)).unwrap().residual < 1e-8);
        assert!(bose_integral_check(c(1.01, 0.0)).unwrap().residual < 1e-5);
        assert!(bose_integral_check(c(1.0, 0.0)).is_err());
    }
}
