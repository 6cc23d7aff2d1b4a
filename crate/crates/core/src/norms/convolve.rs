//! m-fold self-convolution for exact even-order norms.
//!
//! ‖P‖_{2m}^{2m} = ∫|P^m|² dz = Σ_k |c_k(P^m)|², so the norm follows from
//! the coefficients of P^m. Integer coefficient vectors are multiplied
//! exactly: schoolbook in checked `i128` for small degrees, and FFT with
//! rounding back to integers when the rounding error bound stays below
//! 1/4. Anything else is done in floating point.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Degree up to which the schoolbook product is used.
pub(crate) const SCHOOLBOOK_MAX_DEGREE: usize = 512;

/// Σ_k |c_k(P^m)|² for an integer polynomial, or `None` if any
/// intermediate leaves the exactly representable range.
pub(crate) fn int_power_sum_sq(base: &[i64], m: u32) -> Option<f64> {
    let mut acc: Vec<i128> = base.iter().map(|&c| c as i128).collect();
    for _ in 1..m {
        acc = int_mul(&acc, base)?;
    }
    let mut total: i128 = 0;
    for c in &acc {
        total = total.checked_add(c.checked_mul(*c)?)?;
    }
    Some(total as f64)
}

pub(crate) fn float_power_sum_sq(base: &[Complex64], m: u32) -> f64 {
    let mut acc = base.to_vec();
    for _ in 1..m {
        acc = if base.len() - 1 <= SCHOOLBOOK_MAX_DEGREE {
            schoolbook(&acc, base)
        } else {
            fft_convolve(&acc, base)
        };
    }
    acc.iter().map(|c| c.norm_sqr()).sum()
}

fn int_mul(a: &[i128], b: &[i64]) -> Option<Vec<i128>> {
    if b.len() - 1 <= SCHOOLBOOK_MAX_DEGREE {
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(x.checked_mul(y as i128)?)?;
            }
        }
        return Some(out);
    }
    const EXACT: f64 = 9.0e15;
    if a.iter().any(|&x| (x as f64).abs() > EXACT) {
        return None;
    }
    let fa: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    let fb: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    let l2 = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let n = (a.len() + b.len() - 1).next_power_of_two() as f64;
    let bound = 10.0 * f64::EPSILON * n.log2().max(1.0) * l2(&fa) * l2(&fb);
    if bound >= 0.25 {
        return None;
    }
    fft_convolve(&fa, &fb)
        .iter()
        .map(|c| {
            let r = c.re.round();
            (r.abs() <= EXACT).then_some(r as i128)
        })
        .collect()
}

fn schoolbook(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn fft_convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len() + b.len() - 1;
    let n = len.next_power_of_two();
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut fa = a.to_vec();
    fa.resize(n, Complex64::ZERO);
    let mut fb = b.to_vec();
    fb.resize(n, Complex64::ZERO);
    forward.process(&mut fa);
    forward.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    inverse.process(&mut fa);
    let scale = 1.0 / n as f64;
    fa.truncate(len);
    fa.iter_mut().for_each(|c| *c *= scale);
    fa
}
