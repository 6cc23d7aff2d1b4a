use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::{CoeffPoly, CosineTerm, Repr};
use crate::error::{Error, Result};

/// P(ξ_{M,j}) for the M-th roots of unity ξ_{M,j} = e^{2πij/M}.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSample {
    pub m: usize,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    /// FFT for dense polynomials, table lookup for cosine sums.
    Auto,
    /// Horner's rule at every node, O(M · degree).
    Horner,
}

pub fn eval_at_roots(p: &CoeffPoly, m: usize) -> Result<RootSample> {
    eval_at_roots_with(p, m, EvalPath::Auto)
}

/// Evaluates `p` at the `m`-th roots of unity.
///
/// The automatic path zero-pads to length `m` and applies one inverse
/// FFT. When `m ≤ degree` the coefficients are first folded modulo `m`
/// (z^k and z^{k mod m} agree at every node), which is exact and avoids
/// the O(m · degree) cost of direct summation. The value at ξ_{M,0} = 1
/// is always the directly summed coefficient sum.
pub fn eval_at_roots_with(p: &CoeffPoly, m: usize, path: EvalPath) -> Result<RootSample> {
    if m == 0 {
        return Err(Error::arg("node count must be at least 1"));
    }
    let mut values = match path {
        EvalPath::Auto => eval_nodes(p, m, false),
        EvalPath::Horner => horner_nodes(p, m),
    };
    values[0] = p.coefficient_sum();
    Ok(RootSample { m, values })
}

/// Values at e^{2πi(j + s)/m} for j < m, with s = 1/2 when `half_shift`
/// is set and s = 0 otherwise. The shifted nodes are exactly the nodes
/// of the 2m-th roots of unity that are not m-th roots.
pub(crate) fn eval_nodes(p: &CoeffPoly, m: usize, half_shift: bool) -> Vec<Complex64> {
    match &p.repr {
        Repr::Dense(c) => dense_fft(c, m, half_shift),
        Repr::Cosine(t) => cosine_nodes(t, m, half_shift),
    }
}

fn dense_fft(coeffs: &[Complex64], m: usize, half_shift: bool) -> Vec<Complex64> {
    let mut buf = vec![Complex64::ZERO; m];
    for (k, &c) in coeffs.iter().enumerate() {
        let c = if half_shift { c * cis_frac(k as u64, 2 * m as u64) } else { c };
        buf[k % m] += c;
    }
    // rustfft's inverse transform is the unnormalized Σ x_k e^{+2πijk/m}.
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    buf
}

fn horner_nodes(p: &CoeffPoly, m: usize) -> Vec<Complex64> {
    (0..m)
        .into_par_iter()
        .map(|j| p.eval(cis_frac(j as u64, m as u64)))
        .collect()
}

fn cosine_nodes(terms: &[CosineTerm], m: usize, half_shift: bool) -> Vec<Complex64> {
    let denom = if half_shift { 2 * m as u64 } else { m as u64 };
    let table = TrigTable::new(denom);
    (0..m as u64)
        .into_par_iter()
        .map(|j| {
            let step = if half_shift { 2 * j + 1 } else { j };
            let v: f64 = terms
                .iter()
                .map(|t| {
                    let r = ((t.frequency as u128 * step as u128) % denom as u128) as u64;
                    t.amplitude * table.cos(r)
                })
                .sum();
            Complex64::new(v, 0.0)
        })
        .collect()
}

/// e^{2πi r/d} with r reduced modulo d before scaling.
pub(crate) fn cis_frac(r: u64, d: u64) -> Complex64 {
    let r = r % d;
    let (s, c) = (2.0 * PI * r as f64 / d as f64).sin_cos();
    Complex64::new(c, s)
}

/// cos(2πr/d) for any residue r < d from two tables of size ~√d:
/// r = h·b + l and cos(a + b) = cos a cos b − sin a sin b.
struct TrigTable {
    block: u64,
    coarse: Vec<Complex64>,
    fine: Vec<Complex64>,
}

impl TrigTable {
    fn new(d: u64) -> Self {
        let block = (d as f64).sqrt().ceil().max(1.0) as u64;
        let coarse = (0..=d / block).map(|h| cis_frac(h * block, d)).collect();
        let fine = (0..block).map(|l| cis_frac(l, d)).collect();
        TrigTable { block, coarse, fine }
    }

    #[inline]
    fn cos(&self, r: u64) -> f64 {
        let a = self.coarse[(r / self.block) as usize];
        let b = self.fine[(r % self.block) as usize];
        a.re * b.re - a.im * b.im
    }
}
