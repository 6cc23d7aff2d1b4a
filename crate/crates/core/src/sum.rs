//! Order-stable parallel reductions.
//!
//! Inputs are cut into fixed chunks of [`CHUNK`] elements; each chunk is
//! summed left to right and the chunk partials are then summed left to
//! right. The result is identical for any rayon worker count.

use rayon::prelude::*;

pub(crate) const CHUNK: usize = 1 << 12;

pub(crate) fn chunked_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    if items.len() <= CHUNK {
        return items.iter().map(&f).sum();
    }
    let partials: Vec<f64> = items
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().map(&f).sum::<f64>())
        .collect();
    partials.iter().sum()
}

/// `|v|^alpha`, with the even-integer case done by repeated squaring of
/// `|v|^2` so that it stays exact for Gaussian integers.
#[inline]
pub(crate) fn abs_pow(v: num_complex::Complex64, alpha: f64) -> f64 {
    let sq = v.norm_sqr();
    if alpha == 2.0 {
        sq
    } else if alpha.fract() == 0.0 && alpha > 0.0 && (alpha as u64).is_multiple_of(2) && alpha <= 64.0 {
        sq.powi((alpha as i32) / 2)
    } else {
        v.norm().powf(alpha)
    }
}
