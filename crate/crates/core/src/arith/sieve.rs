use rayon::prelude::*;

use super::SieveKind;

/// Cache-sized unit of work inside one segment.
const BLOCK: usize = 1 << 15;

/// Linear (Euler) sieve. Every composite `i·p` is visited exactly once,
/// with `p` its smallest prime factor, so
/// λ(i·p) = −λ(i) and μ(i·p) = 0 if p | i else −μ(i).
pub(super) fn linear(kind: SieveKind, n: usize) -> Vec<i8> {
    let mut values = vec![0i8; n + 1];
    if n == 0 {
        return values;
    }
    values[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            values[i] = -1;
        }
        let vi = values[i];
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                values[ip] = match kind {
                    SieveKind::Liouville => -vi,
                    SieveKind::Moebius => 0,
                };
                break;
            }
            values[ip] = -vi;
        }
    }
    values
}

/// Segmented sieve over `[1, n]`. Segments are processed in order; the
/// blocks of one segment are filled in parallel and share only the
/// read-only base primes.
pub(super) fn segmented(kind: SieveKind, n: usize, segment_len: usize) -> Vec<i8> {
    let mut values = vec![0i8; n + 1];
    let base = primes_up_to((n as u64).isqrt() as usize);
    for (s, segment) in values.chunks_mut(segment_len).enumerate() {
        let seg_lo = s * segment_len;
        segment
            .par_chunks_mut(BLOCK)
            .enumerate()
            .for_each(|(b, block)| fill_block(kind, (seg_lo + b * BLOCK) as u64, block, &base));
    }
    values[0] = 0;
    values
}

/// Fills `block[i]` with f(lo + i). `smooth[i]` accumulates the part of
/// `lo + i` made of base primes; any cofactor left over is a single
/// prime above √n and contributes one more sign flip.
fn fill_block(kind: SieveKind, lo: u64, block: &mut [i8], base: &[usize]) {
    let hi = lo + block.len() as u64;
    let mut smooth = vec![1u32; block.len()];
    block.fill(1);
    let start = lo.max(1);
    for &p in base {
        let p = p as u64;
        if p >= hi {
            break;
        }
        match kind {
            SieveKind::Liouville => {
                let mut pk = p;
                loop {
                    let mut m = start.div_ceil(pk) * pk;
                    while m < hi {
                        let i = (m - lo) as usize;
                        smooth[i] *= p as u32;
                        block[i] = -block[i];
                        m += pk;
                    }
                    match pk.checked_mul(p) {
                        Some(next) if next < hi => pk = next,
                        _ => break,
                    }
                }
            }
            SieveKind::Moebius => {
                let mut m = start.div_ceil(p) * p;
                while m < hi {
                    let i = (m - lo) as usize;
                    smooth[i] *= p as u32;
                    block[i] = -block[i];
                    m += p;
                }
                let sq = p * p;
                let mut m = start.div_ceil(sq) * sq;
                while m < hi {
                    block[(m - lo) as usize] = 0;
                    m += sq;
                }
            }
        }
    }
    for (i, (v, &s)) in block.iter_mut().zip(&smooth).enumerate() {
        let n = lo + i as u64;
        if n == 0 {
            *v = 0;
        } else if *v != 0 && (s as u64) < n {
            *v = -*v;
        }
    }
}

pub(super) fn primes_up_to(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return Vec::new();
    }
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut p = 2;
    while p * p <= limit {
        if is_prime[p] {
            for m in (p * p..=limit).step_by(p) {
                is_prime[m] = false;
            }
        }
        p += 1;
    }
    is_prime
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmented_matches_linear() {
        for kind in [SieveKind::Liouville, SieveKind::Moebius] {
            let linear = linear(kind, 200_000);
            // Odd segment length so block and segment edges fall everywhere.
            for seg in [1_001, 40_000, 65_536, 1 << 20] {
                assert_eq!(segmented(kind, 200_000, seg), linear, "{kind:?} seg {seg}");
            }
        }
    }

    #[test]
    fn tiny_ranges() {
        assert_eq!(linear(SieveKind::Liouville, 1), vec![0, 1]);
        assert_eq!(segmented(SieveKind::Moebius, 1, 4), vec![0, 1]);
        assert_eq!(segmented(SieveKind::Liouville, 12, 5), linear(SieveKind::Liouville, 12));
    }
}
