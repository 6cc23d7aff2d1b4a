//! Liouville and Möbius functions on `[1, n_max]`.
//!
//! Tables are built by a linear sieve for small ranges and by a
//! segmented sieve above [`SieveConfig::segment_len`], so ranges of
//! 10^8 and beyond fit in roughly one byte per entry. Index 0 is never
//! stored: both functions are defined on positive integers only.

mod cache;
mod oracle;
mod sieve;

pub use cache::{read_cache, write_cache, CACHE_MAGIC};
pub use oracle::{liouville_oracle, moebius_oracle};

use crate::error::{Error, Result};

/// Largest supported `n_max`; the segmented sieve keeps per-entry
/// cofactors in `u32`.
pub const MAX_N: u64 = u32::MAX as u64;

/// Above this many entries, prefix sums are kept only at every
/// [`SPARSE_STRIDE`]-th index and completed by local summation.
pub const DENSE_PREFIX_LIMIT: u64 = 10_000_000;
pub const SPARSE_STRIDE: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SieveKind {
    Liouville,
    Moebius,
}

impl SieveKind {
    pub fn name(self) -> &'static str {
        match self {
            SieveKind::Liouville => "liouville",
            SieveKind::Moebius => "moebius",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Tables larger than this are produced segment by segment.
    pub segment_len: usize,
    /// Upper bound on the bytes the finished table may occupy.
    pub memory_budget: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: 1 << 26,
            memory_budget: 1 << 32,
        }
    }
}

impl SieveConfig {
    fn check(&self, n_max: u64) -> Result<()> {
        if n_max == 0 {
            return Err(Error::size("n_max must be at least 1", MAX_N));
        }
        if n_max > MAX_N {
            return Err(Error::size(format!("n_max = {n_max}"), MAX_N));
        }
        let bytes = estimated_bytes(n_max);
        if bytes > self.memory_budget {
            return Err(Error::size(
                format!("sieve table for n_max = {n_max} needs {bytes} bytes"),
                self.memory_budget,
            ));
        }
        if self.segment_len == 0 {
            return Err(Error::arg("segment_len must be positive"));
        }
        Ok(())
    }
}

fn estimated_bytes(n_max: u64) -> u64 {
    let prefix = if n_max <= DENSE_PREFIX_LIMIT {
        8 * (n_max + 1)
    } else {
        8 * (n_max / SPARSE_STRIDE as u64 + 1)
    };
    n_max + 1 + prefix
}

#[derive(Debug, Clone)]
enum Prefix {
    /// `sums[x] = Σ_{n≤x} f(n)`, `sums[0] = 0`.
    Dense(Vec<i64>),
    /// `checkpoints[k] = Σ_{n ≤ k·SPARSE_STRIDE} f(n)`.
    Sparse(Vec<i64>),
}

/// Values of λ or μ on `[1, n_max]` together with their partial sums.
///
/// Immutable once built; safe to share between threads.
#[derive(Debug, Clone)]
pub struct SieveTable {
    kind: SieveKind,
    /// `values[0]` is a zero placeholder; `values[n]` holds f(n).
    values: Vec<i8>,
    prefix: Prefix,
}

impl SieveTable {
    pub(crate) fn from_values(kind: SieveKind, values: Vec<i8>) -> Self {
        let sparse = (values.len() - 1) as u64 > DENSE_PREFIX_LIMIT;
        Self::with_prefix_layout(kind, values, sparse)
    }

    fn with_prefix_layout(kind: SieveKind, values: Vec<i8>, sparse: bool) -> Self {
        debug_assert!(!values.is_empty() && values[0] == 0);
        let mut acc = 0i64;
        let prefix = if sparse {
            let mut checkpoints = Vec::with_capacity(values.len() / SPARSE_STRIDE + 1);
            checkpoints.push(0);
            for (n, &v) in values.iter().enumerate().skip(1) {
                acc += v as i64;
                if n % SPARSE_STRIDE == 0 {
                    checkpoints.push(acc);
                }
            }
            Prefix::Sparse(checkpoints)
        } else {
            let mut sums = Vec::with_capacity(values.len());
            sums.push(0);
            for &v in &values[1..] {
                acc += v as i64;
                sums.push(acc);
            }
            Prefix::Dense(sums)
        };
        SieveTable {
            kind,
            values,
            prefix,
        }
    }

    pub fn kind(&self) -> SieveKind {
        self.kind
    }

    pub fn n_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// f(n) for `1 ≤ n ≤ n_max`.
    pub fn value(&self, n: u64) -> Result<i8> {
        self.check_index(n)?;
        Ok(self.values[n as usize])
    }

    /// f(1), …, f(n_max) as a slice; element `i` holds f(i + 1).
    pub fn values(&self) -> &[i8] {
        &self.values[1..]
    }

    /// Σ_{n ≤ x} f(n): L(x) for Liouville tables, M(x) for Möbius tables.
    pub fn partial_sum(&self, x: u64) -> Result<i64> {
        self.check_index(x)?;
        let x = x as usize;
        Ok(match &self.prefix {
            Prefix::Dense(sums) => sums[x],
            Prefix::Sparse(checkpoints) => {
                let k = x / SPARSE_STRIDE;
                let from = k * SPARSE_STRIDE + 1;
                checkpoints[k]
                    + self.values[from..=x]
                        .iter()
                        .map(|&v| v as i64)
                        .sum::<i64>()
            }
        })
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.n_max() {
            Err(Error::Index {
                index: n,
                max: self.n_max(),
            })
        } else {
            Ok(())
        }
    }
}

/// Alias for [`SieveTable::partial_sum`].
pub fn partial_sum(table: &SieveTable, x: u64) -> Result<i64> {
    table.partial_sum(x)
}

/// λ(n) for `1 ≤ n ≤ n_max` with the default configuration.
pub fn sieve_liouville(n_max: u64) -> Result<SieveTable> {
    sieve_with(SieveKind::Liouville, n_max, &SieveConfig::default())
}

/// μ(n) for `1 ≤ n ≤ n_max` with the default configuration.
pub fn sieve_moebius(n_max: u64) -> Result<SieveTable> {
    sieve_with(SieveKind::Moebius, n_max, &SieveConfig::default())
}

pub fn sieve_with(kind: SieveKind, n_max: u64, config: &SieveConfig) -> Result<SieveTable> {
    config.check(n_max)?;
    let n = n_max as usize;
    let values = if n <= config.segment_len {
        sieve::linear(kind, n)
    } else {
        sieve::segmented(kind, n, config.segment_len)
    };
    Ok(SieveTable::from_values(kind, values))
}

/// Primes `p ≤ limit` by a plain sieve of Eratosthenes.
pub(crate) fn primes_up_to(limit: u64) -> Vec<u64> {
    sieve::primes_up_to(limit as usize)
        .into_iter()
        .map(|p| p as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let l = sieve_liouville(30).unwrap();
        assert_eq!(l.value(1).unwrap(), 1);
        assert_eq!(l.value(4).unwrap(), 1);
        assert_eq!(l.value(12).unwrap(), -1);
        let m = sieve_moebius(30).unwrap();
        assert_eq!(m.value(1).unwrap(), 1);
        assert_eq!(m.value(4).unwrap(), 0);
        assert_eq!(m.value(6).unwrap(), 1);
    }

    #[test]
    fn partial_sums_at_ten() {
        // λ(1..10) = 1,-1,-1,1,-1,1,-1,-1,1,1 ; μ(1..10) = 1,-1,-1,0,-1,1,-1,0,0,1
        let l = sieve_liouville(10).unwrap();
        let m = sieve_moebius(10).unwrap();
        assert_eq!(l.partial_sum(1).unwrap(), 1);
        assert_eq!(l.partial_sum(10).unwrap(), 0);
        assert_eq!(m.partial_sum(10).unwrap(), -1);
        assert_eq!(partial_sum(&l, 9).unwrap(), -1);
    }

    #[test]
    fn index_zero_and_past_end_rejected() {
        let l = sieve_liouville(10).unwrap();
        assert!(matches!(l.value(0), Err(Error::Index { .. })));
        assert!(matches!(l.partial_sum(0), Err(Error::Index { .. })));
        assert!(matches!(l.partial_sum(11), Err(Error::Index { .. })));
    }

    #[test]
    fn size_errors() {
        assert!(matches!(sieve_liouville(0), Err(Error::Size { .. })));
        assert!(matches!(sieve_moebius(MAX_N + 1), Err(Error::Size { .. })));
        let tight = SieveConfig {
            memory_budget: 1000,
            ..SieveConfig::default()
        };
        assert!(matches!(
            sieve_with(SieveKind::Liouville, 10_000, &tight),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn sparse_prefix_matches_dense() {
        let values = sieve::linear(SieveKind::Moebius, 50_000);
        let dense = SieveTable::with_prefix_layout(SieveKind::Moebius, values.clone(), false);
        let sparse = SieveTable::with_prefix_layout(SieveKind::Moebius, values, true);
        assert!(matches!(sparse.prefix, Prefix::Sparse(_)));
        for x in (1..=50_000u64).step_by(37).chain([1023, 1024, 1025, 2048, 50_000]) {
            assert_eq!(sparse.partial_sum(x).unwrap(), dense.partial_sum(x).unwrap(), "x = {x}");
        }
    }

    #[test]
    fn primes_small() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
    }
}
