//! Coefficient polynomials on the unit circle.
//!
//! A [`CoeffPoly`] is either a dense analytic polynomial
//! `Σ_k c_k z^k` or a sparse real cosine sum `Σ a_n cos(g_n θ)`. The
//! cosine form keeps lacunary families cheap: their frequencies are
//! huge and few, so they are only densified when an exact norm asks
//! for it.

mod eval;
mod io;

pub use eval::{eval_at_roots, eval_at_roots_with, EvalPath, RootSample};
pub(crate) use eval::eval_nodes;
pub use io::write_csv;

use num_complex::Complex64;

use crate::arith::{SieveKind, SieveTable};
use crate::error::{Error, Result};

/// Largest admissible frequency of a lacunary cosine sum.
pub const LACUNARY_DEGREE_BUDGET: u64 = 1 << 20;
/// Largest Rudin–Shapiro order (degree 2^20 − 1).
pub const RUDIN_SHAPIRO_MAX_K: u32 = 20;
/// Densified polynomials longer than this are refused.
pub const DENSE_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    LiouvillePoly,
    MoebiusPoly,
    LacunaryCosine,
    RudinShapiroP,
    RudinShapiroQ,
    Custom,
}

/// Frequency progression of a lacunary cosine sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapKind {
    /// g_n = 2^(2^n).
    DoubleExp,
    /// g_n = q^n, q ≥ 2.
    Geometric(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineTerm {
    pub frequency: u64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Dense(Vec<Complex64>),
    /// Sorted by frequency, frequencies distinct.
    Cosine(Vec<CosineTerm>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffPoly {
    kind: PolyKind,
    repr: Repr,
}

impl CoeffPoly {
    /// Dense polynomial; `coeffs[k]` multiplies `z^k`.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Self::dense(PolyKind::Custom, coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_signs(signs: &[i8]) -> Self {
        Self::from_coeffs(signs.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect())
    }

    /// Real cosine sum `Σ a cos(g θ)`. Repeated frequencies are merged.
    pub fn from_cosine_terms(terms: impl IntoIterator<Item = CosineTerm>) -> Self {
        let mut terms: Vec<CosineTerm> = terms.into_iter().collect();
        terms.sort_by_key(|t| t.frequency);
        let mut merged: Vec<CosineTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.frequency == t.frequency => last.amplitude += t.amplitude,
                _ => merged.push(t),
            }
        }
        CoeffPoly {
            kind: PolyKind::Custom,
            repr: Repr::Cosine(merged),
        }
    }

    fn dense(kind: PolyKind, coeffs: Vec<Complex64>) -> Self {
        CoeffPoly {
            kind,
            repr: Repr::Dense(coeffs),
        }
    }

    fn with_kind(mut self, kind: PolyKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    /// Highest index with a nonzero coefficient (0 for the zero
    /// polynomial). For a cosine sum this is its largest frequency.
    pub fn degree(&self) -> u64 {
        match &self.repr {
            Repr::Dense(c) => c
                .iter()
                .rposition(|c| *c != Complex64::ZERO)
                .unwrap_or(0) as u64,
            Repr::Cosine(t) => t
                .iter()
                .rev()
                .find(|t| t.amplitude != 0.0)
                .map_or(0, |t| t.frequency),
        }
    }

    /// Coefficients of a dense polynomial; `None` for cosine sums.
    pub fn coeffs(&self) -> Option<&[Complex64]> {
        match &self.repr {
            Repr::Dense(c) => Some(c),
            Repr::Cosine(_) => None,
        }
    }

    pub fn cosine_terms(&self) -> Option<&[CosineTerm]> {
        match &self.repr {
            Repr::Dense(_) => None,
            Repr::Cosine(t) => Some(t),
        }
    }

    /// P(1), summed directly from the coefficients.
    pub fn coefficient_sum(&self) -> Complex64 {
        match &self.repr {
            Repr::Dense(c) => c.iter().sum(),
            Repr::Cosine(t) => Complex64::new(t.iter().map(|t| t.amplitude).sum(), 0.0),
        }
    }

    /// ‖P‖₂² = ∫|P|² dz (normalized measure), by Parseval.
    pub fn l2_norm_sqr(&self) -> f64 {
        match &self.repr {
            Repr::Dense(c) => c.iter().map(|c| c.norm_sqr()).sum(),
            Repr::Cosine(t) => t
                .iter()
                .map(|t| {
                    let a2 = t.amplitude * t.amplitude;
                    if t.frequency == 0 {
                        a2
                    } else {
                        a2 / 2.0
                    }
                })
                .sum(),
        }
    }

    /// Direct evaluation at an arbitrary point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.repr {
            Repr::Dense(c) => c.iter().rev().fold(Complex64::ZERO, |acc, &c| acc * z + c),
            Repr::Cosine(t) => t
                .iter()
                .map(|t| {
                    let w = z.powu(t.frequency as u32);
                    (w + w.inv()) * (0.5 * t.amplitude)
                })
                .sum(),
        }
    }

    /// Coefficients of an analytic polynomial with the same modulus on
    /// the circle. Dense polynomials are returned as is; a cosine sum of
    /// largest frequency g is multiplied by z^g.
    pub fn analytic_coeffs(&self) -> Result<Vec<Complex64>> {
        match &self.repr {
            Repr::Dense(c) => Ok(c.clone()),
            Repr::Cosine(terms) => {
                let g = self.degree();
                let len = 2 * g + 1;
                if len > DENSE_BUDGET {
                    return Err(Error::size(format!("densified cosine sum of length {len}"), DENSE_BUDGET));
                }
                let mut out = vec![Complex64::ZERO; len as usize];
                for t in terms.iter().filter(|t| t.frequency <= g) {
                    if t.frequency == 0 {
                        out[g as usize] += t.amplitude;
                    } else {
                        out[(g + t.frequency) as usize] += 0.5 * t.amplitude;
                        out[(g - t.frequency) as usize] += 0.5 * t.amplitude;
                    }
                }
                Ok(out)
            }
        }
    }

    /// Coefficients as integers, when every coefficient is a real integer
    /// of magnitude below 2^53.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        let coeffs = self.coeffs()?;
        coeffs
            .iter()
            .map(|c| {
                let exact = c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() < 9.0e15;
                exact.then_some(c.re as i64)
            })
            .collect()
    }
}

fn coeffs_from_table(table: &SieveTable, n: u64, expect: SieveKind) -> Result<Vec<Complex64>> {
    if table.kind() != expect {
        return Err(Error::arg(format!(
            "expected a {} table, got {}",
            expect.name(),
            table.kind().name()
        )));
    }
    if n == 0 || n > table.n_max() {
        return Err(Error::arg(format!(
            "polynomial size {n} outside 1..={}",
            table.n_max()
        )));
    }
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    coeffs.push(Complex64::ZERO);
    coeffs.extend(
        table.values()[..n as usize]
            .iter()
            .map(|&v| Complex64::new(v as f64, 0.0)),
    );
    Ok(coeffs)
}

/// Σ_{j=1}^{n} λ(j) z^j.
pub fn build_liouville_poly(n: u64, table: &SieveTable) -> Result<CoeffPoly> {
    let c = coeffs_from_table(table, n, SieveKind::Liouville)?;
    Ok(CoeffPoly::dense(PolyKind::LiouvillePoly, c))
}

/// Σ_{j=1}^{n} μ(j) z^j.
pub fn build_mobius_poly(n: u64, table: &SieveTable) -> Result<CoeffPoly> {
    let c = coeffs_from_table(table, n, SieveKind::Moebius)?;
    Ok(CoeffPoly::dense(PolyKind::MoebiusPoly, c))
}

/// Σ_{n=1}^{count} cos(g_n θ) with unit amplitudes.
pub fn build_lacunary(count: u32, gap: GapKind) -> Result<CoeffPoly> {
    if count == 0 {
        return Err(Error::arg("lacunary sum needs at least one term"));
    }
    let too_big = || {
        Error::size(
            format!("lacunary frequency for {count} terms of {gap:?}"),
            LACUNARY_DEGREE_BUDGET,
        )
    };
    let frequency = |n: u32| -> Option<u64> {
        match gap {
            GapKind::DoubleExp => 1u64.checked_shl(1u32.checked_shl(n)?),
            GapKind::Geometric(q) => q.checked_pow(n),
        }
    };
    if let GapKind::Geometric(q) = gap {
        if q < 2 {
            return Err(Error::arg(format!("geometric ratio must be >= 2, got {q}")));
        }
    }
    let mut terms = Vec::with_capacity(count as usize);
    for n in 1..=count {
        let g = frequency(n).ok_or_else(too_big)?;
        if g > LACUNARY_DEGREE_BUDGET {
            return Err(too_big());
        }
        terms.push(CosineTerm {
            frequency: g,
            amplitude: 1.0,
        });
    }
    Ok(CoeffPoly::from_cosine_terms(terms).with_kind(PolyKind::LacunaryCosine))
}

/// Rudin–Shapiro pair of order k: P_0 = Q_0 = 1,
/// P_{k+1} = P_k + z^{2^k} Q_k, Q_{k+1} = P_k − z^{2^k} Q_k.
pub fn build_rudin_shapiro(k: u32) -> Result<(CoeffPoly, CoeffPoly)> {
    if k > RUDIN_SHAPIRO_MAX_K {
        return Err(Error::size(format!("Rudin-Shapiro order {k}"), RUDIN_SHAPIRO_MAX_K as u64));
    }
    let mut p: Vec<i8> = vec![1];
    let mut q: Vec<i8> = vec![1];
    for _ in 0..k {
        let mut next_p = p.clone();
        next_p.extend_from_slice(&q);
        let mut next_q = p;
        next_q.extend(q.iter().map(|&c| -c));
        p = next_p;
        q = next_q;
    }
    Ok((
        CoeffPoly::from_signs(&p).with_kind(PolyKind::RudinShapiroP),
        CoeffPoly::from_signs(&q).with_kind(PolyKind::RudinShapiroQ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve_liouville, sieve_moebius};

    fn re(p: &CoeffPoly) -> Vec<f64> {
        p.coeffs().unwrap().iter().map(|c| c.re).collect()
    }

    #[test]
    fn liouville_polys() {
        let t = sieve_liouville(10).unwrap();
        assert_eq!(re(&build_liouville_poly(1, &t).unwrap()), [0.0, 1.0]);
        assert_eq!(re(&build_liouville_poly(2, &t).unwrap()), [0.0, 1.0, -1.0]);
        let p4 = build_liouville_poly(4, &t).unwrap();
        assert_eq!(re(&p4), [0.0, 1.0, -1.0, -1.0, 1.0]);
        assert_eq!(p4.degree(), 4);
        assert_eq!(p4.kind(), PolyKind::LiouvillePoly);
    }

    #[test]
    fn mobius_polys() {
        let t = sieve_moebius(10).unwrap();
        assert_eq!(re(&build_mobius_poly(1, &t).unwrap()), [0.0, 1.0]);
        assert_eq!(re(&build_mobius_poly(4, &t).unwrap()), [0.0, 1.0, -1.0, -1.0, 0.0]);
        assert_eq!(
            re(&build_mobius_poly(6, &t).unwrap()),
            [0.0, 1.0, -1.0, -1.0, 0.0, -1.0, 1.0]
        );
        // μ(4) = 0, so the size-4 polynomial has degree 3.
        assert_eq!(build_mobius_poly(4, &t).unwrap().degree(), 3);
    }

    #[test]
    fn table_mismatch_and_range() {
        let l = sieve_liouville(10).unwrap();
        assert!(matches!(build_mobius_poly(3, &l), Err(Error::Argument(_))));
        assert!(matches!(build_liouville_poly(11, &l), Err(Error::Argument(_))));
        assert!(matches!(build_liouville_poly(0, &l), Err(Error::Argument(_))));
    }

    #[test]
    fn lacunary_frequencies() {
        let freqs = |p: CoeffPoly| -> Vec<u64> {
            p.cosine_terms().unwrap().iter().map(|t| t.frequency).collect()
        };
        assert_eq!(freqs(build_lacunary(1, GapKind::DoubleExp).unwrap()), [4]);
        assert_eq!(freqs(build_lacunary(2, GapKind::DoubleExp).unwrap()), [4, 16]);
        assert_eq!(freqs(build_lacunary(3, GapKind::Geometric(2)).unwrap()), [2, 4, 8]);
        let p4 = build_lacunary(4, GapKind::DoubleExp).unwrap();
        assert_eq!(p4.degree(), 65536);
        assert!(matches!(
            build_lacunary(5, GapKind::DoubleExp),
            Err(Error::Size { .. })
        ));
        assert!(matches!(build_lacunary(3, GapKind::Geometric(1)), Err(Error::Argument(_))));
    }

    #[test]
    fn rudin_shapiro_small() {
        let (p, q) = build_rudin_shapiro(0).unwrap();
        assert_eq!(re(&p), [1.0]);
        assert_eq!(re(&q), [1.0]);
        let (p, q) = build_rudin_shapiro(1).unwrap();
        assert_eq!(re(&p), [1.0, 1.0]);
        assert_eq!(re(&q), [1.0, -1.0]);
        let (p, q) = build_rudin_shapiro(2).unwrap();
        assert_eq!(re(&p), [1.0, 1.0, 1.0, -1.0]);
        assert_eq!(re(&q), [1.0, 1.0, -1.0, 1.0]);
        assert_eq!(build_rudin_shapiro(10).unwrap().0.degree(), 1023);
        assert!(matches!(build_rudin_shapiro(21), Err(Error::Size { .. })));
    }

    #[test]
    fn cosine_densify_and_l2() {
        let p = CoeffPoly::from_cosine_terms([
            CosineTerm { frequency: 2, amplitude: 1.0 },
            CosineTerm { frequency: 0, amplitude: 3.0 },
        ]);
        let dense = p.analytic_coeffs().unwrap();
        let want = [0.5, 0.0, 3.0, 0.0, 0.5];
        assert_eq!(dense.iter().map(|c| c.re).collect::<Vec<_>>(), want);
        assert_eq!(p.l2_norm_sqr(), 9.5);
        assert_eq!(p.coefficient_sum(), Complex64::new(4.0, 0.0));
        let z = Complex64::from_polar(1.0, 0.3);
        let direct = 3.0 + (2.0f64 * 0.3).cos();
        assert!((p.eval(z) - direct).norm() < 1e-15);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(CoeffPoly::from_real(&[1.0, -2.0]).integer_coeffs(), Some(vec![1, -2]));
        assert_eq!(CoeffPoly::from_real(&[1.5]).integer_coeffs(), None);
        assert_eq!(
            CoeffPoly::from_coeffs(vec![Complex64::new(1.0, 1.0)]).integer_coeffs(),
            None
        );
    }
}
