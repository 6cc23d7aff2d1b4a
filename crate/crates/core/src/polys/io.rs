use std::io::Write;

use super::{CoeffPoly, Repr};
use crate::format_float;

/// Writes `index,re,im` rows with a header. Dense polynomials list every
/// stored coefficient; a cosine sum is written as the Laurent polynomial
/// Σ (a/2)(z^g + z^{-g}), so indices may be negative.
pub fn write_csv<W: Write>(p: &CoeffPoly, mut out: W) -> std::io::Result<()> {
    writeln!(out, "index,re,im")?;
    match &p.repr {
        Repr::Dense(coeffs) => {
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(out, "{k},{},{}", format_float(c.re), format_float(c.im))?;
            }
        }
        Repr::Cosine(terms) => {
            let mut rows: Vec<(i64, f64)> = Vec::with_capacity(2 * terms.len());
            for t in terms {
                let g = t.frequency as i64;
                if g == 0 {
                    rows.push((0, t.amplitude));
                } else {
                    rows.push((-g, t.amplitude / 2.0));
                    rows.push((g, t.amplitude / 2.0));
                }
            }
            rows.sort_by_key(|r| r.0);
            for (k, a) in rows {
                writeln!(out, "{k},{},{}", format_float(a), format_float(0.0))?;
            }
        }
    }
    out.flush()
}
