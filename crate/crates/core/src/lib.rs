//! Numerical laboratory for ±1-coefficient polynomials built from the
//! Liouville and Möbius functions.
//!
//! The crate is split by subject:
//!
//! * [`arith`]: sieves for λ(n) and μ(n), prefix sums L(x) and M(x), a
//!   trial-division oracle and a binary cache format.
//! * [`polys`]: coefficient polynomials (Liouville/Möbius families,
//!   lacunary cosine sums, Rudin–Shapiro pairs) and evaluation at roots
//!   of unity.
//! * [`norms`]: L^α norms on the unit circle, exact for even integer α
//!   and sampled otherwise, plus Marcinkiewicz–Zygmund discrete means.
//! * [`flatness`]: the semi-flatness experiments built on the above.
//! * [`zeta`]: Γ, ζ (series, Euler product, alternating series,
//!   functional equation), ξ, E and Dirichlet-series identity checks.
//!
//! Every routine is deterministic: parallel reductions use a fixed chunk
//! tree so results do not depend on the number of worker threads.

pub mod arith;
pub mod error;
pub mod flatness;
pub mod norms;
pub mod polys;
pub mod zeta;

mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed-width scientific formatting with 17 significant digits, which
/// round-trips every `f64`. Used by all CSV writers.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}
