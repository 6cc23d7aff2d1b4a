use super::series::pow_neg;
use super::{zeta_eta, ComplexVal};
use crate::arith::{SieveKind, SieveTable};
use crate::error::{Error, Result};

/// Dirichlet-series identities valid on Re s > 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirichletIdentity {
    /// Σ μ(n) n^{−s} = 1/ζ(s)
    MuInvZeta,
    /// Σ λ(n) n^{−s} = ζ(2s)/ζ(s)
    LambdaZeta2Zeta,
    /// Σ |μ(n)| n^{−s} = ζ(s)/ζ(2s)
    AbsMuRatio,
}

impl DirichletIdentity {
    pub const ALL: [DirichletIdentity; 3] = [
        DirichletIdentity::MuInvZeta,
        DirichletIdentity::LambdaZeta2Zeta,
        DirichletIdentity::AbsMuRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DirichletIdentity::MuInvZeta => "mu_inv_zeta",
            DirichletIdentity::LambdaZeta2Zeta => "lambda_zeta2_zeta",
            DirichletIdentity::AbsMuRatio => "abs_mu_ratio",
        }
    }

    /// Sieve needed for the coefficients.
    pub fn table_kind(self) -> SieveKind {
        match self {
            DirichletIdentity::LambdaZeta2Zeta => SieveKind::Liouville,
            _ => SieveKind::Moebius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletCheck {
    pub partial_sum: ComplexVal,
    pub closed_form: ComplexVal,
    pub residual: f64,
    /// N^{1 − Re s}, the expected decay of the residual.
    pub envelope: f64,
}

/// Compares the partial Dirichlet sum over n ≤ `n` with its closed form.
pub fn dirichlet_identity_check(
    which: DirichletIdentity,
    s: ComplexVal,
    n: u64,
    table: &SieveTable,
) -> Result<DirichletCheck> {
    super::check_finite(s)?;
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("Dirichlet identities need Re(s) > 1, got s = {s}")));
    }
    if table.kind() != which.table_kind() {
        return Err(Error::arg(format!(
            "{} needs a {} table",
            which.name(),
            which.table_kind().name()
        )));
    }
    if n == 0 || n > table.n_max() {
        return Err(Error::Index {
            index: n,
            max: table.n_max(),
        });
    }
    let values = &table.values()[..n as usize];
    let coeff = |v: i8| -> f64 {
        match which {
            DirichletIdentity::AbsMuRatio => v.abs() as f64,
            _ => v as f64,
        }
    };
    let mut partial = ComplexVal::new(0.0, 0.0);
    for k in (1..=n).rev() {
        let a = coeff(values[k as usize - 1]);
        if a != 0.0 {
            partial += pow_neg(k, s) * a;
        }
    }
    let zs = zeta_eta(s)?;
    let closed_form = match which {
        DirichletIdentity::MuInvZeta => 1.0 / zs,
        DirichletIdentity::LambdaZeta2Zeta => zeta_eta(2.0 * s)? / zs,
        DirichletIdentity::AbsMuRatio => zs / zeta_eta(2.0 * s)?,
    };
    Ok(DirichletCheck {
        partial_sum: partial,
        closed_form,
        residual: (partial - closed_form).norm(),
        envelope: (n as f64).powf(1.0 - s.re),
    })
}
