//! Trial-division reference values, used to check the sieves.

/// (−1)^Ω(n) by direct factorization. `n = 0` is rejected.
pub fn liouville_oracle(n: u64) -> crate::Result<i8> {
    let (omega, _) = factor_counts(n)?;
    Ok(if omega % 2 == 0 { 1 } else { -1 })
}

/// μ(n) by direct factorization. `n = 0` is rejected.
pub fn moebius_oracle(n: u64) -> crate::Result<i8> {
    let (omega, squarefree) = factor_counts(n)?;
    Ok(match (squarefree, omega % 2) {
        (false, _) => 0,
        (true, 0) => 1,
        (true, _) => -1,
    })
}

/// Ω(n) and whether n is squarefree.
fn factor_counts(mut n: u64) -> crate::Result<(u32, bool)> {
    if n == 0 {
        return Err(crate::Error::arg("arithmetic functions are defined for n >= 1"));
    }
    let mut omega = 0;
    let mut squarefree = true;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        omega += e;
        squarefree &= e <= 1;
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        omega += 1;
    }
    Ok((omega, squarefree))
}
