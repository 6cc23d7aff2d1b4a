//! Lanczos approximation (g = 607/128, 15 terms) with reflection to the
//! left of Re s = 1/2.

use std::f64::consts::PI;

use super::{c, check_finite, sin_pi, ComplexVal};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    4.652_362_892_704_858e-5,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// Γ(s). Poles at 0, −1, −2, … are reported with their residue
/// (−1)^k / k!.
pub fn gamma_fn(s: ComplexVal) -> Result<ComplexVal> {
    check_finite(s)?;
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        let k = -s.re;
        let factorial: f64 = (1..=k as u64).map(|i| i as f64).product();
        let sign = if (k as u64).is_multiple_of(2) { 1.0 } else { -1.0 };
        return Err(Error::Pole {
            at: s,
            residue: c(sign / factorial, 0.0),
        });
    }
    if s.re < 0.5 {
        Ok(PI / (sin_pi(s) * lanczos(1.0 - s)))
    } else {
        Ok(lanczos(s))
    }
}

fn lanczos(s: ComplexVal) -> ComplexVal {
    let z = s - 1.0;
    let mut series = c(LANCZOS_COEFFS[0], 0.0);
    for (i, &coeff) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += coeff / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    ((z + 0.5) * t.ln() - t).exp() * (2.0 * PI).sqrt() * series
}
