use crate::error::{Error, Result};

/// Least-squares slope of log(stat) against log(N), with the RMS of the
/// fit errors in log space.
pub fn growth_exponent_fit(points: &[(u64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 3 {
        return Err(Error::arg(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some((n, s)) = points.iter().find(|(n, s)| s.is_nan() || *s <= 0.0 || *n == 0) {
        return Err(Error::arg(format!("log-log fit needs N > 0 and stat > 0, got ({n}, {s})")));
    }
    let xs: Vec<f64> = points.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, s)| s.ln()).collect();
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::arg("log-log fit needs at least two distinct N"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok((slope, (sse / count).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let (e, r) = growth_exponent_fit(&[(1, 1.0), (10, 1.0), (100, 1.0)]).unwrap();
        assert_eq!((e, r), (0.0, 0.0));
        let (e, r) = growth_exponent_fit(&[(2, 2.0), (4, 4.0), (8, 8.0)]).unwrap();
        assert!((e - 1.0).abs() < 1e-14 && r < 1e-14);
        let (e, r) = growth_exponent_fit(&[(4, 2.0), (16, 4.0), (64, 8.0)]).unwrap();
        assert!((e - 0.5).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn errors() {
        assert!(growth_exponent_fit(&[(1, 1.0), (2, 1.0)]).is_err());
        assert!(growth_exponent_fit(&[(1, 1.0), (2, 0.0), (3, 1.0)]).is_err());
        assert!(growth_exponent_fit(&[(2, 1.0), (2, 3.0), (2, 1.0)]).is_err());
    }
}
