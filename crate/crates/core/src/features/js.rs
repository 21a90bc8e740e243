use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

fn check(p: &[f64]) -> Result<()> {
    if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidDistribution(format!("{p:?}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("sums to {sum}")));
    }
    Ok(())
}

fn kl_to_mixture(p: &[f64], m: &[f64]) -> f64 {
    p.iter()
        .zip(m)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, mi)| pi * (pi / mi).log2())
        .sum()
}

/// Base-2 Jensen-Shannon divergence, in `[0, 1]`.
pub fn js_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    check(p)?;
    check(q)?;
    let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a + b) * 0.5).collect();
    let js = 0.5 * (kl_to_mixture(p, &m) + kl_to_mixture(q, &m));
    Ok(js.clamp(0.0, 1.0))
}

/// Square root of [`js_divergence`] (the Jensen-Shannon distance).
pub fn js_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    js_divergence(p, q).map(f64::sqrt)
}
