use crate::error::{Error, Result};
use crate::special::gamma;

/// L1 estimate of the Caputo derivative of a uniformly sampled series.
///
/// Element `i` of the result approximates `D^alpha x` at `t_{i+1}`, so the
/// output is one shorter than `values`.
pub fn discrete_caputo_derivative(values: &[f64], alpha: f64, h: f64) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::Domain(format!(
            "L1 Caputo derivative needs at least 2 samples, got {}",
            values.len()
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step size must be positive, got {h}")));
    }

    let len = values.len();
    let beta = 1.0 - alpha;
    // w[m] = (m+1)^(1-alpha) - m^(1-alpha); w[0] = 1 also covers alpha = 1.
    let mut w = Vec::with_capacity(len - 1);
    w.push(1.0);
    w.extend((1..len - 1).map(|m| ((m + 1) as f64).powf(beta) - (m as f64).powf(beta)));

    let scale = h.powf(-alpha) / gamma(2.0 - alpha)?;
    let diffs: Vec<f64> = values.windows(2).map(|p| p[1] - p[0]).collect();
    let out = (1..len)
        .map(|n| {
            // sum over k = 0..n-1 of diff_k * w[n-1-k]
            let s: f64 = diffs[..n]
                .iter()
                .zip(w[..n].iter().rev())
                .map(|(d, wk)| d * wk)
                .sum();
            scale * s
        })
        .collect();
    Ok(out)
}
