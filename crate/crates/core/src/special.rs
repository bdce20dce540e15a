//! Special functions used by the fractional solver and its test oracles.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 coefficient set (as published with the GNU Scientific Library).
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Hard cap on Mittag-Leffler series terms.
pub const MITTAG_LEFFLER_MAX_TERMS: usize = 10_000;

/// Ratio of the largest series term to the result above which the series has
/// lost too many digits to cancellation.
const CANCELLATION_LIMIT: f64 = 1e4;

fn lanczos_sum(x: f64) -> f64 {
    // x is already shifted by one: evaluates A_g(x + 1).
    LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEF[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

/// Euler Gamma function for positive real arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma requires a finite x > 0, got {x}")));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x.fract() == 0.0 && x <= 171.0 {
        // Exact (n-1)! for small positive integers.
        return (1..x as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    // Split the power so large arguments do not overflow before e^-t cancels.
    let half = t.powf((x + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * lanczos_sum(x)
}

/// Natural log of the Gamma function for positive real arguments.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires a finite x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    if x < 10.0 {
        return gamma_unchecked(x).ln();
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// One-parameter Mittag-Leffler function `E_alpha(z) = sum z^k / Gamma(alpha k + 1)`.
///
/// The power series is summed until the next term drops below `1e-16` of the
/// partial sum. For negative `z` the alternating series cancels badly once
/// `|z|` grows; when the largest term exceeds the result by more than four
/// orders of magnitude the value is recomputed from the completely monotone
/// integral representation instead (or `exp(z)` when `alpha = 1`).
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "Mittag-Leffler order must lie in (0, 1], got {alpha}"
        )));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("Mittag-Leffler argument must be finite, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }

    let (sum, largest_term) = mittag_leffler_series(alpha, z)?;
    if z < 0.0 && largest_term > CANCELLATION_LIMIT * sum.abs() {
        if alpha == 1.0 {
            return Ok(z.exp());
        }
        return Ok(mittag_leffler_negative_integral(alpha, -z));
    }
    Ok(sum)
}

fn mittag_leffler_series(alpha: f64, z: f64) -> Result<(f64, f64)> {
    let log_abs_z = z.abs().ln();
    let negative = z < 0.0;
    let mut sum = 1.0;
    let mut largest: f64 = 1.0;
    let mut previous = 1.0;
    for k in 1..MITTAG_LEFFLER_MAX_TERMS {
        let kf = k as f64;
        let magnitude = (kf * log_abs_z - ln_gamma_unchecked(alpha * kf + 1.0)).exp();
        let term = if negative && k % 2 == 1 { -magnitude } else { magnitude };
        sum += term;
        largest = largest.max(magnitude);
        // Term magnitudes are log-concave in k, so once they shrink they keep shrinking.
        if magnitude <= previous && magnitude < 1e-16 * sum.abs() {
            return Ok((sum, largest));
        }
        if !sum.is_finite() {
            return Err(Error::Numerical(format!(
                "Mittag-Leffler series overflowed at term {k} for alpha = {alpha}, z = {z}"
            )));
        }
        previous = magnitude;
    }
    Err(Error::Numerical(format!(
        "Mittag-Leffler series did not converge within {MITTAG_LEFFLER_MAX_TERMS} terms \
         for alpha = {alpha}, z = {z}"
    )))
}

/// `E_alpha(-x)` for `0 < alpha < 1`, `x > 0`, from
///
/// `E_alpha(-x) = sin(alpha pi)/(alpha pi) * int_0^inf exp(-(u x)^(1/alpha)) / (u^2 + 2u cos(alpha pi) + 1) du`
///
/// evaluated with the trapezoidal rule after `u = e^y`. The integrand is
/// analytic in a strip of half-width `min(pi (1 - alpha), alpha pi / 2)`,
/// which sets the step for exponential convergence.
fn mittag_leffler_negative_integral(alpha: f64, x: f64) -> f64 {
    let strip = (PI * (1.0 - alpha)).min(alpha * PI / 2.0);
    let step = strip / 8.0;
    let lower = -45.0;
    let upper = (alpha * 50f64.ln() - x.ln()).max(lower + 1.0);
    let cos_term = 2.0 * (alpha * PI).cos();
    let integrand = |y: f64| {
        let u = y.exp();
        (-(u * x).powf(1.0 / alpha)).exp() * u / (u * u + cos_term * u + 1.0)
    };
    let n = ((upper - lower) / step).ceil() as usize;
    let sum: f64 = (0..=n).map(|i| integrand(lower + i as f64 * step)).sum();
    (alpha * PI).sin() / (alpha * PI) * sum * step
}
