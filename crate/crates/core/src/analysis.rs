//! Threshold analysis of the model: basic reproduction number, disease-free
//! equilibrium, and the linear Lyapunov function certifying global stability
//! of the DFE when `R0 < 1`.
//!
//! With `V = a0 E + a1 I + a2 P + a3 H` and the coefficients of
//! [`lyapunov_coefficients`], the `I`, `P` and `H` terms of `D^alpha V` cancel
//! after bounding `S <= N`, leaving
//!
//! ```text
//! D^alpha V <= kappa * varpi_i * varpi_p * varpi_h * (R0 - 1) * E
//! ```
//!
//! [`verify_lyapunov_bound`] checks this inequality along a solved trajectory
//! with the L1 discrete Caputo derivative.

use std::fmt;

use crate::error::{Error, Result};
use crate::fde::{discrete_caputo_derivative, Trajectory};
use crate::model::{derived_rates, CompartmentState, ModelParams, N_COMPARTMENTS};

/// Slack on the Lyapunov bound, in units of `a0 * N` per day.
pub const LYAPUNOV_BOUND_TOLERANCE: f64 = 1e-6;

fn checked_denominators(params: &ModelParams) -> Result<(f64, f64, f64)> {
    let d = derived_rates(params);
    for (key, v) in [("varpi_i", d.varpi_i), ("varpi_p", d.varpi_p), ("varpi_h", d.varpi_h)] {
        if !(v > 0.0) {
            return Err(Error::Domain(format!(
                "R0 undefined: {key} = {v} must be positive"
            )));
        }
    }
    Ok((d.varpi_i, d.varpi_p, d.varpi_h))
}

/// `R0 = beta rho1 (gamma_a l + varpi_h) / (varpi_i varpi_h)
///      + (beta gamma_a l + beta' varpi_h) rho2 / (varpi_p varpi_h)`
pub fn basic_reproduction_number(params: &ModelParams) -> Result<f64> {
    let (wi, wp, wh) = checked_denominators(params)?;
    let p = params;
    Ok(p.beta * p.rho1 * (p.gamma_a * p.l + wh) / (wi * wh)
        + (p.beta * p.gamma_a * p.l + p.beta_prime * wh) * p.rho2 / (wp * wh))
}

/// The same number over the common denominator `varpi_i varpi_p varpi_h`,
/// the form whose numerator reappears in the Lyapunov argument.
pub fn r0_rewritten(params: &ModelParams) -> Result<f64> {
    let (wi, wp, wh) = checked_denominators(params)?;
    let p = params;
    let gl = p.gamma_a * p.l;
    let numerator = p.beta * p.rho1 * wh * wp
        + p.beta * p.rho1 * gl * wp
        + p.beta_prime * p.rho2 * wh * wi
        + p.beta * p.rho2 * gl * wi;
    Ok(numerator / (wi * wp * wh))
}

pub fn disease_free_equilibrium(params: &ModelParams) -> CompartmentState {
    CompartmentState::disease_free(params.population)
}

/// Weights of `E, I, P, H` in the Lyapunov function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovCoefficients {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl LyapunovCoefficients {
    /// Residuals of the three cancellation identities
    /// `a0 beta + a3 gamma_a - a1 varpi_i`, `a0 beta l - a3 varpi_h`,
    /// `a0 beta' + a3 gamma_a - a2 varpi_p`.
    pub fn cancellation_residuals(&self, params: &ModelParams) -> [f64; 3] {
        let d = derived_rates(params);
        let p = params;
        [
            self.a0 * p.beta + self.a3 * p.gamma_a - self.a1 * d.varpi_i,
            self.a0 * p.beta * p.l - self.a3 * d.varpi_h,
            self.a0 * p.beta_prime + self.a3 * p.gamma_a - self.a2 * d.varpi_p,
        ]
    }

    /// `a1 rho1 + a2 rho2 - a0`, which equals `varpi_i varpi_p varpi_h (R0 - 1)`.
    pub fn exposed_coefficient(&self, params: &ModelParams) -> f64 {
        self.a1 * params.rho1 + self.a2 * params.rho2 - self.a0
    }
}

pub fn lyapunov_coefficients(params: &ModelParams) -> LyapunovCoefficients {
    let d = derived_rates(params);
    let p = params;
    let (wi, wp, wh) = (d.varpi_i, d.varpi_p, d.varpi_h);
    // (beta + beta gamma_a l / varpi_h) varpi_h varpi_p, expanded so that
    // varpi_h = 0 does not divide by zero.
    let gl = p.beta * p.gamma_a * p.l;
    LyapunovCoefficients {
        a0: wi * wp * wh,
        a1: (p.beta * wh + gl) * wp,
        a2: (p.beta_prime * wh + gl) * wi,
        a3: p.beta * p.l * wi * wp,
    }
}

pub fn lyapunov_value(state: &CompartmentState, coeffs: &LyapunovCoefficients) -> f64 {
    coeffs.a0 * state.e() + coeffs.a1 * state.i() + coeffs.a2 * state.p() + coeffs.a3 * state.h()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovReport {
    pub r0: f64,
    pub coefficients: LyapunovCoefficients,
    /// `V(t_n)` for every grid point.
    pub values: Vec<f64>,
    /// L1 estimate of `D^alpha V` at `t_1, ..., t_N`.
    pub derivative: Vec<f64>,
    /// `kappa varpi_i varpi_p varpi_h (R0 - 1) E(t_n)` at `t_1, ..., t_N`.
    pub bound_series: Vec<f64>,
    /// `max_n (derivative[n] - bound_series[n])`.
    pub max_violation: f64,
}

impl LyapunovReport {
    /// Allowed violation `LYAPUNOV_BOUND_TOLERANCE * a0 * N`.
    pub fn tolerance(&self, population: f64) -> f64 {
        LYAPUNOV_BOUND_TOLERANCE * self.coefficients.a0 * population
    }

    pub fn bound_holds(&self, population: f64) -> bool {
        self.max_violation <= self.tolerance(population)
    }
}

/// Evaluates `V` along `trajectory`, differentiates it with the L1 scheme and
/// compares against the Lyapunov bound at every grid point after the first.
pub fn verify_lyapunov_bound(
    trajectory: &Trajectory,
    params: &ModelParams,
    alpha: f64,
) -> Result<LyapunovReport> {
    if trajectory.dim() != N_COMPARTMENTS {
        return Err(Error::Domain(format!(
            "trajectory has dimension {}, the model has {N_COMPARTMENTS} compartments",
            trajectory.dim()
        )));
    }
    if trajectory.len() < 2 {
        return Err(Error::Domain("trajectory needs at least two points".into()));
    }
    let times = trajectory.times();
    let h = times[1] - times[0];
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(w[1].abs() * 1e-6));
    if !uniform {
        return Err(Error::Domain("Lyapunov check needs a uniform time grid".into()));
    }

    let r0 = r0_rewritten(params)?;
    let coefficients = lyapunov_coefficients(params);
    let d = derived_rates(params);
    let factor = params.kappa * d.varpi_i * d.varpi_p * d.varpi_h * (r0 - 1.0);

    let states: Vec<CompartmentState> = trajectory
        .states()
        .map(CompartmentState::from_slice)
        .collect::<Result<_>>()?;
    let values: Vec<f64> = states.iter().map(|s| lyapunov_value(s, &coefficients)).collect();
    let derivative = discrete_caputo_derivative(&values, alpha, h)?;
    let bound_series: Vec<f64> = states[1..].iter().map(|s| factor * s.e()).collect();
    let max_violation = derivative
        .iter()
        .zip(&bound_series)
        .map(|(dv, b)| dv - b)
        .fold(f64::NEG_INFINITY, f64::max);

    Ok(LyapunovReport {
        r0,
        coefficients,
        values,
        derivative,
        bound_series,
        max_violation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// `R0 < 1`: the disease-free equilibrium attracts every feasible state.
    GloballyStableDfe,
    /// `R0 >= 1`: no claim is made either way.
    Indeterminate,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::GloballyStableDfe => "globally_stable_dfe",
            Stability::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub r0: f64,
    pub classification: Stability,
}

pub fn classify_stability(params: &ModelParams) -> Result<StabilityVerdict> {
    let r0 = basic_reproduction_number(params)?;
    let classification = if r0 < 1.0 {
        Stability::GloballyStableDfe
    } else {
        Stability::Indeterminate
    };
    Ok(StabilityVerdict { r0, classification })
}
