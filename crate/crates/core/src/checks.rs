//! Self-verification checks shared by `fracepi verify` and the acceptance
//! tests.

use std::fmt;
use std::str::FromStr;
use std::thread;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::analysis::{basic_reproduction_number, lyapunov_coefficients, verify_lyapunov_bound};
use crate::error::{Error, Result};
use crate::fde::{solve_caputo_ivp, FractionalOrder, SolverConfig, TimeGrid, Trajectory};
use crate::model::{derived_rates, ModelParams};
use crate::scenario::{builtin_scenario, builtin_scenarios, Scenario};
use crate::special::mittag_leffler;

pub const DECAY_STEPS: usize = 1000;
pub const DECAY_LIMIT_ALPHA_ONE: f64 = 1e-6;
pub const DECAY_LIMIT_ALPHA_HALF: f64 = 1e-4;
pub const ORDER_ALPHAS: [f64; 4] = [0.5, 0.75, 0.85, 1.0];
pub const ORDER_BASE_STEPS: usize = 40;
pub const ORDER_SLACK: f64 = 0.2;
pub const CONSERVATION_LIMIT: f64 = 1e-9;
pub const IDENTITY_LIMIT: f64 = 1e-10;
pub const IDENTITY_CASES: usize = 1000;
pub const IDENTITY_SEED: u64 = 0x5e1_9a4f;
pub const LYAPUNOV_ALPHAS: [f64; 3] = [0.75, 0.85, 1.0];
pub const SUBCRITICAL_SCALE: f64 = 0.2;
pub const MONOTONE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl FromStr for VerifyLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(VerifyLevel::Quick),
            "full" => Ok(VerifyLevel::Full),
            other => Err(Error::validation("level", format!("expected quick or full, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub comparison: Comparison,
}

impl CheckResult {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        CheckResult { name: name.into(), value, limit, comparison: Comparison::AtMost }
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        CheckResult { name: name.into(), value, limit, comparison: Comparison::AtLeast }
    }

    /// NaN never passes.
    pub fn passed(&self) -> bool {
        match self.comparison {
            Comparison::AtMost => self.value <= self.limit,
            Comparison::AtLeast => self.value >= self.limit,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.comparison {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        };
        let verdict = if self.passed() { "pass" } else { "fail" };
        write!(f, "{verdict} ({:.3e} {op} {:.3e})", self.value, self.limit)
    }
}

/// `D^alpha x = -x`, `x(0) = 1` on `[0, t_end]`.
pub fn solve_scalar_decay(alpha: f64, t_end: f64, n_steps: usize) -> Result<Trajectory> {
    let order = FractionalOrder::new(alpha)?;
    let grid = TimeGrid::new(0.0, t_end, n_steps)?;
    let config = SolverConfig::new(order, grid.step_size())?;
    solve_caputo_ivp(|x, out| out[0] = -x[0], &[1.0], &grid, &config)
}

/// `|x(1) - E_alpha(-1)|` for the scalar decay problem with `n_steps` steps.
pub fn scalar_decay_error(alpha: f64, n_steps: usize) -> Result<f64> {
    let traj = solve_scalar_decay(alpha, 1.0, n_steps)?;
    let exact = mittag_leffler(alpha, -1.0)?;
    Ok((traj.last_state().expect("non-empty")[0] - exact).abs())
}

/// Observed order from solutions at `n`, `2n` and `4n` steps on `[0, 1]`,
/// without reference to the exact solution.
pub fn richardson_order(alpha: f64, base_steps: usize) -> Result<f64> {
    let end = |n| -> Result<f64> { Ok(solve_scalar_decay(alpha, 1.0, n)?.last_state().expect("non-empty")[0]) };
    let (x1, x2, x4) = (end(base_steps)?, end(2 * base_steps)?, end(4 * base_steps)?);
    Ok(((x1 - x2) / (x2 - x4)).abs().log2())
}

pub fn expected_order(alpha: f64) -> f64 {
    (1.0 + alpha).min(2.0) - ORDER_SLACK
}

/// `max_n |sum(X_n) - N| / N`.
pub fn conservation_drift(trajectory: &Trajectory, population: f64) -> f64 {
    trajectory
        .states()
        .map(|s| (s.iter().sum::<f64>() - population).abs() / population)
        .fold(0.0, f64::max)
}

pub fn random_params(rng: &mut impl Rng) -> ModelParams {
    let rho1: f64 = rng.gen_range(0.0..1.0);
    ModelParams {
        beta: rng.gen_range(0.0..5.0),
        beta_prime: rng.gen_range(0.0..10.0),
        l: rng.gen_range(0.0..3.0),
        kappa: rng.gen_range(0.0..1.0),
        rho1,
        rho2: (1.0 - rho1) * rng.gen_range(0.0..1.0),
        gamma_a: rng.gen_range(0.01..2.0),
        gamma_i: rng.gen_range(0.01..2.0),
        gamma_r: rng.gen_range(0.01..2.0),
        delta_i: rng.gen_range(0.0..0.2),
        delta_p: rng.gen_range(0.0..0.2),
        delta_h: rng.gen_range(0.0..0.2),
        population: rng.gen_range(1.0..1e6),
    }
}

/// Largest relative residual of the four Lyapunov coefficient identities,
/// each residual scaled by the magnitude of the terms that cancel.
pub fn lyapunov_identity_residual(params: &ModelParams) -> Result<f64> {
    let c = lyapunov_coefficients(params);
    let d = derived_rates(params);
    let p = params;
    let scales = [
        (c.a0 * p.beta).abs() + (c.a3 * p.gamma_a).abs() + (c.a1 * d.varpi_i).abs(),
        (c.a0 * p.beta * p.l).abs() + (c.a3 * d.varpi_h).abs(),
        (c.a0 * p.beta_prime).abs() + (c.a3 * p.gamma_a).abs() + (c.a2 * d.varpi_p).abs(),
    ];
    let mut worst: f64 = 0.0;
    for (r, s) in c.cancellation_residuals(p).iter().zip(scales) {
        if s > 0.0 {
            worst = worst.max(r.abs() / s);
        }
    }
    let r0 = basic_reproduction_number(p)?;
    let exposed = c.exposed_coefficient(p) - c.a0 * (r0 - 1.0);
    let scale = (c.a1 * p.rho1).abs() + (c.a2 * p.rho2).abs() + c.a0;
    Ok(worst.max(exposed.abs() / scale))
}

pub fn lyapunov_identity_fuzz(cases: usize, seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        worst = worst.max(lyapunov_identity_residual(&random_params(&mut rng))?);
    }
    Ok(worst)
}

/// Wuhan with `beta` and `beta_prime` multiplied by `factor`.
pub fn scaled_wuhan(factor: f64, alpha: f64) -> Result<Scenario> {
    let mut s = builtin_scenario("wuhan").expect("wuhan is builtin");
    s.params.beta *= factor;
    s.params.beta_prime *= factor;
    s.alpha = FractionalOrder::new(alpha)?;
    s.name = format!("wuhan_scaled_{factor}");
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovTrajectoryCheck {
    pub r0: f64,
    pub max_violation: f64,
    pub tolerance: f64,
    /// Largest `V_{n+1} - V_n` for `n >= 1`.
    pub max_increase: f64,
    pub v0: f64,
}

impl LyapunovTrajectoryCheck {
    pub fn monotone(&self) -> bool {
        self.max_increase <= MONOTONE_SLACK * self.v0
    }

    pub fn bound_holds(&self) -> bool {
        self.max_violation <= self.tolerance
    }
}

pub fn lyapunov_trajectory_check(scenario: &Scenario) -> Result<LyapunovTrajectoryCheck> {
    let traj = scenario.simulate()?;
    let report = verify_lyapunov_bound(&traj, &scenario.params, scenario.alpha.value())?;
    let max_increase = report
        .values
        .windows(2)
        .skip(1)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(LyapunovTrajectoryCheck {
        r0: report.r0,
        max_violation: report.max_violation,
        tolerance: report.tolerance(scenario.params.population),
        max_increase,
        v0: report.values[0],
    })
}

type Job = Box<dyn FnOnce() -> Result<Vec<CheckResult>> + Send>;

fn quick_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![Box::new(|| {
        Ok(vec![
            CheckResult::at_most("ml_alpha_1", scalar_decay_error(1.0, DECAY_STEPS)?, DECAY_LIMIT_ALPHA_ONE),
            CheckResult::at_most("ml_alpha_0.5", scalar_decay_error(0.5, DECAY_STEPS)?, DECAY_LIMIT_ALPHA_HALF),
        ])
    })];
    jobs.push(Box::new(|| {
        ORDER_ALPHAS
            .iter()
            .map(|&a| {
                let order = richardson_order(a, ORDER_BASE_STEPS)?;
                Ok(CheckResult::at_least(format!("order_alpha_{a}"), order, expected_order(a)))
            })
            .collect()
    }));
    for scenario in builtin_scenarios() {
        jobs.push(Box::new(move || {
            let traj = scenario.simulate()?;
            let drift = conservation_drift(&traj, scenario.params.population);
            Ok(vec![CheckResult::at_most(format!("conservation_{}", scenario.name), drift, CONSERVATION_LIMIT)])
        }));
    }
    jobs.push(Box::new(|| {
        let worst = lyapunov_identity_fuzz(IDENTITY_CASES, IDENTITY_SEED)?;
        Ok(vec![CheckResult::at_most("lyapunov_identities", worst, IDENTITY_LIMIT)])
    }));
    jobs
}

fn full_jobs() -> Vec<Job> {
    LYAPUNOV_ALPHAS
        .iter()
        .map(|&a| -> Job {
            Box::new(move || {
                let c = lyapunov_trajectory_check(&scaled_wuhan(SUBCRITICAL_SCALE, a)?)?;
                Ok(vec![
                    CheckResult::at_most(format!("lyapunov_bound_alpha_{a}"), c.max_violation, c.tolerance),
                    CheckResult::at_most(format!("lyapunov_monotone_alpha_{a}"), c.max_increase, MONOTONE_SLACK * c.v0),
                ])
            })
        })
        .collect()
}

/// Runs every check of `level` concurrently; results keep a fixed order.
pub fn run_checks(level: VerifyLevel) -> Result<Vec<CheckResult>> {
    let mut jobs = quick_jobs();
    if level == VerifyLevel::Full {
        jobs.extend(full_jobs());
    }
    let results: Vec<Result<Vec<CheckResult>>> = thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles.into_iter().map(|h| h.join().expect("check worker panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parsing() {
        assert_eq!("quick".parse::<VerifyLevel>().unwrap(), VerifyLevel::Quick);
        assert_eq!("full".parse::<VerifyLevel>().unwrap(), VerifyLevel::Full);
        assert!("slow".parse::<VerifyLevel>().is_err());
    }

    #[test]
    fn comparisons() {
        assert!(CheckResult::at_most("x", 1.0, 1.0).passed());
        assert!(!CheckResult::at_most("x", f64::NAN, 1.0).passed());
        assert!(CheckResult::at_least("x", 2.0, 1.8).passed());
        assert!(!CheckResult::at_least("x", 1.0, 1.8).passed());
        assert_eq!(CheckResult::at_most("x", 0.5, 1.0).to_string(), "pass (5.000e-1 <= 1.000e0)");
    }

    #[test]
    fn fuzz_is_seeded() {
        assert_eq!(lyapunov_identity_fuzz(20, 7).unwrap(), lyapunov_identity_fuzz(20, 7).unwrap());
        assert!(lyapunov_identity_fuzz(20, 7).unwrap() <= IDENTITY_LIMIT);
    }

    #[test]
    fn scaled_wuhan_is_subcritical() {
        let s = scaled_wuhan(SUBCRITICAL_SCALE, 0.85).unwrap();
        assert!(basic_reproduction_number(&s.params).unwrap() < 1.0);
        assert_eq!(s.params.l, 1.56);
    }
}
