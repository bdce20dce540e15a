//! Caputo fractional-order initial value problems and the fractional
//! SEIPAHRF COVID-19 model.
//!
//! - [`fde`]: fractional Adams-Bashforth-Moulton solver, quadrature weights
//!   and the L1 discrete Caputo derivative.
//! - [`special`]: Gamma and Mittag-Leffler functions.
//! - [`model`]: compartments, parameters, right-hand side and compact
//!   matrix form.
//! - [`analysis`]: basic reproduction number, disease-free equilibrium and
//!   the Lyapunov stability certificate.
//! - [`scenario`]: builtin scenarios, scenario files and trajectory CSV.
//! - [`sweep`]: parameter sweeps and per-run summaries.
//! - [`checks`]: self-verification checks behind `fracepi verify`.
//!
//! ```
//! use fracepi_core::{builtin_scenario, classify_stability, Stability};
//!
//! let wuhan = builtin_scenario("wuhan").unwrap();
//! let verdict = classify_stability(&wuhan.params).unwrap();
//! assert!((verdict.r0 - 4.375).abs() < 5e-4);
//! assert_eq!(verdict.classification, Stability::Indeterminate);
//! ```

// `!(x > 0.0)` is used on purpose so NaN is rejected too; reference
// constants keep all the digits they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod checks;
pub mod error;
pub mod fde;
pub mod model;
pub mod scenario;
pub mod special;
pub mod sweep;

pub use analysis::{
    basic_reproduction_number, classify_stability, disease_free_equilibrium, lyapunov_coefficients,
    lyapunov_value, r0_rewritten, verify_lyapunov_bound, LyapunovCoefficients, LyapunovReport,
    Stability, StabilityVerdict,
};
pub use error::{Error, Result};
pub use fde::{
    abm_weights, discrete_caputo_derivative, solve_caputo_ivp, AbmWeights, FractionalOrder,
    MemoryPolicy, SolverConfig, TimeGrid, Trajectory,
};
pub use model::{
    build_matrices, derived_rates, force_of_infection, rhs, simulate, simulate_with, Compartment,
    CompartmentState, DerivedRates, ModelMatrices, ModelParams,
};
pub use scenario::{
    builtin_scenario, builtin_scenarios, load_scenario, resolve_scenario, save_scenario,
    write_trajectory_csv, Scenario,
};
pub use special::{gamma, mittag_leffler};
pub use sweep::{run_sweep, summarize, SweepParameter, SweepRun, SweepSpec, TrajectorySummary};
