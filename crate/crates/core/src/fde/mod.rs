//! Caputo fractional initial value problems `D^alpha X(t) = F(X)`, `X(t0) = X0`.
//!
//! The solver is the fractional Adams-Bashforth-Moulton predictor-corrector
//! (product-rectangle predictor, product-trapezoid corrector), which has
//! order `min(2, 1 + alpha)` for smooth solutions. [`discrete_caputo_derivative`]
//! is the L1 finite-difference estimate of the Caputo derivative of a sampled
//! series.

mod caputo;
mod solver;
mod types;
mod weights;

pub use caputo::discrete_caputo_derivative;
pub use solver::solve_caputo_ivp;
pub use types::{FractionalOrder, MemoryPolicy, SolverConfig, TimeGrid, Trajectory};
pub use weights::{abm_weights, AbmWeights};
