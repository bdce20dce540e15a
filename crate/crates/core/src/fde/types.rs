use std::fmt;

use crate::error::{Error, Result};

/// Order `alpha` of the Caputo derivative, `0 < alpha <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    /// The classical first derivative.
    pub const ONE: FractionalOrder = FractionalOrder(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(FractionalOrder(alpha))
        } else {
            Err(Error::validation(
                "alpha",
                format!("fractional order must lie in (0, 1], got {alpha}"),
            ))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        FractionalOrder::new(alpha)
    }
}

/// How much of the history enters the convolution sums.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MemoryPolicy {
    /// Exact sums over every previous step.
    #[default]
    FullHistory,
    /// Short-memory principle: only the last `window` days of history.
    Truncated { window: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    order: FractionalOrder,
    step_size: f64,
    corrector_iterations: usize,
    memory: MemoryPolicy,
}

impl SolverConfig {
    /// One corrector pass (PECE) with full history.
    pub fn new(order: FractionalOrder, step_size: f64) -> Result<Self> {
        if !(step_size > 0.0) || !step_size.is_finite() {
            return Err(Error::validation(
                "step_size",
                format!("step size must be positive and finite, got {step_size}"),
            ));
        }
        Ok(SolverConfig {
            order,
            step_size,
            corrector_iterations: 1,
            memory: MemoryPolicy::FullHistory,
        })
    }

    pub fn with_corrector_iterations(mut self, iterations: usize) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::validation(
                "corrector_iterations",
                "at least one corrector iteration is required",
            ));
        }
        self.corrector_iterations = iterations;
        Ok(self)
    }

    pub fn with_memory(mut self, memory: MemoryPolicy) -> Result<Self> {
        if let MemoryPolicy::Truncated { window } = memory {
            if !(window > 0.0) {
                return Err(Error::validation(
                    "memory_window",
                    format!("truncation window must be positive, got {window}"),
                ));
            }
        }
        self.memory = memory;
        Ok(self)
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn step_size(&self) -> f64 {
        self.step_size
    }

    pub fn corrector_iterations(&self) -> usize {
        self.corrector_iterations
    }

    pub fn memory(&self) -> MemoryPolicy {
        self.memory
    }
}

/// Uniform grid `t0, t0 + h, ..., t_end` with `n_steps` intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t_end: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t_end: f64, n_steps: usize) -> Result<Self> {
        if !(t0.is_finite() && t_end.is_finite()) || t_end <= t0 {
            return Err(Error::validation(
                "t_end",
                format!("time grid needs finite t_end > t0, got t0 = {t0}, t_end = {t_end}"),
            ));
        }
        if n_steps == 0 {
            return Err(Error::validation("n_steps", "time grid needs at least one step"));
        }
        Ok(TimeGrid { t0, t_end, n_steps })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step_size(&self) -> f64 {
        (self.t_end - self.t0) / self.n_steps as f64
    }

    /// Time of grid point `i`; the last point is exactly `t_end`.
    pub fn time(&self, i: usize) -> f64 {
        if i == self.n_steps {
            self.t_end
        } else {
            self.t0 + i as f64 * self.step_size()
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(|i| self.time(i))
    }
}

/// Solver output: one state vector per grid time, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    dim: usize,
    data: Vec<f64>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::Domain(format!(
                "trajectory has {} times but {} states",
                times.len(),
                states.len()
            )));
        }
        let dim = states.first().map_or(0, Vec::len);
        if states.iter().any(|s| s.len() != dim) {
            return Err(Error::Domain("trajectory states differ in dimension".into()));
        }
        let data = states.into_iter().flatten().collect();
        Self::from_flat(times, dim, data)
    }

    pub(crate) fn from_flat(times: Vec<f64>, dim: usize, data: Vec<f64>) -> Result<Self> {
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("trajectory times must be strictly increasing".into()));
        }
        debug_assert_eq!(data.len(), times.len() * dim);
        Ok(Trajectory { times, dim, data })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dim.max(1)).take(self.times.len())
    }

    pub fn last_state(&self) -> Option<&[f64]> {
        (!self.is_empty()).then(|| self.state(self.len() - 1))
    }

    /// Time series of a single component.
    pub fn component(&self, c: usize) -> Vec<f64> {
        assert!(c < self.dim, "component {c} out of range for dimension {}", self.dim);
        self.states().map(|s| s[c]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_bounds() {
        assert!(FractionalOrder::new(1.0).is_ok());
        assert!(FractionalOrder::new(1e-9).is_ok());
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(1.0000001).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn config_invariants() {
        let order = FractionalOrder::new(0.5).unwrap();
        assert!(SolverConfig::new(order, 0.0).is_err());
        assert!(SolverConfig::new(order, -1.0).is_err());
        let cfg = SolverConfig::new(order, 0.1).unwrap();
        assert_eq!(cfg.corrector_iterations(), 1);
        assert_eq!(cfg.memory(), MemoryPolicy::FullHistory);
        assert!(cfg.with_corrector_iterations(0).is_err());
        assert!(cfg.with_memory(MemoryPolicy::Truncated { window: 0.0 }).is_err());
        assert!(cfg.with_memory(MemoryPolicy::Truncated { window: 5.0 }).is_ok());
    }

    #[test]
    fn grid_is_uniform_and_ends_exactly() {
        let grid = TimeGrid::new(0.0, 120.0, 12_000).unwrap();
        assert_eq!(grid.step_size(), 0.01);
        assert_eq!(grid.time(12_000), 120.0);
        assert_eq!(grid.times().count(), 12_001);
        assert!(TimeGrid::new(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn trajectory_shape_checks() {
        assert!(Trajectory::new(vec![0.0, 1.0], vec![vec![1.0]]).is_err());
        assert!(Trajectory::new(vec![0.0, 1.0], vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(Trajectory::new(vec![0.0, 0.0], vec![vec![1.0], vec![2.0]]).is_err());
        let t = Trajectory::new(vec![0.0, 1.0], vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(t.state(1), &[3.0, 4.0]);
        assert_eq!(t.component(0), vec![1.0, 3.0]);
        assert_eq!(t.states().count(), 2);
    }
}
