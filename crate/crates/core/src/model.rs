//! The eight-compartment SEIPAHRF COVID-19 model with Caputo dynamics.
//!
//! State order is `(S, E, I, P, A, H, R, F)` throughout: susceptible,
//! exposed, symptomatic infectious, super-spreaders, asymptomatic,
//! hospitalized, recovered, fatalities.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::fde::{solve_caputo_ivp, FractionalOrder, SolverConfig, TimeGrid, Trajectory};

pub const N_COMPARTMENTS: usize = 8;

pub const COMPARTMENT_NAMES: [&str; N_COMPARTMENTS] = ["S", "E", "I", "P", "A", "H", "R", "F"];

/// Components below `-WARN_NEGATIVITY * N` are logged.
pub const WARN_NEGATIVITY: f64 = 1e-6;
/// Components below `-FAIL_NEGATIVITY * N` abort the simulation.
pub const FAIL_NEGATIVITY: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(usize)]
pub enum Compartment {
    S = 0,
    E,
    I,
    P,
    A,
    H,
    R,
    F,
}

impl Compartment {
    pub const ALL: [Compartment; N_COMPARTMENTS] = [
        Compartment::S,
        Compartment::E,
        Compartment::I,
        Compartment::P,
        Compartment::A,
        Compartment::H,
        Compartment::R,
        Compartment::F,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        COMPARTMENT_NAMES[self.index()]
    }
}

/// Epidemiological rates (per day) and the total population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Human-to-human transmission rate.
    pub beta: f64,
    /// Transmission rate of super-spreaders.
    pub beta_prime: f64,
    /// Relative transmissibility of hospitalized patients.
    pub l: f64,
    /// Rate of leaving the exposed class.
    pub kappa: f64,
    /// Proportion of exposed becoming symptomatic.
    pub rho1: f64,
    /// Proportion of exposed becoming super-spreaders.
    pub rho2: f64,
    /// Hospitalization rate of symptomatic and super-spreaders.
    pub gamma_a: f64,
    /// Recovery rate without hospitalization.
    pub gamma_i: f64,
    /// Recovery rate of hospitalized patients.
    pub gamma_r: f64,
    pub delta_i: f64,
    pub delta_p: f64,
    pub delta_h: f64,
    /// Total population `N`.
    pub population: f64,
}

impl ModelParams {
    /// Parameter set used for the Wuhan, Spain and Portugal simulations.
    pub fn reference(population: f64) -> Self {
        let delta = 1.0 / 23.0;
        ModelParams {
            beta: 2.55,
            beta_prime: 7.65,
            l: 1.56,
            kappa: 0.25,
            rho1: 0.58,
            rho2: 0.001,
            gamma_a: 0.94,
            gamma_i: 0.27,
            gamma_r: 0.5,
            delta_i: delta,
            delta_p: delta,
            delta_h: delta,
            population,
        }
    }

    /// `(key, value)` pairs in canonical order.
    pub fn named_rates(&self) -> [(&'static str, f64); 12] {
        [
            ("beta", self.beta),
            ("beta_prime", self.beta_prime),
            ("l", self.l),
            ("kappa", self.kappa),
            ("rho1", self.rho1),
            ("rho2", self.rho2),
            ("gamma_a", self.gamma_a),
            ("gamma_i", self.gamma_i),
            ("gamma_r", self.gamma_r),
            ("delta_i", self.delta_i),
            ("delta_p", self.delta_p),
            ("delta_h", self.delta_h),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (key, value) in self.named_rates() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::validation(
                    key,
                    format!("must be a finite non-negative number, got {value}"),
                ));
            }
        }
        if !(self.population > 0.0) || !self.population.is_finite() {
            return Err(Error::validation(
                "N",
                format!("population must be positive, got {}", self.population),
            ));
        }
        if self.rho1 + self.rho2 > 1.0 {
            return Err(Error::validation(
                "rho2",
                format!("rho1+rho2 > 1 (rho1 = {}, rho2 = {})", self.rho1, self.rho2),
            ));
        }
        Ok(())
    }

    pub fn derived_rates(&self) -> DerivedRates {
        derived_rates(self)
    }
}

/// Aggregated outflow rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedRates {
    /// `kappa (1 - rho1 - rho2)`
    pub varpi_e: f64,
    /// `gamma_a + gamma_i + delta_i`
    pub varpi_i: f64,
    /// `gamma_a + gamma_i + delta_p`
    pub varpi_p: f64,
    /// `gamma_r + delta_h`
    pub varpi_h: f64,
}

pub fn derived_rates(params: &ModelParams) -> DerivedRates {
    DerivedRates {
        varpi_e: params.kappa * (1.0 - params.rho1 - params.rho2),
        varpi_i: params.gamma_a + params.gamma_i + params.delta_i,
        varpi_p: params.gamma_a + params.gamma_i + params.delta_p,
        varpi_h: params.gamma_r + params.delta_h,
    }
}

/// Compartment sizes (persons) at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompartmentState([f64; N_COMPARTMENTS]);

impl CompartmentState {
    pub const fn new(values: [f64; N_COMPARTMENTS]) -> Self {
        CompartmentState(values)
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let arr: [f64; N_COMPARTMENTS] = values.try_into().map_err(|_| {
            Error::Domain(format!(
                "expected {N_COMPARTMENTS} compartments, got {}",
                values.len()
            ))
        })?;
        Ok(CompartmentState(arr))
    }

    /// All of `population` susceptible.
    pub fn disease_free(population: f64) -> Self {
        let mut v = [0.0; N_COMPARTMENTS];
        v[0] = population;
        CompartmentState(v)
    }

    pub fn as_array(&self) -> &[f64; N_COMPARTMENTS] {
        &self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, c: Compartment) -> f64 {
        self.0[c.index()]
    }

    pub fn set(&mut self, c: Compartment, value: f64) {
        self.0[c.index()] = value;
    }

    pub fn s(&self) -> f64 {
        self.0[0]
    }
    pub fn e(&self) -> f64 {
        self.0[1]
    }
    pub fn i(&self) -> f64 {
        self.0[2]
    }
    pub fn p(&self) -> f64 {
        self.0[3]
    }
    pub fn a(&self) -> f64 {
        self.0[4]
    }
    pub fn h(&self) -> f64 {
        self.0[5]
    }
    pub fn r(&self) -> f64 {
        self.0[6]
    }
    pub fn f(&self) -> f64 {
        self.0[7]
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Symptomatic + super-spreaders + hospitalized.
    pub fn infected_total(&self) -> f64 {
        self.i() + self.p() + self.h()
    }

    /// Checks membership of the feasible region: non-negative components
    /// summing to at most `N` (within `1e-9 N`).
    pub fn validate(&self, population: f64) -> Result<()> {
        for c in Compartment::ALL {
            let v = self.get(c);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::validation(
                    c.name(),
                    format!("compartment must be finite and non-negative, got {v}"),
                ));
            }
        }
        if self.total() > population * (1.0 + 1e-9) {
            return Err(Error::validation(
                "S",
                format!("compartments sum to {} which exceeds N = {population}", self.total()),
            ));
        }
        Ok(())
    }
}

impl Index<Compartment> for CompartmentState {
    type Output = f64;

    fn index(&self, c: Compartment) -> &f64 {
        &self.0[c.index()]
    }
}

impl fmt::Display for CompartmentState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = COMPARTMENT_NAMES
            .iter()
            .zip(self.0)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Per-susceptible infection rate `beta I/N + l beta H/N + beta' P/N`.
pub fn force_of_infection(state: &CompartmentState, params: &ModelParams) -> f64 {
    force_of_infection_raw(state.as_array(), params)
}

#[inline]
fn force_of_infection_raw(x: &[f64; N_COMPARTMENTS], p: &ModelParams) -> f64 {
    (p.beta * x[2] + p.l * p.beta * x[5] + p.beta_prime * x[3]) / p.population
}

/// Right-hand side of the Caputo system, persons per day.
pub fn rhs(state: &CompartmentState, params: &ModelParams) -> [f64; N_COMPARTMENTS] {
    let mut out = [0.0; N_COMPARTMENTS];
    rhs_into(state.as_array(), params, &mut out);
    out
}

#[inline]
pub(crate) fn rhs_into(x: &[f64; N_COMPARTMENTS], p: &ModelParams, out: &mut [f64; N_COMPARTMENTS]) {
    let [s, e, i, pp, _a, h, _r, _f] = *x;
    let infection = force_of_infection_raw(x, p) * s;
    out[0] = -infection;
    out[1] = infection - p.kappa * e;
    out[2] = p.kappa * p.rho1 * e - (p.gamma_a + p.gamma_i) * i - p.delta_i * i;
    out[3] = p.kappa * p.rho2 * e - (p.gamma_a + p.gamma_i) * pp - p.delta_p * pp;
    out[4] = p.kappa * (1.0 - p.rho1 - p.rho2) * e;
    out[5] = p.gamma_a * (i + pp) - p.gamma_r * h - p.delta_h * h;
    out[6] = p.gamma_i * (i + pp) + p.gamma_r * h;
    out[7] = p.delta_i * i + p.delta_p * pp + p.delta_h * h;
}

pub type Matrix8 = [[f64; N_COMPARTMENTS]; N_COMPARTMENTS];

/// Compact form `F(X) = (S/N) A1 X + A2 X`.
///
/// `A2` is built from the component equations, so the `P` diagonal is
/// `-varpi_p`, the `H` diagonal is `-varpi_h`, and the fatality row picks up
/// `delta_i, delta_p, delta_h` in the `I, P, H` columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelMatrices {
    pub a1: Matrix8,
    pub a2: Matrix8,
}

impl ModelMatrices {
    /// Evaluates `(S/N) A1 X + A2 X`.
    pub fn apply(&self, state: &CompartmentState, population: f64) -> [f64; N_COMPARTMENTS] {
        let x = state.as_array();
        let ratio = x[0] / population;
        let mut out = [0.0; N_COMPARTMENTS];
        for (row, o) in out.iter_mut().enumerate() {
            let bilinear: f64 = (0..N_COMPARTMENTS).map(|c| self.a1[row][c] * x[c]).sum();
            let linear: f64 = (0..N_COMPARTMENTS).map(|c| self.a2[row][c] * x[c]).sum();
            *o = ratio * bilinear + linear;
        }
        out
    }

    pub fn column_sums(&self) -> ([f64; N_COMPARTMENTS], [f64; N_COMPARTMENTS]) {
        let mut s1 = [0.0; N_COMPARTMENTS];
        let mut s2 = [0.0; N_COMPARTMENTS];
        for c in 0..N_COMPARTMENTS {
            s1[c] = (0..N_COMPARTMENTS).map(|r| self.a1[r][c]).sum();
            s2[c] = (0..N_COMPARTMENTS).map(|r| self.a2[r][c]).sum();
        }
        (s1, s2)
    }
}

pub fn build_matrices(params: &ModelParams) -> ModelMatrices {
    use Compartment::*;
    let p = params;
    let d = derived_rates(p);
    let mut a1 = [[0.0; N_COMPARTMENTS]; N_COMPARTMENTS];
    let mut a2 = [[0.0; N_COMPARTMENTS]; N_COMPARTMENTS];
    let at = |m: &mut Matrix8, r: Compartment, c: Compartment, v: f64| m[r.index()][c.index()] = v;

    at(&mut a1, S, I, -p.beta);
    at(&mut a1, S, P, -p.beta_prime);
    at(&mut a1, S, H, -p.l * p.beta);
    at(&mut a1, E, I, p.beta);
    at(&mut a1, E, P, p.beta_prime);
    at(&mut a1, E, H, p.l * p.beta);

    at(&mut a2, E, E, -p.kappa);
    at(&mut a2, I, E, p.kappa * p.rho1);
    at(&mut a2, I, I, -d.varpi_i);
    at(&mut a2, P, E, p.kappa * p.rho2);
    at(&mut a2, P, P, -d.varpi_p);
    at(&mut a2, A, E, d.varpi_e);
    at(&mut a2, H, I, p.gamma_a);
    at(&mut a2, H, P, p.gamma_a);
    at(&mut a2, H, H, -d.varpi_h);
    at(&mut a2, R, I, p.gamma_i);
    at(&mut a2, R, P, p.gamma_i);
    at(&mut a2, R, H, p.gamma_r);
    at(&mut a2, F, I, p.delta_i);
    at(&mut a2, F, P, p.delta_p);
    at(&mut a2, F, H, p.delta_h);

    ModelMatrices { a1, a2 }
}

/// Solves the model from `initial` over `grid`.
///
/// Small negative excursions from the discrete scheme are left in place (no
/// clipping); below `-1e-6 N` a warning is logged and below `-1e-3 N` the run
/// fails.
pub fn simulate(
    params: &ModelParams,
    initial: &CompartmentState,
    order: FractionalOrder,
    grid: &TimeGrid,
) -> Result<Trajectory> {
    let config = SolverConfig::new(order, grid.step_size())?;
    simulate_with(params, initial, grid, &config)
}

pub fn simulate_with(
    params: &ModelParams,
    initial: &CompartmentState,
    grid: &TimeGrid,
    config: &SolverConfig,
) -> Result<Trajectory> {
    params.validate()?;
    initial.validate(params.population)?;
    let field = |x: &[f64], out: &mut [f64]| {
        let x: &[f64; N_COMPARTMENTS] = x.try_into().expect("state dimension");
        let out: &mut [f64; N_COMPARTMENTS] = out.try_into().expect("state dimension");
        rhs_into(x, params, out);
    };
    let trajectory = solve_caputo_ivp(field, initial.as_slice(), grid, config)?;
    check_negativity(&trajectory, params.population)?;
    Ok(trajectory)
}

fn check_negativity(trajectory: &Trajectory, population: f64) -> Result<()> {
    let warn_at = -WARN_NEGATIVITY * population;
    let fail_at = -FAIL_NEGATIVITY * population;
    let mut warned = false;
    for (step, state) in trajectory.states().enumerate() {
        for (c, &v) in state.iter().enumerate() {
            if v < fail_at {
                return Err(Error::Negativity {
                    step,
                    compartment: COMPARTMENT_NAMES[c],
                    value: v,
                    threshold: FAIL_NEGATIVITY * population,
                });
            }
            if v < warn_at && !warned {
                log::warn!(
                    "compartment {} = {v} at step {step} is below -{}",
                    COMPARTMENT_NAMES[c],
                    WARN_NEGATIVITY * population
                );
                warned = true;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn reference() -> ModelParams {
        ModelParams::reference(1000.0)
    }

    #[test]
    fn derived_rates_for_reference_parameters() {
        let d = derived_rates(&reference());
        let delta = 1.0 / 23.0;
        assert_relative_eq!(d.varpi_i, 0.94 + 0.27 + delta, max_relative = 1e-15);
        assert_eq!(d.varpi_i, d.varpi_p);
        assert_relative_eq!(d.varpi_h, 0.5 + delta, max_relative = 1e-15);
        assert_relative_eq!(d.varpi_e, 0.25 * 0.419, max_relative = 1e-14);
    }

    #[test]
    fn derived_rates_degenerate_cases() {
        let zero = ModelParams {
            beta: 0.0,
            beta_prime: 0.0,
            l: 0.0,
            kappa: 0.0,
            rho1: 0.0,
            rho2: 0.0,
            gamma_a: 0.0,
            gamma_i: 0.0,
            gamma_r: 0.0,
            delta_i: 0.0,
            delta_p: 0.0,
            delta_h: 0.0,
            population: 1.0,
        };
        let d = derived_rates(&zero);
        assert_eq!((d.varpi_e, d.varpi_i, d.varpi_p, d.varpi_h), (0.0, 0.0, 0.0, 0.0));

        let simplex_edge = ModelParams { rho1: 0.75, rho2: 0.25, ..reference() };
        assert_eq!(derived_rates(&simplex_edge).varpi_e, 0.0);
    }

    #[test]
    fn delta_is_exact_reciprocal() {
        assert_eq!(reference().delta_i, 1.0 / 23.0);
    }

    #[test]
    fn force_of_infection_cases() {
        let p = reference();
        let idle = CompartmentState::new([1000.0, 5.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0]);
        assert_eq!(force_of_infection(&idle, &p), 0.0);
        let all_infectious = CompartmentState::new([0.0, 0.0, 1000.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_relative_eq!(force_of_infection(&all_infectious, &p), p.beta, max_relative = 1e-15);

        // (2.55 * 10 + 7.65 * 1) / (47e6 / 425), hand-evaluated at 50 digits.
        let spain = ModelParams::reference(47_000_000.0 / 425.0);
        let st = CompartmentState::new([0.0, 0.0, 10.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_relative_eq!(
            force_of_infection(&st, &spain),
            2.997_606_382_978_723_404_3e-4,
            max_relative = 1e-14
        );
    }

    #[test]
    fn rhs_hand_evaluated() {
        let st = CompartmentState::new([500.0, 100.0, 50.0, 10.0, 20.0, 30.0, 280.0, 10.0]);
        let got = rhs(&st, &reference());
        // Term-by-term evaluation in exact rational arithmetic.
        let want = [
            -161.67,
            136.67,
            -48.173_913_043_478_260_87,
            -12.509_782_608_695_652_174,
            10.475,
            40.095_652_173_913_043_478,
            31.2,
            3.913_043_478_260_869_565_2,
        ];
        for (g, w) in got.iter().zip(want) {
            assert_relative_eq!(*g, w, max_relative = 1e-13);
        }
    }

    #[test]
    fn rhs_vanishes_at_disease_free_state() {
        let p = reference();
        assert_eq!(rhs(&CompartmentState::disease_free(p.population), &p), [0.0; 8]);
    }

    #[test]
    fn matrices_entries_and_conservation() {
        let m = build_matrices(&reference());
        assert_relative_eq!(m.a2[2][1], 0.145, max_relative = 1e-15);
        let (s1, s2) = m.column_sums();
        for c in 0..N_COMPARTMENTS {
            assert!(s1[c].abs() < 1e-15, "A1 column {c}");
            assert!(s2[c].abs() < 1e-15, "A2 column {c}: {}", s2[c]);
        }
    }

    #[test]
    fn params_validation() {
        assert!(reference().validate().is_ok());
        let bad = ModelParams { rho1: 0.6, rho2: 0.5, ..reference() };
        let err = bad.validate().unwrap_err().to_string();
        assert!(err.contains("rho1+rho2 > 1"), "{err}");
        assert!(ModelParams { population: 0.0, ..reference() }.validate().is_err());
        assert!(ModelParams { kappa: -0.1, ..reference() }.validate().is_err());
        assert!(ModelParams { beta: f64::NAN, ..reference() }.validate().is_err());
    }

    #[test]
    fn state_validation() {
        let ok = CompartmentState::new([990.0, 0.0, 10.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(ok.validate(1000.0).is_ok());
        let neg = CompartmentState::new([990.0, -1.0, 10.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(neg.validate(1000.0).is_err());
        let over = CompartmentState::new([995.0, 0.0, 10.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(over.validate(1000.0).is_err());
        assert!(CompartmentState::from_slice(&[1.0; 7]).is_err());
    }

    fn arb_params() -> impl Strategy<Value = ModelParams> {
        (
            (0.0f64..5.0, 0.0f64..10.0, 0.0f64..3.0, 0.0f64..1.0),
            (0.0f64..1.0, 0.0f64..1.0),
            (0.0f64..2.0, 0.0f64..1.0, 0.0f64..1.0),
            (0.0f64..0.2, 0.0f64..0.2, 0.0f64..0.2),
            1.0f64..1e7,
        )
            .prop_map(|((beta, beta_prime, l, kappa), (u, v), (ga, gi, gr), (di, dp, dh), population)| {
                let rho1 = u;
                let rho2 = (1.0 - u) * v;
                ModelParams {
                    beta,
                    beta_prime,
                    l,
                    kappa,
                    rho1,
                    rho2,
                    gamma_a: ga,
                    gamma_i: gi,
                    gamma_r: gr,
                    delta_i: di,
                    delta_p: dp,
                    delta_h: dh,
                    population,
                }
            })
    }

    fn arb_state(population: f64) -> impl Strategy<Value = CompartmentState> {
        proptest::array::uniform8(0.0f64..1.0).prop_map(move |w| {
            let total: f64 = w.iter().sum::<f64>().max(1e-12);
            CompartmentState::new(w.map(|x| x / total * population))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rhs_conserves_population((p, st) in arb_params().prop_flat_map(|p| (Just(p), arb_state(p.population)))) {
            prop_assert!(p.validate().is_ok());
            let f = rhs(&st, &p);
            let norm: f64 = f.iter().map(|v| v.abs()).sum();
            let total: f64 = f.iter().sum();
            prop_assert!(total.abs() <= 1e-12 * norm.max(f64::MIN_POSITIVE), "sum {} norm {}", total, norm);
        }

        #[test]
        fn compact_form_matches_rhs((p, st) in arb_params().prop_flat_map(|p| (Just(p), arb_state(p.population)))) {
            let m = build_matrices(&p);
            let compact = m.apply(&st, p.population);
            let direct = rhs(&st, &p);
            let x = st.as_array();
            let ratio = x[0] / p.population;
            for r in 0..N_COMPARTMENTS {
                // Relative to the magnitude of the terms entering row r.
                let scale: f64 = (0..N_COMPARTMENTS)
                    .map(|c| (ratio * m.a1[r][c] * x[c]).abs() + (m.a2[r][c] * x[c]).abs())
                    .sum();
                prop_assert!((compact[r] - direct[r]).abs() <= 1e-12 * scale,
                    "row {}: {} vs {}", r, compact[r], direct[r]);
            }
        }

        #[test]
        fn matrices_have_zero_column_sums(p in arb_params()) {
            let (s1, s2) = build_matrices(&p).column_sums();
            let scale = 1.0 + p.beta + p.beta_prime + p.l * p.beta + p.kappa + p.gamma_a + p.gamma_i + p.gamma_r;
            for c in 0..N_COMPARTMENTS {
                prop_assert!(s1[c].abs() <= 1e-14 * scale);
                prop_assert!(s2[c].abs() <= 1e-14 * scale);
            }
        }

        #[test]
        fn sink_compartments_have_non_negative_rates((p, st) in arb_params().prop_flat_map(|p| (Just(p), arb_state(p.population)))) {
            let f = rhs(&st, &p);
            prop_assert!(f[Compartment::A.index()] >= 0.0);
            prop_assert!(f[Compartment::R.index()] >= 0.0);
            prop_assert!(f[Compartment::F.index()] >= 0.0);
        }

        #[test]
        fn disease_free_family_is_stationary(p in arb_params(), frac in proptest::array::uniform4(0.0f64..1.0)) {
            // E = I = P = H = 0 with arbitrary S, A, R, F.
            let n = p.population;
            let st = CompartmentState::new([frac[0] * n, 0.0, 0.0, 0.0, frac[1] * n, 0.0, frac[2] * n, frac[3] * n]);
            prop_assert_eq!(rhs(&st, &p), [0.0; N_COMPARTMENTS]);
        }
    }
}
