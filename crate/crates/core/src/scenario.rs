//! Scenario definitions and file formats.
//!
//! A scenario file is UTF-8 text with one `key = value` pair per line. `#`
//! starts a comment. Every key below is required exactly once; anything else
//! is rejected.
//!
//! ```text
//! name, N, S0, E0, I0, P0, A0, H0, R0_init, F0,
//! beta, beta_prime, l, kappa, rho1, rho2, gamma_a, gamma_i, gamma_r,
//! delta_i, delta_p, delta_h, alpha, t_end, n_steps
//! ```
//!
//! The initial recovered compartment is keyed `R0_init` so it cannot be
//! mistaken for the basic reproduction number. Numbers may be written as
//! decimals or as rationals `a/b` (`1/23`, `47000000/425`); spaces, `_` and
//! `,` inside a number are digit-group separators and are ignored.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::fde::{FractionalOrder, TimeGrid, Trajectory};
use crate::model::{simulate, CompartmentState, ModelParams, COMPARTMENT_NAMES, N_COMPARTMENTS};

pub const DEFAULT_T_END: f64 = 120.0;
pub const DEFAULT_N_STEPS: usize = 12_000;
pub const DEFAULT_CSV_PRECISION: usize = 10;

pub const TRAJECTORY_CSV_HEADER: &str = "t,S,E,I,P,A,H,R,F,IPH_total";

/// Name of the Wuhan variant that starts exactly at the disease-free state.
pub const DFE_START_SCENARIO: &str = "builtin-dfe-start";

const STATE_KEYS: [&str; N_COMPARTMENTS] = ["S0", "E0", "I0", "P0", "A0", "H0", "R0_init", "F0"];

/// Every key of the scenario file, in canonical order.
pub const SCENARIO_KEYS: [&str; 25] = [
    "name", "N", "S0", "E0", "I0", "P0", "A0", "H0", "R0_init", "F0", "beta", "beta_prime", "l",
    "kappa", "rho1", "rho2", "gamma_a", "gamma_i", "gamma_r", "delta_i", "delta_p", "delta_h",
    "alpha", "t_end", "n_steps",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: ModelParams,
    pub initial_state: CompartmentState,
    pub alpha: FractionalOrder,
    pub t_end: f64,
    pub n_steps: usize,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() || self.name.contains(['\n', '\r', '#']) {
            return Err(Error::validation("name", "must be a non-empty single-line name without '#'"));
        }
        self.params.validate()?;
        self.initial_state
            .validate(self.params.population)
            .map_err(state_key_to_file_key)?;
        let n = self.params.population;
        let total = self.initial_state.total();
        if (total - n).abs() > 1e-9 * n {
            return Err(Error::validation(
                "S0",
                format!("initial compartments sum to {total}, expected N = {n}"),
            ));
        }
        self.grid()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        if !(self.t_end > 0.0) {
            return Err(Error::validation("t_end", format!("must be positive, got {}", self.t_end)));
        }
        TimeGrid::new(0.0, self.t_end, self.n_steps)
    }

    pub fn simulate(&self) -> Result<Trajectory> {
        self.validate()?;
        simulate(&self.params, &self.initial_state, self.alpha, &self.grid()?)
    }
}

// Compartment names in state errors become the scenario-file keys.
fn state_key_to_file_key(e: Error) -> Error {
    match e {
        Error::Validation { key, line, message } => {
            let key = COMPARTMENT_NAMES
                .iter()
                .position(|n| *n == key)
                .map_or(key, |i| STATE_KEYS[i].to_string());
            Error::Validation { key, line, message }
        }
        other => other,
    }
}

/// Real population and the divisor applied to obtain a builtin's `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationScaling {
    pub real_population: f64,
    pub divisor: f64,
}

pub fn population_scaling(name: &str) -> Option<PopulationScaling> {
    let (real_population, divisor) = match name {
        "spain" => (47_000_000.0, 425.0),
        "portugal" => (10_280_000.0, 875.0),
        "wuhan" | DFE_START_SCENARIO => (11_000_000.0, 250.0),
        _ => return None,
    };
    Some(PopulationScaling { real_population, divisor })
}

fn builtin(name: &str, infectious: f64, super_spreaders: f64, alpha: f64) -> Scenario {
    let scaling = population_scaling(name).expect("builtin scenario has a population scaling");
    let n = scaling.real_population / scaling.divisor;
    let s0 = n - (infectious + super_spreaders);
    Scenario {
        name: name.to_string(),
        params: ModelParams::reference(n),
        initial_state: CompartmentState::new([s0, 0.0, infectious, super_spreaders, 0.0, 0.0, 0.0, 0.0]),
        alpha: FractionalOrder::new(alpha).expect("builtin order"),
        t_end: DEFAULT_T_END,
        n_steps: DEFAULT_N_STEPS,
    }
}

/// Spain (alpha = 0.85), Portugal (alpha = 0.75) and Wuhan (alpha = 1).
pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![
        builtin("spain", 10.0, 1.0, 0.85),
        builtin("portugal", 4.0, 1.0, 0.75),
        builtin("wuhan", 1.0, 5.0, 1.0),
    ]
}

pub fn builtin_scenario(name: &str) -> Option<Scenario> {
    if name == DFE_START_SCENARIO {
        let mut s = builtin("wuhan", 0.0, 0.0, 1.0);
        s.name = DFE_START_SCENARIO.to_string();
        return Some(s);
    }
    builtin_scenarios().into_iter().find(|s| s.name == name)
}

/// A builtin name, or otherwise a path to a scenario file.
pub fn resolve_scenario(reference: &str) -> Result<Scenario> {
    match builtin_scenario(reference) {
        Some(s) => Ok(s),
        None => load_scenario(reference),
    }
}

fn parse_decimal(text: &str) -> Option<f64> {
    let cleaned: String = text.chars().filter(|c| !matches!(c, ' ' | '_' | ',')).collect();
    if cleaned.is_empty() {
        return None;
    }
    cleaned.parse::<f64>().ok()
}

/// Parses a decimal or `a/b` rational literal.
pub fn parse_number(text: &str) -> Option<f64> {
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_decimal(den)?;
            if den == 0.0 {
                return None;
            }
            parse_decimal(num)? / den
        }
        None => parse_decimal(text)?,
    };
    value.is_finite().then_some(value)
}

fn parse_count(text: &str) -> Option<usize> {
    let cleaned: String = text.chars().filter(|c| !matches!(c, ' ' | '_' | ',')).collect();
    cleaned.parse().ok()
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut entries: HashMap<&'static str, (usize, String)> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Validation {
            key: content.to_string(),
            line: Some(line_no),
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let known = SCENARIO_KEYS.iter().find(|k| **k == key).ok_or_else(|| Error::Validation {
            key: key.to_string(),
            line: Some(line_no),
            message: "unknown key".into(),
        })?;
        if let Some((first, _)) = entries.get(known) {
            return Err(Error::Validation {
                key: key.to_string(),
                line: Some(line_no),
                message: format!("duplicate key (first given on line {first})"),
            });
        }
        entries.insert(known, (line_no, value.trim().to_string()));
    }

    if let Some(missing) = SCENARIO_KEYS.iter().find(|k| !entries.contains_key(*k)) {
        return Err(Error::validation(*missing, "missing key"));
    }

    let line_of = |key: &str| entries[key].0;
    let number = |key: &'static str| -> Result<f64> {
        let (line, value) = &entries[key];
        parse_number(value).ok_or_else(|| Error::Validation {
            key: key.to_string(),
            line: Some(*line),
            message: format!("cannot parse `{value}` as a finite number"),
        })
    };

    let params = ModelParams {
        beta: number("beta")?,
        beta_prime: number("beta_prime")?,
        l: number("l")?,
        kappa: number("kappa")?,
        rho1: number("rho1")?,
        rho2: number("rho2")?,
        gamma_a: number("gamma_a")?,
        gamma_i: number("gamma_i")?,
        gamma_r: number("gamma_r")?,
        delta_i: number("delta_i")?,
        delta_p: number("delta_p")?,
        delta_h: number("delta_h")?,
        population: number("N")?,
    };
    let mut state = [0.0; N_COMPARTMENTS];
    for (slot, key) in state.iter_mut().zip(STATE_KEYS) {
        *slot = number(key)?;
    }
    let alpha = FractionalOrder::new(number("alpha")?).map_err(|e| e.at_line(line_of("alpha")))?;
    let (steps_line, steps_text) = &entries["n_steps"];
    let n_steps = parse_count(steps_text).ok_or_else(|| Error::Validation {
        key: "n_steps".into(),
        line: Some(*steps_line),
        message: format!("cannot parse `{steps_text}` as a non-negative integer"),
    })?;

    let scenario = Scenario {
        name: entries["name"].1.clone(),
        params,
        initial_state: CompartmentState::new(state),
        alpha,
        t_end: number("t_end")?,
        n_steps,
    };
    scenario.validate().map_err(|e| match &e {
        Error::Validation { key, line: None, .. } => {
            let at = entries.get(key.as_str()).map(|(l, _)| *l);
            match at {
                Some(l) => e.at_line(l),
                None => e,
            }
        }
        _ => e,
    })?;
    Ok(scenario)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text)
}

/// Round-trip-exact decimal (17 significant digits).
fn exact(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render_scenario(scenario: &Scenario) -> String {
    let p = &scenario.params;
    let mut out = String::new();
    out.push_str("# fractional SEIPAHRF scenario\n");
    out.push_str("# R0_init is the initial recovered compartment, not the reproduction number.\n");
    if let Some(scaling) = population_scaling(&scenario.name) {
        out.push_str(&format!(
            "# N is the population {} scaled by 1/{}\n",
            scaling.real_population, scaling.divisor
        ));
    }
    let mut line = |key: &str, value: String| out.push_str(&format!("{key} = {value}\n"));
    line("name", scenario.name.clone());
    line("N", exact(p.population));
    for (key, v) in STATE_KEYS.iter().zip(scenario.initial_state.as_array()) {
        line(key, exact(*v));
    }
    for (key, v) in p.named_rates() {
        line(key, exact(v));
    }
    line("alpha", exact(scenario.alpha.value()));
    line("t_end", exact(scenario.t_end));
    line("n_steps", scenario.n_steps.to_string());
    out
}

pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_scenario(scenario)).map_err(|e| Error::io(path, e))
}

fn format_significant(v: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, v)
}

/// Writes `t,S,E,I,P,A,H,R,F,IPH_total`, one row per grid point, with
/// `precision` significant digits.
pub fn write_trajectory_csv(
    trajectory: &Trajectory,
    path: impl AsRef<Path>,
    precision: usize,
) -> Result<()> {
    if trajectory.dim() != N_COMPARTMENTS {
        return Err(Error::Domain(format!(
            "trajectory CSV needs {N_COMPARTMENTS}-component states, got {}",
            trajectory.dim()
        )));
    }
    check_precision(precision)?;
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    writeln!(w, "{TRAJECTORY_CSV_HEADER}").map_err(io)?;
    for (t, state) in trajectory.times().iter().zip(trajectory.states()) {
        let mut row = format_significant(*t, precision);
        for v in state {
            row.push(',');
            row.push_str(&format_significant(*v, precision));
        }
        row.push(',');
        row.push_str(&format_significant(state[2] + state[3] + state[5], precision));
        writeln!(w, "{row}").map_err(io)?;
    }
    w.flush().map_err(io)
}

pub(crate) fn check_precision(precision: usize) -> Result<()> {
    if (1..=17).contains(&precision) {
        Ok(())
    } else {
        Err(Error::validation(
            "precision",
            format!("significant digits must lie in 1..=17, got {precision}"),
        ))
    }
}
