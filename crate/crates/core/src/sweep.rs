//! Parameter sweeps over the fractional order or the transmission rate, and
//! the per-run summary statistics used to compare them.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;

use crate::analysis::basic_reproduction_number;
use crate::error::{Error, Result};
use crate::fde::{FractionalOrder, Trajectory};
use crate::model::{Compartment, ModelParams, N_COMPARTMENTS};
use crate::scenario::{check_precision, write_trajectory_csv, Scenario};

pub const SUMMARY_CSV_HEADER: &str =
    "param_value,R0,peak_I,peak_P,peak_H,peak_IPH,t_peak_IPH,final_IPH";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Alpha,
    /// Only `beta` moves; `beta_prime` and `l` stay at their base values.
    Beta,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::Alpha => "alpha",
            SweepParameter::Beta => "beta",
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(SweepParameter::Alpha),
            "beta" => Ok(SweepParameter::Beta),
            other => Err(Error::validation("param", format!("expected alpha or beta, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    parameter: SweepParameter,
    values: Vec<f64>,
    base: Scenario,
}

impl SweepSpec {
    pub fn new(parameter: SweepParameter, values: Vec<f64>, base: Scenario) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::validation("values", "sweep needs at least one value"));
        }
        for &v in &values {
            match parameter {
                SweepParameter::Alpha => {
                    FractionalOrder::new(v)?;
                }
                SweepParameter::Beta => {
                    if !(v >= 0.0) || !v.is_finite() {
                        return Err(Error::validation(
                            "values",
                            format!("beta values must be finite and non-negative, got {v}"),
                        ));
                    }
                }
            }
        }
        base.validate()?;
        Ok(SweepSpec { parameter, values, base })
    }

    pub fn parameter(&self) -> SweepParameter {
        self.parameter
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn base(&self) -> &Scenario {
        &self.base
    }

    /// The base scenario with the swept parameter set to `value`.
    pub fn scenario_for(&self, value: f64) -> Result<Scenario> {
        let mut s = self.base.clone();
        match self.parameter {
            SweepParameter::Alpha => s.alpha = FractionalOrder::new(value)?,
            SweepParameter::Beta => s.params.beta = value,
        }
        Ok(s)
    }

    /// `<scenario>_<param>_<value>.csv`
    pub fn file_name(&self, value: f64) -> String {
        format!("{}_{}_{}.csv", self.base.name, self.parameter, value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySummary {
    pub r0: f64,
    pub peak_i: f64,
    pub peak_p: f64,
    pub peak_h: f64,
    pub peak_iph: f64,
    /// Time of the first global maximum of `I + P + H`.
    pub t_peak_iph: f64,
    pub final_iph: f64,
}

fn first_max(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
}

pub fn infected_series(trajectory: &Trajectory) -> Vec<f64> {
    trajectory
        .states()
        .map(|s| s[Compartment::I.index()] + s[Compartment::P.index()] + s[Compartment::H.index()])
        .collect()
}

pub fn summarize(trajectory: &Trajectory, params: &ModelParams) -> Result<TrajectorySummary> {
    if trajectory.dim() != N_COMPARTMENTS || trajectory.is_empty() {
        return Err(Error::Domain("summary needs a non-empty 8-compartment trajectory".into()));
    }
    let peak = |c: Compartment| first_max(trajectory.states().map(|s| s[c.index()])).1;
    let iph = infected_series(trajectory);
    let (peak_idx, peak_iph) = first_max(iph.iter().copied());
    Ok(TrajectorySummary {
        r0: basic_reproduction_number(params)?,
        peak_i: peak(Compartment::I),
        peak_p: peak(Compartment::P),
        peak_h: peak(Compartment::H),
        peak_iph,
        t_peak_iph: trajectory.times()[peak_idx],
        final_iph: *iph.last().expect("non-empty"),
    })
}

/// First grid time at which `I + P + H` is below `threshold`.
pub fn first_time_infected_below(trajectory: &Trajectory, threshold: f64) -> Option<f64> {
    infected_series(trajectory)
        .iter()
        .position(|v| *v < threshold)
        .map(|i| trajectory.times()[i])
}

#[derive(Debug, Clone)]
pub struct SweepRun {
    pub value: f64,
    pub scenario: Scenario,
    pub trajectory: Trajectory,
    pub summary: TrajectorySummary,
}

/// Solves every sweep value on its own thread; results come back in the
/// order of `spec.values()`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRun>> {
    let scenarios: Vec<Scenario> = spec
        .values
        .iter()
        .map(|v| spec.scenario_for(*v))
        .collect::<Result<_>>()?;
    let results: Vec<Result<SweepRun>> = thread::scope(|scope| {
        let handles: Vec<_> = scenarios
            .into_iter()
            .zip(&spec.values)
            .map(|(scenario, &value)| {
                scope.spawn(move || {
                    let trajectory = scenario.simulate()?;
                    let summary = summarize(&trajectory, &scenario.params)?;
                    Ok(SweepRun { value, scenario, trajectory, summary })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

fn sig(v: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, v)
}

pub fn write_summary_csv(runs: &[SweepRun], path: impl AsRef<Path>, precision: usize) -> Result<()> {
    check_precision(precision)?;
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    writeln!(w, "{SUMMARY_CSV_HEADER}").map_err(io)?;
    for run in runs {
        let s = &run.summary;
        let cols = [s.r0, s.peak_i, s.peak_p, s.peak_h, s.peak_iph, s.t_peak_iph, s.final_iph];
        let mut row = run.value.to_string();
        for c in cols {
            row.push(',');
            row.push_str(&sig(c, precision));
        }
        writeln!(w, "{row}").map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Writes one trajectory CSV per run plus `summary.csv` into `dir`, returning
/// the paths written.
pub fn write_sweep_outputs(
    spec: &SweepSpec,
    runs: &[SweepRun],
    dir: impl AsRef<Path>,
    precision: usize,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::with_capacity(runs.len() + 1);
    for run in runs {
        let path = dir.join(spec.file_name(run.value));
        write_trajectory_csv(&run.trajectory, &path, precision)?;
        written.push(path);
    }
    let summary = dir.join("summary.csv");
    write_summary_csv(runs, &summary, precision)?;
    written.push(summary);
    Ok(written)
}
