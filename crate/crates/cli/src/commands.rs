use fracepi_core::checks::run_checks;
use fracepi_core::sweep::write_sweep_outputs;
use fracepi_core::{
    basic_reproduction_number, classify_stability, r0_rewritten, resolve_scenario, run_sweep,
    summarize, write_trajectory_csv, FractionalOrder, ModelParams, Result, Scenario, SweepSpec,
};

use crate::args::{HorizonArgs, ParamOverrides, ParamsArgs, RunArgs, SweepArgs, VerifyArgs};

/// Prints one machine-readable `key: value` line to stdout.
macro_rules! kv {
    ($key:expr, $($arg:tt)*) => {
        println!("{}: {}", $key, format_args!($($arg)*))
    };
}

impl ParamOverrides {
    fn apply(&self, p: &mut ModelParams) {
        let fields = [
            (self.beta, &mut p.beta),
            (self.beta_prime, &mut p.beta_prime),
            (self.l, &mut p.l),
            (self.kappa, &mut p.kappa),
            (self.rho1, &mut p.rho1),
            (self.rho2, &mut p.rho2),
            (self.gamma_a, &mut p.gamma_a),
            (self.gamma_i, &mut p.gamma_i),
            (self.gamma_r, &mut p.gamma_r),
            (self.delta_i, &mut p.delta_i),
            (self.delta_p, &mut p.delta_p),
            (self.delta_h, &mut p.delta_h),
        ];
        for (value, slot) in fields {
            if let Some(v) = value {
                *slot = v;
            }
        }
    }
}

fn load(reference: &str, horizon: Option<&HorizonArgs>, overrides: &ParamOverrides) -> Result<Scenario> {
    let mut s = resolve_scenario(reference)?;
    if let Some(h) = horizon {
        if let Some(a) = h.alpha {
            s.alpha = FractionalOrder::new(a)?;
        }
        if let Some(t) = h.t_end {
            s.t_end = t;
        }
        if let Some(n) = h.steps {
            s.n_steps = n as usize;
        }
    }
    overrides.apply(&mut s.params);
    s.validate()?;
    Ok(s)
}

pub fn run(args: &RunArgs) -> Result<()> {
    let s = load(&args.scenario, Some(&args.horizon), &args.overrides)?;
    let verdict = classify_stability(&s.params)?;
    eprintln!("solving {} over {} days in {} steps (alpha = {})", s.name, s.t_end, s.n_steps, s.alpha);
    let traj = s.simulate()?;
    let summary = summarize(&traj, &s.params)?;
    write_trajectory_csv(&traj, &args.out, args.horizon.precision as usize)?;
    eprintln!("wrote {}", args.out.display());

    kv!("scenario", "{}", s.name);
    kv!("alpha", "{}", s.alpha);
    kv!("t_end", "{}", s.t_end);
    kv!("n_steps", "{}", s.n_steps);
    kv!("r0", "{}", verdict.r0);
    kv!("stability", "{}", verdict.classification);
    kv!("peak_iph", "{}", summary.peak_iph);
    kv!("t_peak_iph", "{}", summary.t_peak_iph);
    kv!("final_iph", "{}", summary.final_iph);
    kv!("rows", "{}", traj.len());
    kv!("out", "{}", args.out.display());
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let base = load(&args.scenario, Some(&args.horizon), &args.overrides)?;
    let spec = SweepSpec::new(args.param, args.values.clone(), base)?;
    eprintln!("sweeping {} over {} values of {}", spec.base().name, spec.values().len(), spec.parameter());
    let runs = run_sweep(&spec)?;
    let written = write_sweep_outputs(&spec, &runs, &args.out_dir, args.horizon.precision as usize)?;

    kv!("scenario", "{}", spec.base().name);
    kv!("param", "{}", spec.parameter());
    for run in &runs {
        kv!(format!("r0[{}]", run.value), "{}", run.summary.r0);
        kv!(format!("peak_iph[{}]", run.value), "{}", run.summary.peak_iph);
    }
    for path in &written {
        kv!("wrote", "{}", path.display());
    }
    Ok(())
}

pub fn r0(args: &ParamsArgs) -> Result<()> {
    let s = load(&args.scenario, None, &args.overrides)?;
    let direct = basic_reproduction_number(&s.params)?;
    let rewritten = r0_rewritten(&s.params)?;
    kv!("r0", "{direct}");
    kv!("r0_rewritten", "{rewritten}");
    kv!("abs_difference", "{:e}", (direct - rewritten).abs());
    Ok(())
}

pub fn stability(args: &ParamsArgs) -> Result<()> {
    let s = load(&args.scenario, None, &args.overrides)?;
    let verdict = classify_stability(&s.params)?;
    kv!("r0", "{}", verdict.r0);
    kv!("classification", "{}", verdict.classification);
    Ok(())
}

/// Returns the names of failing checks.
pub fn verify(args: &VerifyArgs) -> Result<Vec<String>> {
    let results = run_checks(args.level)?;
    let mut failing = Vec::new();
    for r in &results {
        kv!(r.name, "{r}");
        if !r.passed() {
            failing.push(r.name.clone());
        }
    }
    kv!("verify", "{}", if failing.is_empty() { "pass" } else { "fail" });
    Ok(failing)
}
