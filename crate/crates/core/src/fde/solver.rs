use super::types::{MemoryPolicy, SolverConfig, TimeGrid, Trajectory};
use super::weights::WeightTable;
use crate::error::{Error, Result};
use crate::special::gamma;

/// Solves `D^alpha X = f(X)`, `X(t0) = x0` on `grid` with the fractional
/// Adams-Bashforth-Moulton scheme.
///
/// `f(x, out)` writes the vector field at `x` into `out`. The returned
/// trajectory has `grid.n_steps() + 1` rows and starts exactly at `x0`.
pub fn solve_caputo_ivp<F>(
    mut f: F,
    x0: &[f64],
    grid: &TimeGrid,
    config: &SolverConfig,
) -> Result<Trajectory>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let h = grid.step_size();
    if (h - config.step_size()).abs() > 1e-12 * h {
        return Err(Error::Domain(format!(
            "grid spacing {h} does not match configured step size {}",
            config.step_size()
        )));
    }
    if x0.is_empty() {
        return Err(Error::Domain("initial state is empty".into()));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { step: 0, time: grid.t0() });
    }

    let dim = x0.len();
    let n_steps = grid.n_steps();
    let alpha = config.order().value();
    let inv_gamma = 1.0 / gamma(alpha)?;
    let table = WeightTable::new(alpha, h, n_steps);
    let window_steps = match config.memory() {
        MemoryPolicy::FullHistory => usize::MAX,
        MemoryPolicy::Truncated { window } => ((window / h).floor() as usize).max(1),
    };

    let mut states = Vec::with_capacity((n_steps + 1) * dim);
    let mut fhist = Vec::with_capacity((n_steps + 1) * dim);
    states.extend_from_slice(x0);
    fhist.resize(dim, 0.0);
    f(x0, &mut fhist[..dim]);
    check_finite(&fhist[..dim], 0, grid)?;

    let mut pred_sum = vec![0.0; dim];
    let mut corr_sum = vec![0.0; dim];
    let mut x_next = vec![0.0; dim];
    let mut f_next = vec![0.0; dim];

    for n in 0..n_steps {
        pred_sum.fill(0.0);
        corr_sum.fill(0.0);

        // Oldest history index still inside the memory window for t_{n+1}.
        let j_min = (n + 1).saturating_sub(window_steps);
        let rect = table.rect();
        let trap = table.trap();
        for j in j_min..=n {
            let k = n - j;
            let fj = &fhist[j * dim..(j + 1) * dim];
            let wb = rect[k];
            pred_sum.iter_mut().zip(fj).for_each(|(p, fv)| *p += wb * fv);
            if j > 0 {
                let wa = trap[k];
                corr_sum.iter_mut().zip(fj).for_each(|(c, fv)| *c += wa * fv);
            }
        }
        let (ps, cs) = (table.predictor_scale(), table.corrector_scale());
        pred_sum.iter_mut().for_each(|p| *p *= ps);
        corr_sum.iter_mut().for_each(|c| *c *= cs);
        if j_min == 0 {
            let a0 = table.corrector_first(n);
            corr_sum.iter_mut().zip(&fhist[..dim]).for_each(|(c, fv)| *c += a0 * fv);
        }

        for ((x, x0i), p) in x_next.iter_mut().zip(x0).zip(&pred_sum) {
            *x = x0i + inv_gamma * p;
        }
        check_finite(&x_next, n + 1, grid)?;

        let a_last = table.corrector_last();
        for _ in 0..config.corrector_iterations() {
            f(&x_next, &mut f_next);
            for ((x, x0i), (c, fv)) in x_next.iter_mut().zip(x0).zip(corr_sum.iter().zip(&f_next)) {
                *x = x0i + inv_gamma * (c + a_last * fv);
            }
            check_finite(&x_next, n + 1, grid)?;
        }

        f(&x_next, &mut f_next);
        check_finite(&f_next, n + 1, grid)?;
        states.extend_from_slice(&x_next);
        fhist.extend_from_slice(&f_next);
    }

    Trajectory::from_flat(grid.times().collect(), dim, states)
}

fn check_finite(values: &[f64], step: usize, grid: &TimeGrid) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite {
            step,
            time: grid.time(step),
        })
    }
}
