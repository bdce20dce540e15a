use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fracepi_core::{
    abm_weights, builtin_scenario, discrete_caputo_derivative, mittag_leffler, solve_caputo_ivp,
    FractionalOrder, MemoryPolicy, SolverConfig, TimeGrid,
};

fn special(c: &mut Criterion) {
    c.bench_function("mittag_leffler_0.5_-10", |b| b.iter(|| mittag_leffler(0.5, black_box(-10.0))));
    c.bench_function("abm_weights_n1000", |b| b.iter(|| abm_weights(0.75, black_box(1000), 0.01)));
}

fn scalar_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("scalar_decay");
    for n in [1_000usize, 4_000, 16_000] {
        let grid = TimeGrid::new(0.0, 1.0, n).unwrap();
        let full = SolverConfig::new(FractionalOrder::new(0.75).unwrap(), grid.step_size()).unwrap();
        let short = full.with_memory(MemoryPolicy::Truncated { window: 0.1 }).unwrap();
        group.bench_with_input(BenchmarkId::new("full", n), &grid, |b, g| {
            b.iter(|| solve_caputo_ivp(|x, out| out[0] = -x[0], &[1.0], g, &full).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("window_0.1", n), &grid, |b, g| {
            b.iter(|| solve_caputo_ivp(|x, out| out[0] = -x[0], &[1.0], g, &short).unwrap())
        });
    }
    group.finish();
}

fn epidemic(c: &mut Criterion) {
    let mut group = c.benchmark_group("epidemic");
    group.sample_size(10);
    for steps in [1_200usize, 12_000] {
        let s = fracepi_core::Scenario { n_steps: steps, ..builtin_scenario("spain").unwrap() };
        group.bench_with_input(BenchmarkId::new("spain_120d", steps), &s, |b, s| b.iter(|| s.simulate().unwrap()));
    }
    group.finish();

    let values: Vec<f64> = (0..10_001).map(|i| (i as f64 * 1e-3).sin()).collect();
    c.bench_function("l1_caputo_n10000", |b| b.iter(|| discrete_caputo_derivative(black_box(&values), 0.85, 1e-3)));
}

criterion_group!(benches, special, scalar_solve, epidemic);
criterion_main!(benches);
