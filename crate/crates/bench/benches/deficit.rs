use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qdeficit::families::random_density_matrix;
use qdeficit::optimizer::{hemisphere_grid, DephasingObjective};
use qdeficit::qmat::hermitian_eigensystem;
use qdeficit::{deficit_zero_way, BasisPair, OptimizerConfig};
use qdeficit_bench::fixture_states;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn deficit(c: &mut Criterion) {
    let cfg = OptimizerConfig::default();
    let mut group = c.benchmark_group("deficit_zero_way");
    for (name, rho) in fixture_states() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &rho, |b, rho| {
            b.iter(|| deficit_zero_way(black_box(rho), &cfg).unwrap())
        });
    }
    let random = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(1));
    group.bench_function("hilbert_schmidt", |b| {
        b.iter(|| deficit_zero_way(black_box(&random), &cfg).unwrap())
    });
    group.finish();
}

fn objective(c: &mut Criterion) {
    let rho = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(2));
    let obj = DephasingObjective::new(&rho);
    let basis = BasisPair::new(0.3, 1.1, 1.2, 2.5);
    c.bench_function("objective/single", |b| b.iter(|| obj.entropy(black_box(&basis))));
    let grid = hemisphere_grid(16);
    c.bench_function("objective/grid_16", |b| b.iter(|| obj.grid_scores(black_box(&grid))));
}

fn eigen(c: &mut Criterion) {
    let rho = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(3));
    c.bench_function("eigensystem/4x4", |b| {
        b.iter(|| hermitian_eigensystem(black_box(rho.matrix())).unwrap())
    });
    c.bench_function("entropy/4x4", |b| b.iter(|| black_box(&rho).entropy()));
}

criterion_group!(benches, deficit, objective, eigen);
criterion_main!(benches);
