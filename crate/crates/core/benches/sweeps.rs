//! Sequential versus data-parallel execution of the batch sweeps.

use cjac_core::exec::Exec;
use cjac_core::fourier::{catalog_run, AxiomSet, Axioms, DEFAULT_DEPTH};
use cjac_core::obstruct::sweep;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn obstruction_sweep(c: &mut Criterion) {
    let grid: Vec<(u32, i64, i64)> =
        (4..=12).flat_map(|g| (-6..=6).flat_map(move |z| (-6..=6).map(move |zp| (g, z, zp)))).collect();
    let mut group = c.benchmark_group("obstruction_sweep");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep(&grid, exec).unwrap())
        });
    }
    group.finish();
}

fn fourier_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier_catalog_g3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| catalog_run(AxiomSet::new(Axioms::Full, 3), DEFAULT_DEPTH, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, obstruction_sweep, fourier_catalog);
criterion_main!(benches);
