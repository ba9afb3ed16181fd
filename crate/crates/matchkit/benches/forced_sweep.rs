//! Compares the rayon-parallel forced-set sweep (the default) against the
//! sequential fallback on the same instances. Build with
//! `--no-default-features` to check that the "parallel" series degrades to
//! the sequential one.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use matchkit::generate::gen_random_instance;
use matchkit::spm::{spm_ranks_sequential, spm_ranks_with, BipartiteBound};
use matchkit::ProblemKind;

fn bench_forced_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("forced_sweep");
    group.sample_size(20);
    for &(n, l) in &[(8usize, 2u32), (10, 3), (12, 3)] {
        let inst = gen_random_instance(n, 0.5, (0, 8), ProblemKind::Spm, 42).unwrap();
        let label = format!("n{n}_l{l}");
        group.bench_with_input(BenchmarkId::new("parallel", &label), &inst, |b, inst| {
            b.iter(|| spm_ranks_with(inst, l, BipartiteBound::Auto));
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &inst, |b, inst| {
            b.iter(|| spm_ranks_sequential(inst, l, BipartiteBound::Auto));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_forced_sweep);
criterion_main!(benches);
