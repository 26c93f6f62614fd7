// SPDX-License-Identifier: Apache-2.0

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use multauto::classify::{check_multiplicative_with, classify_with, tabulate, Bounds};
use multauto::{fixtures, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn multiplicativity(c: &mut Criterion) {
    let d = fixtures::mock("mock-3-3-zeta");
    let mut group = c.benchmark_group("check_multiplicative");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 100_000), &exec, |b, &exec| {
            b.iter(|| check_multiplicative_with(exec, &d, 100_000, false))
        });
    }
    group.finish();
}

fn tabulation(c: &mut Criterion) {
    let d = fixtures::by_name("chi5-base3").unwrap();
    let mut group = c.benchmark_group("tabulate");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 1_000_000), &exec, |b, &exec| {
            b.iter(|| tabulate(&d, 1_000_000, exec))
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let d = fixtures::mock("mock-2-4-neg");
    let bounds = Bounds {
        n: 100_000,
        ..Bounds::default()
    };
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, bounds.n), &exec, |b, &exec| {
            b.iter(|| classify_with(exec, &d, bounds).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, multiplicativity, tabulation, classification);
criterion_main!(benches);
