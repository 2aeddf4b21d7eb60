use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use towerlim_bench::{classes, half, matrices};
use towerlim_core::abelian::smith_normal_form;
use towerlim_core::delta::DeltaTable;
use towerlim_core::prufer::{growth_witness, in_a0n};
use towerlim_core::towers::is_mittag_leffler;
use towerlim_core::Tower;

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for dim in [2, 4, 6] {
        let ms = matrices(64, dim, 50);
        g.bench_with_input(BenchmarkId::from_parameter(dim), &ms, |b, ms| {
            b.iter(|| {
                ms.iter()
                    .map(|m| smith_normal_form(black_box(m)))
                    .collect::<Vec<_>>()
            })
        });
    }
    g.finish();
}

fn delta(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta_table");
    g.bench_function("30x30", |b| b.iter(|| DeltaTable::build(black_box(30), 30)));
    g.bench_function("30x30_parallel", |b| {
        b.iter(|| DeltaTable::build_parallel(black_box(30), 30))
    });
    g.finish();
}

fn filtration(c: &mut Criterion) {
    let mut g = c.benchmark_group("primorial_filtration");
    for horizon in [10, 25, 50] {
        let t = Tower::primorial(horizon);
        g.bench_with_input(BenchmarkId::from_parameter(horizon), &t, |b, t| {
            b.iter(|| is_mittag_leffler(black_box(t)))
        });
    }
    g.finish();
}

fn prufer(c: &mut Criterion) {
    let cs = classes(256, 25);
    c.bench_function("prufer_membership_256", |b| {
        b.iter(|| {
            cs.iter()
                .filter(|k| {
                    in_a0n(black_box(k), k.window().len().min(8))
                        .unwrap()
                        .is_member()
                })
                .count()
        })
    });
    let x = half();
    c.bench_function("growth_witness_2_12", |b| {
        b.iter(|| growth_witness(black_box(&x), 2..=12))
    });
}

criterion_group!(benches, snf, delta, filtration, prufer);
criterion_main!(benches);
