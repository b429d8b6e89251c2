//! Wall-clock benchmarks of the simulation primitives. The measured
//! deliverable of the project is ledger charge, not time; these exist to
//! keep the simulation itself fast enough for large trial counts.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qsm_core::ds::build_ds_quantum;
use qsm_core::grover::Statevector;
use qsm_core::harness::{generate_instance, Generator};
use qsm_core::matcher::{find_any_occurrence, MatcherParams};
use qsm_core::qsearch::{bbht_search, OracleSpec, DEFAULT_BUDGET_FACTOR};
use qsm_core::reference::kmp_all;
use qsm_core::{QueryLedger, TrialRng};

fn bench_statevector(c: &mut Criterion) {
    let mut group = c.benchmark_group("statevector_round");
    for n in [256usize, 1024, 4096] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut sv = Statevector::uniform(n, &[n / 3]).unwrap();
            b.iter(|| {
                sv.step();
                black_box(sv.marked_mass())
            });
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("bbht_trial");
    for n in [1024usize, 16384] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0u64;
            b.iter(|| {
                seed += 1;
                let mut rng = TrialRng::seeded(seed);
                let mut ledger = QueryLedger::new();
                let oracle = OracleSpec::deterministic(n, 1, |i| i == 17).unwrap();
                black_box(
                    bbht_search(&oracle, &mut rng, &mut ledger, DEFAULT_BUDGET_FACTOR).unwrap(),
                )
            });
        });
    }
    group.finish();
}

fn bench_kmp(c: &mut Criterion) {
    let mut rng = TrialRng::seeded(7);
    let pt = generate_instance(Generator::Planted, 1 << 16, 64, 2, &mut rng).unwrap();
    c.bench_function("kmp_64k", |b| {
        b.iter(|| black_box(kmp_all(pt.text(), pt.pattern()).unwrap()))
    });
}

fn bench_end_to_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("matcher_trial");
    for n in [4096usize, 16384] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0u64;
            b.iter(|| {
                seed += 1;
                let mut rng = TrialRng::seeded(seed);
                let mut ledger = QueryLedger::new();
                let pt = generate_instance(Generator::Planted, n, 64, 2, &mut rng).unwrap();
                let pre = build_ds_quantum(pt.pattern(), &mut rng, &mut ledger).unwrap();
                let params = MatcherParams::default();
                black_box(find_any_occurrence(&pt, &pre, &params, &mut rng, &mut ledger).unwrap())
            });
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_statevector,
    bench_search,
    bench_kmp,
    bench_end_to_end
);
criterion_main!(benches);
