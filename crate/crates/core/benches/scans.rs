use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use solgenus::conjugacy::brute_force_conjugator;
use solgenus::forms::{class_set_with, EquivMode};
use solgenus::modular::scan_gl2_mod;
use solgenus::order::OrderDisc;
use solgenus::survey::{survey, SurveySpec};
use solgenus::{Exec, IntMat2};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn brute_force(c: &mut Criterion) {
    let a = IntMat2::from_rows([[0, 1], [1, 6]]);
    let b = IntMat2::from_rows([[5, 3], [2, 1]]);
    let mut group = c.benchmark_group("brute_force_d40_bound200");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |bench| {
            bench.iter(|| brute_force_conjugator(&a, &b, 200, exec).unwrap())
        });
    }
    group.finish();
}

fn modular(c: &mut Criterion) {
    let a = IntMat2::from_rows([[0, 1], [1, 6]]);
    let b = IntMat2::from_rows([[5, 3], [2, 1]]);
    let mut group = c.benchmark_group("gl2_mod_scan");
    for q in [27u64, 29] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, q), &q, |bench, &q| {
                bench.iter(|| scan_gl2_mod(&a, &b, q, exec))
            });
        }
    }
    group.finish();
}

fn class_numbers(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_set");
    for d in [-1_000_003i64, 1_000_005] {
        let od = OrderDisc::from_disc(&BigInt::from(d)).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, d), &od, |bench, od| {
                bench.iter(|| class_set_with(od, EquivMode::Improper, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn surveys(c: &mut Criterion) {
    let spec = SurveySpec {
        tmax: 200,
        ..Default::default()
    };
    let mut group = c.benchmark_group("survey_tmax200");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |bench| bench.iter(|| survey(&spec, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, brute_force, modular, class_numbers, surveys);
criterion_main!(benches);
