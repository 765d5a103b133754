use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use weil_bench::{cusp_ideal, sine_of_sum, tensor_power};
use weil_core::smooth::{jet_lift_unary, TowerJet};
use weil_core::{groebner_basis, lift_weil, weil_test, Elementary, MonomialOrder, WeilSettings};

fn groebner(c: &mut Criterion) {
    let ideal = cusp_ideal();
    c.bench_function("groebner/cusp", |b| {
        b.iter(|| groebner_basis(black_box(&ideal), MonomialOrder::DegRevLex))
    });
    c.bench_function("weil_test/cusp", |b| {
        b.iter(|| weil_test(black_box(&ideal)).unwrap())
    });
}

fn tensor(c: &mut Criterion) {
    let d1 = WeilSettings::d1();
    c.bench_function("tensor/d1^5", |b| {
        b.iter(|| tensor_power(black_box(&d1), 5))
    });
}

fn lift(c: &mut Criterion) {
    let mut group = c.benchmark_group("lift_weil");
    for (name, settings) in [
        ("d1^5", tensor_power(&WeilSettings::d1(), 5)),
        ("d_order_8", WeilSettings::d_order(8).unwrap()),
        (
            "cusp",
            weil_test(&cusp_ideal()).unwrap().into_settings().unwrap(),
        ),
    ] {
        let settings = Arc::new(settings);
        let (f, us) = sine_of_sum(&settings, 0.5);
        group.bench_function(name, |b| {
            b.iter(|| lift_weil(&settings, black_box(&f), black_box(&us)).unwrap())
        });
    }
    group.finish();
}

fn jets(c: &mut Criterion) {
    let caps = [3, 3, 3];
    let x = TowerJet::variable(&caps, 0.3f64, 0).unwrap();
    c.bench_function("jet/sin caps 3,3,3", |b| {
        b.iter(|| jet_lift_unary(Elementary::Sin, black_box(&x)).unwrap())
    });
}

criterion_group!(benches, groebner, tensor, lift, jets);
criterion_main!(benches);
