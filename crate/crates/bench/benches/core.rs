use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qbps_bench::fixtures;
use qbps_core::*;

fn sample_weight(d: &DimVec) -> Weight {
    let n = d.total() as i64;
    Weight::from_ints(&(0..n).map(|i| 2 * i - (n - 1)).collect::<Vec<_>>())
}

fn polytope(c: &mut Criterion) {
    let mut g = c.benchmark_group("polytope");
    for (name, q, d) in fixtures() {
        let z = w_polytope(&q, &d).unwrap();
        let x = sample_weight(&d);
        g.bench_function(format!("contains {name}"), |b| b.iter(|| z.contains(black_box(&x), &qbps_core::rational::qi(1)).unwrap()));
        g.bench_function(format!("r_invariant {name}"), |b| b.iter(|| z.r_invariant(black_box(&x)).unwrap()));
        g.bench_function(format!("facets {name}"), |b| b.iter(|| z.facets().unwrap()));
    }
    g.finish();
}

fn summands(c: &mut Criterion) {
    let mut g = c.benchmark_group("summands");
    g.sample_size(20);
    let mu: GenericReal = "0:-1".parse().unwrap();
    for (name, q, d) in fixtures() {
        let zero = Weight::zero(d.total());
        let chi = sample_weight(&d);
        g.bench_function(format!("magic_generators {name}"), |b| b.iter(|| magic_generators(&q, &d, black_box(&zero)).unwrap()));
        g.bench_function(format!("decompose_weight {name}"), |b| b.iter(|| decompose_weight(&q, &d, black_box(&chi), &zero).unwrap()));
        g.bench_function(format!("framed_summands {name}"), |b| b.iter(|| framed_summands(&q, &d, black_box(&mu), 1, &zero).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, polytope, summands);
criterion_main!(benches);
