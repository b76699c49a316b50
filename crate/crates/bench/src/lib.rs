//! Criterion benchmarks over the small test algebras.

use std::sync::Arc;

use criterion::{black_box, Criterion};

use tautilt::algebra::examples;
use tautilt::explorer::{build_exchange_graph, rigid_pairs, tau_reduction, verify_mutation_compat};
use tautilt::module::{ar_translate, decompose, hom_dim, Module};
use tautilt::tau_ops::{left_bongartz, mutate_pair};
use tautilt::{BasicAlgebra, Field, TauPair};

fn algebras() -> Vec<(&'static str, Arc<BasicAlgebra>)> {
    vec![
        ("A3", examples::linear_a(Field::Rational, 3)),
        ("A4", examples::linear_a(Field::Rational, 4)),
        ("3-cycle", examples::three_cycle(Field::Rational)),
    ]
}

pub fn bench_modules(c: &mut Criterion) {
    let mut g = c.benchmark_group("modules");
    for (name, alg) in algebras() {
        let reg = Module::regular(&alg);
        g.bench_function(format!("decompose_regular/{name}"), |b| b.iter(|| decompose(black_box(&reg))));
        g.bench_function(format!("ar_translate_regular/{name}"), |b| b.iter(|| ar_translate(black_box(&reg))));
        g.bench_function(format!("hom_dim_regular/{name}"), |b| b.iter(|| hom_dim(black_box(&reg), &reg)));
    }
    g.finish();
}

pub fn bench_pairs(c: &mut Criterion) {
    let mut g = c.benchmark_group("pairs");
    for (name, alg) in algebras() {
        let top = TauPair::regular(&alg);
        g.bench_function(format!("mutate_all_slots/{name}"), |b| {
            b.iter(|| (0..top.len()).map(|k| mutate_pair(black_box(&top), k).unwrap()).collect::<Vec<_>>())
        });
        let rel = TauPair::from_parts(&alg, vec![Module::projective(&alg, 0)], Vec::new());
        let bottom = TauPair::shifted_regular(&alg);
        g.bench_function(format!("left_bongartz_bottom/{name}"), |b| {
            b.iter(|| left_bongartz(black_box(&rel), &bottom).unwrap())
        });
        g.bench_function(format!("tau_reduction_p1/{name}"), |b| b.iter(|| tau_reduction(black_box(&rel)).unwrap()));
    }
    g.finish();
}

pub fn bench_explorer(c: &mut Criterion) {
    let mut g = c.benchmark_group("explorer");
    g.sample_size(10);
    for (name, alg) in algebras() {
        g.bench_function(format!("exchange_graph/{name}"), |b| {
            b.iter(|| build_exchange_graph(black_box(&alg), 10_000).unwrap())
        });
        let graph = build_exchange_graph(&alg, 10_000).unwrap();
        let rel = rigid_pairs(&graph).into_iter().find(|p| p.len() == 1).unwrap();
        g.bench_function(format!("mutation_compat_one_rel/{name}"), |b| {
            b.iter(|| verify_mutation_compat(black_box(&rel), &graph).unwrap())
        });
    }
    g.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    bench_modules(c);
    bench_pairs(c);
    bench_explorer(c);
}
