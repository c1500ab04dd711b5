//! Criterion benchmarks for the hot kernels: automorphism search, idempotent
//! sweeps, fusion checks, and ideal closures.

use criterion::{criterion_group, criterion_main, Criterion};

use graphax_bench::{fano, gq22, heawood};
use graphax_core::algebra::{AlgebraElement, GraphAlgebra, Side};
use graphax_core::autgrp::{automorphism_group, enumerate_idempotents, EnumerationBudget};
use graphax_core::field::FieldCtx;
use graphax_core::frucht::{prescribe_automorphism_group, CayleyTable, FruchtOptions};
use graphax_core::fusion::{check_fusion, natural_law};
use graphax_core::graph::{complete_graph, incidence_graph};
use graphax_core::structure::ideal_closure;

fn automorphism_search(c: &mut Criterion) {
    let hw = heawood(3, 3);
    c.bench_function("aut_heawood_336", |b| {
        b.iter(|| automorphism_group(&hw).order())
    });
    let f7 = FieldCtx::prime(7).unwrap();
    let tc = incidence_graph(&gq22(), &f7.from_integer(3), &f7.from_integer(3)).unwrap();
    c.bench_function("aut_tutte_coxeter_1440", |b| {
        b.iter(|| automorphism_group(&tc).order())
    });
}

fn idempotent_sweep(c: &mut Criterion) {
    let f3 = FieldCtx::prime(3).unwrap();
    let two = f3.from_integer(2);
    let hw = GraphAlgebra::new(incidence_graph(&fano(), &two, &two).unwrap());
    let mut group = c.benchmark_group("idempotents");
    group.sample_size(10);
    group.bench_function("heawood_f3_exhaustive", |b| {
        b.iter(|| {
            enumerate_idempotents(&hw, &EnumerationBudget::exhaustive())
                .unwrap()
                .len()
        })
    });
    group.finish();
}

fn fusion_check(c: &mut Criterion) {
    let a = GraphAlgebra::new(heawood(3, 5));
    let law = natural_law(&a).unwrap();
    let axes: Vec<usize> = (0..a.dim()).collect();
    c.bench_function("fusion_heawood_both_sides", |b| {
        b.iter(|| {
            let l = check_fusion(&a, &axes, &law, Side::Left)
                .unwrap()
                .law_satisfied;
            let r = check_fusion(&a, &axes, &law, Side::Right)
                .unwrap()
                .law_satisfied;
            l && r
        })
    });
}

fn closure(c: &mut Criterion) {
    let q = FieldCtx::rationals();
    let label = q.from_ratio(-1, 3).unwrap();
    let a = GraphAlgebra::new(complete_graph(5, &label, q).unwrap());
    let seed = AlgebraElement::unit(0, q);
    c.bench_function("ideal_closure_k5_vertex", |b| {
        b.iter(|| ideal_closure(&a, &seed).len())
    });
}

fn prescribe(c: &mut Criterion) {
    let (z3, gens) = CayleyTable::cyclic(3);
    let mut group = c.benchmark_group("prescribe");
    group.sample_size(10);
    group.bench_function("z3_graph_stage", |b| {
        b.iter(|| {
            prescribe_automorphism_group(&z3, &gens, &FruchtOptions::default())
                .unwrap()
                .aut_order
        })
    });
    group.finish();
}

criterion_group!(
    kernels,
    automorphism_search,
    idempotent_sweep,
    fusion_check,
    closure,
    prescribe
);
criterion_main!(kernels);
