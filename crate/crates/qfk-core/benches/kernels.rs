//! Benchmarks of the data-parallel kernels. Bench ids carry the active
//! iteration backend, so
//!
//! ```text
//! cargo bench -p qfk-core                          # rayon
//! cargo bench -p qfk-core --no-default-features    # sequential
//! ```
//!
//! produce directly comparable entries.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use qfk_core::datum::QlsDatum;
use qfk_core::double::DoubleAlgebra;
use qfk_core::hopf::{HopfAlgebraH, VerifyMode};
use qfk_core::repn::{all_simples, DoubleModules, HModules};
use qfk_core::util::{backend_name, par_map_range};

fn build_h(name: &str) -> Arc<HopfAlgebraH> {
    Arc::new(HopfAlgebraH::build(&QlsDatum::preset(name, None).unwrap()).unwrap())
}

fn bench_h_axioms(c: &mut Criterion) {
    let h = build_h("frobenius-sl2-l3");
    c.bench_function(
        &format!("h_axioms_sampled2000/frobenius/{}", backend_name()),
        |b| {
            b.iter(|| {
                let rep = h
                    .verify_axioms(VerifyMode::Sampled {
                        tuples: 2000,
                        seed: 7,
                    })
                    .unwrap();
                assert!(rep.ok());
            })
        },
    );
}

fn bench_h_classification(c: &mut Criterion) {
    let engine = HModules::new(build_h("frobenius-sl2-l3"));
    c.bench_function(
        &format!("h_classification/frobenius/{}", backend_name()),
        |b| {
            b.iter(|| {
                let table = all_simples(&engine).unwrap();
                assert_eq!(table.rows.len(), 6);
            })
        },
    );
}

fn bench_straddle_fill(c: &mut Criterion) {
    let h = build_h("min-z4");
    c.bench_function(
        &format!("double_straddle_fill/min-z4/{}", backend_name()),
        |b| {
            b.iter(|| {
                // fresh double each iteration so the cache refills
                let dd = DoubleAlgebra::build(h.clone());
                let n = dd.dim_h();
                let sizes = par_map_range(n * n, |k| dd.straddle(k / n, k % n).0.len());
                assert!(sizes.iter().any(|&s| s > 0));
            })
        },
    );
}

fn bench_double_classification(c: &mut Criterion) {
    let dd = Arc::new(DoubleAlgebra::build(build_h("min-z4")));
    dd.pbw().unwrap();
    let engine = DoubleModules::new(dd);
    let mut group = c.benchmark_group("double_classification");
    group.sample_size(20);
    group.bench_function(format!("min-z4/{}", backend_name()), |b| {
        b.iter(|| {
            let table = all_simples(&engine).unwrap();
            assert_eq!(table.rows.len(), 16);
        })
    });
    group.finish();
}

fn bench_pbw(c: &mut Criterion) {
    let h = build_h("min-z4");
    let mut group = c.benchmark_group("pbw_change_of_basis");
    group.sample_size(10);
    group.bench_function(format!("min-z4/{}", backend_name()), |b| {
        b.iter(|| {
            let dd = DoubleAlgebra::build(h.clone());
            let pbw = dd.pbw().unwrap();
            assert_eq!(pbw.tuple_count(), 256);
        })
    });
    group.finish();
}

criterion_group!(
    kernels,
    bench_h_axioms,
    bench_h_classification,
    bench_straddle_fill,
    bench_double_classification,
    bench_pbw
);
criterion_main!(kernels);
