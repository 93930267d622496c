use criterion::{black_box, criterion_group, criterion_main, Criterion};

use z2z2_core::matrep::{family_rep, verify_rep};
use z2z2_core::models::{quantum_s7, s7_invariance};
use z2z2_core::structure::{normalize, sample_labels, table_entry, TableLabel};
use z2z2_core::superspace::{bch_coefficients, case_closure, Case};
use z2z2_core::{Field, Scalar};

fn structure(c: &mut Criterion) {
    let entries: Vec<_> = TableLabel::all_families()
        .flat_map(|f| sample_labels(f, Field::Real))
        .map(|l| table_entry(&l).unwrap())
        .collect();
    c.bench_function("normalize sampled table rows", |b| {
        b.iter(|| {
            for e in &entries {
                black_box(normalize(e, Field::Real).unwrap());
            }
        })
    });
}

fn matrep(c: &mut Criterion) {
    let label: TableLabel = "A7".parse().unwrap();
    let params = [("lambda", Scalar::int(1)), ("p", Scalar::int(-1)), ("q", Scalar::int(-1))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let rep = family_rep(&label, "general", &params).unwrap();
    c.bench_function("verify_rep A7", |b| b.iter(|| black_box(verify_rep(&rep))));
}

fn superspace(c: &mut Criterion) {
    c.bench_function("bch coefficients to order 16", |b| b.iter(|| black_box(bch_coefficients(16))));
    let mut g = c.benchmark_group("closure");
    g.sample_size(10);
    g.bench_function("A4 covariant derivatives, degree 4", |b| b.iter(|| black_box(case_closure(Case::A4, 16, 4))));
    g.finish();
}

fn models(c: &mut Criterion) {
    let q = Scalar::frac(1, 4);
    let mut g = c.benchmark_group("models");
    g.sample_size(10);
    g.bench_function("S7 classical invariance", |b| b.iter(|| black_box(s7_invariance(&q))));
    g.bench_function("S7 quantum closure", |b| b.iter(|| black_box(quantum_s7(&q))));
    g.finish();
}

criterion_group!(benches, structure, matrep, superspace, models);
criterion_main!(benches);
