use criterion::{black_box, criterion_group, criterion_main, Criterion};
use pspec_core::harness::{verify_turan_extremal, GraphSource, HarnessOptions};
use pspec_core::{canonical_form, clique_number, enumerate_graphs};

fn enumeration(c: &mut Criterion) {
    // the enumeration itself is cached after the first call
    let graphs = enumerate_graphs(7, |_| true).unwrap();
    c.bench_function("canonical_form_all_order_7", |b| {
        b.iter(|| graphs.iter().map(|g| canonical_form(black_box(g)).1.len()).sum::<usize>())
    });
    c.bench_function("clique_filter_order_7", |b| b.iter(|| enumerate_graphs(7, |g| clique_number(g) <= 3).unwrap().len()));

    let mut group = c.benchmark_group("verify_turan_extremal");
    group.sample_size(10);
    let hopts = HarnessOptions::default();
    group.bench_function("n6_r2_p2", |b| b.iter(|| verify_turan_extremal(6, 2, 2.0, &GraphSource::BuiltIn, &hopts).unwrap()));
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
