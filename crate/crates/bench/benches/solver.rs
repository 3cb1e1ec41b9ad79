use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pspec_core::{solve_lambda_p, turan_graph, Graph, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn solver(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let mut group = c.benchmark_group("solve_lambda_p");
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cases = [
        ("turan_3_12", turan_graph(3, 12).unwrap()),
        ("cycle_9", Graph::cycle(9).unwrap()),
        ("random_24", Graph::random(24, 0.5, &mut rng).unwrap()),
        ("random_48", Graph::random(48, 0.3, &mut rng).unwrap()),
    ];
    for (name, g) in &cases {
        for p in [1.1, 2.0, 3.0] {
            group.bench_with_input(BenchmarkId::new(*name, p), &p, |b, &p| b.iter(|| solve_lambda_p(black_box(g), p, &opts).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, solver);
criterion_main!(benches);
