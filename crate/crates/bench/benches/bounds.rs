use criterion::{black_box, criterion_group, criterion_main, Criterion};

use whm::bounds;
use whm::WeightedSpace;

fn lp(c: &mut Criterion) {
    let mut g = c.benchmark_group("lp_bound");
    g.sample_size(10);
    let space = WeightedSpace::new(2, vec![7, 7], vec![1, 2]).unwrap();
    for t in [1, 3, 5] {
        g.bench_function(format!("7x7/t={t}"), |b| b.iter(|| bounds::lp_bound(&space, black_box(t)).unwrap()));
    }
    g.finish();
}

fn combinatorial(c: &mut Criterion) {
    let space = WeightedSpace::new(7, vec![7, 7], vec![1, 2]).unwrap();
    c.bench_function("packing_bound/7x7/t=5", |b| b.iter(|| bounds::packing_bound(&space, black_box(5))));
    c.bench_function("covering_bound/7x7/t=5", |b| b.iter(|| bounds::covering_bound(&space, black_box(5))));
}

criterion_group!(benches, lp, combinatorial);
criterion_main!(benches);
