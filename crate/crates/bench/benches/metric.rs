use criterion::{black_box, criterion_group, criterion_main, Criterion};

use whm::WeightedSpace;
use whm_bench::all_profiles;

fn tau(c: &mut Criterion) {
    for (name, space) in [
        ("tau/7x7", WeightedSpace::new(2, vec![7, 7], vec![1, 2]).unwrap()),
        ("tau/7x7x7", WeightedSpace::new(2, vec![7, 7, 7], vec![1, 2, 3]).unwrap()),
    ] {
        let profiles = all_profiles(&space);
        c.bench_function(name, |b| b.iter(|| profiles.iter().map(|p| space.tau(black_box(p))).sum::<i64>()));
    }
}

fn balls(c: &mut Criterion) {
    let space = WeightedSpace::new(7, vec![7, 7, 7], vec![1, 2, 3]).unwrap();
    c.bench_function("ball_size/7x7x7/t=6", |b| b.iter(|| space.ball_size(black_box(6))));
    c.bench_function("diff_ball_size/7x7x7/t=6", |b| b.iter(|| space.diff_ball_size(black_box(6))));
}

criterion_group!(benches, tau, balls);
criterion_main!(benches);
