use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use std::hint::black_box;

use qtorus::random::{self, RelatorShape};
use qtorus::{Fan, Seed};

fn delta_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_set");
    for (n, support) in [(2, 4), (3, 6), (4, 8)] {
        let m = random::module(&mut Seed::new(1).rng("bench"), RelatorShape::new(n, support, 1));
        group.bench_with_input(BenchmarkId::new("rank", n), &m, |b, m| b.iter(|| black_box(m.delta_set())));
    }
    group.finish();
}

fn fan_equality(c: &mut Criterion) {
    let mut group = c.benchmark_group("set_eq");
    for n in [2, 3, 4] {
        let m = random::module(&mut Seed::new(2).rng("bench"), RelatorShape::new(n, 8, 1));
        let fan = m.delta_set();
        // Same point set, different cone list: every cone split off on its own.
        let split = fan.cones().iter().fold(Fan::empty(n), |acc, c| {
            acc.union(&Fan::new(n, vec![c.clone()]).unwrap()).unwrap()
        });
        group.bench_with_input(BenchmarkId::new("rank", n), &(fan, split), |b, (f, g)| {
            b.iter(|| assert!(black_box(f.set_eq(g))))
        });
    }
    group.finish();
}

fn local_cone_check(c: &mut Criterion) {
    let m = random::module(&mut Seed::new(3).rng("bench"), RelatorShape::new(3, 8, 2));
    let chi = m.sample_delta_point(0, Seed::new(3)).unwrap();
    c.bench_function("check_local_cone/rank/3", |b| b.iter(|| black_box(m.check_local_cone(&chi).unwrap())));
}

fn symplectic_bases(c: &mut Criterion) {
    let mut group = c.benchmark_group("symplectic_base");
    for halves in [vec![1], vec![1, 2], vec![2, 2, 2]] {
        let dim = 2 * halves.iter().sum::<usize>() + 1;
        group.bench_with_input(BenchmarkId::new("dim", dim), &halves, |b, halves| {
            b.iter_batched(
                || random::based_form(&mut Seed::new(4).rng("bench"), halves, 3, 1).form,
                |f| black_box(f.symplectic_base_default(Seed::new(4)).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, delta_sets, fan_equality, local_cone_check, symplectic_bases);
criterion_main!(benches);
