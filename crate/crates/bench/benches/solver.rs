use std::hint::black_box;

use copcover::solver::{cop_number, dismantle, solve_k_copwin};
use copcover_bench::{graph, triangulation};
use criterion::{criterion_group, criterion_main, Criterion};

fn solve(c: &mut Criterion) {
    let petersen = graph("petersen");
    let dodecahedron = graph("dodecahedron");
    let grid = graph("grid:4,4");
    c.bench_function("solve petersen k=3", |b| b.iter(|| solve_k_copwin(black_box(&petersen), 3).unwrap()));
    c.bench_function("solve dodecahedron k=3", |b| b.iter(|| solve_k_copwin(black_box(&dodecahedron), 3).unwrap()));
    c.bench_function("cop number grid 4x4", |b| b.iter(|| cop_number(black_box(&grid)).unwrap()));
}

fn dismantling(c: &mut Criterion) {
    let tri = triangulation(60).graph();
    let gnp = graph("random_gnp:40,20");
    c.bench_function("dismantle triangulation 60", |b| b.iter(|| dismantle(black_box(&tri))));
    c.bench_function("dismantle gnp 40", |b| b.iter(|| dismantle(black_box(&gnp))));
}

criterion_group!(benches, solve, dismantling);
criterion_main!(benches);
