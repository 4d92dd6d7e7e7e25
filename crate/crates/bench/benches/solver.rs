use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fdecalc_bench::EQUATIONS;
use fdecalc_core::algebra::find_roots;
use fdecalc_core::solver::antidifference;
use fdecalc_core::{apply_operator, parse_equation, parse_expr, solve, OperatorPoly, TPoly};

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (i, src) in EQUATIONS.iter().enumerate() {
        let eq = parse_equation(src).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(i), &eq, |b, eq| {
            b.iter(|| solve(black_box(eq)).unwrap())
        });
    }
    group.finish();
}

fn bench_parse(c: &mut Criterion) {
    c.bench_function("parse_equation", |b| {
        b.iter(|| {
            for src in EQUATIONS {
                black_box(parse_equation(black_box(src)).unwrap());
            }
        })
    });
}

fn bench_apply(c: &mut Criterion) {
    let p = OperatorPoly::from_ints(&[1, -4, 6, -4, 1]);
    let e = parse_expr("t^3*cos(pi*t) + 2^t*(t^2 - 1) + 5").unwrap();
    c.bench_function("apply_operator", |b| {
        b.iter(|| apply_operator(black_box(&p), black_box(&e)))
    });
}

fn bench_antidifference(c: &mut Criterion) {
    let f = TPoly::from_ints(&[3, -1, 4, 1, -5, 9]);
    let mut group = c.benchmark_group("antidifference");
    for m in [1usize, 3, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| antidifference(black_box(&f), m))
        });
    }
    group.finish();
}

fn bench_roots(c: &mut Criterion) {
    // (T-1)^2 (T+2)(2T-1)(T^2+T+1)
    let exact = TPoly::from_ints(&[1, -2, 1])
        * TPoly::from_ints(&[2, 1])
        * TPoly::from_ints(&[-1, 2])
        * TPoly::from_ints(&[1, 1, 1]);
    c.bench_function("find_roots", |b| b.iter(|| find_roots(black_box(&exact))));
}

criterion_group!(
    benches,
    bench_solve,
    bench_parse,
    bench_apply,
    bench_antidifference,
    bench_roots
);
criterion_main!(benches);
