use bernstein_fp::experiments::{poly_f, poly_h};
use bernstein_fp::rational::from_f64;
use bernstein_fp::{decasteljau, decasteljau_value, eval_exact, round_coeffs, vs};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn evaluators(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for (name, exact) in [("f", poly_f()), ("h", poly_h())] {
        let p = round_coeffs(&exact).unwrap().0;
        let s = 0.37;
        group.bench_with_input(BenchmarkId::new("decasteljau_value", name), &p, |b, p| {
            b.iter(|| decasteljau_value(black_box(p), black_box(s)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("decasteljau_triangle", name), &p, |b, p| {
            b.iter(|| decasteljau(black_box(p), black_box(s)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("vs", name), &p, |b, p| {
            b.iter(|| vs(black_box(p), black_box(s)).unwrap())
        });
        let exact_rounded = p.to_rational();
        let s_exact = from_f64(s).unwrap();
        group.bench_with_input(BenchmarkId::new("oracle", name), &exact_rounded, |b, q| {
            b.iter(|| eval_exact(black_box(q), black_box(&s_exact)))
        });
    }
    group.finish();
}

criterion_group!(benches, evaluators);
criterion_main!(benches);
