use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cone_anomaly::special::riemann_zeta_continued;
use cone_anomaly::sphere::cancellation_check;
use cone_anomaly::torus::total_anomaly_torus;
use cone_anomaly::Precision;
use cone_anomaly_bench::{context, point};

fn zeta(c: &mut Criterion) {
    let mut g = c.benchmark_group("zeta");
    for digits in [30, 60] {
        let ctx = context(digits);
        let s = point(&ctx, 3, 4);
        g.bench_with_input(BenchmarkId::new("riemann", digits), &s, |b, s| {
            b.iter(|| riemann_zeta_continued(black_box(s)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("nh_binomial", digits), &s, |b, s| {
            b.iter(|| ctx.zeta_nh_binomial(black_box(s)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("nh_bessel", digits), &s, |b, s| {
            b.iter(|| ctx.zeta_nh_bessel(black_box(s)).unwrap())
        });
        g.bench_function(BenchmarkId::new("nh_deriv_at_zero", digits), |b| {
            b.iter(|| ctx.zeta_nh_deriv_at_zero().unwrap())
        });
    }
    g.finish();
}

fn sphere(c: &mut Criterion) {
    let mut g = c.benchmark_group("sphere");
    for p in [1, 4, 8] {
        g.bench_with_input(BenchmarkId::new("cancellation_d60", p), &p, |b, &p| {
            b.iter(|| cancellation_check(p, Precision::from_digits(60)).unwrap())
        });
    }
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    g.sample_size(10);
    let ctx = context(30);
    let s = point(&ctx, 3, 2);
    g.bench_function("double_binomial_d30", |b| b.iter(|| ctx.zeta_double_binomial(black_box(&s)).unwrap()));
    g.bench_function("double_continued_d30", |b| b.iter(|| ctx.zeta_double_continued(black_box(&s)).unwrap()));
    g.bench_function("torus_total_d30", |b| b.iter(|| total_anomaly_torus(&ctx, false).unwrap()));
    g.finish();
}

criterion_group!(benches, zeta, sphere, lattice);
criterion_main!(benches);
