use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dunklpoly::exactnum::{int, rat};
use dunklpoly::families::{explicit_poly, generate_monic, ChiharaParams};
use dunklpoly::quad::{gauss_rule, WeightClass, WeightSpec};
use dunklpoly::suite::{run_criterion, Criterion as Acceptance};
use dunklpoly::{Family, OperatorSpec};

fn chihara() -> ChiharaParams {
    ChiharaParams::new(rat(5, 2), rat(1, 3), rat(3, 7))
}

fn construction(c: &mut Criterion) {
    let fam = Family::Chihara(chihara());
    let mut g = c.benchmark_group("construction");
    for n in [8usize, 16, 32] {
        g.bench_with_input(BenchmarkId::new("recurrence", n), &n, |b, &n| {
            b.iter(|| generate_monic(black_box(&fam), n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, &n| {
            b.iter(|| explicit_poly(black_box(&fam), n).unwrap())
        });
    }
    g.finish();
}

fn operator_action(c: &mut Criterion) {
    let spec = OperatorSpec::ChiharaD { params: chihara(), eps: rat(2, 3) };
    let op = spec.build().unwrap();
    let polys = generate_monic(&Family::Chihara(chihara()), 16).unwrap();
    c.bench_function("chihara_D_apply_deg16", |b| b.iter(|| op.apply(black_box(&polys[16])).unwrap()));
    c.bench_function("chihara_D_compose_self", |b| b.iter(|| black_box(&op).compose(&op)));
}

fn quadrature(c: &mut Criterion) {
    let mut g = c.benchmark_group("quadrature");
    for n in [16usize, 64] {
        g.bench_with_input(BenchmarkId::new("gauss_jacobi", n), &n, |b, &n| {
            b.iter(|| gauss_rule(WeightClass::Jacobi { a: 1.5, b: -0.5 }, n).unwrap())
        });
    }
    let spec = WeightSpec::Chihara(ChiharaParams::new(int(1), int(1), rat(1, 2)));
    let polys = generate_monic(&spec.family(), 12).unwrap();
    g.bench_function("gram_chihara_12", |b| b.iter(|| spec.gram_matrix(black_box(&polys)).unwrap()));
    g.finish();
}

fn acceptance(c: &mut Criterion) {
    let mut g = c.benchmark_group("acceptance");
    g.sample_size(10);
    for crit in [Acceptance::Construction, Acceptance::Eigen, Acceptance::Limits] {
        g.bench_function(crit.name(), |b| b.iter(|| run_criterion(crit)));
    }
    g.finish();
}

criterion_group!(benches, construction, operator_action, quadrature, acceptance);
criterion_main!(benches);
