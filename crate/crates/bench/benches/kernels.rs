use criterion::{criterion_group, criterion_main, Criterion};

use detlab_core::groebner::{buchberger, GbCaps, Ideal};
use detlab_core::hessian;
use detlab_core::matrix::MatrixSpec;
use detlab_core::syzygy;
use detlab_core::{MonomialOrder, ProbeConfig};

fn bench_determinant(c: &mut Criterion) {
    let cloned5 = MatrixSpec::cloned(5).build().unwrap();
    c.bench_function("determinant_cloned_m5", |b| {
        b.iter(|| std::hint::black_box(cloned5.determinant()))
    });
    let zeros52 = MatrixSpec::zeros(5, 2).build().unwrap();
    c.bench_function("determinant_zeros_m5_r2", |b| {
        b.iter(|| std::hint::black_box(zeros52.determinant()))
    });
}

fn bench_linear_syzygies(c: &mut Criterion) {
    let mat = MatrixSpec::cloned(4).build().unwrap();
    let grad = mat.gradient_generators().unwrap();
    c.bench_function("linear_syzygies_cloned_m4", |b| {
        b.iter(|| std::hint::black_box(syzygy::linear_syzygies(&grad).unwrap().dimension()))
    });
}

fn bench_groebner(c: &mut Criterion) {
    let mat = MatrixSpec::cloned(3).build().unwrap();
    let minors = mat.submaximal_minors();
    c.bench_function("groebner_submaximal_minors_cloned_m3", |b| {
        b.iter(|| {
            let ideal = Ideal::new(mat.table().clone(), minors.clone(), MonomialOrder::DegRevLex);
            std::hint::black_box(buchberger(&ideal, &GbCaps::default()).unwrap().elements.len())
        })
    });
}

fn bench_hessian_rank(c: &mut Criterion) {
    let mat = MatrixSpec::zeros(4, 2).build().unwrap();
    let f = mat.determinant();
    c.bench_function("hessian_rank_zeros_m4_r2", |b| {
        b.iter(|| {
            std::hint::black_box(hessian::hessian_rank(&f, &ProbeConfig::new(42)).unwrap().rank)
        })
    });
}

criterion_group!(
    benches,
    bench_determinant,
    bench_linear_syzygies,
    bench_groebner,
    bench_hessian_rank
);
criterion_main!(benches);
