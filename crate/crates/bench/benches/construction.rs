use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sfh_core::de::threshold;
use sfh_core::ensemble::{edge_distributions, EnsembleSpec};
use sfh_core::peg::{girth_histogram, peg_construct, PegConfig};

fn construction(c: &mut Criterion) {
    let cfg = PegConfig {
        n: 600,
        r: 540,
        dv: 3,
        lower_triangular: true,
        seed: 1,
    };

    c.bench_function("peg_construct_n600", |b| {
        b.iter(|| peg_construct(black_box(&cfg)).unwrap())
    });

    let code = peg_construct(&cfg).unwrap();
    c.bench_function("girth_histogram_n600", |b| {
        b.iter(|| girth_histogram(black_box(code.h())))
    });

    let dist = edge_distributions(&EnsembleSpec::new(0.1, 3).unwrap()).unwrap();
    c.bench_function("threshold_r01_dv3", |b| {
        b.iter(|| threshold(black_box(&dist), 1e-4))
    });
}

criterion_group!(benches, construction);
criterion_main!(benches);
