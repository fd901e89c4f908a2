use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use gordual::hochschild::{hh_homology, hh_homology_bar, Coefficients};
use gordual::sseq::{parse_schedule, run_schedule};
use gordual::{hilbert_series, minimal_resolution, Presentation};

fn pres(text: &str) -> Presentation {
    Presentation::parse(text).expect("benchmark presentation")
}

fn resolution(c: &mut Criterion) {
    let truncated = pres("char = 3\n[gen] x, 2, poly\n[gen] y, 4, poly\n[rel] x^3\n[rel] y^3\n");
    let hypersurface = pres("char = 2\n[gen] x, 2, poly\n[gen] y, 2, poly\n[rel] x^2*y + y^3\n");
    c.bench_function("resolution/truncated-f3", |b| {
        b.iter(|| minimal_resolution(black_box(&truncated), 6, 36).unwrap())
    });
    c.bench_function("resolution/hypersurface-f2", |b| {
        b.iter(|| minimal_resolution(black_box(&hypersurface), 6, 24).unwrap())
    });
}

fn hilbert(c: &mut Criterion) {
    let lu = pres("char = 3\n[gen] mu, 36, poly\n[gen] lambda1, 5, ext\n[gen] lambda2, 17, ext\n");
    c.bench_function("hilbert/three-generators", |b| {
        b.iter(|| hilbert_series(black_box(&lu), 200).unwrap())
    });
}

fn spectral_sequence(c: &mut Criterion) {
    let q = pres("char = 2\n[gen] mu, 8, poly\n[gen] lambda3, 3, ext\n[rel] lambda3^2\n[gen] lambda7, 7, ext\n[rel] lambda7^2\n");
    let s = pres("char = 2\n[gen] x, 2, poly\n[rel] x^2\n");
    let specs = parse_schedule("d3(lambda3) = x\n").unwrap();
    c.bench_function("sseq/one-differential", |b| {
        b.iter(|| run_schedule(black_box(&q), black_box(&s), &specs, 48).unwrap())
    });
}

fn hochschild(c: &mut Criterion) {
    let kx = pres("char = 3\n[gen] x, 2, poly\n");
    c.bench_function("hh/bar-field", |b| {
        b.iter(|| hh_homology_bar(black_box(&kx), Coefficients::Field, 14).unwrap())
    });
    c.bench_function("hh/enveloping-ring", |b| {
        b.iter(|| hh_homology(black_box(&kx), Coefficients::Ring, 24).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = resolution, hilbert, spectral_sequence, hochschild
}
criterion_main!(kernels);
