use std::hint::black_box;

use cr_lab::form::assemble_form;
use cr_lab::harmonics::canonicalize;
use cr_lab::ops::paneitz;
use cr_lab::variation::{jet_oracle, second_variation};
use cr_lab::{basis, inner, parse_poly};
use criterion::{criterion_group, criterion_main, Criterion};

fn harmonics(c: &mut Criterion) {
    c.bench_function("basis H(6,6)", |b| b.iter(|| basis(black_box(6), black_box(6)).dim()));
    let x = parse_poly("z1^3*z1c^2*z2 + 2*z2^2*z2c^3 - i*z1*z2c + 5").unwrap();
    c.bench_function("canonicalize degree-6 poly", |b| b.iter(|| canonicalize(black_box(&x))));
    let f = basis(4, 3).elements[2].clone();
    c.bench_function("paneitz on H(4,3)", |b| b.iter(|| paneitz(black_box(&f))));
    c.bench_function("inner on H(4,3)", |b| b.iter(|| inner(black_box(&f), black_box(&f))));
}

fn forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("second variation");
    g.sample_size(10);
    for (name, src) in [("z1^4", "z1^4"), ("1", "1"), ("z1^5*z1c", "z1^5*z1c")] {
        let phi = parse_poly(src).unwrap();
        let op = second_variation(&phi);
        g.bench_function(format!("form pmax 4, phi = {name}"), |b| b.iter(|| assemble_form(black_box(&op), 4)));
        g.bench_function(format!("classify pmax 4, phi = {name}"), |b| {
            let form = assemble_form(&op, 4);
            b.iter(|| black_box(&form).classify().unwrap())
        });
    }
    g.finish();
}

fn jets(c: &mut Criterion) {
    let mut g = c.benchmark_group("jet oracle");
    g.sample_size(10);
    let phi = parse_poly("z1*z2c").unwrap();
    g.bench_function("degree 3, phi = z1*z2c", |b| b.iter(|| jet_oracle(black_box(&phi), 3)));
    g.finish();
}

criterion_group!(benches, harmonics, forms, jets);
criterion_main!(benches);
