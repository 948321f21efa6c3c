use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use exponent_bench::{spec, COKERNEL_INSTANCES};
use exponent_core::exactlinalg::smith_normal_form;
use exponent_core::repcoker::{cokernel_structure, expand_character_matrix, pairing_matrix};

fn cokernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("cokernel");
    group.sample_size(10);
    for &(p, n) in COKERNEL_INSTANCES {
        group.bench_function(format!("Q_{p}_{n}"), |b| {
            b.iter(|| cokernel_structure(black_box(spec(p, n))).unwrap())
        });
        let d = expand_character_matrix(&pairing_matrix(spec(p, n)).unwrap());
        group.bench_function(format!("snf_{p}_{n}"), |b| b.iter(|| smith_normal_form(black_box(&d))));
    }
    group.finish();
}

criterion_group!(benches, cokernels);
criterion_main!(benches);
