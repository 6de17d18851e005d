//! Sequential against parallel execution. Build with `--features parallel`
//! for the comparison to mean anything; without it both arms run the
//! sequential path.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use jnf_core::{
    char_data, companion, decompose_many, decompose_with, factor_charpoly, Execution, Field, Form, Matrix, Orientation,
    Poly,
};

fn q() -> Field {
    Field::Rational
}

/// Block diagonal of the given blocks, conjugated by a fixed unimodular
/// matrix so that nothing is sparse.
fn scrambled(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(q(), n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    let mut u = Matrix::identity(q(), n);
    for i in 0..n - 1 {
        u[(i, i + 1)] = q().one();
    }
    let ui = u.inverse().unwrap();
    u.mul(&m).unwrap().mul(&ui).unwrap()
}

fn jordan(lambda: i64, k: usize) -> Matrix {
    let mut m = Matrix::scalar(&q().from_i64(lambda), k);
    for i in 1..k {
        m[(i, i - 1)] = q().one();
    }
    m
}

fn multi_factor() -> Matrix {
    let quad = companion(&Poly::from_i64s(q(), &[-2, 0, 1]));
    let quad2 = companion(&Poly::from_i64s(q(), &[1, 1, 1]));
    scrambled(&[jordan(1, 3), jordan(-2, 2), jordan(3, 2), quad.clone(), quad, quad2])
}

fn bench_factors(c: &mut Criterion) {
    let a = multi_factor();
    let f = factor_charpoly(&char_data(&a).unwrap().p, None).unwrap();
    let mut group = c.benchmark_group("per_factor");
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| decompose_with(black_box(&a), Form::Rational, &f, Orientation::Upper, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_batch(c: &mut Criterion) {
    let batch: Vec<Matrix> = (0..16)
        .map(|k| scrambled(&[jordan(k % 3, 3), jordan(k % 5 + 3, 2), jordan(-1, 1)]))
        .collect();
    let mut group = c.benchmark_group("batch");
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(name, |b| b.iter(|| decompose_many(black_box(&batch), Form::Split, exec)));
    }
    group.finish();
}

criterion_group!(benches, bench_factors, bench_batch);
criterion_main!(benches);
