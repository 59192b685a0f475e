// SPDX-License-Identifier: Apache-2.0

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncdomain_core::domain::SCHUR_INVERSE;
use ncdomain_core::linalg::rat;
use ncdomain_core::random::{random_expr, random_matrix, random_tuple};
use ncdomain_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn determinants(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("det");
    for n in [8, 16, 32] {
        let m = random_matrix(&mut rng, n, 9);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.det()))
        });
    }
    group.finish();
}

fn realizations(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let exprs: Vec<Expr> = (0..20).map(|_| random_expr(&mut rng, 3, 5)).collect();
    let search = domain::PointSearch::default();
    let cases: Vec<(Expr, Vec<Rat>)> = exprs
        .into_iter()
        .filter_map(|e| find_scalar_point(&e, 3, &search).map(|a| (e, a)))
        .collect();
    c.bench_function("build", |b| {
        b.iter(|| {
            for (e, a) in &cases {
                black_box(build(e, a).ok());
            }
        })
    });
    let built: Vec<Realization> = cases.iter().filter_map(|(e, a)| build(e, a).ok()).collect();
    c.bench_function("minimize", |b| {
        b.iter(|| {
            for r in &built {
                black_box(minimize(r));
            }
        })
    });
}

fn symbolic(c: &mut Criterion) {
    let x = MPoly::var(3, 0);
    let y = MPoly::var(3, 1);
    let z = MPoly::var(3, 2);
    let one = MPoly::one(3);
    let common = x.mul(&y).add(&z.pow(2)).sub(&one);
    let p = common.mul(&x.add(&y).pow(3).add(&one));
    let q = common.mul(&y.sub(&z).pow(3).sub(&x));
    c.bench_function("gcd", |b| b.iter(|| black_box(symbolic::gcd(&p, &q))));

    let e = parse("(1 - x1)*x2*(1 - x1)^-1 + (1 + x1*x2)^-1", 2).unwrap();
    let limits = SymbolicLimits::default();
    c.bench_function("generic_eval_n2", |b| {
        b.iter(|| black_box(generic_eval(&e, 2, 2, &limits).ok()))
    });
}

fn witnesses(c: &mut Criterion) {
    let e = parse(SCHUR_INVERSE, 4).unwrap();
    let alpha = vec![rat(1), rat(0), rat(0), rat(1)];
    let pd = pencil_domain(&e, &alpha).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points: Vec<MatTuple> = (0..10)
        .map(|_| random_tuple(&mut rng, 3, 4, 3))
        .filter(|x| pd.contains(x).unwrap())
        .collect();
    c.bench_function("contains", |b| {
        b.iter(|| {
            for x in &points {
                black_box(pd.contains(x).unwrap());
            }
        })
    });
    c.bench_function("witness", |b| {
        b.iter(|| {
            for x in &points {
                black_box(witness(&pd, x).unwrap());
            }
        })
    });
}

criterion_group!(benches, determinants, realizations, symbolic, witnesses);
criterion_main!(benches);
