// SPDX-License-Identifier: Apache-2.0

//! Seeded generators for expressions and matrix points, shared by the
//! sampling procedures and the property suites.

use crate::expr::Expr;
use crate::linalg::{rat, MatTuple, QMatrix};
use rand::Rng;

/// Random expression of depth at most `depth` in `g` variables, with
/// integer constants in `-2..=2`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, g: usize, depth: usize) -> Expr {
    let leaf = |rng: &mut R| {
        if rng.gen_bool(0.7) {
            Expr::var(rng.gen_range(0..g))
        } else {
            Expr::int(rng.gen_range(-2..=2))
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..20) {
        0..=3 => leaf(rng),
        4..=8 => Expr::add(random_expr(rng, g, depth - 1), random_expr(rng, g, depth - 1)),
        9..=13 => Expr::mul(random_expr(rng, g, depth - 1), random_expr(rng, g, depth - 1)),
        14 => Expr::neg(random_expr(rng, g, depth - 1)),
        _ => Expr::inv(random_expr(rng, g, depth - 1)),
    }
}

/// Random `n×n` matrix with integer entries in `-range..=range`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> QMatrix {
    QMatrix::from_rows(
        (0..n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-range..=range))).collect())
            .collect(),
    )
}

pub fn random_tuple<R: Rng + ?Sized>(rng: &mut R, n: usize, g: usize, range: i64) -> MatTuple {
    MatTuple::new(n, (0..g).map(|_| random_matrix(rng, n, range)).collect())
        .expect("square matrices")
}

/// Random invertible matrix (rejection sampling).
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> QMatrix {
    loop {
        let s = random_matrix(rng, n, range);
        if !num_traits::Zero::is_zero(&s.det().expect("square")) {
            return s;
        }
    }
}
