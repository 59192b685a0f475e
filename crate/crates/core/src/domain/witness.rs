// SPDX-License-Identifier: Apache-2.0

//! Explicit scalar expressions for the entries of the inverse pencil, built
//! by recursive Schur complements after normalizing the corner block to the
//! identity with a polynomial in the pencil.

use super::{DomainError, PencilDomain};
use crate::expr::Expr;
use crate::linalg::{MatTuple, QMatrix, Rat, UPoly};
use num_traits::{One, Signed, Zero};

/// Scalar expressions `s_ij` for the entries of `L(x−α)⁻¹`, all defined at
/// `point`, and the assembled representative `Σ cᵢ s_ij bⱼ`.
#[derive(Clone, Debug)]
pub struct WitnessExpr {
    pub entries: Vec<Vec<Expr>>,
    pub point: MatTuple,
    pub expr: Expr,
}

/// An expression together with its value at the fixed point.
#[derive(Clone)]
struct Entry {
    e: Expr,
    v: QMatrix,
}

type Grid = Vec<Vec<Entry>>;

fn constant(q: Rat, n: usize) -> Entry {
    Entry {
        v: QMatrix::scalar(&q, n),
        e: Expr::constant(q),
    }
}

fn add(a: &Entry, b: &Entry) -> Entry {
    let e = match (a.e.as_const(), b.e.as_const()) {
        (Some(x), Some(y)) => Expr::constant(x + y),
        (Some(x), _) if x.is_zero() => b.e.clone(),
        (_, Some(y)) if y.is_zero() => a.e.clone(),
        _ => Expr::add(a.e.clone(), b.e.clone()),
    };
    Entry { e, v: &a.v + &b.v }
}

fn neg(a: &Entry) -> Entry {
    let e = match a.e.as_const() {
        Some(x) => Expr::constant(-x),
        None => Expr::neg(a.e.clone()),
    };
    Entry { e, v: -&a.v }
}

fn sub(a: &Entry, b: &Entry) -> Entry {
    if b.e.as_const().is_some() {
        return add(a, &neg(b));
    }
    if a.e.is_const_zero() {
        return neg(b);
    }
    Entry {
        e: Expr::sub(a.e.clone(), b.e.clone()),
        v: &a.v - &b.v,
    }
}

fn mul(a: &Entry, b: &Entry) -> Entry {
    let n = a.v.rows();
    let e = match (a.e.as_const(), b.e.as_const()) {
        (Some(x), _) if x.is_zero() => return constant(Rat::zero(), n),
        (_, Some(y)) if y.is_zero() => return constant(Rat::zero(), n),
        (Some(x), Some(y)) => Expr::constant(x * y),
        (Some(x), _) if x.is_one() => b.e.clone(),
        (_, Some(y)) if y.is_one() => a.e.clone(),
        _ => Expr::mul(a.e.clone(), b.e.clone()),
    };
    Entry { e, v: &a.v * &b.v }
}

fn inv(a: &Entry) -> Entry {
    let v = a.v.inverse().expect("inverted block is invertible at the point");
    let e = match a.e.as_const() {
        Some(x) => Expr::constant(x.recip()),
        None => Expr::inv(a.e.clone()),
    };
    Entry { e, v }
}

fn identity(d: usize, n: usize) -> Grid {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| constant(if i == j { Rat::one() } else { Rat::zero() }, n))
                .collect()
        })
        .collect()
}

fn grid_add(a: &Grid, b: &Grid) -> Grid {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| add(x, y)).collect())
        .collect()
}

fn grid_neg(a: &Grid) -> Grid {
    a.iter().map(|r| r.iter().map(neg).collect()).collect()
}

fn grid_mul(a: &Grid, b: &Grid, n: usize) -> Grid {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(constant(Rat::zero(), n), |acc, k| {
                        add(&acc, &mul(&row[k], &b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

fn grid_scale(q: &Rat, a: &Grid, n: usize) -> Grid {
    let c = constant(q.clone(), n);
    a.iter().map(|r| r.iter().map(|x| mul(&c, x)).collect()).collect()
}

fn value(a: &Grid, n: usize) -> QMatrix {
    let d = a.len();
    let mut out = QMatrix::zeros(d * n, d * n);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out.set_block(i * n, j * n, &x.v);
        }
    }
    out
}

/// `f(M)` by Horner's rule.
fn grid_poly(f: &UPoly, m: &Grid, n: usize) -> Grid {
    let d = m.len();
    let coeffs = f.coeffs();
    let top = coeffs.len() - 1;
    let mut acc = grid_scale(&coeffs[top], &identity(d, n), n);
    for c in coeffs[..top].iter().rev() {
        acc = grid_add(&grid_mul(&acc, m, n), &grid_scale(c, &identity(d, n), n));
    }
    acc
}

fn block(a: &Grid, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Grid {
    a[rows]
        .iter()
        .map(|r| r[cols.clone()].to_vec())
        .collect()
}

/// Inverse of a grid whose value at the point is invertible.
fn invert(m: &Grid, n: usize) -> Grid {
    let d = m.len();
    if d == 1 {
        return vec![vec![inv(&m[0][0])]];
    }
    let v = value(m, n);
    let f = if v.is_identity() {
        None
    } else {
        let mp = v.min_poly().expect("square value matrix");
        Some(mp.inverse_cofactor().expect("value matrix is invertible"))
    };
    let (mt, fm) = match &f {
        None => (m.clone(), None),
        Some(f) => {
            let fm = grid_poly(f, m, n);
            (grid_mul(&fm, m, n), Some(fm))
        }
    };
    let uinv = inv(&mt[0][0]);
    let b = block(&mt, 0..1, 1..d);
    let c = block(&mt, 1..d, 0..1);
    let dd = block(&mt, 1..d, 1..d);
    let uinv_g = vec![vec![uinv]];
    let uinv_b = grid_mul(&uinv_g, &b, n);
    let c_uinv = grid_mul(&c, &uinv_g, n);
    let schur = grid_add(&dd, &grid_neg(&grid_mul(&c, &uinv_b, n)));
    let sinv = invert(&schur, n);
    let uinv_b_sinv = grid_mul(&uinv_b, &sinv, n);
    let top_left = grid_add(&uinv_g, &grid_mul(&uinv_b_sinv, &c_uinv, n));
    let top_right = grid_neg(&uinv_b_sinv);
    let bottom_left = grid_neg(&grid_mul(&sinv, &c_uinv, n));
    let mut mt_inv: Grid = Vec::with_capacity(d);
    mt_inv.push(
        top_left[0]
            .iter()
            .chain(&top_right[0])
            .cloned()
            .collect(),
    );
    for (bl, br) in bottom_left.iter().zip(&sinv) {
        mt_inv.push(bl.iter().chain(br).cloned().collect());
    }
    match fm {
        None => mt_inv,
        Some(fm) => grid_mul(&mt_inv, &fm, n),
    }
}

/// The pencil `L(x−α) = I − Σⱼ Aⱼ(xⱼ − αⱼ)` as affine expressions.
fn pencil_grid(pd: &PencilDomain, x: &MatTuple) -> Grid {
    let r = &pd.realization;
    let d = r.size();
    let n = x.n();
    let alpha = r.base_point();
    (0..d)
        .map(|p| {
            (0..d)
                .map(|q| {
                    let mut c0 = if p == q { Rat::one() } else { Rat::zero() };
                    for (a, al) in r.coefficients().iter().zip(alpha) {
                        c0 += &a[(p, q)] * al;
                    }
                    let mut acc = constant(c0, n);
                    for (j, a) in r.coefficients().iter().enumerate() {
                        let coef = &a[(p, q)];
                        if coef.is_zero() {
                            continue;
                        }
                        let var = Entry {
                            e: Expr::var(j),
                            v: x.get(j).clone(),
                        };
                        acc = if coef.is_negative() {
                            add(&acc, &mul(&constant(-coef, n), &var))
                        } else {
                            sub(&acc, &mul(&constant(coef.clone(), n), &var))
                        };
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// A representative defined at `X` that agrees with the realization there.
pub fn witness(pd: &PencilDomain, x: &MatTuple) -> Result<WitnessExpr, DomainError> {
    if !pd.contains(x)? {
        return Err(DomainError::NotInDomain);
    }
    let r = &pd.realization;
    let n = x.n();
    let d = r.size();
    if d == 0 {
        return Ok(WitnessExpr {
            entries: Vec::new(),
            point: x.clone(),
            expr: Expr::zero(),
        });
    }
    let s = invert(&pencil_grid(pd, x), n);
    let mut acc = constant(Rat::zero(), n);
    for (ci, row) in r.c().iter().zip(&s) {
        for (bj, sij) in r.b().iter().zip(row) {
            let w = ci * bj;
            if !w.is_zero() {
                acc = add(&acc, &mul(&constant(w, n), sij));
            }
        }
    }
    debug_assert_eq!(Some(&acc.v), r.eval(x).ok().as_ref());
    Ok(WitnessExpr {
        entries: s
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.e).collect())
            .collect(),
        point: x.clone(),
        expr: acc.e,
    })
}
