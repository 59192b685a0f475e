// SPDX-License-Identifier: Apache-2.0

use super::Realization;
use crate::expr::Word;
use crate::linalg::{dot, QMatrix, Rat, SpanBasis};
use std::collections::VecDeque;

/// Breadth-first Krylov basis `{A_w b}` of the reachable subspace, with the
/// word producing each vector. Letters are tried in index order.
pub fn krylov_words(r: &Realization) -> Vec<(Word, Vec<Rat>)> {
    let mut span = SpanBasis::new(r.size());
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    if span.insert(r.b.clone()) {
        out.push((Vec::new(), r.b.clone()));
        queue.push_back((Vec::new(), r.b.clone()));
    }
    while let Some((w, v)) = queue.pop_front() {
        for (j, aj) in r.a.iter().enumerate() {
            let u = aj.mul_vec(&v);
            if span.insert(u.clone()) {
                let mut uw = vec![j];
                uw.extend_from_slice(&w);
                out.push((uw.clone(), u.clone()));
                queue.push_back((uw, u));
            }
        }
    }
    out
}

/// Restriction to the reachable subspace `span{A_w b}`.
fn restrict_reachable(r: &Realization) -> Realization {
    let basis: Vec<Vec<Rat>> = krylov_words(r).into_iter().map(|(_, v)| v).collect();
    let k = basis.len();
    if k == r.size() {
        return r.clone();
    }
    let mut span = SpanBasis::new(r.size());
    for v in &basis {
        span.insert(v.clone());
    }
    let coords = |v: &[Rat]| span.coordinates(v).expect("subspace is invariant");
    let a = r
        .a
        .iter()
        .map(|aj| {
            let cols: Vec<Vec<Rat>> = basis.iter().map(|v| coords(&aj.mul_vec(v))).collect();
            QMatrix::from_rows(cols).transpose_or_empty(k)
        })
        .collect();
    let c = basis.iter().map(|v| dot(&r.c, v)).collect();
    let b = if k == 0 { Vec::new() } else { coords(&r.b) };
    Realization::from_parts(r.alpha.clone(), c, a, b)
}

trait TransposeOrEmpty {
    fn transpose_or_empty(self, k: usize) -> QMatrix;
}

impl TransposeOrEmpty for QMatrix {
    /// `from_rows` cannot infer a width from zero rows.
    fn transpose_or_empty(self, k: usize) -> QMatrix {
        if k == 0 {
            QMatrix::zeros(0, 0)
        } else {
            self.transpose()
        }
    }
}

/// Minimal realization of the same series: restrict to the reachable
/// subspace, then (dually, on the transpose) to the observable one.
pub fn minimize(r: &Realization) -> Realization {
    let reachable = restrict_reachable(r);
    restrict_reachable(&reachable.transpose()).transpose()
}

/// For minimal `r1`, `r2` finds `P` with `b₂ = Pb₁`, `A₂ⱼ = PA₁ⱼP⁻¹` and
/// `c₂ = P⁻ᵗc₁`, which exists exactly when both realize the same function.
pub fn similar(r1: &Realization, r2: &Realization) -> Option<QMatrix> {
    if r1.size() != r2.size() || r1.g() != r2.g() || r1.alpha != r2.alpha {
        return None;
    }
    let d = r1.size();
    let words = krylov_words(r1);
    if words.len() != d {
        return None;
    }
    let v1 = QMatrix::from_rows(words.iter().map(|(_, v)| v.clone()).collect()).transpose_or_empty(d);
    let v2 = QMatrix::from_rows(
        words
            .iter()
            .map(|(w, _)| r2.apply_word(w, &r2.b))
            .collect(),
    )
    .transpose_or_empty(d);
    let p = &v2 * &v1.inverse().ok()?;
    p.inverse().ok()?;
    let ok_b = p.mul_vec(&r1.b) == r2.b;
    let ok_a = r1
        .a
        .iter()
        .zip(&r2.a)
        .all(|(a1, a2)| &p * a1 == a2 * &p);
    let ok_c = p.transpose().mul_vec(&r2.c) == r1.c;
    (ok_b && ok_a && ok_c).then_some(p)
}
