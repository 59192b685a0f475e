// SPDX-License-Identifier: Apache-2.0

//! For a polynomial `f` in four variables with a top-degree monomial `x₁u₀`,
//! a tuple `X` with `f(X)` singular and `[[X₁,X₂],[X₃,X₄]]` invertible.

use super::{pencil_domain, CheckReport, DomainError, NcPoly};
use crate::expr::{parse, words_of_length, words_up_to, Word};
use crate::linalg::{rat, MatTuple, QMatrix, Rat};
use num_traits::Zero;
use std::collections::HashMap;

/// Variable permutations tried in turn (letter `i` becomes `σ(i)`); each
/// preserves invertibility of the 2×2 block matrix.
const PERMUTATIONS: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

#[derive(Clone, Debug)]
pub struct CounterexampleData {
    /// The polynomial as given.
    pub f: NcPoly,
    /// Permutation applied before the construction.
    pub permutation: [usize; 4],
    /// `f` after permutation, scaled so that `x₁u₀` has coefficient 1.
    pub normalized: NcPoly,
    pub d: usize,
    pub u0: Word,
    /// `u₀, u₁, …, u_M, w₁, …, w_N`.
    pub basis_words: Vec<Word>,
    pub m: usize,
    pub n: usize,
    /// `x₁u₀ − normalized`, in basis coordinates.
    pub h: Vec<Rat>,
    /// The tuple for `f` itself (the permutation already undone).
    pub x: MatTuple,
}

impl CounterexampleData {
    pub fn size(&self) -> usize {
        self.basis_words.len()
    }
}

fn leading_x1_word(f: &NcPoly, d: usize) -> Option<Word> {
    f.terms()
        .map(|(w, _)| w)
        .filter(|w| w.len() == d && w[0] == 0)
        .min()
        .cloned()
}

/// Builds the tuple for `f` (an nc polynomial in at most four variables).
pub fn build_counterexample(f: &NcPoly) -> Result<CounterexampleData, DomainError> {
    if f.min_vars() > 4 {
        return Err(DomainError::TooManyVariables);
    }
    let d = f.degree();
    if d == 0 {
        return Err(DomainError::ConstantPolynomial);
    }
    let (perm, fp, lead) = PERMUTATIONS
        .iter()
        .find_map(|sigma| {
            let fp = f.permute(sigma);
            leading_x1_word(&fp, d).map(|w| (*sigma, fp, w))
        })
        .ok_or(DomainError::NoLeadingX1Monomial)?;
    let normalized = fp.scale(&fp.coeff(&lead).recip());
    let u0: Word = lead[1..].to_vec();

    let mut basis_words = vec![u0.clone()];
    basis_words.extend(words_up_to(4, d - 1).into_iter().filter(|w| *w != u0));
    let m = basis_words.len() - 1;
    basis_words.extend(words_of_length(4, d).into_iter().filter(|w| *w != lead));
    let size = basis_words.len();
    let n = size - 1 - m;
    let index: HashMap<&Word, usize> = basis_words.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut h = vec![Rat::zero(); size];
    for (w, c) in normalized.terms() {
        if *w != lead {
            h[index[w]] -= c;
        }
    }

    let prepend = |k: usize, w: &Word| {
        let mut v = vec![k];
        v.extend_from_slice(w);
        v
    };
    let mats: Vec<QMatrix> = (0..4)
        .map(|k| {
            let mut x = QMatrix::zeros(size, size);
            let v_k: Vec<usize> = (0..size).filter(|&i| basis_words[i].first() != Some(&k)).collect();
            for (col, w) in basis_words.iter().enumerate() {
                if col == 0 && k == 0 {
                    for (row, q) in h.iter().enumerate() {
                        x[(row, col)] = q.clone();
                    }
                } else if col <= m {
                    x[(index[&prepend(k, w)], col)] = rat(1);
                } else if k == 1 || k == 2 {
                    x[(v_k[col - m - 1], col)] = rat(1);
                }
            }
            x
        })
        .collect();
    let x_perm = MatTuple::new(size, mats).expect("square matrices of equal size");
    Ok(CounterexampleData {
        f: f.clone(),
        permutation: perm,
        normalized,
        d,
        u0,
        basis_words,
        m,
        n,
        h,
        x: x_perm.permute(&perm),
    })
}

/// The function `(x₄ − x₃x₁⁻¹x₂)⁻¹` whose domain is `{det m(X) ≠ 0}`.
pub const SCHUR_INVERSE: &str = "(x4 - x3*x1^-1*x2)^-1";

/// Checks that `f(X)` annihilates the empty word, that `m(X)` is
/// invertible, and that `X` lies in the pencil domain of the Schur inverse.
pub fn verify_counterexample(cd: &CounterexampleData) -> Vec<CheckReport> {
    let size = cd.size();
    let eps = cd
        .basis_words
        .iter()
        .position(Vec::is_empty)
        .expect("the empty word is a basis word");
    let mut e = vec![Rat::zero(); size];
    e[eps] = rat(1);
    let fx_e = cd.f.apply(&cd.x, &e);
    let nonzero = fx_e.iter().filter(|q| !q.is_zero()).count();
    let singular = CheckReport {
        check: "f(X) is singular".into(),
        pass: nonzero == 0,
        detail: format!(
            "f(X) applied to the empty-word basis vector has {nonzero} nonzero entries (size {size})"
        ),
    };

    let x = &cd.x;
    let block = QMatrix::from_blocks(&[
        vec![x.get(0).clone(), x.get(1).clone()],
        vec![x.get(2).clone(), x.get(3).clone()],
    ]);
    let det = block.det().expect("square");
    let invertible = CheckReport {
        check: "m(X) is invertible".into(),
        pass: !det.is_zero(),
        detail: format!("det of the {0}x{0} block matrix is {det}", 2 * size),
    };

    let e = parse(SCHUR_INVERSE, 4).expect("valid expression");
    let alpha = [rat(1), rat(0), rat(0), rat(1)];
    let domain = match pencil_domain(&e, &alpha).and_then(|pd| {
        let size = pd.realization.size();
        pd.contains(x).map(|b| (b, size))
    }) {
        Ok((inside, psize)) => CheckReport {
            check: "X is in the domain".into(),
            pass: inside,
            detail: format!(
                "pencil of size {psize} for {SCHUR_INVERSE} about (1,0,0,1) is {} at X",
                if inside { "invertible" } else { "singular" }
            ),
        },
        Err(err) => CheckReport {
            check: "X is in the domain".into(),
            pass: false,
            detail: err.to_string(),
        },
    };
    vec![singular, invertible, domain]
}
