// SPDX-License-Identifier: Apache-2.0

//! Truncated power series in the free algebra, computed straight from the
//! syntax tree. This is the reference the realization machinery is tested
//! against; it shares no code with it.

use super::ast::{Expr, ExprAlgebra};
use crate::linalg::Rat;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A word `x_{j1} x_{j2} … x_{jk}` as 0-based letters; empty is the unit word.
pub type Word = Vec<usize>;

/// Formats a word as `x1*x2`; the empty word is `1`.
pub fn format_word(w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|j| format!("x{}", j + 1))
        .collect::<Vec<_>>()
        .join("*")
}

/// All words over `g` letters of length exactly `len`, in lexicographic order.
pub fn words_of_length(g: usize, len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..g).map(move |j| {
                    let mut w = w.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(g: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|l| words_of_length(g, l)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("not regular at zero: inverse of {subexpr} has zero constant term")]
    NotRegularAtZero { subexpr: Expr },
}

#[derive(Clone, PartialEq, Eq)]
pub struct FreeSeries {
    max_deg: usize,
    coeffs: BTreeMap<Word, Rat>,
}

impl FreeSeries {
    pub fn zero(max_deg: usize) -> Self {
        FreeSeries {
            max_deg,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(q: Rat, max_deg: usize) -> Self {
        let mut s = Self::zero(max_deg);
        s.insert(Vec::new(), q);
        s
    }

    pub fn monomial(w: Word, q: Rat, max_deg: usize) -> Self {
        let mut s = Self::zero(max_deg);
        if w.len() <= max_deg {
            s.insert(w, q);
        }
        s
    }

    fn insert(&mut self, w: Word, q: Rat) {
        if q.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, q);
        }
    }

    fn accumulate(&mut self, w: Word, q: Rat) {
        match self.coeffs.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !q.is_zero() {
                    v.insert(q);
                }
            }
        }
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn coeff(&self, w: &[usize]) -> Rat {
        self.coeffs.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, q) in &other.coeffs {
            out.accumulate(w.clone(), q.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rat) -> Self {
        let mut out = Self::zero(self.max_deg);
        if !q.is_zero() {
            for (w, c) in &self.coeffs {
                out.coeffs.insert(w.clone(), c * q);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Word, Rat> = BTreeMap::new();
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > self.max_deg {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                *acc.entry(w).or_insert_with(Rat::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        FreeSeries {
            max_deg: self.max_deg,
            coeffs: acc,
        }
    }

    /// Multiplicative inverse via the geometric series; `None` when the
    /// constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let gamma = self.coeff(&[]);
        if gamma.is_zero() {
            return None;
        }
        let g_inv = gamma.recip();
        // self = γ(1 - t) with t proper
        let mut t = self.scale(&-&g_inv);
        t.accumulate(Vec::new(), Rat::one());
        let mut sum = Self::constant(Rat::one(), self.max_deg);
        let mut power = sum.clone();
        for _ in 0..self.max_deg {
            power = power.mul(&t);
            sum = sum.add(&power);
        }
        Some(sum.scale(&g_inv))
    }
}

impl fmt::Debug for FreeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Word, &Rat)> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        let parts: Vec<String> = terms
            .iter()
            .map(|(w, q)| format!("{}:{}", format_word(w), crate::linalg::rat::format_rat(q)))
            .collect();
        write!(f, "FreeSeries[≤{}]{{{}}}", self.max_deg, parts.join(", "))
    }
}

struct SeriesEval {
    max_deg: usize,
}

impl ExprAlgebra for SeriesEval {
    type Value = FreeSeries;
    type Error = SeriesError;

    fn constant(&mut self, q: &Rat) -> Result<FreeSeries, SeriesError> {
        Ok(FreeSeries::constant(q.clone(), self.max_deg))
    }

    fn var(&mut self, j: usize) -> Result<FreeSeries, SeriesError> {
        Ok(FreeSeries::monomial(vec![j], Rat::one(), self.max_deg))
    }

    fn add(&mut self, a: &FreeSeries, b: &FreeSeries) -> Result<FreeSeries, SeriesError> {
        Ok(a.add(b))
    }

    fn mul(&mut self, a: &FreeSeries, b: &FreeSeries) -> Result<FreeSeries, SeriesError> {
        Ok(a.mul(b))
    }

    fn neg(&mut self, a: &FreeSeries) -> Result<FreeSeries, SeriesError> {
        Ok(a.scale(&-Rat::one()))
    }

    fn inv(&mut self, a: &FreeSeries, node: &Expr) -> Result<FreeSeries, SeriesError> {
        a.inverse().ok_or_else(|| SeriesError::NotRegularAtZero {
            subexpr: node.clone(),
        })
    }
}

/// Power-series expansion of `e` about 0, truncated after degree `max_deg`.
pub fn expand_series(e: &Expr, max_deg: usize) -> Result<FreeSeries, SeriesError> {
    e.fold(&mut SeriesEval { max_deg })
}
