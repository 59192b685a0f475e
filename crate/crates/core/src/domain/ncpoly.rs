// SPDX-License-Identifier: Apache-2.0

use super::DomainError;
use crate::expr::{format_word, Expr, ExprAlgebra, Word};
use crate::linalg::rat::format_rat;
use crate::linalg::{MatTuple, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Noncommutative polynomial: word `(w₁,…,w_k)` stands for `x_{w₁}⋯x_{w_k}`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rat)>) -> Self {
        let mut p = Self::zero();
        for (w, q) in terms {
            p.add_term(w, q);
        }
        p
    }

    fn add_term(&mut self, w: Word, q: Rat) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Reads an inverse-free expression.
    pub fn from_expr(e: &Expr) -> Result<Self, DomainError> {
        e.fold(&mut PolyAlgebra)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[usize]) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of variables needed (largest letter + 1).
    pub fn min_vars(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.iter().map(|&j| j + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, q: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * q)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    /// `f(x_{σ(1)}, …, x_{σ(g)})`: letter `i` becomes `σ(i)`.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.iter().map(|&i| sigma[i]).collect(), c.clone())),
        )
    }

    /// `f(X)·v`.
    pub fn apply(&self, x: &MatTuple, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); v.len()];
        for (w, c) in &self.terms {
            let mut y = v.to_vec();
            for &j in w.iter().rev() {
                y = x.get(j).mul_vec(&y);
            }
            for (o, yi) in out.iter_mut().zip(&y) {
                *o += c * yi;
            }
        }
        out
    }

    /// Inverse-free expression for this polynomial.
    pub fn to_expr(&self) -> Expr {
        let mut acc: Option<Expr> = None;
        for (w, c) in &self.terms {
            let mono = w.iter().map(|&j| Expr::var(j)).reduce(Expr::mul);
            let term = match mono {
                None => Expr::constant(c.abs()),
                Some(m) if c.abs().is_one() => m,
                Some(m) => Expr::mul(Expr::constant(c.abs()), m),
            };
            acc = Some(match (acc, c.is_negative()) {
                (None, false) => term,
                (None, true) => Expr::neg(term),
                (Some(a), false) => Expr::add(a, term),
                (Some(a), true) => Expr::sub(a, term),
            });
        }
        acc.unwrap_or_else(Expr::zero)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (w.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", format_rat(&a))?,
                (false, true) => write!(f, "{}", format_word(w))?,
                (false, false) => write!(f, "{}*{}", format_rat(&a), format_word(w))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

struct PolyAlgebra;

impl ExprAlgebra for PolyAlgebra {
    type Value = NcPoly;
    type Error = DomainError;

    fn constant(&mut self, q: &Rat) -> Result<NcPoly, DomainError> {
        Ok(NcPoly::from_terms([(Vec::new(), q.clone())]))
    }

    fn var(&mut self, j: usize) -> Result<NcPoly, DomainError> {
        Ok(NcPoly::from_terms([(vec![j], Rat::one())]))
    }

    fn add(&mut self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly, DomainError> {
        let mut out = a.clone();
        for (w, c) in &b.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    fn mul(&mut self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly, DomainError> {
        let mut out = NcPoly::zero();
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        Ok(out)
    }

    fn neg(&mut self, a: &NcPoly) -> Result<NcPoly, DomainError> {
        Ok(a.scale(&-Rat::one()))
    }

    fn inv(&mut self, _: &NcPoly, node: &Expr) -> Result<NcPoly, DomainError> {
        Err(DomainError::NotPolynomial {
            subexpr: node.clone(),
        })
    }
}
