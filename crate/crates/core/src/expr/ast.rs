// SPDX-License-Identifier: Apache-2.0

use crate::linalg::Rat;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A noncommutative rational expression.
///
/// Nodes are reference counted, so an `Expr` is a DAG: subexpressions may be
/// shared, and every traversal in this crate visits a shared node once.
/// Variables are stored 0-based (`Var(0)` prints as `x1`).
#[derive(Clone)]
pub struct Expr(Arc<ExprKind>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Const(Rat),
    Var(usize),
    Add(Expr, Expr),
    Mul(Expr, Expr),
    Neg(Expr),
    Inv(Expr),
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr(Arc::new(kind))
    }

    pub fn constant(q: Rat) -> Self {
        Self::new(ExprKind::Const(q))
    }

    pub fn int(v: i64) -> Self {
        Self::constant(crate::linalg::rat(v))
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// Variable `x_{j+1}`.
    pub fn var(j: usize) -> Self {
        Self::new(ExprKind::Var(j))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Add(a, b))
    }

    /// `a - b`, represented as `a + (-b)`.
    pub fn sub(a: Expr, b: Expr) -> Self {
        Self::add(a, Self::neg(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Mul(a, b))
    }

    pub fn neg(a: Expr) -> Self {
        Self::new(ExprKind::Neg(a))
    }

    pub fn inv(a: Expr) -> Self {
        Self::new(ExprKind::Inv(a))
    }

    pub fn kind(&self) -> &ExprKind {
        &self.0
    }

    pub(crate) fn node_id(&self) -> *const ExprKind {
        Arc::as_ptr(&self.0)
    }

    pub fn as_const(&self) -> Option<&Rat> {
        match self.kind() {
            ExprKind::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_const_zero(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    pub fn is_const_one(&self) -> bool {
        self.as_const().is_some_and(One::is_one)
    }

    fn children(&self) -> [Option<&Expr>; 2] {
        match self.kind() {
            ExprKind::Const(_) | ExprKind::Var(_) => [None, None],
            ExprKind::Add(a, b) | ExprKind::Mul(a, b) => [Some(a), Some(b)],
            ExprKind::Neg(a) | ExprKind::Inv(a) => [Some(a), None],
        }
    }

    /// Bottom-up evaluation in an arbitrary algebra. Shared nodes are
    /// evaluated once; traversal is iterative, so deep DAGs are fine.
    pub fn fold<A: ExprAlgebra>(&self, alg: &mut A) -> Result<A::Value, A::Error> {
        let mut memo: HashMap<*const ExprKind, A::Value> = HashMap::new();
        let mut stack: Vec<(&Expr, bool)> = vec![(self, false)];
        while let Some((node, expanded)) = stack.pop() {
            if memo.contains_key(&node.node_id()) {
                continue;
            }
            if !expanded {
                stack.push((node, true));
                for c in node.children().into_iter().flatten() {
                    if !memo.contains_key(&c.node_id()) {
                        stack.push((c, false));
                    }
                }
                continue;
            }
            let get = |e: &Expr| &memo[&e.node_id()];
            let value = match node.kind() {
                ExprKind::Const(q) => alg.constant(q)?,
                ExprKind::Var(j) => alg.var(*j)?,
                ExprKind::Add(a, b) => alg.add(get(a), get(b))?,
                ExprKind::Mul(a, b) => alg.mul(get(a), get(b))?,
                ExprKind::Neg(a) => alg.neg(get(a))?,
                ExprKind::Inv(a) => alg.inv(get(a), node)?,
            };
            memo.insert(node.node_id(), value);
        }
        Ok(memo.remove(&self.node_id()).expect("root evaluated"))
    }

    /// Number of nodes when the DAG is unfolded into a tree (saturating).
    pub fn tree_size(&self) -> u128 {
        struct Size;
        impl ExprAlgebra for Size {
            type Value = u128;
            type Error = std::convert::Infallible;
            fn constant(&mut self, _: &Rat) -> Result<u128, Self::Error> {
                Ok(1)
            }
            fn var(&mut self, _: usize) -> Result<u128, Self::Error> {
                Ok(1)
            }
            fn add(&mut self, a: &u128, b: &u128) -> Result<u128, Self::Error> {
                Ok(a.saturating_add(*b).saturating_add(1))
            }
            fn mul(&mut self, a: &u128, b: &u128) -> Result<u128, Self::Error> {
                Ok(a.saturating_add(*b).saturating_add(1))
            }
            fn neg(&mut self, a: &u128) -> Result<u128, Self::Error> {
                Ok(a.saturating_add(1))
            }
            fn inv(&mut self, a: &u128, _: &Expr) -> Result<u128, Self::Error> {
                Ok(a.saturating_add(1))
            }
        }
        let Ok(n) = self.fold(&mut Size);
        n
    }

    /// Number of distinct nodes in the DAG.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            if seen.insert(e.node_id()) {
                stack.extend(e.children().into_iter().flatten());
            }
        }
        seen.len()
    }

    /// Largest variable index used (0-based), if any.
    pub fn max_var(&self) -> Option<usize> {
        let mut best = None;
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.node_id()) {
                continue;
            }
            if let ExprKind::Var(j) = e.kind() {
                best = best.max(Some(*j));
            }
            stack.extend(e.children().into_iter().flatten());
        }
        best
    }

    /// Number of variables the expression needs (`max_var + 1`, or 0).
    pub fn min_vars(&self) -> usize {
        self.max_var().map_or(0, |j| j + 1)
    }

    pub fn has_inverse(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.node_id()) {
                continue;
            }
            if matches!(e.kind(), ExprKind::Inv(_)) {
                return true;
            }
            stack.extend(e.children().into_iter().flatten());
        }
        false
    }

    /// `r(x + α)`: every `x_j` becomes `x_j + α_j`. Variables with `α_j = 0`
    /// are left untouched.
    pub fn shift_vars(&self, alpha: &[Rat]) -> Expr {
        struct Shift<'a>(&'a [Rat]);
        impl ExprAlgebra for Shift<'_> {
            type Value = Expr;
            type Error = std::convert::Infallible;
            fn constant(&mut self, q: &Rat) -> Result<Expr, Self::Error> {
                Ok(Expr::constant(q.clone()))
            }
            fn var(&mut self, j: usize) -> Result<Expr, Self::Error> {
                Ok(match self.0.get(j) {
                    Some(a) if !a.is_zero() => Expr::add(Expr::var(j), Expr::constant(a.clone())),
                    _ => Expr::var(j),
                })
            }
            fn add(&mut self, a: &Expr, b: &Expr) -> Result<Expr, Self::Error> {
                Ok(Expr::add(a.clone(), b.clone()))
            }
            fn mul(&mut self, a: &Expr, b: &Expr) -> Result<Expr, Self::Error> {
                Ok(Expr::mul(a.clone(), b.clone()))
            }
            fn neg(&mut self, a: &Expr) -> Result<Expr, Self::Error> {
                Ok(Expr::neg(a.clone()))
            }
            fn inv(&mut self, a: &Expr, _: &Expr) -> Result<Expr, Self::Error> {
                Ok(Expr::inv(a.clone()))
            }
        }
        let Ok(e) = self.fold(&mut Shift(alpha));
        e
    }
}

/// Target of [`Expr::fold`]: one method per node type.
pub trait ExprAlgebra {
    type Value: Clone;
    type Error;

    fn constant(&mut self, q: &Rat) -> Result<Self::Value, Self::Error>;
    fn var(&mut self, j: usize) -> Result<Self::Value, Self::Error>;
    fn add(&mut self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&mut self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&mut self, a: &Self::Value) -> Result<Self::Value, Self::Error>;
    /// `node` is the `Inv` node itself, for error reporting.
    fn inv(&mut self, a: &Self::Value, node: &Expr) -> Result<Self::Value, Self::Error>;
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Expr {}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = self.tree_size();
        if size <= 10_000 {
            write!(f, "Expr({self})")
        } else {
            write!(f, "Expr(<{} shared nodes, {size} as a tree>)", self.dag_size())
        }
    }
}
