// SPDX-License-Identifier: Apache-2.0

//! Evaluation on generic matrices: each entry of each variable is an
//! independent commuting indeterminate.

use super::{lcm, MPoly, MRatFn, SymbolicError};
use crate::expr::{Expr, ExprAlgebra};
use crate::linalg::{MatTuple, QMatrix, Rat};
use num_traits::{One, Zero};

/// Hard bounds on symbolic work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicLimits {
    /// Maximum number of commuting indeterminates `g·n²`.
    pub max_vars: usize,
    /// Maximum total degree of any numerator or denominator.
    pub max_degree: u32,
}

impl Default for SymbolicLimits {
    fn default() -> Self {
        SymbolicLimits {
            max_vars: 16,
            max_degree: 24,
        }
    }
}

impl SymbolicLimits {
    fn check_vars(&self, g: usize, n: usize) -> Result<(), SymbolicError> {
        let vars = g * n * n;
        if vars > self.max_vars {
            return Err(SymbolicError::SymbolicSizeLimit {
                what: "variables",
                value: vars,
                limit: self.max_vars,
            });
        }
        Ok(())
    }

    fn check_degree(&self, f: &MRatFn) -> Result<(), SymbolicError> {
        let d = f.degree();
        if d > self.max_degree {
            return Err(SymbolicError::SymbolicSizeLimit {
                what: "degree",
                value: d as usize,
                limit: self.max_degree as usize,
            });
        }
        Ok(())
    }
}

/// Index of ξ_{j,k,l} (0-based) among the `g·n²` indeterminates.
pub fn generic_var(n: usize, j: usize, k: usize, l: usize) -> usize {
    j * n * n + k * n + l
}

/// Name of indeterminate `i` for size `n`, 1-based: `xi_j_k_l`.
pub fn generic_var_name(n: usize, i: usize) -> String {
    let j = i / (n * n);
    let k = (i / n) % n;
    let l = i % n;
    format!("xi_{}_{}_{}", j + 1, k + 1, l + 1)
}

/// Flattens a tuple into the coordinates of the generic indeterminates.
pub fn generic_point(x: &MatTuple) -> Vec<Rat> {
    x.mats()
        .iter()
        .flat_map(|m| m.entries().iter().cloned())
        .collect()
}

type Grid = Vec<Vec<MRatFn>>;

/// `e` evaluated on generic `n×n` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericEvaluation {
    pub n: usize,
    pub g: usize,
    pub entries: Grid,
    /// Normalized lcm of all entry denominators.
    pub denom_lcm: MPoly,
}

impl GenericEvaluation {
    pub fn nvars(&self) -> usize {
        self.g * self.n * self.n
    }

    /// Substitutes `X` into every entry; `None` off the extended domain.
    pub fn eval_at(&self, x: &MatTuple) -> Result<Option<QMatrix>, SymbolicError> {
        self.check_point(x)?;
        let pt = generic_point(x);
        let mut out = QMatrix::zeros(self.n, self.n);
        for (k, row) in self.entries.iter().enumerate() {
            for (l, f) in row.iter().enumerate() {
                match f.eval(&pt) {
                    Some(v) => out[(k, l)] = v,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    fn check_point(&self, x: &MatTuple) -> Result<(), SymbolicError> {
        if x.n() != self.n || x.g() != self.g {
            return Err(SymbolicError::SizeMismatch {
                expected: (self.g, self.n),
                got: (x.g(), x.n()),
            });
        }
        Ok(())
    }
}

struct Generic<'a> {
    g: usize,
    n: usize,
    limits: &'a SymbolicLimits,
}

impl Generic<'_> {
    fn nvars(&self) -> usize {
        self.g * self.n * self.n
    }

    fn checked(&self, grid: Grid) -> Result<Grid, SymbolicError> {
        for f in grid.iter().flatten() {
            self.limits.check_degree(f)?;
        }
        Ok(grid)
    }
}

fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    let nvars = a[0][0].num().nvars();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(MRatFn::zero(nvars), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.add(&a[i][k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when the matrix is singular.
fn grid_inverse(a: &Grid) -> Option<Grid> {
    let n = a.len();
    let nvars = a[0][0].num().nvars();
    let mut m: Grid = a.clone();
    let mut inv: Grid = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        MRatFn::constant(nvars, Rat::one())
                    } else {
                        MRatFn::zero(nvars)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].num().num_terms() + m[r][col].den().num_terms())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p_inv = m[col][col].inv().expect("nonzero pivot");
        for j in 0..n {
            m[col][j] = m[col][j].mul(&p_inv);
            inv[col][j] = inv[col][j].mul(&p_inv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                if !m[col][j].is_zero() {
                    m[r][j] = m[r][j].sub(&factor.mul(&m[col][j]));
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = inv[r][j].sub(&factor.mul(&inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

impl ExprAlgebra for Generic<'_> {
    type Value = Grid;
    type Error = SymbolicError;

    fn constant(&mut self, q: &Rat) -> Result<Grid, SymbolicError> {
        let nv = self.nvars();
        Ok((0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if i == j {
                            MRatFn::constant(nv, q.clone())
                        } else {
                            MRatFn::zero(nv)
                        }
                    })
                    .collect()
            })
            .collect())
    }

    fn var(&mut self, j: usize) -> Result<Grid, SymbolicError> {
        if j >= self.g {
            return Err(SymbolicError::VariableOutOfRange { index: j, g: self.g });
        }
        let nv = self.nvars();
        let n = self.n;
        Ok((0..n)
            .map(|k| {
                (0..n)
                    .map(|l| MRatFn::poly(MPoly::var(nv, generic_var(n, j, k, l))))
                    .collect()
            })
            .collect())
    }

    fn add(&mut self, a: &Grid, b: &Grid) -> Result<Grid, SymbolicError> {
        let out = a
            .iter()
            .zip(b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
            .collect();
        self.checked(out)
    }

    fn mul(&mut self, a: &Grid, b: &Grid) -> Result<Grid, SymbolicError> {
        self.checked(grid_mul(a, b))
    }

    fn neg(&mut self, a: &Grid) -> Result<Grid, SymbolicError> {
        Ok(a.iter().map(|r| r.iter().map(MRatFn::neg).collect()).collect())
    }

    fn inv(&mut self, a: &Grid, node: &Expr) -> Result<Grid, SymbolicError> {
        match grid_inverse(a) {
            Some(inv) => self.checked(inv),
            None => Err(SymbolicError::DegenerateAtSizeN {
                n: self.n,
                subexpr: node.clone(),
            }),
        }
    }
}

/// Evaluates `e` (in `g` variables) on generic `n×n` matrices.
pub fn generic_eval(
    e: &Expr,
    g: usize,
    n: usize,
    limits: &SymbolicLimits,
) -> Result<GenericEvaluation, SymbolicError> {
    assert!(n > 0, "matrix size must be positive");
    if e.min_vars() > g {
        return Err(SymbolicError::VariableOutOfRange {
            index: e.min_vars() - 1,
            g,
        });
    }
    limits.check_vars(g, n)?;
    let entries = e.fold(&mut Generic { g, n, limits })?;
    let nv = g * n * n;
    let denom_lcm = entries
        .iter()
        .flatten()
        .fold(MPoly::one(nv), |acc, f| lcm(&acc, f.den()));
    Ok(GenericEvaluation {
        n,
        g,
        entries,
        denom_lcm,
    })
}

/// Whether `X` lies in the extended domain at size `n`: `denom_lcm(X) ≠ 0`.
pub fn edom_member(ge: &GenericEvaluation, x: &MatTuple) -> Result<bool, SymbolicError> {
    ge.check_point(x)?;
    Ok(!ge.denom_lcm.eval(&generic_point(x)).is_zero())
}

/// Factors of the extended-domain polynomial on block-diagonal points.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectSumFactorization {
    pub n: usize,
    /// `denom_lcm` of the evaluation at size `2n`.
    pub p: MPoly,
    /// `p(Ξ′⊕Ξ″)` in `2·g·n²` indeterminates (Ξ′ first, then Ξ″).
    pub block_diagonal: MPoly,
    /// Factor in the indeterminates of Ξ′, written on a generic `n×n` tuple.
    pub p1: MPoly,
    /// Factor in the indeterminates of Ξ″, written on a generic `n×n` tuple.
    pub p2: MPoly,
}

/// Splits `p(Ξ′⊕Ξ″) = p₁(Ξ′)·p₂(Ξ″)` where `p` is the extended-domain
/// polynomial of `e` at size `2n`. Factors are monic.
pub fn direct_sum_factorization(
    e: &Expr,
    g: usize,
    n: usize,
    limits: &SymbolicLimits,
) -> Result<DirectSumFactorization, SymbolicError> {
    limits.check_vars(g, 2 * n)?;
    generic_eval(e, g, n, limits)?;
    let ge = generic_eval(e, g, 2 * n, limits)?;
    let p = ge.denom_lcm.clone();
    let half = g * n * n;
    let target = 2 * half;
    let images: Vec<MPoly> = (0..g)
        .flat_map(|j| (0..2 * n).flat_map(move |k| (0..2 * n).map(move |l| (j, k, l))))
        .map(|(j, k, l)| {
            if k < n && l < n {
                MPoly::var(target, generic_var(n, j, k, l))
            } else if k >= n && l >= n {
                MPoly::var(target, half + generic_var(n, j, k - n, l - n))
            } else {
                MPoly::zero(target)
            }
        })
        .collect();
    let q = p.substitute(&images, target);

    let p1_full = specialization_points(half)
        .map(|a| {
            let sub: Vec<MPoly> = (0..target)
                .map(|i| {
                    if i < half {
                        MPoly::var(target, i)
                    } else {
                        MPoly::constant(target, a[i - half].clone())
                    }
                })
                .collect();
            q.substitute(&sub, target)
        })
        .find(|s| !s.is_zero())
        .ok_or(SymbolicError::NotFactored)?
        .monic();
    let p2_full = q.div_exact(&p1_full).ok_or(SymbolicError::NotFactored)?;
    if p2_full.vars_used().iter().any(|&v| v < half) {
        return Err(SymbolicError::NotFactored);
    }
    let to_first: Vec<MPoly> = (0..target)
        .map(|i| {
            if i < half {
                MPoly::var(half, i)
            } else {
                MPoly::zero(half)
            }
        })
        .collect();
    let to_second: Vec<MPoly> = (0..target)
        .map(|i| {
            if i < half {
                MPoly::zero(half)
            } else {
                MPoly::var(half, i - half)
            }
        })
        .collect();
    Ok(DirectSumFactorization {
        n,
        p,
        p1: p1_full.substitute(&to_first, half),
        p2: p2_full.substitute(&to_second, half),
        block_diagonal: q,
    })
}

/// Deterministic candidate points: zero, all ones, then small varied integers.
fn specialization_points(dim: usize) -> impl Iterator<Item = Vec<Rat>> {
    (0..64u64).map(move |t| match t {
        0 => vec![Rat::zero(); dim],
        1 => vec![Rat::one(); dim],
        _ => (0..dim as u64)
            .map(|i| {
                let v = (t * 7 + i * i * 3 + i * 5) % 11;
                Rat::from_integer((v as i64 - 5).into())
            })
            .collect(),
    })
}

/// Membership of `I_ℓ⊗X` in the extended domain for `ℓ = 1..=ℓ_max`.
/// A representative degenerate at size `ℓn` reports `false`.
pub fn ampliation_probe(
    e: &Expr,
    x: &MatTuple,
    l_max: usize,
    limits: &SymbolicLimits,
) -> Result<Vec<(usize, bool)>, SymbolicError> {
    let n = x.n();
    for l in 1..=l_max {
        limits.check_vars(x.g(), l * n)?;
    }
    (1..=l_max)
        .map(|l| {
            let member = match generic_eval(e, x.g(), l * n, limits) {
                Ok(ge) => edom_member(&ge, &x.ampliate(l))?,
                Err(SymbolicError::DegenerateAtSizeN { .. }) => false,
                Err(err) => return Err(err),
            };
            Ok((l, member))
        })
        .collect()
}
