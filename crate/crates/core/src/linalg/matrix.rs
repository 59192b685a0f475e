// SPDX-License-Identifier: Apache-2.0

//! Dense matrices over the rationals.

use super::rat::{format_rat, rat, Rat};
use super::span::SpanBasis;
use super::upoly::UPoly;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} vs {right:?} in {op}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("entry buffer has {got} entries, expected {expected}")]
    BadLength { expected: usize, got: usize },
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(&Rat::one(), n)
    }

    /// `q · I_n`.
    pub fn scalar(q: &Rat, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        if !q.is_zero() {
            for i in 0..n {
                m[(i, i)] = q.clone();
            }
        }
        m
    }

    /// Builds a matrix from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn column(v: Vec<Rat>) -> Self {
        QMatrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, q) in entries.iter().enumerate() {
            m[(i, i)] = q.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * q).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same(other, "add")?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same(other, "sub")?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector given as a slice.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<(), LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        Ok(())
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Rat, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &pivot;
                a.sub_row_multiple(r, col, &f, col);
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        self.solve_square(&Self::identity(n))
    }

    /// Solves `self · Y = rhs` for square nonsingular `self`.
    pub fn solve_square(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.require_square()?;
        if rhs.rows != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut aug = self.hcat(rhs);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !aug[(r, col)].is_zero()) else {
                return Err(LinalgError::Singular);
            };
            aug.swap_rows(p, col);
            aug.normalize_row(col, col);
            for r in 0..n {
                if r != col && !aug[(r, col)].is_zero() {
                    let f = aug[(r, col)].clone();
                    aug.sub_row_multiple(r, col, &f, col);
                }
            }
        }
        Ok(aug.submatrix(0, n, n, m))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            a.normalize_row(row, col);
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.sub_row_multiple(r, row, &f, col);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self · v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// A particular solution `Y` of `self · Y = rhs` (free variables set to zero).
    pub fn solve(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if rhs.rows != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let n = self.cols;
        let (r, pivots) = self.hcat(rhs).rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(LinalgError::Inconsistent);
        }
        let mut y = Self::zeros(n, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                y[(p, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(y)
    }

    /// Kronecker product; block `(i, j)` of the result is `a[i,j] · b`.
    pub fn kron(&self, b: &Self) -> Self {
        let (br, bc) = b.shape();
        let mut out = Self::zeros(self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        let v = &b[(k, l)];
                        if !v.is_zero() {
                            out[(i * br + k, j * bc + l)] = a * v;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    /// Assembles a matrix from a rectangular grid of blocks.
    pub fn from_blocks(blocks: &[Vec<QMatrix>]) -> Self {
        let row_heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let mut out = Self::zeros(row_heights.iter().sum(), col_widths.iter().sum());
        let mut r0 = 0;
        for (bi, brow) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, blk) in brow.iter().enumerate() {
                assert_eq!(blk.shape(), (row_heights[bi], col_widths[bj]), "block shape");
                out.set_block(r0, c0, blk);
                c0 += col_widths[bj];
            }
            r0 += row_heights[bi];
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, blk: &Self) {
        for i in 0..blk.rows {
            for j in 0..blk.cols {
                self[(r0 + i, c0 + j)] = blk[(i, j)].clone();
            }
        }
    }

    /// Minimal polynomial, found as the first linear dependency among
    /// `I, A, A², …` (Krylov iteration on vectorized powers).
    pub fn min_poly(&self) -> Result<UPoly, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut span = SpanBasis::new(n * n);
        let mut power = Self::identity(n);
        loop {
            if let Some(coords) = span.coordinates(&power.data) {
                // A^k = Σ c_i A^i  ⇒  t^k − Σ c_i t^i
                let mut coeffs: Vec<Rat> = coords.into_iter().map(|c| -c).collect();
                coeffs.push(Rat::one());
                return Ok(UPoly::new(coeffs));
            }
            span.insert(power.data.clone());
            power = &power * self;
        }
    }

    /// Evaluates a univariate polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &UPoly) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::scalar(c, n);
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn normalize_row(&mut self, row: usize, pivot_col: usize) {
        let p = self[(row, pivot_col)].clone();
        if p.is_one() {
            return;
        }
        let inv = p.recip();
        for j in pivot_col..self.cols {
            let v = &mut self.data[row * self.cols + j];
            if !v.is_zero() {
                *v *= &inv;
            }
        }
    }

    /// row[target] -= f · row[src], touching columns from `from` onward.
    fn sub_row_multiple(&mut self, target: usize, src: usize, f: &Rat, from: usize) {
        for j in from..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = f * s;
            self.data[target * self.cols + j] -= delta;
        }
    }
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the `try_*` methods when the
// shapes come from untrusted input.
impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).expect("matrix add")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.try_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::frac;

    #[test]
    fn identity_plus_identity() {
        let i2 = QMatrix::identity(2);
        assert_eq!(&i2 + &i2, QMatrix::scalar(&rat(2), 2));
    }

    #[test]
    fn nilpotent_square_vanishes() {
        let n = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!((&n * &n).is_zero());
    }

    #[test]
    fn unipotent_product() {
        let a = QMatrix::from_rows(vec![vec![rat(1), frac(1, 2)], vec![rat(0), rat(1)]]);
        let b = QMatrix::from_rows(vec![vec![rat(1), frac(-1, 2)], vec![rat(0), rat(1)]]);
        assert_eq!(&a * &b, QMatrix::identity(2));
    }

    #[test]
    fn shape_errors() {
        let a = QMatrix::zeros(2, 3);
        assert!(matches!(a.try_mul(&a), Err(LinalgError::DimensionMismatch { .. })));
        assert!(matches!(a.try_add(&QMatrix::zeros(3, 2)), Err(LinalgError::DimensionMismatch { .. })));
        assert_eq!(a.det(), Err(LinalgError::NotSquare(2, 3)));
        assert!(QMatrix::new(2, 2, vec![rat(1)]).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(QMatrix::identity(3).inverse().unwrap(), QMatrix::identity(3));
        let a = QMatrix::from_i64(&[&[1, -1], &[0, 1]]);
        assert_eq!(a.inverse().unwrap(), QMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        let s = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn determinants() {
        assert_eq!(QMatrix::identity(4).det().unwrap(), rat(1));
        // diag(1 - 1, 1 - 0): the pencil factor at (1⊕0, 1⊕0)
        assert_eq!(QMatrix::diag(&[rat(0), rat(1)]).det().unwrap(), rat(0));
        // the size-3 pencil of (1 - x1) x2 (1 - x1)^-1 at x1 = 2, x2 = 5
        let l = QMatrix::from_i64(&[&[1, 0, -5], &[2, 1, -5], &[0, 0, -1]]);
        assert_eq!(l.det().unwrap(), rat(-1));
        assert_eq!(QMatrix::zeros(0, 0).det().unwrap(), rat(1));
    }

    #[test]
    fn rank_kernel_solve() {
        assert_eq!(QMatrix::zeros(3, 3).rank(), 0);
        let k = QMatrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        let b = QMatrix::column(vec![rat(3), frac(1, 7)]);
        assert_eq!(QMatrix::identity(2).solve(&b).unwrap(), b);
        let s = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            s.solve(&QMatrix::column(vec![rat(1), rat(2)])),
            Err(LinalgError::Inconsistent)
        );
    }

    #[test]
    fn kron_conventions() {
        assert_eq!(QMatrix::identity(2).kron(&QMatrix::identity(3)), QMatrix::identity(6));
        let n = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let k = n.kron(&QMatrix::identity(2));
        let mut expect = QMatrix::zeros(4, 4);
        expect.set_block(0, 2, &QMatrix::identity(2));
        assert_eq!(k, expect);
        let pencil = &QMatrix::identity(2) - &QMatrix::identity(1).kron(&QMatrix::identity(2));
        assert_eq!(pencil.det().unwrap(), rat(0));
    }

    #[test]
    fn direct_sum_of_scalars() {
        let s = QMatrix::from_i64(&[&[1]]).direct_sum(&QMatrix::from_i64(&[&[0]]));
        assert_eq!(s, QMatrix::diag(&[rat(1), rat(0)]));
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(QMatrix::identity(2).min_poly().unwrap().coeffs(), &[rat(-1), rat(1)]);
        let n = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(n.min_poly().unwrap().coeffs(), &[rat(0), rat(0), rat(1)]);
        let d = QMatrix::diag(&[rat(1), rat(2)]);
        assert_eq!(d.min_poly().unwrap().coeffs(), &[rat(2), rat(-3), rat(1)]);
    }
}
