// SPDX-License-Identifier: Apache-2.0

use super::matrix::{LinalgError, QMatrix};
use super::rat::{JsonRat, Rat};
use serde::{Deserialize, Serialize};

/// A point `X = (X_1, …, X_g)` of `M_n(ℚ)^g`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "TupleWire", into = "TupleWire")]
pub struct MatTuple {
    n: usize,
    mats: Vec<QMatrix>,
}

impl MatTuple {
    pub fn new(n: usize, mats: Vec<QMatrix>) -> Result<Self, LinalgError> {
        for m in &mats {
            if m.shape() != (n, n) {
                return Err(LinalgError::DimensionMismatch {
                    op: "tuple",
                    left: (n, n),
                    right: m.shape(),
                });
            }
        }
        Ok(MatTuple { n, mats })
    }

    /// The 1×1 point `(α_1, …, α_g)`.
    pub fn scalar_point(alpha: &[Rat]) -> Self {
        Self::scalar_multiple(alpha, 1)
    }

    /// `I_n · α`.
    pub fn scalar_multiple(alpha: &[Rat], n: usize) -> Self {
        MatTuple {
            n,
            mats: alpha.iter().map(|a| QMatrix::scalar(a, n)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[QMatrix] {
        &self.mats
    }

    pub fn get(&self, j: usize) -> &QMatrix {
        &self.mats[j]
    }

    /// `I_ℓ ⊗ X`, applied to each coordinate.
    pub fn ampliate(&self, l: usize) -> Self {
        let id = QMatrix::identity(l);
        MatTuple {
            n: self.n * l,
            mats: self.mats.iter().map(|x| id.kron(x)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.g(), other.g(), "direct sum of tuples with different g");
        MatTuple {
            n: self.n + other.n,
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// `S X S⁻¹` coordinatewise.
    pub fn conjugate(&self, s: &QMatrix) -> Result<Self, LinalgError> {
        let s_inv = s.inverse()?;
        Ok(MatTuple {
            n: self.n,
            mats: self.mats.iter().map(|x| &(s * x) * &s_inv).collect(),
        })
    }

    /// `X + I_n · α`.
    pub fn translate(&self, alpha: &[Rat]) -> Self {
        assert_eq!(alpha.len(), self.g(), "translation length");
        MatTuple {
            n: self.n,
            mats: self
                .mats
                .iter()
                .zip(alpha)
                .map(|(x, a)| x + &QMatrix::scalar(a, self.n))
                .collect(),
        }
    }

    /// Reorders coordinates: result `j` is `X_{perm[j]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        MatTuple {
            n: self.n,
            mats: perm.iter().map(|&j| self.mats[j].clone()).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<JsonRat>>,
}

impl From<QMatrix> for MatrixWire {
    fn from(m: QMatrix) -> Self {
        MatrixWire {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(JsonRat).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixWire> for QMatrix {
    type Error = String;
    fn try_from(w: MatrixWire) -> Result<Self, String> {
        if w.entries.len() != w.rows || w.entries.iter().any(|r| r.len() != w.cols) {
            return Err(format!(
                "matrix entries do not match declared shape {}x{}",
                w.rows, w.cols
            ));
        }
        let data = w.entries.into_iter().flatten().map(|q| q.0).collect();
        QMatrix::new(w.rows, w.cols, data).map_err(|e| e.to_string())
    }
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixWire::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        QMatrix::try_from(w).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TupleWire {
    n: usize,
    g: usize,
    #[serde(rename = "X")]
    x: Vec<QMatrix>,
}

impl From<MatTuple> for TupleWire {
    fn from(t: MatTuple) -> Self {
        TupleWire {
            n: t.n,
            g: t.mats.len(),
            x: t.mats,
        }
    }
}

impl TryFrom<TupleWire> for MatTuple {
    type Error = String;
    fn try_from(w: TupleWire) -> Result<Self, String> {
        if w.x.len() != w.g {
            return Err(format!("declared g = {} but {} matrices given", w.g, w.x.len()));
        }
        MatTuple::new(w.n, w.x).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::{frac, rat};

    #[test]
    fn ampliation_of_scalars() {
        let x = MatTuple::scalar_point(&[rat(1), rat(1)]);
        assert_eq!(x.ampliate(1), x);
        let amp = x.ampliate(2);
        assert_eq!(amp.n(), 2);
        assert!(amp.mats().iter().all(QMatrix::is_identity));
    }

    #[test]
    fn json_shape() {
        let x = MatTuple::new(
            2,
            vec![QMatrix::from_rows(vec![
                vec![rat(1), frac(-1, 2)],
                vec![rat(0), rat(3)],
            ])],
        )
        .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"g":1,"X":[{"rows":2,"cols":2,"entries":[["1","-1/2"],["0","3"]]}]}"#
        );
        let back: MatTuple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let ints: MatTuple =
            serde_json::from_str(r#"{"n":1,"g":2,"X":[{"rows":1,"cols":1,"entries":[[1]]},{"rows":1,"cols":1,"entries":[["2/3"]]}]}"#)
                .unwrap();
        assert_eq!(ints.get(1)[(0, 0)], frac(2, 3));
        assert!(serde_json::from_str::<MatTuple>(r#"{"n":2,"g":1,"X":[{"rows":1,"cols":1,"entries":[[1]]}]}"#).is_err());
    }
}
