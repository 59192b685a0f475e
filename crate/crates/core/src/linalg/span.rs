// SPDX-License-Identifier: Apache-2.0

use super::rat::Rat;
use num_traits::{One, Zero};

/// Incrementally built basis of a subspace of ℚ^dim that can express any
/// vector of the span in terms of the inserted vectors.
///
/// Each inserted vector is kept alongside an echelon-reduced copy (pivot
/// entry 1) and the combination of original vectors producing it.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    dim: usize,
    originals: Vec<Vec<Rat>>,
    reduced: Vec<Reduced>,
}

#[derive(Debug, Clone)]
struct Reduced {
    pivot: usize,
    vector: Vec<Rat>,
    combo: Vec<Rat>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            originals: Vec::new(),
            reduced: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.originals
    }

    /// Returns the residue after elimination and the multipliers used.
    fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        assert_eq!(v.len(), self.dim, "span dimension mismatch");
        let mut residue = v.to_vec();
        let mut coords = vec![Rat::zero(); self.originals.len()];
        for red in &self.reduced {
            let f = residue[red.pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (r, x) in residue.iter_mut().zip(&red.vector) {
                if !x.is_zero() {
                    *r -= &f * x;
                }
            }
            for (c, x) in coords.iter_mut().zip(&red.combo) {
                if !x.is_zero() {
                    *c += &f * x;
                }
            }
        }
        (residue, coords)
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (residue, coords) = self.reduce(v);
        residue.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Inserts `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let (residue, coords) = self.reduce(&v);
        let Some(pivot) = residue.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = residue[pivot].recip();
        let vector: Vec<Rat> = residue.iter().map(|x| x * &inv).collect();
        // reduced = v - Σ coords_i · originals_i, all scaled by inv
        let mut combo: Vec<Rat> = coords.iter().map(|c| -(c * &inv)).collect();
        combo.push(inv.clone());
        for red in &mut self.reduced {
            red.combo.push(Rat::zero());
        }
        self.reduced.push(Reduced {
            pivot,
            vector,
            combo,
        });
        self.originals.push(v);
        debug_assert!(self.reduced.last().is_some_and(|r| r.vector[pivot].is_one()));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::rat;

    #[test]
    fn expresses_vectors_in_original_basis() {
        let mut s = SpanBasis::new(3);
        assert!(s.insert(vec![rat(1), rat(2), rat(0)]));
        assert!(s.insert(vec![rat(0), rat(1), rat(1)]));
        assert!(!s.insert(vec![rat(2), rat(5), rat(1)]));
        let c = s.coordinates(&[rat(3), rat(4), rat(-2)]).unwrap();
        assert_eq!(c, vec![rat(3), rat(-2)]);
        assert!(s.coordinates(&[rat(0), rat(0), rat(1)]).is_none());
        assert!(s.insert(vec![rat(0), rat(0), rat(1)]));
        assert_eq!(s.len(), 3);
    }
}
