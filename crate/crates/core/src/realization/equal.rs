// SPDX-License-Identifier: Apache-2.0

use super::{build, minimize, RealizationError};
use crate::expr::{eval_scalar, words_of_length, Expr, Word};
use crate::linalg::{rat, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sampling budget for finding a scalar point where both sides are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualConfig {
    pub seed: u64,
    pub trials_per_stage: usize,
    pub stages: u32,
}

impl Default for EqualConfig {
    fn default() -> Self {
        EqualConfig {
            seed: 0,
            trials_per_stage: 64,
            stages: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal {
        alpha: Vec<Rat>,
    },
    /// `word` is a shortest word whose coefficients about `alpha` differ.
    Unequal {
        alpha: Vec<Rat>,
        word: Word,
        lhs: Rat,
        rhs: Rat,
    },
    /// No common scalar point was found within the sampling budget.
    Unknown,
}

/// Samples a scalar point at which every expression is defined: the origin
/// first, then uniform integer points in `[-N, N]^g` for `N = 1, 2, 4, …`.
pub fn find_common_point(exprs: &[&Expr], g: usize, config: &EqualConfig) -> Option<Vec<Rat>> {
    let defined = |alpha: &[Rat]| exprs.iter().all(|e| eval_scalar(e, alpha).is_ok());
    let origin = vec![Rat::zero(); g];
    if defined(&origin) {
        return Some(origin);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for stage in 0..config.stages {
        let bound = 1i64 << stage;
        for _ in 0..config.trials_per_stage {
            let alpha: Vec<Rat> = (0..g).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
            if defined(&alpha) {
                return Some(alpha);
            }
        }
    }
    None
}

/// Decides whether two expressions define the same nc rational function by
/// minimizing the realization of their difference about a common scalar point.
pub fn equal(
    lhs: &Expr,
    rhs: &Expr,
    g: usize,
    config: &EqualConfig,
) -> Result<Verdict, RealizationError> {
    let Some(alpha) = find_common_point(&[lhs, rhs], g, config) else {
        return Ok(Verdict::Unknown);
    };
    let rl = build(lhs, &alpha)?;
    let rr = build(rhs, &alpha)?;
    let diff = minimize(&rl.sub(&rr)?);
    if diff.size() == 0 {
        return Ok(Verdict::Equal { alpha });
    }
    // A nonzero series realized in dimension d has a nonzero coefficient on
    // some word shorter than d.
    for len in 0..diff.size() {
        for w in words_of_length(g, len) {
            if !diff.series_coeff(&w).is_zero() {
                return Ok(Verdict::Unequal {
                    lhs: rl.series_coeff(&w),
                    rhs: rr.series_coeff(&w),
                    alpha,
                    word: w,
                });
            }
        }
    }
    unreachable!("minimal realization of positive size has a nonzero coefficient")
}
