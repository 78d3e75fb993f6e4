//! Gradings of Lie algebras by free abelian groups `Z^r`.
//!
//! A grading assigns a degree to every basis vector; the fibers are the spans
//! of basis vectors of equal degree.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::verdict::{Identity, Verdict};

/// Largest support size for which [`class_bound`] is evaluated.
pub const MAX_BOUND_SUPPORT: usize = 20;

pub type Degree = Vec<i64>;
pub type Support = BTreeSet<Degree>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("{found} degrees given for a {dim}-dimensional algebra")]
    DegreeCount { dim: usize, found: usize },
    #[error("degree of e{} has rank {found}, expected {expected}", .index + 1)]
    Rank {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("support contains 0, so it is not arithmetically free")]
    NotArithmeticallyFree,
    #[error("support of size {0} is too large for an explicit class bound")]
    BoundTooLarge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    algebra: LieAlgebra,
    degrees: Vec<Degree>,
    rank: usize,
}

impl Grading {
    /// One degree per basis vector, all of the same rank.
    pub fn new(algebra: LieAlgebra, degrees: Vec<Degree>) -> Result<Self, GradingError> {
        if degrees.len() != algebra.dim() {
            return Err(GradingError::DegreeCount {
                dim: algebra.dim(),
                found: degrees.len(),
            });
        }
        let rank = degrees.first().map_or(0, Vec::len);
        if let Some((index, d)) = degrees.iter().enumerate().find(|(_, d)| d.len() != rank) {
            return Err(GradingError::Rank {
                index,
                expected: rank,
                found: d.len(),
            });
        }
        Ok(Self { algebra, degrees, rank })
    }

    /// Standard `Z^{m+1}`-grading of `heis_{2m+1}`: `deg e_i = ε_i`,
    /// `deg e_{m+i} = ε_{m+1} − ε_i`, `deg e_{2m+1} = ε_{m+1}`.
    pub fn heisenberg_standard(algebra: LieAlgebra, m: usize) -> Result<Self, GradingError> {
        let rank = m + 1;
        let mut degrees = Vec::with_capacity(2 * m + 1);
        for i in 0..m {
            let mut d = vec![0; rank];
            d[i] = 1;
            degrees.push(d);
        }
        for i in 0..m {
            let mut d = vec![0; rank];
            d[i] = -1;
            d[m] = 1;
            degrees.push(d);
        }
        let mut z = vec![0; rank];
        z[m] = 1;
        degrees.push(z);
        Self::new(algebra, degrees)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self, i: usize) -> &[i64] {
        &self.degrees[i]
    }
}

fn add(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Checks `[e_i, e_j] ∈ n_{deg i + deg j}` for all basis pairs.
///
/// The witness for `(i, j)` compares the bracket with its projection onto
/// the fiber of `deg i + deg j`.
pub fn grading_check(gr: &Grading) -> Verdict {
    let alg = &gr.algebra;
    let n = alg.dim();
    let mut verdict = Verdict::ok();
    for i in 0..n {
        for j in (i + 1)..n {
            let target = add(gr.degree(i), gr.degree(j));
            let bracket = alg.bracket_basis(i, j).to_vec();
            let projected: Vec<_> = bracket
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if gr.degree(k) == target.as_slice() {
                        c.clone()
                    } else {
                        alg.field().zero()
                    }
                })
                .collect();
            verdict.compare(Identity::GradingCompatible, &[i, j], bracket, projected);
        }
    }
    verdict
}

pub fn support(gr: &Grading) -> Support {
    gr.degrees.iter().cloned().collect()
}

/// `0 ∉ X`, which for finite subsets of a torsion-free group is equivalent
/// to arithmetic freeness.
pub fn is_arithmetically_free(x: &Support) -> bool {
    let agree = is_arithmetically_free_literal(x);
    let shortcut = x.iter().all(|d| d.iter().any(|&c| c != 0));
    debug_assert_eq!(agree, shortcut, "arithmetic freeness shortcut disagrees on {x:?}");
    shortcut
}

/// Scans the definition: `X` fails to be free iff some `y ∈ X` and `x ∈ X`
/// have `x + k·y ∈ X` for every `k ≥ 0`.
///
/// A progression that stays inside `X` for `|X| + 1` consecutive steps
/// repeats a point, and from then on it is periodic, so checking
/// `k = 0..=|X|` decides the infinite condition.
pub fn is_arithmetically_free_literal(x: &Support) -> bool {
    let bound = x.len() as i64;
    for y in x {
        for start in x {
            let stays = (0..=bound).all(|k| {
                let p: Degree = start.iter().zip(y).map(|(s, t)| s + k * t).collect();
                x.contains(&p)
            });
            if stays {
                return false;
            }
        }
    }
    true
}

/// `|X|^(2^|X|)`, a bound on the nilpotency class of any algebra graded with
/// arithmetically free support `X`.
pub fn class_bound(x: &Support) -> Result<BigUint, GradingError> {
    if !is_arithmetically_free(x) {
        return Err(GradingError::NotArithmeticallyFree);
    }
    let s = x.len();
    if s > MAX_BOUND_SUPPORT {
        return Err(GradingError::BoundTooLarge(s));
    }
    Ok(BigUint::from(s).pow(1u32 << s))
}

pub fn within_bound(class: usize, bound: &BigUint) -> bool {
    BigUint::from(class) <= *bound
}
