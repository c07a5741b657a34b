//! Tangent weights at the isolated fixed points of the big torus and the
//! dimension of the attracting fibres for the subtorus `t ↦ (t, t^α)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::partitions::{DiagramTuple, PlanePartition};

/// One weight `e_target · e_source^{-1} · t₁^{k1} · t₂^{k2}`.
/// Framing indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightTerm {
    pub source: usize,
    pub target: usize,
    pub k1: i64,
    pub k2: i64,
}

impl WeightTerm {
    /// Pairing with the cocharacter `(1, α)`; framing directions pair to zero.
    pub fn pairing(&self, alpha: i64) -> i64 {
        self.k1 + alpha * self.k2
    }
}

/// Multiset of tangent weights, kept in generation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCharacter {
    pub rank: usize,
    pub terms: Vec<WeightTerm>,
}

impl TangentCharacter {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted, for multiset comparison.
    pub fn sorted(&self) -> Vec<WeightTerm> {
        let mut t = self.terms.clone();
        t.sort();
        t
    }

    fn count(&self, alpha: i64, ord: Ordering) -> usize {
        self.terms
            .iter()
            .filter(|w| w.pairing(alpha).cmp(&0) == ord)
            .count()
    }

    pub fn positive(&self, alpha: i64) -> usize {
        self.count(alpha, Ordering::Greater)
    }

    pub fn negative(&self, alpha: i64) -> usize {
        self.count(alpha, Ordering::Less)
    }

    /// Terms pairing to zero with `(1, α)`.
    pub fn neutral(&self, alpha: i64) -> usize {
        self.count(alpha, Ordering::Equal)
    }
}

/// `T_p = Σ_{i,j} e_j e_i^{-1} ( Σ_{s∈D_i} t₁^{−l_{D_j}(s)} t₂^{a_{D_i}(s)+1} + Σ_{s∈D_j} t₁^{l_{D_i}(s)+1} t₂^{−a_{D_j}(s)} )`.
pub fn tangent_character(tuple: &DiagramTuple) -> TangentCharacter {
    let ds = tuple.diagrams();
    let mut terms = Vec::new();
    for (i, di) in ds.iter().enumerate() {
        for (j, dj) in ds.iter().enumerate() {
            let (source, target) = (i + 1, j + 1);
            for (a, b) in di.boxes() {
                terms.push(WeightTerm {
                    source,
                    target,
                    k1: -dj.leg(a, b),
                    k2: di.arm(a, b) + 1,
                });
            }
            for (a, b) in dj.boxes() {
                terms.push(WeightTerm {
                    source,
                    target,
                    k1: di.leg(a, b) + 1,
                    k2: -dj.arm(a, b),
                });
            }
        }
    }
    TangentCharacter {
        rank: ds.len(),
        terms,
    }
}

/// `d⁺ = r·n + χ(π)` with `n = |π|`.
pub fn d_plus_formula(pi: &PlanePartition, r: u32) -> Result<u64> {
    if pi.corner() > r {
        return Err(Error::CornerExceedsRank {
            corner: pi.corner(),
            rank: r,
        });
    }
    Ok(r as u64 * pi.weight() + pi.chi())
}

/// Number of tangent weights on which `(1, α)` is strictly positive.
pub fn d_plus_from_character(tuple: &DiagramTuple, alpha: i64) -> usize {
    tangent_character(tuple).positive(alpha)
}

/// The `α` used when "large enough": `n + 2` exceeds every `|k1|`.
pub fn default_alpha(n: u64) -> i64 {
    n as i64 + 2
}
