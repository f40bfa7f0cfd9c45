//! Majorization: the deterministic convertibility test.
//!
//! `p ≺ q` when every prefix sum of `p` is at most the matching prefix sum of
//! `q` (both sorted non-increasing). A pure state converts to another under
//! incoherent operations exactly when its diagonal is majorized by the
//! target's. Vectors of unequal dimension are compared after zero-padding.

use serde::{Deserialize, Serialize};

use crate::statevec::ProbVector;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComparisonTag {
    Equal,
    /// `p ≺ q`, `p ≠ q`: `p → q` is deterministically possible.
    FirstMajorized,
    /// `q ≺ p`, `q ≠ p`.
    SecondMajorized,
    Incomparable,
}

/// Result of [`compare`].
///
/// `forward_witness` is the first prefix index where `p ≺ q` fails and
/// `backward_witness` the first where `q ≺ p` fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonOutcome {
    pub tag: ComparisonTag,
    pub forward_witness: Option<usize>,
    pub backward_witness: Option<usize>,
}

impl ComparisonOutcome {
    /// True when `p → q` is deterministically possible.
    pub fn convertible(&self) -> bool {
        matches!(self.tag, ComparisonTag::Equal | ComparisonTag::FirstMajorized)
    }
}

fn padded(v: &ProbVector, i: usize) -> f64 {
    v.entries().get(i).copied().unwrap_or(0.0)
}

// First prefix index l with sum(p[..=l]) > sum(q[..=l]) + tol.
fn first_violation(p: &ProbVector, q: &ProbVector, tol: f64) -> Option<usize> {
    let d = p.dim().max(q.dim());
    let (mut sp, mut sq) = (0.0, 0.0);
    for i in 0..d {
        sp += padded(p, i);
        sq += padded(q, i);
        if sp - sq > tol {
            return Some(i);
        }
    }
    None
}

/// `p ≺ q` within the comparison tolerance.
pub fn majorized_by(p: &ProbVector, q: &ProbVector) -> bool {
    first_violation(p, q, tol::cmp()).is_none()
}

/// Multiset equality of the two diagonals: the states differ by a
/// permutation and diagonal unitary, so each converts to the other.
pub fn interconvertible(p: &ProbVector, q: &ProbVector) -> bool {
    let tol = tol::cmp();
    let d = p.dim().max(q.dim());
    (0..d).all(|i| (padded(p, i) - padded(q, i)).abs() <= tol)
}

pub fn compare(p: &ProbVector, q: &ProbVector) -> ComparisonOutcome {
    if interconvertible(p, q) {
        return ComparisonOutcome { tag: ComparisonTag::Equal, forward_witness: None, backward_witness: None };
    }
    let tol = tol::cmp();
    let forward_witness = first_violation(p, q, tol);
    let backward_witness = first_violation(q, p, tol);
    let tag = match (forward_witness, backward_witness) {
        (None, _) => ComparisonTag::FirstMajorized,
        (Some(_), None) => ComparisonTag::SecondMajorized,
        (Some(_), Some(_)) => ComparisonTag::Incomparable,
    };
    ComparisonOutcome { tag, forward_witness, backward_witness }
}
