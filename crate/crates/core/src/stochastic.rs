//! Stochastic conversion: the tail-sum monotones `C_l`, the optimal success
//! probability `min_l C_l(p) / C_l(q)`, and when a catalyst can raise it.

use serde::{Deserialize, Serialize};

use crate::majorize::majorized_by;
use crate::statevec::{pad_common, ProbVector};
use crate::tol;

/// Tail sums `C_l = Σ_{i ≥ l} p_i` for `l = 0 … d-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneProfile {
    pub values: Vec<f64>,
}

pub fn monotone_profile(p: &ProbVector) -> MonotoneProfile {
    let mut values = vec![0.0; p.dim()];
    let mut acc = 0.0;
    for (i, &e) in p.entries().iter().enumerate().rev() {
        acc += e;
        values[i] = acc;
    }
    MonotoneProfile { values }
}

/// Optimal probability of converting `p` into `q` by incoherent operations.
///
/// Tail indices where `C_l(q) = 0` impose nothing and are skipped. Returns
/// exactly 1 whenever `p ≺ q`.
pub fn optimal_probability(p: &ProbVector, q: &ProbVector) -> f64 {
    if majorized_by(p, q) {
        return 1.0;
    }
    let (p, q) = pad_common(p, q);
    let cp = monotone_profile(&p).values;
    let cq = monotone_profile(&q).values;
    let ratio = cp.iter().zip(&cq).filter(|(_, &b)| b > 0.0).map(|(&a, &b)| a / b).fold(f64::INFINITY, f64::min);
    ratio.clamp(0.0, 1.0)
}

/// `P(p ⊗ c → q ⊗ c)`.
pub fn catalytic_probability(p: &ProbVector, q: &ProbVector, c: &ProbVector) -> f64 {
    let (p, q) = pad_common(p, q);
    optimal_probability(&p.tensor(c), &q.tensor(c))
}

// Drops trailing indices where both vectors vanish.
fn common_support(p: &ProbVector, q: &ProbVector) -> (Vec<f64>, Vec<f64>) {
    let (p, q) = pad_common(p, q);
    let keep = (0..p.dim()).rev().find(|&i| p.entries()[i] > 0.0 || q.entries()[i] > 0.0).map_or(0, |i| i + 1);
    (p.entries()[..keep].to_vec(), q.entries()[..keep].to_vec())
}

/// `min(p_min / q_min, 1)`: no catalyst can push the conversion probability
/// above this. A vanishing `q_min` makes the ratio unbounded.
pub fn probability_ceiling(p: &ProbVector, q: &ProbVector) -> f64 {
    let (p, q) = common_support(p, q);
    let (pm, qm) = (p[p.len() - 1], q[q.len() - 1]);
    if qm == 0.0 {
        1.0
    } else {
        (pm / qm).min(1.0)
    }
}

/// Whether some catalyst raises the conversion probability above
/// [`optimal_probability`]: exactly when that probability sits strictly below
/// [`probability_ceiling`].
pub fn enhancement_possible(p: &ProbVector, q: &ProbVector) -> bool {
    optimal_probability(p, q) < probability_ceiling(p, q) - tol::cmp()
}
