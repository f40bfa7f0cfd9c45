//! Entanglement-assisted conversion, where a correlated ancilla is returned
//! as a product of its marginals. Feasibility is governed by the coherence
//! rank and the relative entropy of coherence.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorize::majorized_by;
use crate::renyi::shannon_entropy;
use crate::statevec::ProbVector;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntAssistVerdict {
    pub feasible: bool,
    pub rank_ok: bool,
    pub entropy_ok: bool,
    /// `S(p) − S(q)` in nats.
    pub entropy_gap: f64,
}

/// Coherence rank: the number of nonzero entries.
pub fn c_s(p: &ProbVector) -> usize {
    p.rank()
}

/// Relative entropy of coherence of a pure state: the Shannon entropy of its
/// diagonal, in nats.
pub fn c_r(p: &ProbVector) -> f64 {
    shannon_entropy(p)
}

/// Rank must not grow and `C_r` must drop by more than the tolerance.
pub fn ent_assisted_feasible(p: &ProbVector, q: &ProbVector) -> EntAssistVerdict {
    let entropy_gap = c_r(p) - c_r(q);
    let rank_ok = c_s(q) <= c_s(p);
    let entropy_ok = entropy_gap > tol::cmp();
    EntAssistVerdict { feasible: rank_ok && entropy_ok, rank_ok, entropy_ok, entropy_gap }
}

/// Perturbed-source variant: `C_r(q) ≤ C_r(p)` within tolerance, no rank gate.
pub fn ent_assisted_closure(p: &ProbVector, q: &ProbVector) -> bool {
    c_r(q) <= c_r(p) + tol::cmp()
}

/// Two-party distribution on a `rows × cols` grid, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, probs: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || probs.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} grid", probs.len())));
        }
        if let Some((idx, &value)) = probs.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidWeight { idx, value });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol::TOL_SUM {
            return Err(Error::NotCanonical(format!("joint sums to {total}")));
        }
        Ok(JointDistribution { rows, cols, probs })
    }

    /// `m₁ ⊗ m₂` laid out on the grid.
    pub fn product(m1: &[f64], m2: &[f64]) -> Result<Self> {
        let probs = m1.iter().flat_map(|&a| m2.iter().map(move |&b| a * b)).collect();
        Self::new(m1.len(), m2.len(), probs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.cols + j]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        self.probs.chunks(self.cols).map(|r| r.iter().sum()).collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }

    /// The joint as a sorted probability vector.
    pub fn flattened(&self) -> ProbVector {
        ProbVector::from_weights(&self.probs).expect("validated joint")
    }

    /// `I = S(m₁) + S(m₂) − S(joint)`, clamped at 0 against rounding.
    pub fn mutual_information(&self) -> f64 {
        let h = |v: &[f64]| -> f64 { -v.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>() };
        (h(&self.row_marginal()) + h(&self.col_marginal()) - h(&self.probs)).max(0.0)
    }
}

fn multiset_deviation(computed: &[f64], given: &ProbVector) -> f64 {
    let c = ProbVector::from_weights(computed).expect("marginal of a valid joint");
    let d = c.dim().max(given.dim());
    (0..d)
        .map(|i| {
            let a = c.entries().get(i).copied().unwrap_or(0.0);
            let b = given.entries().get(i).copied().unwrap_or(0.0);
            (a - b).abs()
        })
        .fold(0.0, f64::max)
}

/// Coherence the ancilla gains by being returned uncorrelated: the mutual
/// information of the joint diagonal.
///
/// The supplied marginals are checked against the joint as multisets, since
/// a [`ProbVector`] forgets the order of its entries.
pub fn coherence_gain_bound(joint: &JointDistribution, m1: &ProbVector, m2: &ProbVector) -> Result<f64> {
    let dev = multiset_deviation(&joint.row_marginal(), m1).max(multiset_deviation(&joint.col_marginal(), m2));
    if dev > tol::TOL_SUM {
        return Err(Error::MarginalMismatch(dev));
    }
    Ok(joint.mutual_information())
}

/// True when `p ⊗ r → q ⊗ r₁ ⊗ r₂` is a deterministic conversion.
pub fn is_correlated_witness(p: &ProbVector, q: &ProbVector, r: &JointDistribution) -> bool {
    let m1 = ProbVector::from_weights(&r.row_marginal()).expect("valid joint");
    let m2 = ProbVector::from_weights(&r.col_marginal()).expect("valid joint");
    majorized_by(&p.tensor(&r.flattened()), &q.tensor(&m1.tensor(&m2)))
}

// Non-negative compositions of `total` into `parts`, lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(rem);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=rem {
            prefix.push(first);
            rec(rem - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Best-effort witness search over `k × k` joints on a lattice of step
/// `1/resolution`.
///
/// Only tiny instances are practical (`k ≤ 3`, coarse lattices). Absence of
/// a witness says nothing about feasibility. The lexicographically first
/// witness is returned.
pub fn search_correlated_ancilla(
    p: &ProbVector,
    q: &ProbVector,
    k: usize,
    resolution: usize,
) -> Result<Option<JointDistribution>> {
    if !(2..=3).contains(&k) || resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid side must be 2 or 3 and resolution at least 2 (got {k}, {resolution})"
        )));
    }
    let r = resolution as f64;
    Ok(compositions(resolution, k * k)
        .into_par_iter()
        .map(|c| {
            let probs: Vec<f64> = c.iter().map(|&x| x as f64 / r).collect();
            let total: f64 = probs.iter().sum();
            JointDistribution::new(k, k, probs.iter().map(|x| x / total).collect()).expect("lattice point")
        })
        .find_first(|j| is_correlated_witness(p, q, j)))
}
