//! Finding catalysts: the closed-form qubit interval for 4-level states, a
//! brute-force simplex search, and self-catalysis by copies of the source.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorize::{compare, majorized_by, ComparisonTag};
use crate::statevec::ProbVector;
use crate::tol;

/// Tensor-entry cap for [`self_catalysis_order`].
pub const DEFAULT_TENSOR_CAP: usize = 1_000_000;

/// Range of `a` for which the qubit `(a, 1−a)` catalyzes a 4-level pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalystInterval {
    /// NaN when a gate condition fails.
    #[serde(with = "crate::ext::serde_f64")]
    pub lower: f64,
    #[serde(with = "crate::ext::serde_f64")]
    pub upper: f64,
    pub nonempty: bool,
    /// Which gate condition failed, if any.
    pub gate_failure: Option<String>,
    /// Bound terms omitted because their denominator vanished.
    pub dropped_terms: Vec<String>,
    /// Tensor majorization holds at both endpoints and the midpoint.
    pub validated: bool,
}

impl CatalystInterval {
    fn empty(reason: impl Into<String>) -> Self {
        CatalystInterval {
            lower: f64::NAN,
            upper: f64::NAN,
            nonempty: false,
            gate_failure: Some(reason.into()),
            dropped_terms: Vec::new(),
            validated: false,
        }
    }

    pub fn contains(&self, a: f64) -> bool {
        self.nonempty && a >= self.lower - tol::cmp() && a <= self.upper + tol::cmp()
    }
}

fn qubit(a: f64) -> ProbVector {
    ProbVector::from_canonical(vec![a, 1.0 - a]).expect("a in [0.5, 1]")
}

/// True when `(a, 1−a)` catalyzes `p → q`.
pub fn is_qubit_catalyst(p: &ProbVector, q: &ProbVector, a: f64) -> bool {
    let c = ProbVector::from_weights(&[a, 1.0 - a]).expect("a in [0, 1]");
    majorized_by(&p.tensor(&c), &q.tensor(&c))
}

/// Closed-form interval of qubit catalysts for states of dimension 4.
///
/// Requires `p₁ ≤ q₁`, `p₁+p₂ > q₁+q₂` and `p₁+p₂+p₃ ≤ q₁+q₂+q₃`; otherwise
/// the interval is empty and `gate_failure` names the failing condition.
pub fn qubit_interval_d4(p: &ProbVector, q: &ProbVector) -> Result<CatalystInterval> {
    if p.dim() > 4 || q.dim() > 4 {
        return Err(Error::DimensionMismatch(format!(
            "qubit interval needs dimension 4, got {} and {}",
            p.dim(),
            q.dim()
        )));
    }
    let p4 = p.pad(4)?;
    let q4 = q.pad(4)?;
    let (p, q) = (p4.entries(), q4.entries());
    let t = tol::cmp();

    if p[0] > q[0] + t {
        return Ok(CatalystInterval::empty("p1 > q1"));
    }
    if p[0] + p[1] <= q[0] + q[1] + t {
        return Ok(CatalystInterval::empty("p1 + p2 <= q1 + q2"));
    }
    if p[0] + p[1] + p[2] > q[0] + q[1] + q[2] + t {
        return Ok(CatalystInterval::empty("p1 + p2 + p3 > q1 + q2 + q3"));
    }

    let mut dropped = Vec::new();
    let mut term = |name: &str, num: f64, den: f64| -> Option<f64> {
        if den.abs() <= t {
            dropped.push(name.to_string());
            None
        } else {
            Some(num / den)
        }
    };
    let lows = [
        term("(p1+p2-q1)/(q2+q3)", p[0] + p[1] - q[0], q[1] + q[2]),
        term("1-(p4-q4)/(q3-p3)", p[3] - q[3], q[2] - p[2]).map(|x| 1.0 - x),
    ];
    let highs = [
        term("q1/(p1+p2)", q[0], p[0] + p[1]),
        term("(q1-p1)/(p2-q2)", q[0] - p[0], p[1] - q[1]),
        term("1-q4/(p3+p4)", q[3], p[2] + p[3]).map(|x| 1.0 - x),
    ];
    let lower = lows.iter().flatten().copied().fold(0.5, f64::max);
    let upper = highs.iter().flatten().copied().fold(1.0, f64::min);
    let nonempty = lower <= upper + t;

    let (p, q) = (&p4, &q4);
    let validated = nonempty
        && [lower, upper, 0.5 * (lower + upper)]
            .iter()
            .all(|&a| majorized_by(&p.tensor(&qubit(a)), &q.tensor(&qubit(a))));

    Ok(CatalystInterval { lower, upper, nonempty, gate_failure: None, dropped_terms: dropped, validated })
}

// Non-increasing positive integer compositions of `total` into `parts`
// parts, in ascending lexicographic order.
fn descending_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, parts: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if rem >= 1 && rem <= cap {
                prefix.push(rem);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let lo = rem.div_ceil(parts);
        let hi = cap.min(rem.saturating_sub(parts - 1));
        for first in lo..=hi {
            prefix.push(first);
            rec(rem - first, parts - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts {
        rec(total, parts, total, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Brute-force catalyst search on the simplex lattice of step `1/resolution`.
///
/// Dimensions are tried in increasing order and, within one, candidates in
/// ascending lexicographic order; the first success is returned no matter
/// how the parallel search is scheduled. If `p ≺ q` already, the trivial
/// catalyst `(1)` is returned.
pub fn grid_search_catalyst(
    p: &ProbVector,
    q: &ProbVector,
    max_dim: usize,
    resolution: usize,
) -> Result<Option<ProbVector>> {
    if max_dim < 2 || resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "max_dim and resolution must be at least 2 (got {max_dim}, {resolution})"
        )));
    }
    if majorized_by(p, q) {
        return Ok(Some(ProbVector::trivial()));
    }
    for k in 2..=max_dim {
        let hit = descending_compositions(resolution, k)
            .into_par_iter()
            .map(|c| {
                let w: Vec<f64> = c.iter().map(|&x| x as f64).collect();
                ProbVector::from_weights(&w).expect("positive lattice point")
            })
            .find_first(|c| majorized_by(&p.tensor(c), &q.tensor(c)));
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCatalysisResult {
    /// Smallest `N` with `p^{⊗(N+1)} ≺ q ⊗ p^{⊗N}`.
    pub order: Option<usize>,
    pub searched_up_to: usize,
}

/// [`self_catalysis_order_capped`] with [`DEFAULT_TENSOR_CAP`].
pub fn self_catalysis_order(p: &ProbVector, q: &ProbVector, n_max: usize) -> Result<SelfCatalysisResult> {
    self_catalysis_order_capped(p, q, n_max, DEFAULT_TENSOR_CAP)
}

/// Searches `N = 1 … n_max` for `p ⊗ p^{⊗N} ≺ q ⊗ p^{⊗N}`.
///
/// The pair must be incomparable. Refuses up front when `d^(n_max+1)`
/// exceeds `cap` entries.
pub fn self_catalysis_order_capped(
    p: &ProbVector,
    q: &ProbVector,
    n_max: usize,
    cap: usize,
) -> Result<SelfCatalysisResult> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let tag = compare(p, q).tag;
    if tag != ComparisonTag::Incomparable {
        return Err(Error::NotIncomparable(tag));
    }
    let d = p.dim().max(q.dim()) as u128;
    let entries = (0..=n_max).try_fold(1u128, |acc, _| acc.checked_mul(d)).unwrap_or(u128::MAX);
    if entries > cap as u128 {
        return Err(Error::DimensionBlowup { entries, cap });
    }
    let mut power = p.clone();
    for n in 1..=n_max {
        if majorized_by(&p.tensor(&power), &q.tensor(&power)) {
            return Ok(SelfCatalysisResult { order: Some(n), searched_up_to: n_max });
        }
        power = power.tensor(p);
    }
    Ok(SelfCatalysisResult { order: None, searched_up_to: n_max })
}

/// Splits the last entry of `p` and of `q` (by `eps_p`, `eps_q`; 0 means no
/// split) and reports whether `c` still catalyzes the split pair.
///
/// `c` must catalyze `p → q` to begin with.
pub fn extend_catalyst_split(
    p: &ProbVector,
    q: &ProbVector,
    c: &ProbVector,
    eps_p: f64,
    eps_q: f64,
) -> Result<(ProbVector, ProbVector, bool)> {
    if !majorized_by(&p.tensor(c), &q.tensor(c)) {
        return Err(Error::NotACatalyst);
    }
    let ps = p.split_last(eps_p)?;
    let qs = q.split_last(eps_q)?;
    let still = majorized_by(&ps.tensor(c), &qs.tensor(c));
    Ok((ps, qs, still))
}
