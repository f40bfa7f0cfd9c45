//! Diagonal parts of pure states.
//!
//! A pure state `Σ √ψᵢ |i⟩` enters every decision only through its diagonal
//! `(ψ₀, …, ψ_{d-1})`. Phases are irrelevant and so is basis order, so the
//! canonical form is the normalized weight vector sorted non-increasing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tol::{TOL_SUM, ZERO_CLAMP};
use crate::{Error, Result};

/// Raw, uncanonicalized input: squared amplitude moduli in basis order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl StateSpec {
    pub fn new(weights: Vec<f64>) -> Self {
        Self { weights, labels: None }
    }

    /// Parses `{"weights": [..], "labels": [..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: StateSpec = serde_json::from_str(text)?;
        if let Some(labels) = &spec.labels {
            if labels.len() != spec.weights.len() {
                return Err(Error::Parse(format!("{} labels for {} weights", labels.len(), spec.weights.len())));
            }
        }
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::Empty);
        }
        for (idx, &value) in self.weights.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidWeight { idx, value });
            }
        }
        if self.weights.iter().all(|&w| w == 0.0) {
            return Err(Error::AllZero);
        }
        Ok(())
    }
}

/// Comma-separated list of weights, e.g. `0.4,0.4,0.2`.
impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(weights))
    }
}

/// Normalized probability vector sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbVector {
    entries: Vec<f64>,
}

impl ProbVector {
    /// Divides by the sum, sorts non-increasing (stable) and clamps dust to zero.
    pub fn canonicalize(spec: &StateSpec) -> Result<Self> {
        spec.validate()?;
        let total: f64 = spec.weights.iter().sum();
        let entries = spec.weights.iter().map(|w| w / total).collect();
        Ok(Self::from_unsorted(entries))
    }

    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        Self::canonicalize(&StateSpec::new(weights.to_vec()))
    }

    /// The maximally coherent diagonal `(1/d, …, 1/d)`.
    pub fn uniform(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { entries: vec![1.0 / dim as f64; dim] }
    }

    /// The one-dimensional vector `(1)`: the trivial catalyst.
    pub fn trivial() -> Self {
        Self { entries: vec![1.0] }
    }

    /// Accepts a vector that is already canonical up to `TOL_SUM`.
    pub fn from_canonical(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        for (idx, &value) in entries.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidWeight { idx, value });
            }
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotCanonical("entries not sorted non-increasing".into()));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > TOL_SUM {
            return Err(Error::NotCanonical(format!("entries sum to {total}")));
        }
        Ok(Self { entries })
    }

    // Entries must be finite, non-negative and already normalized.
    pub(crate) fn from_unsorted(mut entries: Vec<f64>) -> Self {
        entries.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
        for e in &mut entries {
            if *e < ZERO_CLAMP {
                *e = 0.0;
            }
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn max(&self) -> f64 {
        self.entries[0]
    }

    pub fn min(&self) -> f64 {
        self.entries[self.entries.len() - 1]
    }

    /// Number of nonzero entries.
    pub fn rank(&self) -> usize {
        self.entries.iter().filter(|&&e| e > 0.0).count()
    }

    pub fn has_full_support(&self) -> bool {
        self.min() > 0.0
    }

    /// Running sums `p₀, p₀+p₁, …` (the Lorenz curve ordinates).
    pub fn prefix_sums(&self) -> Vec<f64> {
        self.entries
            .iter()
            .scan(0.0, |acc, &e| {
                *acc += e;
                Some(*acc)
            })
            .collect()
    }

    /// All pairwise products, re-sorted.
    pub fn tensor(&self, other: &ProbVector) -> ProbVector {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.entries {
            for &b in &other.entries {
                entries.push(a * b);
            }
        }
        Self::from_unsorted(entries)
    }

    /// `n`-fold tensor power; `n = 0` gives the trivial vector.
    pub fn tensor_power(&self, n: usize) -> ProbVector {
        (0..n).fold(Self::trivial(), |acc, _| acc.tensor(self))
    }

    /// `(1-eps)·p + eps·uniform`, which has full support.
    pub fn perturb(&self, eps: f64) -> Result<ProbVector> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::EpsOutOfRange(eps));
        }
        let floor = eps / self.dim() as f64;
        let entries = self.entries.iter().map(|&p| (1.0 - eps) * p + floor).collect();
        Ok(Self::from_unsorted(entries))
    }

    /// Appends zeros up to dimension `d`.
    pub fn pad(&self, d: usize) -> Result<ProbVector> {
        if d < self.dim() {
            return Err(Error::DimTooSmall { dim: self.dim(), requested: d });
        }
        let mut entries = self.entries.clone();
        entries.resize(d, 0.0);
        Ok(Self { entries })
    }

    /// Splits the last entry `x` into `x - eps` and `eps`.
    pub fn split_last(&self, eps: f64) -> Result<ProbVector> {
        if eps == 0.0 {
            return Ok(self.clone());
        }
        let last = self.min();
        if !(eps > 0.0 && eps < last) {
            return Err(Error::EpsTooLarge { eps, last });
        }
        let mut entries = self.entries.clone();
        let n = entries.len();
        entries[n - 1] = last - eps;
        entries.push(eps);
        Ok(Self::from_unsorted(entries))
    }
}

/// Pads both vectors to their common dimension.
pub fn pad_common(p: &ProbVector, q: &ProbVector) -> (ProbVector, ProbVector) {
    let d = p.dim().max(q.dim());
    (p.pad(d).expect("d >= dim(p)"), q.pad(d).expect("d >= dim(q)"))
}

impl TryFrom<Vec<f64>> for ProbVector {
    type Error = Error;

    fn try_from(entries: Vec<f64>) -> Result<Self> {
        Self::from_canonical(entries)
    }
}

impl From<ProbVector> for Vec<f64> {
    fn from(p: ProbVector) -> Self {
        p.entries
    }
}

impl fmt::Display for ProbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match f.precision() {
                Some(prec) => write!(f, "{e:.prec$}")?,
                None => write!(f, "{e}")?,
            }
        }
        write!(f, ")")
    }
}
