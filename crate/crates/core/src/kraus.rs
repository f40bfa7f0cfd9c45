//! Incoherent channels as explicit Kraus sets.
//!
//! A set `{Kₙ}` is an incoherent operation when `Σ Kₙ†Kₙ = I` and every
//! operator has at most one nonzero entry per column, so diagonal states stay
//! diagonal.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorize::majorized_by;
use crate::statevec::{pad_common, ProbVector};
use crate::tol::{TOL_CHAN, TOL_SUM};

pub type CMatrix = DMatrix<Complex64>;

/// Overlap above which two normalized states count as collinear.
pub const COLLINEAR: f64 = 1.0 - 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct StateRepr(Vec<[f64; 2]>);

impl TryFrom<StateRepr> for PureState {
    type Error = Error;
    fn try_from(r: StateRepr) -> Result<Self> {
        PureState::new(r.0.into_iter().map(|[a, b]| Complex64::new(a, b)).collect())
    }
}

impl From<PureState> for StateRepr {
    fn from(s: PureState) -> Self {
        StateRepr(s.amplitudes.iter().map(|z| [z.re, z.im]).collect())
    }
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Empty);
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > TOL_SUM {
            return Err(Error::NotCanonical(format!("squared amplitudes sum to {norm}")));
        }
        Ok(PureState { amplitudes })
    }

    /// `Σ √pᵢ |i⟩` with real amplitudes.
    pub fn from_probs(p: &ProbVector) -> Self {
        PureState { amplitudes: p.entries().iter().map(|&x| re(x.sqrt())).collect() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[i] = ONE;
        PureState { amplitudes }
    }

    pub fn uniform(dim: usize) -> Self {
        PureState::from_probs(&ProbVector::uniform(dim))
    }

    fn normalized(v: Vec<Complex64>) -> Self {
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        PureState { amplitudes: v.into_iter().map(|z| z / n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Squared moduli in basis order (not sorted).
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm()
    }

    fn column(&self) -> CMatrix {
        CMatrix::from_column_slice(self.dim(), 1, &self.amplitudes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KrausRepr", into = "KrausRepr")]
pub struct KrausSet {
    in_dim: usize,
    out_dim: usize,
    operators: Vec<CMatrix>,
}

#[derive(Serialize, Deserialize)]
struct KrausRepr {
    in_dim: usize,
    out_dim: usize,
    operators: Vec<Vec<Vec<[f64; 2]>>>,
}

impl TryFrom<KrausRepr> for KrausSet {
    type Error = Error;
    fn try_from(r: KrausRepr) -> Result<Self> {
        let mut ops = Vec::with_capacity(r.operators.len());
        for (n, rows) in r.operators.into_iter().enumerate() {
            if rows.len() != r.out_dim || rows.iter().any(|row| row.len() != r.in_dim) {
                return Err(Error::DimensionMismatch(format!("operator {n} is not {}x{}", r.out_dim, r.in_dim)));
            }
            let flat = rows.into_iter().flatten().map(|[a, b]| Complex64::new(a, b));
            ops.push(CMatrix::from_row_iterator(r.out_dim, r.in_dim, flat));
        }
        KrausSet::new(r.in_dim, r.out_dim, ops)
    }
}

impl From<KrausSet> for KrausRepr {
    fn from(k: KrausSet) -> Self {
        let operators = k
            .operators
            .iter()
            .map(|m| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect())
            .collect();
        KrausRepr { in_dim: k.in_dim, out_dim: k.out_dim, operators }
    }
}

/// Result of [`KrausSet::verify`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    /// Largest entry of `|Σ K†K − I|`.
    pub completeness_defect: f64,
    /// `(operator, column)` pairs with more than one nonzero entry.
    pub incoherence_violations: Vec<(usize, usize)>,
}

/// One outcome of [`KrausSet::apply`]. `state` is absent for branches that
/// occur with (numerically) zero probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub probability: f64,
    pub state: Option<PureState>,
}

impl KrausSet {
    pub fn new(in_dim: usize, out_dim: usize, operators: Vec<CMatrix>) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 || operators.is_empty() {
            return Err(Error::DimensionMismatch("empty channel".into()));
        }
        if let Some(n) = operators.iter().position(|m| m.shape() != (out_dim, in_dim)) {
            return Err(Error::DimensionMismatch(format!(
                "operator {n} has shape {:?}, expected ({out_dim}, {in_dim})",
                operators[n].shape()
            )));
        }
        Ok(KrausSet { in_dim, out_dim, operators })
    }

    pub fn identity(dim: usize) -> Self {
        KrausSet { in_dim: dim, out_dim: dim, operators: vec![CMatrix::identity(dim, dim)] }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite entries serialize")
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn verify(&self) -> Verification {
        let mut sum = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.operators {
            sum += k.adjoint() * k;
        }
        let completeness_defect =
            (sum - CMatrix::identity(self.in_dim, self.in_dim)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut incoherence_violations = Vec::new();
        for (n, k) in self.operators.iter().enumerate() {
            for (c, col) in k.column_iter().enumerate() {
                if col.iter().filter(|z| z.norm() > TOL_CHAN).count() > 1 {
                    incoherence_violations.push((n, c));
                }
            }
        }
        Verification {
            valid: completeness_defect <= TOL_CHAN && incoherence_violations.is_empty(),
            completeness_defect,
            incoherence_violations,
        }
    }

    fn check(&self, input_dim: usize) -> Result<()> {
        if input_dim != self.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "state has dimension {input_dim}, channel expects {}",
                self.in_dim
            )));
        }
        if !self.verify().valid {
            return Err(Error::InvalidChannel);
        }
        Ok(())
    }

    /// Branch probabilities `‖Kₙψ‖²` with normalized post-measurement states.
    pub fn apply(&self, psi: &PureState) -> Result<Vec<Branch>> {
        self.check(psi.dim())?;
        let col = psi.column();
        Ok(self
            .operators
            .iter()
            .map(|k| {
                let out: Vec<Complex64> = (k * &col).iter().copied().collect();
                let probability: f64 = out.iter().map(|z| z.norm_sqr()).sum();
                let state = (probability > TOL_CHAN).then(|| PureState::normalized(out));
                Branch { probability, state }
            })
            .collect())
    }

    /// `Σ Kₙ ρ Kₙ†`.
    pub fn apply_to_density(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.shape() != (self.in_dim, self.in_dim) {
            return Err(Error::DimensionMismatch(format!("density has shape {:?}", rho.shape())));
        }
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.operators {
            out += k * rho * k.adjoint();
        }
        Ok(out)
    }

    /// `self` followed by `next`: all products `Bⱼ Aᵢ`, zero products dropped.
    pub fn then(&self, next: &KrausSet) -> Result<KrausSet> {
        if next.in_dim != self.out_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot feed dimension {} into {}",
                self.out_dim, next.in_dim
            )));
        }
        let ops: Vec<CMatrix> = next
            .operators
            .iter()
            .flat_map(|b| self.operators.iter().map(move |a| b * a))
            .filter(|m| m.iter().any(|z| *z != ZERO))
            .collect();
        if ops.is_empty() {
            return Err(Error::InvalidChannel);
        }
        KrausSet::new(self.in_dim, next.out_dim, ops)
    }
}

/// Diagonal density matrix with the entries of `p`.
pub fn diagonal_density(p: &ProbVector) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(p.dim(), p.entries().iter().map(|&x| re(x))))
}

/// The eight-operator qutrit channel that sends every input to `|0⟩`, with
/// outcomes that are not of upper-triangular form.
pub fn fixture_k8() -> KrausSet {
    let c = 1.0 / (2.0 * 2f64.sqrt());
    let mat = |rows: [[f64; 3]; 3]| CMatrix::from_fn(3, 3, |i, j| re(c * rows[i][j]));
    let k1 = mat([[1.0, 1.0, 1.0], [0.0; 3], [0.0; 3]]);
    let k3 = mat([[-1.0, 1.0, 1.0], [0.0; 3], [0.0; 3]]);
    let k5 = mat([[1.0, 0.0, 0.0], [0.0, 1.0, -1.0], [0.0; 3]]);
    let ops = vec![k1.clone(), k1, k3.clone(), k3, k5.clone(), k5.clone(), k5.clone(), k5];
    KrausSet::new(3, 3, ops).expect("3x3 operators")
}

// Two-level step that turns `y = t·x + (1−t)·P_{jk}x` back into `x`.
fn reverse_t_step(x: &[f64], y: &[f64], j: usize, k: usize, t: f64) -> KrausSet {
    let d = x.len();
    let perm = |i: usize| {
        if i == j {
            k
        } else if i == k {
            j
        } else {
            i
        }
    };
    let mut k1 = CMatrix::zeros(d, d);
    let mut k2 = CMatrix::zeros(d, d);
    for i in 0..d {
        if y[i] == 0.0 {
            k1[(i, i)] = ONE;
            continue;
        }
        k1[(i, i)] = re((t * x[i] / y[i]).sqrt());
        k2[(perm(i), i)] = re(((1.0 - t) * x[perm(i)] / y[i]).sqrt());
    }
    let ops = [k1, k2].into_iter().filter(|m| m.iter().any(|z| *z != ZERO)).collect();
    KrausSet::new(d, d, ops).expect("square operators")
}

// Below this two coordinates are treated as already matched.
const STEP_TOL: f64 = 1e-13;

/// Explicit incoherent channel mapping `state(p)` to `state(q)` with
/// certainty, built from a chain of two-level transfer steps.
///
/// Requires `p ≺ q`. Both states live in the common padded dimension.
pub fn realize_deterministic(p: &ProbVector, q: &ProbVector) -> Result<KrausSet> {
    if !majorized_by(p, q) {
        return Err(Error::NotMajorized);
    }
    let (p, q) = pad_common(p, q);
    let target = p.entries();
    let d = p.dim();

    // walk from q down to p with T-transforms, keeping each intermediate vector
    let mut chain: Vec<Vec<f64>> = vec![q.entries().to_vec()];
    let mut steps: Vec<(usize, usize, f64)> = Vec::new();
    loop {
        let x = chain.last().expect("nonempty");
        let Some(j) = (0..d).rev().find(|&i| x[i] > target[i] + STEP_TOL) else { break };
        let Some(k) = (j + 1..d).find(|&i| x[i] < target[i] - STEP_TOL) else { break };
        let (up, down) = (x[j] - target[j], target[k] - x[k]);
        let delta = up.min(down);
        let t = 1.0 - delta / (x[j] - x[k]);
        let mut next = x.clone();
        if up <= down {
            next[j] = target[j];
            next[k] = x[k] + delta;
        } else {
            next[j] = x[j] - delta;
            next[k] = target[k];
        }
        steps.push((j, k, t));
        chain.push(next);
    }

    // undo the steps in reverse, starting from the vector closest to p
    let mut channel = KrausSet::identity(d);
    for (m, &(j, k, t)) in steps.iter().enumerate().rev() {
        let step = reverse_t_step(&chain[m], &chain[m + 1], j, k, t);
        channel = channel.then(&step)?;
    }
    Ok(channel)
}

/// Total probability of the branches whose output is collinear with `target`.
pub fn stochastic_subset_probability(ks: &KrausSet, psi: &PureState, target: &PureState) -> Result<f64> {
    if target.dim() != ks.out_dim {
        return Err(Error::DimensionMismatch(format!(
            "target has dimension {}, channel outputs {}",
            target.dim(),
            ks.out_dim
        )));
    }
    Ok(ks
        .apply(psi)?
        .iter()
        .filter_map(|b| b.state.as_ref().filter(|s| s.overlap(target) > COLLINEAR).map(|_| b.probability))
        .sum())
}
