//! Rényi entropies, the normalized family `S̃_α/|α|`, power means, and the
//! catalytic-feasibility deciders built on them.
//!
//! Natural log throughout. For two vectors padded to a common dimension the
//! difference of the normalized family reduces to
//! `Δ(α) = (L_q − L_p) / (α(1−α))` with `L = ln Σ xᵢ^α`, so the `ln d`
//! offsets never enter a decision.
//!
//! At `α → ±∞` the normalized family flattens to 0, so curves and verdicts
//! carry the scaled limit `|α|·Δ` there: `ln pmax − ln qmax` at `+∞` and
//! `ln qmin − ln pmin` at `−∞`. Those two checks are always non-strict.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext;
use crate::majorize::interconvertible;
use crate::statevec::{pad_common, ProbVector};
use crate::tol;

/// Which analytic limits a grid evaluates besides its finite points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub zero: bool,
    pub one: bool,
    pub pos_inf: bool,
    pub neg_inf: bool,
}

impl Limits {
    pub const ALL: Limits = Limits { zero: true, one: true, pos_inf: true, neg_inf: true };
    pub const NONNEG: Limits = Limits { zero: true, one: true, pos_inf: true, neg_inf: false };
    pub const NONE: Limits = Limits { zero: false, one: false, pos_inf: false, neg_inf: false };
}

/// Finite Rényi orders plus analytic limits.
///
/// Points are finite, strictly increasing and never exactly 0 or 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct AlphaGrid {
    points: Vec<f64>,
    limits: Limits,
}

#[derive(Deserialize)]
struct RawGrid {
    points: Vec<f64>,
    limits: Limits,
}

impl TryFrom<RawGrid> for AlphaGrid {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        AlphaGrid::new(raw.points, raw.limits)
    }
}

impl AlphaGrid {
    pub fn new(points: Vec<f64>, limits: Limits) -> Result<Self> {
        if let Some(x) = points.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite point {x}")));
        }
        if points.iter().any(|&x| x == 0.0 || x == 1.0) {
            return Err(Error::InvalidGrid("0 and 1 are limits, not grid points".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("points must be strictly increasing".into()));
        }
        Ok(AlphaGrid { points, limits })
    }

    /// The default grid restricted to `α > 0`, with the limits 0, 1 and `+∞`.
    pub fn nonnegative() -> Self {
        AlphaGrid::default().restrict_nonneg()
    }

    pub fn restrict_nonneg(&self) -> Self {
        AlphaGrid {
            points: self.points.iter().copied().filter(|&a| a > 0.0).collect(),
            limits: Limits { neg_inf: false, ..self.limits },
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Every order evaluated, finite points and limits merged in increasing order.
    pub fn orders(&self) -> Vec<f64> {
        let l = self.limits;
        let mut out = Vec::with_capacity(self.points.len() + 4);
        if l.neg_inf {
            out.push(f64::NEG_INFINITY);
        }
        out.extend(self.points.iter().copied());
        if l.zero {
            out.push(0.0);
        }
        if l.one {
            out.push(1.0);
        }
        if l.pos_inf {
            out.push(f64::INFINITY);
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

impl Default for AlphaGrid {
    /// `±2^k` for `k = −6 … 6` together with `±{0.1, 0.25, 0.5, 0.75, 0.9, 1.1, 1.5}`,
    /// plus all four limits.
    fn default() -> Self {
        let mut pts: Vec<f64> = (-6..=6).map(|k| 2f64.powi(k)).collect();
        pts.extend([0.1, 0.25, 0.5, 0.75, 0.9, 1.1, 1.5]);
        let mut all: Vec<f64> = pts.iter().flat_map(|&x| [x, -x]).filter(|&x| x != 1.0).collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        AlphaGrid { points: all, limits: Limits::ALL }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Feasible,
    Infeasible,
    /// Equality within tolerance at some order that needs a strict inequality.
    Boundary,
}

/// `margin` is the smallest slack `−Δ(α)` over the finite orders checked
/// (0 and 1 included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub decision: Decision,
    #[serde(with = "ext::serde_opt_f64")]
    pub witness_alpha: Option<f64>,
    #[serde(with = "ext::serde_f64")]
    pub margin: f64,
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        self.decision == Decision::Feasible
    }
}

/// One sample of `Δ(α) = S̃_α(q)/|α| − S̃_α(p)/|α|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(with = "ext::serde_f64")]
    pub alpha: f64,
    #[serde(with = "ext::serde_f64")]
    pub delta: f64,
}

fn has_zero(p: &ProbVector) -> bool {
    p.entries().contains(&0.0)
}

fn ln_dim(p: &ProbVector) -> f64 {
    (p.dim() as f64).ln()
}

// ln Σ xᵢ^α by log-sum-exp over α ln xᵢ; zero entries drop out for α > 0.
fn ln_sum_pow(p: &ProbVector, alpha: f64) -> f64 {
    if alpha < 0.0 && has_zero(p) {
        return f64::INFINITY;
    }
    let logs: Vec<f64> = p.entries().iter().filter(|&&x| x > 0.0).map(|&x| alpha * x.ln()).collect();
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + logs.iter().map(|&l| (l - m).exp()).sum::<f64>().ln()
}

pub fn shannon_entropy(p: &ProbVector) -> f64 {
    -p.entries().iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

fn mean_log(p: &ProbVector) -> f64 {
    if has_zero(p) {
        return f64::NEG_INFINITY;
    }
    p.entries().iter().map(|x| x.ln()).sum::<f64>() / p.dim() as f64
}

/// `S_α(p) = sgn(α) ln(Σ pᵢ^α) / (1−α)` with `sgn(0) = 1`.
///
/// Limits: `ln rank` at 0, Shannon at 1, `−ln pmax` at `+∞`, `ln pmin` at `−∞`.
/// For `α < 0` a zero entry gives `−∞`.
pub fn renyi_entropy(p: &ProbVector, alpha: f64) -> f64 {
    if alpha == 0.0 {
        (p.rank() as f64).ln()
    } else if alpha == 1.0 {
        shannon_entropy(p)
    } else if alpha == f64::INFINITY {
        -p.max().ln()
    } else if alpha == f64::NEG_INFINITY {
        p.min().ln()
    } else if alpha < 0.0 && has_zero(p) {
        f64::NEG_INFINITY
    } else {
        alpha.signum() * ln_sum_pow(p, alpha) / (1.0 - alpha)
    }
}

/// `S̃_α(p)/|α|`, with `S̃_α = S_α − sgn(α) ln d` so that the uniform vector
/// sits at 0 for every `α ≠ 0`.
///
/// At `α = 0` this is the mean log `Σ ln pᵢ / d`; at `α = 1` it is
/// `S(p) − ln d`; at `±∞` it is the scaled limit `S̃_{±∞}`.
pub fn normalized_family(p: &ProbVector, alpha: f64) -> f64 {
    let ln_d = ln_dim(p);
    if alpha == 0.0 {
        mean_log(p)
    } else if alpha == 1.0 {
        shannon_entropy(p) - ln_d
    } else if alpha.is_infinite() {
        renyi_entropy(p, alpha) - alpha.signum() * ln_d
    } else if alpha < 0.0 && has_zero(p) {
        f64::NEG_INFINITY
    } else {
        (ln_sum_pow(p, alpha) - (1.0 - alpha) * ln_d) / (alpha * (1.0 - alpha))
    }
}

/// `A_α(p) = (Σ pᵢ^α / d)^{1/α}`: geometric mean at 0, max/min at `±∞`,
/// and 0 for `α ≤ 0` when any entry vanishes.
pub fn power_mean(p: &ProbVector, alpha: f64) -> f64 {
    if alpha == f64::INFINITY {
        p.max()
    } else if alpha == f64::NEG_INFINITY {
        p.min()
    } else if alpha <= 0.0 && has_zero(p) {
        0.0
    } else if alpha == 0.0 {
        mean_log(p).exp()
    } else {
        ((ln_sum_pow(p, alpha) - ln_dim(p)) / alpha).exp()
    }
}

fn delta_at(p: &ProbVector, q: &ProbVector, alpha: f64) -> f64 {
    ext::sub(normalized_family(q, alpha), normalized_family(p, alpha))
}

/// `Δ(α)` at every order of `grid`, after padding to a common dimension.
pub fn delta_curve(p: &ProbVector, q: &ProbVector, grid: &AlphaGrid) -> Vec<CurvePoint> {
    let (p, q) = pad_common(p, q);
    grid.orders().into_iter().map(|alpha| CurvePoint { alpha, delta: delta_at(&p, &q, alpha) }).collect()
}

/// CSV with header `alpha,delta`; limits are written `0`, `1`, `+inf`, `-inf`.
pub fn curve_to_csv(curve: &[CurvePoint]) -> String {
    let mut out = String::from("alpha,delta\n");
    for pt in curve {
        out.push_str(&format!("{},{}\n", ext::fmt(pt.alpha), ext::fmt(pt.delta)));
    }
    out
}

// Strict points need Δ < −tol; any Δ > tol is a violation. The ±∞ limits
// live on another scale (|α|·Δ), so they supply the witness and the margin
// only when no finite order is violated.
fn decide<'a>(points: impl IntoIterator<Item = &'a CurvePoint>, strict: impl Fn(f64) -> bool) -> FeasibilityVerdict {
    let tol = tol::cmp();
    let (mut margin, mut margin_lim) = (f64::INFINITY, f64::INFINITY);
    let (mut worst, mut worst_lim): (Option<CurvePoint>, Option<CurvePoint>) = (None, None);
    let mut boundary = false;
    let mut any_finite = false;
    for pt in points {
        let (m, w) = if pt.alpha.is_finite() {
            any_finite = true;
            (&mut margin, &mut worst)
        } else {
            (&mut margin_lim, &mut worst_lim)
        };
        *m = m.min(-pt.delta);
        if pt.delta > tol {
            if w.is_none_or(|x| pt.delta > x.delta) {
                *w = Some(*pt);
            }
        } else if strict(pt.alpha) && pt.delta >= -tol {
            boundary = true;
        }
    }
    if (worst.is_none() && worst_lim.is_some()) || !any_finite {
        margin = margin.min(margin_lim);
    }
    let witness = worst.or(worst_lim);
    let decision = match (witness, boundary) {
        (Some(_), _) => Decision::Infeasible,
        (None, true) => Decision::Boundary,
        (None, false) => Decision::Feasible,
    };
    FeasibilityVerdict { decision, witness_alpha: witness.map(|w| w.alpha), margin }
}

/// Catalytic conversion `p ⊗ c → q ⊗ c` for some catalyst `c`: `Δ(α) < 0`
/// at every finite order and at 0 and 1, with the `±∞` limits non-strict.
///
/// The source must have full support in the common dimension and differ
/// from the target.
pub fn catalytic_feasible_strict(p: &ProbVector, q: &ProbVector, grid: &AlphaGrid) -> Result<FeasibilityVerdict> {
    let (pp, _) = pad_common(p, q);
    if !pp.has_full_support() {
        return Err(Error::ZeroEntryInSource);
    }
    if interconvertible(p, q) {
        return Err(Error::IdenticalStates);
    }
    let curve = delta_curve(p, q, grid);
    Ok(decide(&curve, |a| a.is_finite()))
}

/// Non-strict version: `Δ(α) ≤ tol` everywhere. Characterizes conversion
/// from an arbitrarily small perturbation of `p`. Never reports Boundary.
pub fn catalytic_feasible_closure(p: &ProbVector, q: &ProbVector, grid: &AlphaGrid) -> FeasibilityVerdict {
    decide(&delta_curve(p, q, grid), |_| false)
}

/// Closure check over `α ≥ 0` only (orders 0, 1, `+∞` and positive points).
/// Characterizes conversion when a slightly perturbed qubit ancilla may also
/// be consumed.
pub fn catalytic_feasible_nonneg(p: &ProbVector, q: &ProbVector, grid: &AlphaGrid) -> FeasibilityVerdict {
    catalytic_feasible_closure(p, q, &grid.restrict_nonneg())
}

/// Smoothed min-entropy: drop the smallest entries whose total mass stays
/// below `eps`, then `ln` of what remains.
pub fn smoothed_min_entropy(p: &ProbVector, eps: f64) -> f64 {
    let mut removed = 0.0;
    let mut kept = p.rank();
    for &x in p.entries()[..p.rank()].iter().rev() {
        if removed + x >= eps || kept == 1 {
            break;
        }
        removed += x;
        kept -= 1;
    }
    (kept as f64).ln()
}

/// Smoothed max-entropy: cap the largest entries at the level `λ` that trims
/// exactly `eps` of mass, then `−ln λ`.
pub fn smoothed_max_entropy(q: &ProbVector, eps: f64) -> f64 {
    let e = q.entries();
    let mut above = 0.0;
    for k in 1..=e.len() {
        above += e[k - 1];
        // cap lies in [e[k], e[k-1]] when the top k entries are trimmed
        let lambda = (above - eps) / k as f64;
        let next = e.get(k).copied().unwrap_or(0.0);
        if lambda >= next {
            return -lambda.ln();
        }
    }
    unreachable!("capping at zero trims all mass, which exceeds eps")
}

/// Everything the shortcut decider computed.
///
/// `(0, alpha_a]` is certified by the smoothed min-entropy bound and
/// `[alpha_b, ∞)` by the smoothed max-entropy bound; `residual` lists the
/// grid orders in between, which are checked directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortcutCertificate {
    pub eps: f64,
    pub smoothed_min_entropy_source: f64,
    pub min_entropy_target: f64,
    #[serde(with = "ext::serde_f64")]
    pub smoothed_max_entropy_target: f64,
    #[serde(with = "ext::serde_f64")]
    pub max_entropy_source: f64,
    #[serde(with = "ext::serde_opt_f64")]
    pub alpha_a: Option<f64>,
    #[serde(with = "ext::serde_opt_f64")]
    pub alpha_b: Option<f64>,
    pub zero_order: CurvePoint,
    pub residual: Vec<CurvePoint>,
    pub verdict: FeasibilityVerdict,
}

/// Sufficient test for the `α ≥ 0` family with the default grid.
pub fn shortcut_check(p: &ProbVector, q: &ProbVector, eps: f64) -> Result<FeasibilityVerdict> {
    Ok(shortcut_certificate(p, q, eps, &AlphaGrid::default())?.verdict)
}

/// Uses `S_α(p) ≥ S₀^ε(p) + ln ε/(1−α)` for `α < 1` and
/// `S_α(q) ≤ S_∞^ε(q) − ln ε/(α−1)` for `α > 1` to certify both tails of the
/// positive axis in closed form, then checks `α = 0` and the grid orders
/// left over (always including `α = 1`).
pub fn shortcut_certificate(p: &ProbVector, q: &ProbVector, eps: f64, grid: &AlphaGrid) -> Result<ShortcutCertificate> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::EpsOutOfRange(eps));
    }
    let (p, q) = pad_common(p, q);
    let s0_eps = smoothed_min_entropy(&p, eps);
    let s0_q = renyi_entropy(&q, 0.0);
    let sinf_p = renyi_entropy(&p, f64::INFINITY);
    let sinf_eps = smoothed_max_entropy(&q, eps);

    let slack_a = s0_eps - s0_q;
    let alpha_a = (slack_a > 0.0).then(|| 1.0 + eps.ln() / slack_a).filter(|&a| a > 0.0);
    let slack_b = sinf_p - sinf_eps;
    let alpha_b = (slack_b > 0.0).then(|| 1.0 - eps.ln() / slack_b);

    let lo = alpha_a.unwrap_or(0.0);
    let hi = alpha_b.unwrap_or(f64::INFINITY);
    let mut orders: Vec<f64> = grid.points().iter().copied().filter(|&a| a > lo && a < hi).collect();
    orders.push(1.0);
    if alpha_b.is_none() && grid.limits().pos_inf {
        orders.push(f64::INFINITY);
    }
    orders.sort_by(f64::total_cmp);

    let zero_order = CurvePoint { alpha: 0.0, delta: delta_at(&p, &q, 0.0) };
    let residual: Vec<CurvePoint> =
        orders.into_iter().map(|alpha| CurvePoint { alpha, delta: delta_at(&p, &q, alpha) }).collect();
    let verdict = decide(std::iter::once(&zero_order).chain(&residual), |a| a.is_finite());

    Ok(ShortcutCertificate {
        eps,
        smoothed_min_entropy_source: s0_eps,
        min_entropy_target: s0_q,
        smoothed_max_entropy_target: sinf_eps,
        max_entropy_source: sinf_p,
        alpha_a,
        alpha_b,
        zero_order,
        residual,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(w: &[f64]) -> ProbVector {
        ProbVector::from_weights(w).unwrap()
    }

    fn catalyzable() -> (ProbVector, ProbVector) {
        (pv(&[0.4, 0.4, 0.1, 0.1]), pv(&[0.5, 0.25, 0.25, 0.0]))
    }

    fn blocked() -> (ProbVector, ProbVector) {
        (pv(&[0.5, 0.4, 0.1]), pv(&[0.6, 0.25, 0.15]))
    }

    fn at(curve: &[CurvePoint], alpha: f64) -> f64 {
        curve.iter().find(|c| c.alpha == alpha).unwrap().delta
    }

    #[test]
    fn default_grid_shape() {
        let g = AlphaGrid::default();
        assert_eq!(g.points().len(), 35);
        assert!(g.points().contains(&-1.0));
        assert!(!g.points().contains(&1.0));
        assert!(g.points().windows(2).all(|w| w[0] < w[1]));
        let o = g.orders();
        assert_eq!(o[0], f64::NEG_INFINITY);
        assert_eq!(*o.last().unwrap(), f64::INFINITY);
        assert!(AlphaGrid::nonnegative().orders().iter().all(|&a| a >= 0.0));
    }

    #[test]
    fn grid_validation() {
        assert!(AlphaGrid::new(vec![0.5, 0.5], Limits::NONE).is_err());
        assert!(AlphaGrid::new(vec![0.0], Limits::NONE).is_err());
        assert!(AlphaGrid::new(vec![1.0], Limits::NONE).is_err());
        assert!(AlphaGrid::new(vec![f64::NAN], Limits::NONE).is_err());
        assert!(AlphaGrid::new(vec![-2.0, 0.5, 3.0], Limits::ALL).is_ok());
        let bad: std::result::Result<AlphaGrid, _> = serde_json::from_str(
            r#"{"points":[2.0,1.0],"limits":{"zero":true,"one":true,"pos_inf":true,"neg_inf":true}}"#,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn entropy_examples() {
        assert!((renyi_entropy(&pv(&[0.5, 0.4, 0.1]), 1.0) - 0.9433483923290391).abs() < 1e-12);
        assert!((renyi_entropy(&pv(&[0.6, 0.25, 0.15]), 1.0) - 0.9376369622724492).abs() < 1e-12);
        let u = ProbVector::uniform(5);
        for a in [0.0, 0.3, 1.0, 2.0, 7.5, f64::INFINITY] {
            assert!((renyi_entropy(&u, a) - 5f64.ln()).abs() < 1e-12, "α={a}");
        }
        // the sign convention flips the uniform value for negative orders
        for a in [-0.5, -3.0, f64::NEG_INFINITY] {
            assert!((renyi_entropy(&u, a) + 5f64.ln()).abs() < 1e-12, "α={a}");
        }
        assert_eq!(renyi_entropy(&pv(&[0.5, 0.5, 0.0]), -1.0), f64::NEG_INFINITY);
        assert!((renyi_entropy(&pv(&[0.5, 0.5, 0.0]), 0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn normalized_examples() {
        let u = ProbVector::uniform(4);
        for a in [-64.0, -1.0, -0.1, 0.5, 1.0, 3.0, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(normalized_family(&u, a).abs() < 1e-12, "α={a}");
        }
        let p = pv(&[0.5, 0.4, 0.1]);
        assert!((normalized_family(&p, 0.0) - -1.3040076684760484).abs() < 1e-12);
        assert_eq!(normalized_family(&pv(&[0.5, 0.25, 0.25, 0.0]), -1.0), f64::NEG_INFINITY);
    }

    #[test]
    fn power_mean_examples() {
        let u = ProbVector::uniform(3);
        for a in [-2.0, 0.0, 0.5, 1.0, 4.0] {
            assert!((power_mean(&u, a) - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!((power_mean(&pv(&[0.6, 0.4]), 2.0) - 0.5099019513592785).abs() < 1e-12);
        assert_eq!(power_mean(&pv(&[0.5, 0.25, 0.25, 0.0]), -1.0), 0.0);
        assert_eq!(power_mean(&pv(&[0.5, 0.25, 0.25, 0.0]), 0.0), 0.0);
    }

    #[test]
    fn catalyzable_curve() {
        let (p, q) = catalyzable();
        let curve = delta_curve(&p, &q, &AlphaGrid::default());
        for c in &curve {
            if c.alpha < 0.0 {
                assert_eq!(c.delta, f64::NEG_INFINITY, "α={}", c.alpha);
            } else {
                assert!(c.delta < -1e-4, "α={} Δ={}", c.alpha, c.delta);
            }
        }
    }

    #[test]
    fn blocked_curve() {
        let (p, q) = blocked();
        let curve = delta_curve(&p, &q, &AlphaGrid::default());
        assert!((at(&curve, -1.0) - 0.08092151272520676).abs() < 1e-12);
        assert!((at(&curve, -2.0) - 0.09268244292280725).abs() < 1e-12);
        assert!((at(&curve, -0.5) - 0.06310564122352957).abs() < 1e-12);
        assert!((at(&curve, 0.0) - 0.03926101188546083).abs() < 1e-12);
        assert!((at(&curve, 1.0) + 0.005711430056589917).abs() < 1e-12);
    }

    #[test]
    fn identical_curve_is_zero() {
        let p = pv(&[0.5, 0.3, 0.2]);
        assert!(delta_curve(&p, &p, &AlphaGrid::default()).iter().all(|c| c.delta == 0.0));
        let z = pv(&[0.5, 0.5, 0.0]);
        assert!(delta_curve(&z, &z, &AlphaGrid::default()).iter().all(|c| c.delta == 0.0));
    }

    #[test]
    fn csv_format() {
        let (p, q) = catalyzable();
        let csv = curve_to_csv(&delta_curve(&p, &q, &AlphaGrid::default()));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,delta");
        assert_eq!(lines[1], "-inf,-inf");
        assert!(lines.iter().any(|l| l.starts_with("0,")));
        assert!(lines.iter().any(|l| l.starts_with("1,")));
        assert!(lines.last().unwrap().starts_with("+inf,"));
    }

    #[test]
    fn strict_examples() {
        let g = AlphaGrid::default();
        let (p, q) = catalyzable();
        assert_eq!(catalytic_feasible_strict(&p, &q, &g).unwrap().decision, Decision::Feasible);
        let (p, q) = blocked();
        let v = catalytic_feasible_strict(&p, &q, &g).unwrap();
        assert_eq!(v.decision, Decision::Infeasible);
        assert_eq!(v.witness_alpha, Some(-2.0));
        assert!((v.margin + 0.09268244292280725).abs() < 1e-12);
        let p = pv(&[0.9, 0.081, 0.01, 0.009]);
        let q = pv(&[0.95, 0.03, 0.02, 0.0]);
        assert_eq!(catalytic_feasible_strict(&p, &q, &g).unwrap().decision, Decision::Feasible);
    }

    #[test]
    fn strict_errors() {
        let g = AlphaGrid::default();
        let (p, q) = catalyzable();
        assert!(matches!(catalytic_feasible_strict(&q, &p, &g), Err(Error::ZeroEntryInSource)));
        assert!(matches!(catalytic_feasible_strict(&p, &p, &g), Err(Error::IdenticalStates)));
        // padding the source up to the target's dimension introduces a zero
        let small = pv(&[0.5, 0.3, 0.2]);
        assert!(matches!(catalytic_feasible_strict(&small, &p, &g), Err(Error::ZeroEntryInSource)));
    }

    #[test]
    fn closure_and_nonneg_examples() {
        let g = AlphaGrid::default();
        let p = pv(&[0.5, 0.3, 0.2]);
        assert_eq!(catalytic_feasible_closure(&p, &p, &g).decision, Decision::Feasible);
        assert_eq!(catalytic_feasible_nonneg(&p, &p, &g).decision, Decision::Feasible);
        let (p, q) = blocked();
        assert_eq!(catalytic_feasible_closure(&p, &q, &g).decision, Decision::Infeasible);
        let v = catalytic_feasible_nonneg(&p, &q, &g);
        assert_eq!(v.decision, Decision::Infeasible);
        assert!(v.witness_alpha.unwrap() >= 0.0);
        let (p, q) = catalyzable();
        assert_eq!(catalytic_feasible_nonneg(&p, &q, &g).decision, Decision::Feasible);
    }

    #[test]
    fn smoothed_entropies() {
        let p = pv(&[0.4, 0.4, 0.1, 0.1]);
        assert!((smoothed_min_entropy(&p, 0.01) - 4f64.ln()).abs() < 1e-15);
        assert!((smoothed_min_entropy(&p, 0.15) - 3f64.ln()).abs() < 1e-15);
        assert!((smoothed_min_entropy(&p, 0.2 + 1e-9) - 2f64.ln()).abs() < 1e-15);
        assert!((smoothed_min_entropy(&p, 0.2) - 3f64.ln()).abs() < 1e-15);
        let q = pv(&[0.5, 0.25, 0.25, 0.0]);
        assert!((smoothed_max_entropy(&q, 0.01) + 0.49f64.ln()).abs() < 1e-12);
        // trimming 0.3 levels the top three entries at 0.7/3
        assert!((smoothed_max_entropy(&q, 0.3) + (0.7f64 / 3.0).ln()).abs() < 1e-12);
        assert!((smoothed_max_entropy(&pv(&[1.0, 0.0]), 0.2) + 0.8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn shortcut_examples() {
        let (p, q) = catalyzable();
        let cert = shortcut_certificate(&p, &q, 0.01, &AlphaGrid::default()).unwrap();
        assert_eq!(cert.verdict.decision, Decision::Feasible);
        assert!(cert.alpha_b.unwrap() > 1.0);
        assert!(cert.residual.iter().any(|c| c.alpha == 1.0));
        let p = pv(&[0.5, 0.3, 0.2]);
        assert_eq!(shortcut_check(&p, &p, 1e-3).unwrap().decision, Decision::Boundary);
        assert!(matches!(shortcut_check(&p, &p, 0.0), Err(Error::EpsOutOfRange(_))));
        assert!(matches!(shortcut_check(&p, &p, 1.0), Err(Error::EpsOutOfRange(_))));
    }

    #[test]
    fn limits_decide_only_when_alone() {
        let pts = [CurvePoint { alpha: f64::NEG_INFINITY, delta: 0.4 }, CurvePoint { alpha: 0.5, delta: -0.2 }];
        let v = decide(&pts, |a| a.is_finite());
        assert_eq!(v.decision, Decision::Infeasible);
        assert_eq!(v.witness_alpha, Some(f64::NEG_INFINITY));
        assert_eq!(v.margin, -0.4);
        let pts = [CurvePoint { alpha: f64::INFINITY, delta: 0.0 }];
        let v = decide(&pts, |a| a.is_finite());
        assert_eq!(v.decision, Decision::Feasible);
        assert_eq!(v.margin, 0.0);
    }

    #[test]
    fn verdict_json_roundtrip() {
        let v = FeasibilityVerdict { decision: Decision::Feasible, witness_alpha: None, margin: f64::INFINITY };
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<FeasibilityVerdict>(&s).unwrap(), v);
    }

    fn vec_strategy(d: usize) -> impl Strategy<Value = ProbVector> {
        prop::collection::vec(0.01f64..1.0, d).prop_map(|w| pv(&w))
    }

    fn nonzero_order() -> impl Strategy<Value = f64> {
        prop_oneof![-8.0f64..-0.05, 0.05f64..8.0]
    }

    proptest! {
        #[test]
        fn monotone_in_alpha(p in vec_strategy(5), a in 0.01f64..10.0, b in 0.01f64..10.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(renyi_entropy(&p, lo) >= renyi_entropy(&p, hi) - 1e-12);
        }

        #[test]
        fn schur_concave(
            p in vec_strategy(4),
            lam in 0.1f64..0.9,
            perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
            alpha in nonzero_order(),
        ) {
            let e = p.entries();
            let mixed: Vec<f64> = (0..4).map(|i| lam * e[i] + (1.0 - lam) * e[perm[i]]).collect();
            let m = pv(&mixed);
            prop_assert!(renyi_entropy(&m, alpha) > renyi_entropy(&p, alpha) - tol::TOL_CMP_DEFAULT);
        }

        #[test]
        fn curve_antisymmetric(p in vec_strategy(4), q in vec_strategy(3)) {
            let g = AlphaGrid::default();
            let fwd = delta_curve(&p, &q, &g);
            let bwd = delta_curve(&q, &p, &g);
            for (f, b) in fwd.iter().zip(&bwd) {
                prop_assert_eq!(f.alpha, b.alpha);
                prop_assert!(f.delta == -b.delta, "α={} {} vs {}", f.alpha, f.delta, b.delta);
            }
        }

        #[test]
        fn strict_implies_closure(p in vec_strategy(4), q in vec_strategy(4)) {
            let g = AlphaGrid::default();
            if let Ok(v) = catalytic_feasible_strict(&p, &q, &g) {
                if v.decision == Decision::Feasible {
                    prop_assert_eq!(catalytic_feasible_closure(&p, &q, &g).decision, Decision::Feasible);
                }
            }
        }

        #[test]
        fn shortcut_implies_nonneg(p in vec_strategy(4), q in vec_strategy(4), eps in 1e-4f64..0.5) {
            let g = AlphaGrid::default();
            let v = shortcut_certificate(&p, &q, eps, &g).unwrap().verdict;
            if v.decision == Decision::Feasible {
                prop_assert_eq!(catalytic_feasible_nonneg(&p, &q, &g).decision, Decision::Feasible);
            }
        }

        #[test]
        fn smoothing_bounds_hold(p in vec_strategy(6), eps in 1e-3f64..0.5, alpha in 0.05f64..0.95, beta in 1.05f64..20.0) {
            let lower = smoothed_min_entropy(&p, eps) + eps.ln() / (1.0 - alpha);
            prop_assert!(renyi_entropy(&p, alpha) >= lower - 1e-12);
            let upper = smoothed_max_entropy(&p, eps) - eps.ln() / (beta - 1.0);
            prop_assert!(renyi_entropy(&p, beta) <= upper + 1e-12);
        }
    }
}
