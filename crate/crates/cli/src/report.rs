//! Everything the library can say about one `from → to` pair, as JSON.

use std::collections::BTreeMap;
use std::time::Instant;

use cohcat::catalyst::{self, CatalystInterval, SelfCatalysisResult};
use cohcat::ent_assist::{self, EntAssistVerdict};
use cohcat::{majorize, renyi, stochastic, tol};
use cohcat::{AlphaGrid, ComparisonOutcome, FeasibilityVerdict, ProbVector, StateSpec};
use serde::{Deserialize, Serialize};

/// A computation that may have been refused by its preconditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome<T> {
    Ok(T),
    Error(String),
}

impl<T> From<cohcat::Result<T>> for Outcome<T> {
    fn from(r: cohcat::Result<T>) -> Self {
        match r {
            Ok(v) => Outcome::Ok(v),
            Err(e) => Outcome::Error(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub spec: StateSpec,
    pub canonical: ProbVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub eps: f64,
    pub n_max: usize,
    pub max_dim: usize,
    pub resolution: usize,
    pub tol_cmp: f64,
    pub grid: AlphaGrid,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { eps: 1e-3, n_max: 3, max_dim: 3, resolution: 200, tol_cmp: tol::cmp(), grid: AlphaGrid::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalyticVerdicts {
    pub strict: Outcome<FeasibilityVerdict>,
    pub closure: FeasibilityVerdict,
    pub nonneg: FeasibilityVerdict,
    pub shortcut: Outcome<FeasibilityVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalystFindings {
    /// Only for pairs of dimension at most 4.
    pub qubit_interval: Option<CatalystInterval>,
    pub search_witness: Outcome<Option<ProbVector>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConversionReport {
    pub from: Input,
    pub to: Input,
    pub settings: Settings,
    pub deterministic: ComparisonOutcome,
    pub probability: f64,
    pub enhancement: bool,
    pub catalytic: CatalyticVerdicts,
    pub catalyst: CatalystFindings,
    pub self_catalysis: Outcome<SelfCatalysisResult>,
    pub ent_assist: EntAssistVerdict,
    /// Wall-clock milliseconds per section.
    pub timings_ms: BTreeMap<String, f64>,
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(key.to_string(), start.elapsed().as_secs_f64() * 1e3);
    out
}

impl ConversionReport {
    pub fn build(from: StateSpec, to: StateSpec, settings: Settings) -> cohcat::Result<Self> {
        let p = ProbVector::canonicalize(&from)?;
        let q = ProbVector::canonicalize(&to)?;
        let mut t = BTreeMap::new();
        let g = &settings.grid;

        let deterministic = timed(&mut t, "deterministic", || majorize::compare(&p, &q));
        let (probability, enhancement) = timed(&mut t, "probability", || {
            (stochastic::optimal_probability(&p, &q), stochastic::enhancement_possible(&p, &q))
        });
        let catalytic = timed(&mut t, "catalytic", || CatalyticVerdicts {
            strict: renyi::catalytic_feasible_strict(&p, &q, g).into(),
            closure: renyi::catalytic_feasible_closure(&p, &q, g),
            nonneg: renyi::catalytic_feasible_nonneg(&p, &q, g),
            shortcut: renyi::shortcut_certificate(&p, &q, settings.eps, g).map(|c| c.verdict).into(),
        });
        let catalyst = timed(&mut t, "catalyst", || CatalystFindings {
            qubit_interval: catalyst::qubit_interval_d4(&p, &q).ok(),
            search_witness: catalyst::grid_search_catalyst(&p, &q, settings.max_dim, settings.resolution).into(),
        });
        let self_catalysis =
            timed(&mut t, "self_catalysis", || catalyst::self_catalysis_order(&p, &q, settings.n_max).into());
        let ent_assist = timed(&mut t, "ent_assist", || ent_assist::ent_assisted_feasible(&p, &q));

        Ok(ConversionReport {
            from: Input { spec: from, canonical: p },
            to: Input { spec: to, canonical: q },
            settings,
            deterministic,
            probability,
            enhancement,
            catalytic,
            catalyst,
            self_catalysis,
            ent_assist,
            timings_ms: t,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> cohcat::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
