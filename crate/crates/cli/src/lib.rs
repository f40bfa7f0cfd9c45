//! Support code for the `cohcat` binary: state arguments and the JSON report.

pub mod report;

use std::fs;

use cohcat::kraus::PureState;
use cohcat::{Error, ProbVector, Result, StateSpec};
use num_complex::Complex64;

/// Parses a state argument: a comma list (`0.4,0.4,0.2`) or `@file.json`
/// holding `{"weights": [...]}`.
pub fn parse_spec(arg: &str) -> Result<StateSpec> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            StateSpec::from_json(&text)
        }
        None => arg.parse(),
    }
}

pub fn parse_state(arg: &str) -> Result<ProbVector> {
    ProbVector::canonicalize(&parse_spec(arg)?)
}

/// Real amplitudes `√(wᵢ/Σw)` in the order given, for channel inputs where
/// basis order matters.
pub fn parse_pure_state(arg: &str) -> Result<PureState> {
    let spec = parse_spec(arg)?;
    ProbVector::canonicalize(&spec)?;
    let total: f64 = spec.weights.iter().sum();
    PureState::new(spec.weights.iter().map(|w| Complex64::new((w / total).sqrt(), 0.0)).collect())
}

/// Fixed-precision number, with `+inf` / `-inf` for the infinities.
pub fn num(x: f64, precision: usize) -> String {
    if x.is_finite() {
        format!("{x:.precision$}")
    } else {
        cohcat::ext::fmt(x)
    }
}
