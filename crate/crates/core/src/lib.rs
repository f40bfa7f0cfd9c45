//! # cohcat
//!
//! Deciders for pure-state coherence transformations under incoherent
//! operations. Every question is answered from the diagonal part of the
//! state in the reference basis, stored as a [`ProbVector`].
//!
//! | Question | Entry point |
//! |---|---|
//! | deterministic conversion | [`majorize::compare`] |
//! | optimal conversion probability | [`stochastic::optimal_probability`] |
//! | catalytic probability enhancement | [`stochastic::enhancement_possible`] |
//! | catalytic conversion (Rényi family) | [`renyi::catalytic_feasible_strict`] and friends |
//! | qubit catalysts for 4-level states | [`catalyst::qubit_interval_d4`] |
//! | brute-force catalyst oracle | [`catalyst::grid_search_catalyst`] |
//! | self-catalysis | [`catalyst::self_catalysis_order`] |
//! | entanglement-assisted conversion | [`ent_assist::ent_assisted_feasible`] |
//! | explicit incoherent channels | [`kraus::KrausSet`] |
//!
//! ```rust
//! use cohcat::{stochastic, ProbVector};
//!
//! let p = ProbVector::from_weights(&[0.4, 0.4, 0.2]).unwrap();
//! let q = ProbVector::from_weights(&[0.5, 0.25, 0.25]).unwrap();
//! assert!((stochastic::optimal_probability(&p, &q) - 0.8).abs() < 1e-12);
//! ```
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything here is `Send + Sync`.

#![forbid(unsafe_code)]

pub mod catalyst;
pub mod ent_assist;
mod error;
pub mod ext;
pub mod kraus;
pub mod majorize;
pub mod renyi;
pub mod statevec;
pub mod stochastic;
pub mod tol;

pub use error::{Error, Result};
pub use majorize::{ComparisonOutcome, ComparisonTag};
pub use renyi::{AlphaGrid, Decision, FeasibilityVerdict};
pub use statevec::{ProbVector, StateSpec};
