//! Deterministic local approximation of MaxCut and MaxDiCut in regular graphs.
//!
//! The crate bundles the one-round median algorithm, the zero-round oriented
//! median and its flip refinements, a synchronous CONGEST round simulator,
//! the adversarial graph families used to show these are near-optimal,
//! brute-force oracles, and exact checks of every closed-form bound.

pub mod algorithms;
pub mod bounds;
pub mod congest;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rng;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{
    cut_size, dicut_size, is_bipartite, validate_regular, Cut, Family, Labelling, Orientation,
    RegularGraph, Side,
};

/// Exact rational type used by every bound.
pub use num_rational::Rational64;
