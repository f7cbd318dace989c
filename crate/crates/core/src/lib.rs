// SPDX-License-Identifier: Apache-2.0

//! Geometric crossover over combinatorial metric spaces, and the quotient
//! construction that turns a redundant genotype space into a space of
//! equivalence classes before recombination.
//!
//! The crate is `no_std` (it needs `alloc`). Every operator takes its random
//! source as an explicit argument and holds no hidden state, so the same
//! inputs and the same RNG stream always produce the same offspring.
//!
//! Layout:
//!
//! - [`metric`]: distances, segments, crossover contract, axiom and
//!   geometricity checkers.
//! - [`quotient`]: equivalence relations, brute-force quotient distance,
//!   generic normalization.
//! - [`grouping`], [`graph`], [`sequence`], [`tour`], [`fsm`]: the
//!   representations, each with a specialized distance and a
//!   normalize-then-recombine crossover.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod assignment;
pub mod combinatorics;
pub mod crossover;
mod error;
pub mod fsm;
pub mod graph;
pub mod grouping;
pub mod metric;
pub mod quotient;
pub mod rng;
pub mod sequence;
pub mod tour;

pub use error::{Error, Result};
pub use metric::{
    check_geometricity, check_metric_axioms, segment_contains, AxiomCheck, AxiomReport, CheckMode, Crossover,
    GeometricityReport, Hamming, Metric,
};
pub use quotient::{
    normalize, quotient_distance_bruteforce, quotient_segment_contains, EquivRelation, IdentityRelation,
    QuotientDistance,
};
