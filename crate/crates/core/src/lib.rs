//! Exact nullity and rank computations for small simple graphs, together with
//! the tooling needed to recognize and exhaustively verify connected graphs
//! whose nullity equals `n - d - 1` (order minus diameter minus one).
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: the bitset [`Graph`] type, graph6 I/O, distances, diameter
//!   paths, twins, pendants and the classification of vertices hanging off a
//!   diameter path.
//! * [`linalg`]: exact integer linear algebra (rank, nullity, characteristic
//!   polynomial, integer eigenvalue multiplicities).
//! * [`lemmas`]: executable checkers for the structural nullity identities,
//!   each returning a [`lemmas::ViolationReport`].
//! * [`families`]: the generator and structural recognizer for the
//!   even-diameter extremal family.
//! * [`enumerate`]: canonical forms, isomorph-free generation of connected
//!   graphs and the exhaustive sweep driver.

pub mod enumerate;
pub mod families;
pub mod graph;
pub mod lemmas;
pub mod linalg;

pub use enumerate::{canonical_form, connected_graphs, CanonicalForm, SweepReport};
pub use families::{recognize, FamilyParams, RecognitionResult, Variant, Verdict};
pub use graph::{DiameterPath, Graph, GraphError, OutsideClassification};
pub use linalg::{nullity, rank_exact, IntMatrix, IntPolynomial};
