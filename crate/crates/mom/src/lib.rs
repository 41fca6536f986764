//! Exact-arithmetic toolkit for finite metric spaces and the space of
//! metrics over them.
//!
//! A finite (pseudo)metric is an `n x n` table of exact rationals
//! ([`MetricMatrix`]); the distance between two such tables on the same
//! ground set is the sup-metric `D(d, e) = max |d(x,y) - e(x,y)|`
//! ([`algebra::sup_distance`]). On top of that sit four isometric-embedding
//! constructions into spaces of metrics and vectors ([`embed`]), each
//! emitting a witness that an independent brute-force oracle re-verifies
//! with zero tolerance ([`oracle`]).
//!
//! Design rules:
//!
//! - All arithmetic is exact rational; there is no floating point and no
//!   tolerance anywhere. Isometry checks assert equality, bit for bit.
//! - Constructing a [`MetricMatrix`] runs the full axiom check; invalid
//!   tables do not exist as values.
//! - Every operation is a pure function: identical inputs give identical
//!   outputs, and all values are immutable and safe to share across threads.
//! - The oracle recomputes claims from the defining formulas with separate
//!   code, so a transcription error on either side shows up as a mismatch.
//!
//! File formats for matrices, vector families, witnesses, and reports live
//! in [`io`]; the `momctl` binary exposes them on the command line.

pub mod algebra;
pub mod embed;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod rat;

pub use algebra::{add, band_metric, diameter, pullback, restrict, sup_distance, LabelMap};
pub use embed::{BoundedVector, EmbeddingWitness, TruncationPlan};
pub use matrix::{DistanceTable, MetricKind, MetricMatrix, ValidationReport};
pub use oracle::{brute_sup, exhaustive_triangle, verify_isometry, IsometryReport};
pub use rat::Rat;
