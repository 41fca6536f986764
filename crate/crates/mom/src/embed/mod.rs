//! Isometric embedding constructions, each emitting a re-verifiable witness.
//!
//! Four constructions are implemented, all exact on finite truncations:
//!
//! - [`frechet_embed`]: a metric space into coordinate vectors under the
//!   sup-norm, `x -> (d(x, q_a) - d(q_a, q_0))_a` over an enumeration of the
//!   points.
//! - [`one_point_embed`]: a metric space into the metrics on the same space
//!   plus one extra point, `u -> d_u` with `d_u(x, pt) = d(x, u) + 1`.
//! - [`discrete_embed`]: bounded vectors into the metrics on a finite
//!   discrete set partitioned into blocks, via clamped coordinates placed on
//!   point pairs.
//! - [`c0_embed`]: a finite family of vectors into the metrics on `2M + 1`
//!   points (M two-point blocks plus a joined point), after a positivity
//!   shift.
//!
//! Every construction returns an [`EmbeddingWitness`] carrying the input,
//! the provenance needed to recompute it bit-for-bit
//! ([`recompute_witness`]), and the per-point output.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::matrix::{MetricMatrix, ValidationReport};
use crate::rat::Rat;

mod c0;
mod discrete;
mod frechet;
mod one_point;

pub use c0::{c0_embed, c0_embed_without_shift, net_min, OmegaPlusOne};
pub use discrete::{
    clamp, discrete_embed, discrete_witness, plan_truncation, Block, PlanError, TruncationPlan,
};
pub use frechet::frechet_embed;
pub use one_point::one_point_embed;

/// Error constructing or combining bounded vectors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error("a bounded vector needs at least one coordinate")]
    Empty,
    #[error("recorded bound {bound} is smaller than the actual sup-norm {norm}")]
    BoundTooSmall { bound: Box<Rat>, norm: Box<Rat> },
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// A finitely-indexed exact-rational vector with a recorded sup-norm bound.
///
/// The bound is part of the value: it is never smaller than the actual
/// sup-norm, and embedding preconditions compare against it (not against the
/// possibly smaller true norm).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedVector {
    values: Vec<Rat>,
    bound: Rat,
}

impl BoundedVector {
    pub fn new(values: Vec<Rat>, bound: Rat) -> Result<Self, VectorError> {
        if values.is_empty() {
            return Err(VectorError::Empty);
        }
        let norm = sup_norm_of(&values);
        if bound < norm {
            return Err(VectorError::BoundTooSmall {
                bound: Box::new(bound),
                norm: Box::new(norm),
            });
        }
        Ok(Self { values, bound })
    }

    /// Records the actual sup-norm as the bound.
    pub fn with_tight_bound(values: Vec<Rat>) -> Result<Self, VectorError> {
        if values.is_empty() {
            return Err(VectorError::Empty);
        }
        let bound = sup_norm_of(&values);
        Ok(Self { values, bound })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &Rat {
        &self.values[index]
    }

    pub fn bound(&self) -> &Rat {
        &self.bound
    }

    pub fn sup_norm(&self) -> Rat {
        sup_norm_of(&self.values)
    }
}

fn sup_norm_of(values: &[Rat]) -> Rat {
    let mut best = Rat::zero();
    for value in values {
        let mag = value.abs();
        if mag > best {
            best = mag;
        }
    }
    best
}

/// `max_s |a(s) - b(s)|` for equal-length vectors.
pub fn sup_norm_distance(a: &BoundedVector, b: &BoundedVector) -> Result<Rat, VectorError> {
    if a.len() != b.len() {
        return Err(VectorError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let diffs: Vec<Rat> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x - y)
        .collect();
    Ok(sup_norm_of(&diffs))
}

/// A label set extended by one fresh distinguished point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSpace {
    base: Vec<String>,
    pt: String,
}

impl PointedSpace {
    /// Adjoins a fresh point label: `"pt"`, or `"pt0"`, `"pt1"`, ... if taken.
    pub fn over(base: &[String]) -> Self {
        let mut pt = "pt".to_string();
        let mut counter = 0usize;
        while base.iter().any(|l| l == &pt) {
            pt = format!("pt{counter}");
            counter += 1;
        }
        Self {
            base: base.to_vec(),
            pt,
        }
    }

    /// Adjoins a caller-chosen point label, which must not occur in the base.
    pub fn with_pt(base: &[String], pt: &str) -> Result<Self, EmbedError> {
        if base.iter().any(|l| l == pt) {
            return Err(EmbedError::PointNotFresh(pt.to_string()));
        }
        Ok(Self {
            base: base.to_vec(),
            pt: pt.to_string(),
        })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn pt(&self) -> &str {
        &self.pt
    }

    /// Base labels followed by the distinguished point.
    pub fn labels(&self) -> Vec<String> {
        let mut all = self.base.clone();
        all.push(self.pt.clone());
        all
    }
}

/// Construction tags, matching the CLI subcommands and the witness file tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Frechet,
    OnePoint,
    Discrete,
    C0,
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::Frechet => "frechet",
            Construction::OnePoint => "onepoint",
            Construction::Discrete => "discrete",
            Construction::C0 => "c0",
        }
    }
}

/// Witness of a coordinate embedding: one vector per input point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrechetWitness {
    pub input: MetricMatrix,
    /// Enumeration `q_0 .. q_{n-1}` the coordinates refer to.
    pub enumeration: Vec<String>,
    /// Per input point, in input label order.
    pub images: Vec<(String, BoundedVector)>,
}

/// Witness of the one-point-extension embedding: one metric on
/// `X + {pt}` per input point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePointWitness {
    pub input: MetricMatrix,
    pub space: PointedSpace,
    /// The constant added to distances into the extra point (always 1).
    pub shift: Rat,
    pub images: Vec<(String, MetricMatrix)>,
}

/// Witness of the block embedding of bounded vectors: one metric on the
/// plan's ground set per named input vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteWitness {
    pub inputs: Vec<(String, BoundedVector)>,
    pub plan: TruncationPlan,
    pub images: Vec<(String, MetricMatrix)>,
}

/// Witness of the paired-block embedding of a vector family: one metric on
/// `2M + 1` points per named input vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C0Witness {
    pub inputs: Vec<(String, BoundedVector)>,
    /// Number of two-point blocks (coordinates used).
    pub block_count: usize,
    /// Positivity shift applied to every input (recorded, so the witness is
    /// recomputable and the original family recoverable).
    pub shift: BoundedVector,
    pub images: Vec<(String, MetricMatrix)>,
}

/// The full output of one embedding run: input, provenance, per-point output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingWitness {
    Frechet(FrechetWitness),
    OnePoint(OnePointWitness),
    Discrete(DiscreteWitness),
    C0(C0Witness),
}

impl EmbeddingWitness {
    pub fn construction(&self) -> Construction {
        match self {
            EmbeddingWitness::Frechet(_) => Construction::Frechet,
            EmbeddingWitness::OnePoint(_) => Construction::OnePoint,
            EmbeddingWitness::Discrete(_) => Construction::Discrete,
            EmbeddingWitness::C0(_) => Construction::C0,
        }
    }

    /// Names of the embedded points, in witness order.
    pub fn point_names(&self) -> Vec<String> {
        match self {
            EmbeddingWitness::Frechet(w) => w.images.iter().map(|(p, _)| p.clone()).collect(),
            EmbeddingWitness::OnePoint(w) => w.images.iter().map(|(p, _)| p.clone()).collect(),
            EmbeddingWitness::Discrete(w) => w.images.iter().map(|(p, _)| p.clone()).collect(),
            EmbeddingWitness::C0(w) => w.images.iter().map(|(p, _)| p.clone()).collect(),
        }
    }
}

/// Errors shared by the embedding constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("the input must validate as a metric (got a pseudometric)")]
    NotAMetric,
    #[error("enumeration is not a permutation of the labels: {0}")]
    BadEnumeration(String),
    #[error("family of vectors is empty")]
    EmptyFamily,
    #[error("duplicate point name {0:?} in family")]
    DuplicatePointName(String),
    #[error("extra point label {0:?} collides with a base label")]
    PointNotFresh(String),
    #[error("vector length {got} does not match the plan's {expected} coordinates")]
    LengthMismatch { expected: usize, got: usize },
    #[error(
        "clamp level too small: recorded bound {bound} exceeds 2^N = {cap}; \
         the truncated distance would not be exact"
    )]
    ClampLevelTooSmall { bound: Box<Rat>, cap: Box<Rat> },
    #[error("block count must be at least 1")]
    ZeroBlockCount,
    #[error("block count {blocks} exceeds vector length {len}")]
    BlockCountExceedsLength { blocks: usize, len: usize },
    #[error("image of {point:?} failed validation: {report}")]
    InvalidImage {
        point: String,
        report: Box<ValidationReport>,
    },
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    Plan(#[from] PlanError),
}

/// Rebuilds a witness from its input and recorded provenance. The result is
/// bit-identical to the original for any witness this crate produced.
pub fn recompute_witness(witness: &EmbeddingWitness) -> Result<EmbeddingWitness, EmbedError> {
    match witness {
        EmbeddingWitness::Frechet(w) => {
            frechet_embed(&w.input, &w.enumeration).map(EmbeddingWitness::Frechet)
        }
        EmbeddingWitness::OnePoint(w) => one_point_embed(&w.input).map(EmbeddingWitness::OnePoint),
        EmbeddingWitness::Discrete(w) => {
            discrete_witness(&w.inputs, &w.plan).map(EmbeddingWitness::Discrete)
        }
        EmbeddingWitness::C0(w) => {
            c0::c0_embed_with_shift(&w.inputs, w.block_count, &w.shift).map(EmbeddingWitness::C0)
        }
    }
}

pub(crate) fn check_unique_names(family: &[(String, BoundedVector)]) -> Result<(), EmbedError> {
    let mut seen = std::collections::HashSet::new();
    for (name, _) in family {
        if !seen.insert(name.as_str()) {
            return Err(EmbedError::DuplicatePointName(name.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn bounded_vector_enforces_its_bound() {
        let err = BoundedVector::new(vec![rat_int(3)], rat_int(2)).unwrap_err();
        assert!(matches!(err, VectorError::BoundTooSmall { .. }));

        let v = BoundedVector::new(vec![rat_int(-3), rat(1, 2)], rat_int(4)).unwrap();
        assert_eq!(v.bound(), &rat_int(4));
        assert_eq!(v.sup_norm(), rat_int(3));

        let tight = BoundedVector::with_tight_bound(vec![rat_int(-3), rat(1, 2)]).unwrap();
        assert_eq!(tight.bound(), &rat_int(3));
    }

    #[test]
    fn bounded_vector_rejects_empty() {
        assert_eq!(
            BoundedVector::with_tight_bound(vec![]),
            Err(VectorError::Empty)
        );
    }

    #[test]
    fn sup_norm_distance_is_exact() {
        let a = BoundedVector::with_tight_bound(vec![rat_int(1), rat(1, 2)]).unwrap();
        let b = BoundedVector::with_tight_bound(vec![rat_int(-1), rat(3, 4)]).unwrap();
        assert_eq!(sup_norm_distance(&a, &b).unwrap(), rat_int(2));
        let short = BoundedVector::with_tight_bound(vec![rat_int(0)]).unwrap();
        assert!(matches!(
            sup_norm_distance(&a, &short),
            Err(VectorError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn pointed_space_picks_a_fresh_label() {
        let space = PointedSpace::over(&["a".into(), "b".into()]);
        assert_eq!(space.pt(), "pt");
        let clash = PointedSpace::over(&["pt".into(), "pt0".into()]);
        assert_eq!(clash.pt(), "pt1");
        assert_eq!(clash.labels().last().unwrap(), "pt1");
    }
}
