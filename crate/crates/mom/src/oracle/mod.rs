//! Independent brute-force verification.
//!
//! Everything here recomputes its claim from the defining formulas with its
//! own loops and folds, sharing no logic with the construction code it
//! checks: [`brute_sup`] against the sup-distance, [`exhaustive_triangle`]
//! against matrix validation, [`verify_isometry`] against the embedding
//! constructions. Agreement is always bit-exact, never approximate.

pub mod gen;

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::embed::{BoundedVector, EmbeddingWitness};
use crate::matrix::{DistanceTable, MetricMatrix};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("operands live on different ground sets")]
    GroundSetMismatch,
    #[error("witness construction expects a {expected} as the original input")]
    SourceKindMismatch { expected: &'static str },
    #[error("witness does not record the supplied original input")]
    InputMismatch,
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
}

/// Independent recomputation of the sup-distance: all ordered pairs,
/// scanned in reverse, folded through `max`. Must agree with
/// `algebra::sup_distance` bit-exactly on every input.
pub fn brute_sup(d: &MetricMatrix, e: &MetricMatrix) -> Result<Rat, OracleError> {
    if d.labels() != e.labels() {
        return Err(OracleError::GroundSetMismatch);
    }
    let n = d.len();
    let mut sup = Rat::zero();
    for i in (0..n).rev() {
        for j in (0..n).rev() {
            let gap = (d.entry(i, j) - e.entry(i, j)).abs();
            sup = sup.max(gap);
        }
    }
    Ok(sup)
}

/// One failed triangle inequality: `d(endpoints) > d(.., via) + d(via, ..)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleViolation {
    pub endpoints: (String, String),
    pub via: String,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Checks `d(i, j) <= d(i, k) + d(k, j)` over all ordered index triples,
/// directly in rational arithmetic, and returns every failure.
pub fn exhaustive_triangle(table: &DistanceTable) -> Vec<TriangleViolation> {
    let n = table.len();
    let labels = table.labels();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let rhs = table.entry(i, k) + table.entry(k, j);
                if table.entry(i, j) > &rhs {
                    violations.push(TriangleViolation {
                        endpoints: (labels[i].clone(), labels[j].clone()),
                        via: labels[k].clone(),
                        lhs: table.entry(i, j).clone(),
                        rhs,
                    });
                }
            }
        }
    }
    violations
}

/// The pair with the largest discrepancy between claimed and achieved
/// distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstPair {
    pub u: String,
    pub v: String,
    pub claimed: Rat,
    pub achieved: Rat,
}

/// Verdict of an isometry check: exact when the distortion is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryReport {
    /// Largest `|claimed - achieved|` over all pairs; 0 when exact.
    pub distortion: Rat,
    /// First maximizing pair; `None` only when the witness has fewer than
    /// two points.
    pub worst: Option<WorstPair>,
}

impl IsometryReport {
    pub fn ok(&self) -> bool {
        self.distortion.is_zero()
    }
}

impl fmt::Display for IsometryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "exact (distortion 0)")
        } else if let Some(worst) = &self.worst {
            write!(
                f,
                "distorted: pair ({}, {}) claimed {} achieved {} (distortion {})",
                worst.u, worst.v, worst.claimed, worst.achieved, self.distortion
            )
        } else {
            write!(f, "distorted (distortion {})", self.distortion)
        }
    }
}

/// The original input an embedding witness claims to embed.
#[derive(Debug, Clone, Copy)]
pub enum WitnessSource<'a> {
    Matrix(&'a MetricMatrix),
    Vectors(&'a [(String, BoundedVector)]),
}

/// Sup-norm of a coordinate range of `a - b`, recomputed with the oracle's
/// own reversed fold.
fn brute_sup_norm(a: &BoundedVector, b: &BoundedVector, coordinates: usize) -> Rat {
    let mut sup = Rat::zero();
    for s in (0..coordinates).rev() {
        let gap = (a.get(s) - b.get(s)).abs();
        sup = sup.max(gap);
    }
    sup
}

struct PairScan {
    distortion: Rat,
    worst: Option<WorstPair>,
}

impl PairScan {
    fn new() -> Self {
        Self {
            distortion: Rat::zero(),
            worst: None,
        }
    }

    fn record(&mut self, u: &str, v: &str, claimed: Rat, achieved: Rat) {
        let gap = (&claimed - &achieved).abs();
        if self.worst.is_none() || gap > self.distortion {
            self.distortion = gap;
            self.worst = Some(WorstPair {
                u: u.to_string(),
                v: v.to_string(),
                claimed,
                achieved,
            });
        }
    }

    fn finish(self) -> IsometryReport {
        IsometryReport {
            distortion: self.distortion,
            worst: self.worst,
        }
    }
}

/// Re-verifies an embedding witness against the original input: for every
/// pair of embedded points the claimed distance (recomputed from the
/// original) must equal the achieved sup-distance of the images (recomputed
/// by [`brute_sup`] or the oracle's own sup-norm fold).
pub fn verify_isometry(
    witness: &EmbeddingWitness,
    source: &WitnessSource<'_>,
) -> Result<IsometryReport, OracleError> {
    match (witness, source) {
        (EmbeddingWitness::Frechet(w), WitnessSource::Matrix(original)) => {
            if &w.input != *original {
                return Err(OracleError::InputMismatch);
            }
            check_alignment(original.labels(), w.images.iter().map(|(p, _)| p))?;
            let coordinates = w.images[0].1.len();
            for (_, vector) in &w.images {
                if vector.len() != coordinates {
                    return Err(OracleError::MalformedWitness(
                        "image vectors have differing lengths".into(),
                    ));
                }
            }
            let mut scan = PairScan::new();
            for i in 0..w.images.len() {
                for j in (i + 1)..w.images.len() {
                    let achieved = brute_sup_norm(&w.images[i].1, &w.images[j].1, coordinates);
                    scan.record(
                        &w.images[i].0,
                        &w.images[j].0,
                        original.entry(i, j).clone(),
                        achieved,
                    );
                }
            }
            Ok(scan.finish())
        }
        (EmbeddingWitness::OnePoint(w), WitnessSource::Matrix(original)) => {
            if &w.input != *original {
                return Err(OracleError::InputMismatch);
            }
            check_alignment(original.labels(), w.images.iter().map(|(p, _)| p))?;
            matrix_pair_scan(&w.images, |i, j| original.entry(i, j).clone())
        }
        (EmbeddingWitness::Discrete(w), WitnessSource::Vectors(family)) => {
            if w.inputs != *family {
                return Err(OracleError::InputMismatch);
            }
            let coordinates = family
                .first()
                .map(|(_, v)| v.len())
                .ok_or_else(|| OracleError::MalformedWitness("empty family".into()))?;
            if family.iter().any(|(_, v)| v.len() != coordinates) {
                return Err(OracleError::MalformedWitness(
                    "family vectors have differing lengths".into(),
                ));
            }
            check_alignment(
                &family.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
                w.images.iter().map(|(p, _)| p),
            )?;
            matrix_pair_scan(&w.images, |i, j| {
                brute_sup_norm(&family[i].1, &family[j].1, coordinates)
            })
        }
        (EmbeddingWitness::C0(w), WitnessSource::Vectors(family)) => {
            if w.inputs != *family {
                return Err(OracleError::InputMismatch);
            }
            if family.iter().any(|(_, v)| v.len() < w.block_count) {
                return Err(OracleError::MalformedWitness(
                    "family vector shorter than the block count".into(),
                ));
            }
            check_alignment(
                &family.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
                w.images.iter().map(|(p, _)| p),
            )?;
            matrix_pair_scan(&w.images, |i, j| {
                brute_sup_norm(&family[i].1, &family[j].1, w.block_count)
            })
        }
        (EmbeddingWitness::Frechet(_) | EmbeddingWitness::OnePoint(_), _) => {
            Err(OracleError::SourceKindMismatch { expected: "matrix" })
        }
        (EmbeddingWitness::Discrete(_) | EmbeddingWitness::C0(_), _) => {
            Err(OracleError::SourceKindMismatch {
                expected: "vector family",
            })
        }
    }
}

fn check_alignment<'a>(
    expected: &[String],
    actual: impl ExactSizeIterator<Item = &'a String>,
) -> Result<(), OracleError> {
    if actual.len() != expected.len() {
        return Err(OracleError::MalformedWitness(format!(
            "witness embeds {} points, input has {}",
            actual.len(),
            expected.len()
        )));
    }
    for (have, want) in actual.zip(expected) {
        if have != want {
            return Err(OracleError::MalformedWitness(format!(
                "witness point {have:?} does not match input point {want:?}"
            )));
        }
    }
    Ok(())
}

fn matrix_pair_scan(
    images: &[(String, MetricMatrix)],
    claimed: impl Fn(usize, usize) -> Rat,
) -> Result<IsometryReport, OracleError> {
    if let Some((_, first)) = images.first() {
        for (_, image) in images {
            if image.labels() != first.labels() {
                return Err(OracleError::MalformedWitness(
                    "images live on different ground sets".into(),
                ));
            }
        }
    }
    let mut scan = PairScan::new();
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            let achieved = brute_sup(&images[i].1, &images[j].1)?;
            scan.record(&images[i].0, &images[j].0, claimed(i, j), achieved);
        }
    }
    Ok(scan.finish())
}
