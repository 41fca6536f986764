//! The sup-metric between (pseudo)metrics on a common ground set, and the
//! elementary operations on metric matrices: entrywise sum, pullback along a
//! label map, restriction to a subset, banded construction, diameter.
//!
//! Everything here is pure and exact; identical inputs give bit-identical
//! outputs.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::matrix::{DistanceTable, MatrixError, MetricKind, MetricMatrix, StructureError};
use crate::rat::Rat;

/// Detail of an out-of-band entry refused by [`band_metric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandViolation {
    pub a: String,
    pub b: String,
    pub value: Rat,
    pub low: Rat,
    pub high: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live on different ground sets")]
    GroundSetMismatch,
    #[error("the second summand must be a metric, got a pseudometric")]
    SummandNotMetric,
    #[error("label {0:?} is not a point of the target space")]
    UnknownLabel(String),
    #[error("duplicate domain label {0:?} in map")]
    DuplicateDomainLabel(String),
    #[error("the restriction subset is empty")]
    EmptySubset,
    #[error("band bound must be positive, got {0}")]
    BandBoundNotPositive(Rat),
    #[error("band table has nonzero diagonal at {0:?}")]
    BandDiagonalNonzero(String),
    #[error("band table is asymmetric at ({0:?}, {1:?})")]
    BandAsymmetric(String, String),
    #[error(
        "value {} at ({:?}, {:?}) is outside the band [{}, {}]",
        .0.value, .0.a, .0.b, .0.low, .0.high
    )]
    BandViolation(Box<BandViolation>),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn require_same_ground_set(d: &MetricMatrix, e: &MetricMatrix) -> Result<(), AlgebraError> {
    if d.labels() != e.labels() {
        return Err(AlgebraError::GroundSetMismatch);
    }
    Ok(())
}

/// Sup-metric `D(d, e) = max over pairs of |d(x, y) - e(x, y)|`, exact.
///
/// Pairs are scanned in index order `(i, j)`, `i < j`; a single point has no
/// pairs and the distance is 0.
pub fn sup_distance(d: &MetricMatrix, e: &MetricMatrix) -> Result<Rat, AlgebraError> {
    Ok(sup_distance_with_pair(d, e)?.0)
}

/// As [`sup_distance`], also reporting the first maximizing pair for
/// diagnostics (`None` for a single-point ground set).
pub fn sup_distance_with_pair(
    d: &MetricMatrix,
    e: &MetricMatrix,
) -> Result<(Rat, Option<(String, String)>), AlgebraError> {
    require_same_ground_set(d, e)?;
    let n = d.len();
    let mut best = Rat::zero();
    let mut pair = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (d.entry(i, j) - e.entry(i, j)).abs();
            if gap > best {
                best = gap;
                pair = Some((d.labels()[i].clone(), d.labels()[j].clone()));
            } else if pair.is_none() {
                pair = Some((d.labels()[i].clone(), d.labels()[j].clone()));
            }
        }
    }
    Ok((best, pair))
}

/// Entrywise sum of a pseudometric and a metric; the result is a metric.
///
/// `summand` may itself be a metric (every metric is a pseudometric), but
/// `base` must be a metric.
pub fn add(summand: &MetricMatrix, base: &MetricMatrix) -> Result<MetricMatrix, AlgebraError> {
    require_same_ground_set(summand, base)?;
    if base.kind() != MetricKind::Metric {
        return Err(AlgebraError::SummandNotMetric);
    }
    let n = summand.len();
    let entries: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| summand.entry(i, j) + base.entry(i, j))
                .collect()
        })
        .collect();
    let table = DistanceTable::new(summand.labels().to_vec(), entries)?;
    Ok(MetricMatrix::new(table, MetricKind::Metric)
        .expect("sum of a pseudometric and a metric is a metric"))
}

/// A total map between label sets, `domain label -> target label`, kept in
/// domain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    pairs: Vec<(String, String)>,
}

impl LabelMap {
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for (from, _) in &pairs {
            if !seen.insert(from.as_str()) {
                return Err(AlgebraError::DuplicateDomainLabel(from.clone()));
            }
        }
        Ok(Self { pairs })
    }

    pub fn identity(labels: &[String]) -> Self {
        Self {
            pairs: labels.iter().map(|l| (l.clone(), l.clone())).collect(),
        }
    }

    pub fn constant(labels: &[String], target: &str) -> Self {
        Self {
            pairs: labels
                .iter()
                .map(|l| (l.clone(), target.to_string()))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.pairs.iter().map(|(from, _)| from.as_str())
    }

    /// True when every label of `codomain` is hit.
    pub fn is_surjective_onto(&self, codomain: &[String]) -> bool {
        let image: HashSet<&str> = self.pairs.iter().map(|(_, to)| to.as_str()).collect();
        codomain.iter().all(|l| image.contains(l.as_str()))
    }
}

/// Pullback `f*d(x, y) = d(f(x), f(y))` along a label map. The result is a
/// pseudometric on the domain of `f`; when `f` is surjective the pullback
/// preserves sup-distances exactly.
pub fn pullback(f: &LabelMap, d: &MetricMatrix) -> Result<MetricMatrix, AlgebraError> {
    if f.pairs().is_empty() {
        return Err(AlgebraError::Structure(StructureError::Empty));
    }
    let targets: Vec<usize> = f
        .pairs()
        .iter()
        .map(|(_, to)| {
            d.label_index(to)
                .ok_or_else(|| AlgebraError::UnknownLabel(to.clone()))
        })
        .collect::<Result<_, _>>()?;
    let labels: Vec<String> = f.pairs().iter().map(|(from, _)| from.clone()).collect();
    let entries: Vec<Vec<Rat>> = targets
        .iter()
        .map(|&ti| targets.iter().map(|&tj| d.entry(ti, tj).clone()).collect())
        .collect();
    let table = DistanceTable::new(labels, entries)?;
    Ok(MetricMatrix::new(table, MetricKind::Pseudometric)
        .expect("pullback of a pseudometric is a pseudometric"))
}

/// Restriction `d -> d` on a subset of the points, keeping the original
/// label order. The subset is treated as a set; it must be nonempty and
/// contained in the ground set.
pub fn restrict(d: &MetricMatrix, subset: &[String]) -> Result<MetricMatrix, AlgebraError> {
    if subset.is_empty() {
        return Err(AlgebraError::EmptySubset);
    }
    let mut wanted = HashSet::new();
    for label in subset {
        if d.label_index(label).is_none() {
            return Err(AlgebraError::UnknownLabel(label.clone()));
        }
        wanted.insert(label.as_str());
    }
    let keep: Vec<usize> = (0..d.len())
        .filter(|&i| wanted.contains(d.labels()[i].as_str()))
        .collect();
    let labels: Vec<String> = keep.iter().map(|&i| d.labels()[i].clone()).collect();
    let entries: Vec<Vec<Rat>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| d.entry(i, j).clone()).collect())
        .collect();
    let table = DistanceTable::new(labels, entries)?;
    Ok(MetricMatrix::new(table, d.kind()).expect("restriction of a valid matrix is valid"))
}

/// Promotes a symmetric zero-diagonal table with off-diagonal values in
/// `[low, 2*low]` to a metric. Values in that band satisfy the triangle
/// inequality automatically (`w(x,y) <= 2*low = low + low <= w(x,z) + w(z,y)`);
/// any out-of-band value refuses the construction.
pub fn band_metric(table: DistanceTable, low: &Rat) -> Result<MetricMatrix, AlgebraError> {
    if !low.is_positive() {
        return Err(AlgebraError::BandBoundNotPositive(low.clone()));
    }
    let high = low + low;
    let n = table.len();
    for i in 0..n {
        if !table.entry(i, i).is_zero() {
            return Err(AlgebraError::BandDiagonalNonzero(table.labels()[i].clone()));
        }
        for j in (i + 1)..n {
            if table.entry(i, j) != table.entry(j, i) {
                return Err(AlgebraError::BandAsymmetric(
                    table.labels()[i].clone(),
                    table.labels()[j].clone(),
                ));
            }
            let value = table.entry(i, j);
            if value < low || value > &high {
                return Err(AlgebraError::BandViolation(Box::new(BandViolation {
                    a: table.labels()[i].clone(),
                    b: table.labels()[j].clone(),
                    value: value.clone(),
                    low: low.clone(),
                    high,
                })));
            }
        }
    }
    match MetricMatrix::new(table, MetricKind::Metric) {
        Ok(m) => Ok(m),
        Err(MatrixError::Invalid(report)) => {
            unreachable!("in-band table failed validation: {report}")
        }
        Err(MatrixError::Structure(e)) => Err(e.into()),
    }
}

/// Largest entry of the table (0 for a single point).
pub fn diameter(d: &MetricMatrix) -> Rat {
    let n = d.len();
    let mut best = Rat::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            if d.entry(i, j) > &best {
                best = d.entry(i, j).clone();
            }
        }
    }
    best
}
