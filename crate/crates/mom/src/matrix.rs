//! Finite (pseudo)metric matrices and exhaustive axiom validation.
//!
//! A [`MetricMatrix`] is an `n x n` table of exact rationals over labeled
//! points. Construction always runs the full axiom check, so a value of this
//! type is a certificate: zero diagonal, symmetry, nonnegativity, the
//! triangle inequality over every index triple, and (for the `metric` kind)
//! positivity between distinct points.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::Rat;

/// Whether a table claims to be a metric or merely a pseudometric
/// (a pseudometric may vanish between distinct points).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Metric,
    Pseudometric,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Metric => write!(f, "metric"),
            MetricKind::Pseudometric => write!(f, "pseudometric"),
        }
    }
}

/// Shape-level error: the table is not even a candidate for validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("a distance table needs at least one point")]
    Empty,
    #[error("table is not square: {rows} rows for {labels} labels, row {row} has {cols} entries")]
    NotSquare {
        labels: usize,
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

/// A square table of exact rationals over unique labels.
///
/// Structurally sound by construction; the metric axioms are *not* implied.
/// Run [`validate`] to obtain a [`ValidationReport`], or promote the table
/// with [`MetricMatrix::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    labels: Vec<String>,
    entries: Vec<Vec<Rat>>,
}

impl DistanceTable {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<Rat>>) -> Result<Self, StructureError> {
        if labels.is_empty() {
            return Err(StructureError::Empty);
        }
        let n = labels.len();
        if entries.len() != n {
            return Err(StructureError::NotSquare {
                labels: n,
                rows: entries.len(),
                row: 0,
                cols: entries.first().map_or(0, Vec::len),
            });
        }
        for (row, cols) in entries.iter().enumerate() {
            if cols.len() != n {
                return Err(StructureError::NotSquare {
                    labels: n,
                    rows: entries.len(),
                    row,
                    cols: cols.len(),
                });
            }
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(StructureError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels, entries })
    }

    /// Builds an all-zero table over the given labels.
    pub fn zero(labels: Vec<String>) -> Result<Self, StructureError> {
        let n = labels.len();
        let entries = vec![vec![Rat::zero(); n]; n];
        Self::new(labels, entries)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn into_parts(self) -> (Vec<String>, Vec<Vec<Rat>>) {
        (self.labels, self.entries)
    }
}

/// Axioms checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ZeroDiagonal,
    Symmetry,
    Nonnegativity,
    Positivity,
    Triangle,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::ZeroDiagonal => "zero_diagonal",
            Axiom::Symmetry => "symmetry",
            Axiom::Nonnegativity => "nonnegativity",
            Axiom::Positivity => "positivity",
            Axiom::Triangle => "triangle",
        };
        write!(f, "{name}")
    }
}

/// One violated axiom instance: the offending labels (a pair, or a triple
/// `(i, j, via k)` for the triangle inequality) with both sides of the
/// failed relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub points: Vec<String>,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Exhaustive validation verdict: every violated axiom instance, in a
/// deterministic scan order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        write!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            write!(
                f,
                " [{} at ({}) lhs {} rhs {}]",
                v.axiom,
                v.points.join(","),
                v.lhs,
                v.rhs
            )?;
        }
        Ok(())
    }
}

/// Checks every axiom instance of `kind` on `table`.
///
/// The scan is exhaustive: the diagonal, every ordered pair, and every
/// ordered index triple for the triangle inequality. The report therefore
/// lists *all* failures, not just the first.
pub fn validate(table: &DistanceTable, kind: MetricKind) -> ValidationReport {
    let n = table.len();
    let entries = table.entries();
    let labels = table.labels();
    let mut violations = Vec::new();

    for i in 0..n {
        if !entries[i][i].is_zero() {
            violations.push(Violation {
                axiom: Axiom::ZeroDiagonal,
                points: vec![labels[i].clone(), labels[i].clone()],
                lhs: entries[i][i].clone(),
                rhs: Rat::zero(),
            });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if entries[i][j] != entries[j][i] {
                violations.push(Violation {
                    axiom: Axiom::Symmetry,
                    points: vec![labels[i].clone(), labels[j].clone()],
                    lhs: entries[i][j].clone(),
                    rhs: entries[j][i].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && entries[i][j].is_negative() {
                violations.push(Violation {
                    axiom: Axiom::Nonnegativity,
                    points: vec![labels[i].clone(), labels[j].clone()],
                    lhs: entries[i][j].clone(),
                    rhs: Rat::zero(),
                });
            }
        }
    }
    if kind == MetricKind::Metric {
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i][j].is_zero() {
                    violations.push(Violation {
                        axiom: Axiom::Positivity,
                        points: vec![labels[i].clone(), labels[j].clone()],
                        lhs: entries[i][j].clone(),
                        rhs: Rat::zero(),
                    });
                }
            }
        }
    }
    triangle_scan(table, &mut violations);
    ValidationReport { violations }
}

/// Triangle scan over all ordered triples, on integers scaled by the common
/// denominator. Scaling by a positive constant preserves every comparison
/// exactly; the narrow-integer fast path avoids per-triple bigint work.
#[allow(clippy::needless_range_loop)]
fn triangle_scan(table: &DistanceTable, violations: &mut Vec<Violation>) {
    let n = table.len();
    let entries = table.entries();

    let mut lcm = BigInt::one();
    for row in entries {
        for value in row {
            lcm = lcm.lcm(value.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|value| value.numer() * (&lcm / value.denom()))
                .collect()
        })
        .collect();

    let narrow: Option<Vec<Vec<i128>>> = scaled
        .iter()
        .map(|row| {
            row.iter()
                .map(|value| {
                    i128::try_from(value)
                        .ok()
                        .filter(|v| v.unsigned_abs() < (i128::MAX as u128) / 2)
                })
                .collect()
        })
        .collect();

    let mut bad_triples: Vec<(usize, usize, usize)> = Vec::new();
    match narrow {
        Some(ints) => {
            for i in 0..n {
                for j in 0..n {
                    let dij = ints[i][j];
                    for k in 0..n {
                        if dij > ints[i][k] + ints[k][j] {
                            bad_triples.push((i, j, k));
                        }
                    }
                }
            }
        }
        None => {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if scaled[i][j] > &scaled[i][k] + &scaled[k][j] {
                            bad_triples.push((i, j, k));
                        }
                    }
                }
            }
        }
    }

    let labels = table.labels();
    for (i, j, k) in bad_triples {
        violations.push(Violation {
            axiom: Axiom::Triangle,
            points: vec![labels[i].clone(), labels[j].clone(), labels[k].clone()],
            lhs: entries[i][j].clone(),
            rhs: &entries[i][k] + &entries[k][j],
        });
    }
}

/// Construction failure for a [`MetricMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("axiom validation failed: {0}")]
    Invalid(Box<ValidationReport>),
}

/// A validated (pseudo)metric on a finite labeled set.
///
/// Values of this type always satisfy the axioms of their [`MetricKind`];
/// both constructors run [`validate`] and refuse violating tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricMatrix {
    table: DistanceTable,
    kind: MetricKind,
}

impl MetricMatrix {
    pub fn new(table: DistanceTable, kind: MetricKind) -> Result<Self, MatrixError> {
        let report = validate(&table, kind);
        if !report.ok() {
            return Err(MatrixError::Invalid(Box::new(report)));
        }
        Ok(Self { table, kind })
    }

    /// Shape check plus axiom validation in one step.
    pub fn from_parts(
        labels: Vec<String>,
        entries: Vec<Vec<Rat>>,
        kind: MetricKind,
    ) -> Result<Self, MatrixError> {
        Self::new(DistanceTable::new(labels, entries)?, kind)
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn table(&self) -> &DistanceTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        self.table.labels()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        self.table.entry(i, j)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.table.label_index(label)
    }

    /// Distance between two labeled points, if both labels exist.
    pub fn distance(&self, a: &str, b: &str) -> Option<&Rat> {
        let i = self.label_index(a)?;
        let j = self.label_index(b)?;
        Some(self.entry(i, j))
    }
}
