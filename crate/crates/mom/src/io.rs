//! File formats: JSON documents for matrices, vector families, embedding
//! witnesses, and reports.
//!
//! Rationals are written as strings (`"3/2"`, `"-1"`, `"0"`), never as
//! floats; integers are also accepted on input. Serialization is canonical
//! and field order is fixed, so files are diffable and
//! `parse(serialize(x)) == x` bit-exactly. Parsing back into domain types
//! re-validates every invariant: a witness file whose matrices violate the
//! metric axioms is rejected with the full validation report.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embed::{
    Block, BoundedVector, C0Witness, DiscreteWitness, EmbeddingWitness, FrechetWitness,
    OnePointWitness, PlanError, PointedSpace, TruncationPlan, VectorError,
};
use crate::matrix::{
    Axiom, DistanceTable, MatrixError, MetricKind, MetricMatrix, StructureError, ValidationReport,
    Violation,
};
use crate::oracle::{IsometryReport, WorstPair};
use crate::rat::{parse_rat, rat_to_string, Rat, RatParseError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("json parse failure: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Rational(#[from] RatParseError),
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("matrix fails validation: {0}")]
    Invalid(Box<ValidationReport>),
    #[error("image of {point:?} fails validation: {report}")]
    InvalidImage {
        point: String,
        report: Box<ValidationReport>,
    },
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
}

impl IoError {
    /// True when the failure is a metric-axiom violation rather than a
    /// malformed document; callers report these instead of refusing input.
    pub fn is_validation(&self) -> bool {
        matches!(self, IoError::Invalid(_) | IoError::InvalidImage { .. })
    }
}

/// Exact rational in its text form. JSON strings `"p/q"`/`"p"` and bare
/// integers are accepted; output is always the canonical string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatText(pub Rat);

impl From<&Rat> for RatText {
    fn from(value: &Rat) -> Self {
        RatText(value.clone())
    }
}

impl Serialize for RatText {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&rat_to_string(&self.0))
    }
}

struct RatTextVisitor;

impl Visitor<'_> for RatTextVisitor {
    type Value = RatText;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a rational as a string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, text: &str) -> Result<RatText, E> {
        parse_rat(text)
            .map(RatText)
            .map_err(|e| E::custom(format!("{e}")))
    }

    fn visit_i64<E: de::Error>(self, value: i64) -> Result<RatText, E> {
        Ok(RatText(crate::rat::rat_int(value)))
    }

    fn visit_u64<E: de::Error>(self, value: u64) -> Result<RatText, E> {
        i64::try_from(value)
            .map(|v| RatText(crate::rat::rat_int(v)))
            .map_err(|_| E::custom("integer too large"))
    }
}

impl<'de> Deserialize<'de> for RatText {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RatTextVisitor)
    }
}

fn rats_to_text(values: &[Rat]) -> Vec<RatText> {
    values.iter().map(RatText::from).collect()
}

fn text_to_rats(values: Vec<RatText>) -> Vec<Rat> {
    values.into_iter().map(|t| t.0).collect()
}

// ---------------------------------------------------------------------------
// Matrix files

/// On-disk form of a distance table with its claimed kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub labels: Vec<String>,
    pub kind: MetricKind,
    pub entries: Vec<Vec<RatText>>,
}

impl MatrixFile {
    pub fn from_matrix(matrix: &MetricMatrix) -> Self {
        Self::from_table(matrix.table(), matrix.kind())
    }

    pub fn from_table(table: &DistanceTable, kind: MetricKind) -> Self {
        MatrixFile {
            labels: table.labels().to_vec(),
            kind,
            entries: table
                .entries()
                .iter()
                .map(|row| rats_to_text(row))
                .collect(),
        }
    }

    /// Shape check only; axioms may fail. Used by `validate`, which wants to
    /// report violations rather than refuse the file.
    pub fn into_table(self) -> Result<(DistanceTable, MetricKind), IoError> {
        let entries = self.entries.into_iter().map(text_to_rats).collect();
        let table = DistanceTable::new(self.labels, entries)?;
        Ok((table, self.kind))
    }

    /// Shape check plus full axiom validation.
    pub fn into_matrix(self) -> Result<MetricMatrix, IoError> {
        let (table, kind) = self.into_table()?;
        MetricMatrix::new(table, kind).map_err(|e| match e {
            MatrixError::Structure(s) => IoError::Structure(s),
            MatrixError::Invalid(report) => IoError::Invalid(report),
        })
    }
}

// ---------------------------------------------------------------------------
// Vector files

/// One named vector: exact values plus its recorded sup-norm bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVectorFile {
    pub name: String,
    pub values: Vec<RatText>,
    pub bound: RatText,
}

impl NamedVectorFile {
    pub fn from_named(name: &str, vector: &BoundedVector) -> Self {
        NamedVectorFile {
            name: name.to_string(),
            values: rats_to_text(vector.values()),
            bound: RatText::from(vector.bound()),
        }
    }

    pub fn into_named(self) -> Result<(String, BoundedVector), IoError> {
        let vector = BoundedVector::new(text_to_rats(self.values), self.bound.0)?;
        Ok((self.name, vector))
    }
}

/// A family of named vectors, the input format of the vector embeddings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorFamilyFile {
    pub vectors: Vec<NamedVectorFile>,
}

impl VectorFamilyFile {
    pub fn from_family(family: &[(String, BoundedVector)]) -> Self {
        VectorFamilyFile {
            vectors: family
                .iter()
                .map(|(name, vector)| NamedVectorFile::from_named(name, vector))
                .collect(),
        }
    }

    pub fn into_family(self) -> Result<Vec<(String, BoundedVector)>, IoError> {
        let family: Vec<(String, BoundedVector)> = self
            .vectors
            .into_iter()
            .map(NamedVectorFile::into_named)
            .collect::<Result<_, _>>()?;
        let mut seen = std::collections::HashSet::new();
        for (name, _) in &family {
            if !seen.insert(name.clone()) {
                return Err(IoError::Inconsistent(format!(
                    "duplicate vector name {name:?}"
                )));
            }
        }
        Ok(family)
    }
}

/// An unnamed vector (used for recorded shifts).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlainVectorFile {
    pub values: Vec<RatText>,
    pub bound: RatText,
}

impl PlainVectorFile {
    pub fn from_vector(vector: &BoundedVector) -> Self {
        PlainVectorFile {
            values: rats_to_text(vector.values()),
            bound: RatText::from(vector.bound()),
        }
    }

    pub fn into_vector(self) -> Result<BoundedVector, IoError> {
        Ok(BoundedVector::new(text_to_rats(self.values), self.bound.0)?)
    }
}

// ---------------------------------------------------------------------------
// Truncation plans

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFile {
    pub labels: Vec<String>,
    pub pairing: Vec<usize>,
}

/// On-disk truncation plan. The clamp level is recorded redundantly for
/// readability and must equal `blocks.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanFile {
    pub coordinates: usize,
    pub clamp_level: u32,
    pub blocks: Vec<BlockFile>,
}

impl PlanFile {
    pub fn from_plan(plan: &TruncationPlan) -> Self {
        PlanFile {
            coordinates: plan.coordinates(),
            clamp_level: plan.clamp_level(),
            blocks: plan
                .blocks()
                .iter()
                .map(|b| BlockFile {
                    labels: b.labels.clone(),
                    pairing: b.pairing.clone(),
                })
                .collect(),
        }
    }

    pub fn into_plan(self) -> Result<TruncationPlan, IoError> {
        let blocks: Vec<Block> = self
            .blocks
            .into_iter()
            .map(|b| Block {
                labels: b.labels,
                pairing: b.pairing,
            })
            .collect();
        let plan = TruncationPlan::new(self.coordinates, blocks)?;
        if plan.clamp_level() != self.clamp_level {
            return Err(IoError::Inconsistent(format!(
                "clamp_level {} does not match {} blocks",
                self.clamp_level,
                plan.blocks().len()
            )));
        }
        Ok(plan)
    }
}

// ---------------------------------------------------------------------------
// Witness files

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrixFile {
    pub point: String,
    pub matrix: MatrixFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValuesFile {
    pub point: String,
    pub values: Vec<RatText>,
    pub bound: RatText,
}

/// On-disk embedding witness, tagged by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
pub enum WitnessFile {
    Frechet {
        input: MatrixFile,
        enumeration: Vec<String>,
        images: Vec<NamedValuesFile>,
    },
    Onepoint {
        input: MatrixFile,
        point_label: String,
        shift: RatText,
        images: Vec<NamedMatrixFile>,
    },
    Discrete {
        inputs: Vec<NamedVectorFile>,
        plan: PlanFile,
        images: Vec<NamedMatrixFile>,
    },
    C0 {
        inputs: Vec<NamedVectorFile>,
        block_count: usize,
        shift: PlainVectorFile,
        images: Vec<NamedMatrixFile>,
    },
}

fn images_to_files(images: &[(String, MetricMatrix)]) -> Vec<NamedMatrixFile> {
    images
        .iter()
        .map(|(point, matrix)| NamedMatrixFile {
            point: point.clone(),
            matrix: MatrixFile::from_matrix(matrix),
        })
        .collect()
}

fn files_to_images(files: Vec<NamedMatrixFile>) -> Result<Vec<(String, MetricMatrix)>, IoError> {
    files
        .into_iter()
        .map(|file| {
            let point = file.point;
            match file.matrix.into_matrix() {
                Ok(matrix) => Ok((point, matrix)),
                Err(IoError::Invalid(report)) => Err(IoError::InvalidImage { point, report }),
                Err(other) => Err(other),
            }
        })
        .collect()
}

fn inputs_to_files(inputs: &[(String, BoundedVector)]) -> Vec<NamedVectorFile> {
    inputs
        .iter()
        .map(|(name, vector)| NamedVectorFile::from_named(name, vector))
        .collect()
}

fn files_to_inputs(files: Vec<NamedVectorFile>) -> Result<Vec<(String, BoundedVector)>, IoError> {
    files.into_iter().map(NamedVectorFile::into_named).collect()
}

impl WitnessFile {
    pub fn from_witness(witness: &EmbeddingWitness) -> Self {
        match witness {
            EmbeddingWitness::Frechet(w) => WitnessFile::Frechet {
                input: MatrixFile::from_matrix(&w.input),
                enumeration: w.enumeration.clone(),
                images: w
                    .images
                    .iter()
                    .map(|(point, vector)| NamedValuesFile {
                        point: point.clone(),
                        values: rats_to_text(vector.values()),
                        bound: RatText::from(vector.bound()),
                    })
                    .collect(),
            },
            EmbeddingWitness::OnePoint(w) => WitnessFile::Onepoint {
                input: MatrixFile::from_matrix(&w.input),
                point_label: w.space.pt().to_string(),
                shift: RatText::from(&w.shift),
                images: images_to_files(&w.images),
            },
            EmbeddingWitness::Discrete(w) => WitnessFile::Discrete {
                inputs: inputs_to_files(&w.inputs),
                plan: PlanFile::from_plan(&w.plan),
                images: images_to_files(&w.images),
            },
            EmbeddingWitness::C0(w) => WitnessFile::C0 {
                inputs: inputs_to_files(&w.inputs),
                block_count: w.block_count,
                shift: PlainVectorFile::from_vector(&w.shift),
                images: images_to_files(&w.images),
            },
        }
    }

    /// Rebuilds the domain witness, re-validating every invariant. Axiom
    /// failures in recorded images surface as [`IoError::InvalidImage`].
    pub fn into_witness(self) -> Result<EmbeddingWitness, IoError> {
        match self {
            WitnessFile::Frechet {
                input,
                enumeration,
                images,
            } => {
                let input = input.into_matrix()?;
                let images = images
                    .into_iter()
                    .map(|file| {
                        let vector = BoundedVector::new(text_to_rats(file.values), file.bound.0)?;
                        Ok((file.point, vector))
                    })
                    .collect::<Result<_, IoError>>()?;
                Ok(EmbeddingWitness::Frechet(FrechetWitness {
                    input,
                    enumeration,
                    images,
                }))
            }
            WitnessFile::Onepoint {
                input,
                point_label,
                shift,
                images,
            } => {
                let input = input.into_matrix()?;
                let space = PointedSpace::with_pt(input.labels(), &point_label)
                    .map_err(|e| IoError::Inconsistent(e.to_string()))?;
                Ok(EmbeddingWitness::OnePoint(OnePointWitness {
                    input,
                    space,
                    shift: shift.0,
                    images: files_to_images(images)?,
                }))
            }
            WitnessFile::Discrete {
                inputs,
                plan,
                images,
            } => Ok(EmbeddingWitness::Discrete(DiscreteWitness {
                inputs: files_to_inputs(inputs)?,
                plan: plan.into_plan()?,
                images: files_to_images(images)?,
            })),
            WitnessFile::C0 {
                inputs,
                block_count,
                shift,
                images,
            } => Ok(EmbeddingWitness::C0(C0Witness {
                inputs: files_to_inputs(inputs)?,
                block_count,
                shift: shift.into_vector()?,
                images: files_to_images(images)?,
            })),
        }
    }
}

// ---------------------------------------------------------------------------
// Report files

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationFile {
    pub axiom: Axiom,
    pub points: Vec<String>,
    pub lhs: RatText,
    pub rhs: RatText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorstPairFile {
    pub u: String,
    pub v: String,
    pub claimed: RatText,
    pub achieved: RatText,
}

/// Machine-readable verdicts, tagged by report type. Field order is fixed
/// for stable diffs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "lowercase")]
pub enum ReportFile {
    Validation {
        ok: bool,
        violations: Vec<ViolationFile>,
    },
    Isometry {
        ok: bool,
        distortion: RatText,
        worst_pair: Option<Box<WorstPairFile>>,
    },
}

impl ReportFile {
    pub fn from_validation(report: &ValidationReport) -> Self {
        ReportFile::Validation {
            ok: report.ok(),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationFile {
                    axiom: v.axiom,
                    points: v.points.clone(),
                    lhs: RatText::from(&v.lhs),
                    rhs: RatText::from(&v.rhs),
                })
                .collect(),
        }
    }

    pub fn from_isometry(report: &IsometryReport) -> Self {
        ReportFile::Isometry {
            ok: report.ok(),
            distortion: RatText::from(&report.distortion),
            worst_pair: report.worst.as_ref().map(|w| {
                Box::new(WorstPairFile {
                    u: w.u.clone(),
                    v: w.v.clone(),
                    claimed: RatText::from(&w.claimed),
                    achieved: RatText::from(&w.achieved),
                })
            }),
        }
    }

    pub fn ok(&self) -> bool {
        match self {
            ReportFile::Validation { ok, .. } | ReportFile::Isometry { ok, .. } => *ok,
        }
    }

    /// Parses back into the domain report, checking the `ok` flag against
    /// its definition.
    pub fn into_validation(self) -> Result<ValidationReport, IoError> {
        match self {
            ReportFile::Validation { ok, violations } => {
                let report = ValidationReport {
                    violations: violations
                        .into_iter()
                        .map(|v| Violation {
                            axiom: v.axiom,
                            points: v.points,
                            lhs: v.lhs.0,
                            rhs: v.rhs.0,
                        })
                        .collect(),
                };
                if ok != report.ok() {
                    return Err(IoError::Inconsistent(
                        "ok flag contradicts the violation list".into(),
                    ));
                }
                Ok(report)
            }
            ReportFile::Isometry { .. } => Err(IoError::Inconsistent(
                "expected a validation report, found an isometry report".into(),
            )),
        }
    }

    pub fn into_isometry(self) -> Result<IsometryReport, IoError> {
        match self {
            ReportFile::Isometry {
                ok,
                distortion,
                worst_pair,
            } => {
                let report = IsometryReport {
                    distortion: distortion.0,
                    worst: worst_pair.map(|w| {
                        let w = *w;
                        WorstPair {
                            u: w.u,
                            v: w.v,
                            claimed: w.claimed.0,
                            achieved: w.achieved.0,
                        }
                    }),
                };
                if ok != report.ok() {
                    return Err(IoError::Inconsistent(
                        "ok flag contradicts the distortion".into(),
                    ));
                }
                Ok(report)
            }
            ReportFile::Validation { .. } => Err(IoError::Inconsistent(
                "expected an isometry report, found a validation report".into(),
            )),
        }
    }
}

// ---------------------------------------------------------------------------
// Document helpers

/// Canonical text form of any file document (pretty JSON plus newline).
pub fn to_document<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn from_document<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_document<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    std::fs::write(path, to_document(value)?)?;
    Ok(())
}

pub fn read_document<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path)?;
    from_document(&text)
}
