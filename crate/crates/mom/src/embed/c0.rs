//! Paired-block embedding of a finite family of vectors into metrics on
//! `2M + 1` points.
//!
//! The ground set is `M` two-point blocks `S_k = {2k, 2k+1}` plus one joined
//! point. Every input vector is first shifted by `l(s) = |L(s)| + 2^{-s}`,
//! where `L` is the pointwise minimum of the family, making every used
//! coordinate strictly positive. The image of a shifted vector `f` has
//! within-block distance `f(k)` on `S_k`, distance `max(U(k), U(l))` between
//! blocks, and distance `U(k)` to the joined point, where `U` is the
//! pointwise maximum of the shifted family. Only the within-block entries
//! depend on the individual vector, and the common shift cancels in
//! differences, so sup-distances between images equal sup-norm distances of
//! the original vectors over the first `M` coordinates, exactly.
//!
//! Without the shift the within-block entry for a nonpositive coordinate is
//! not a distance; [`c0_embed_without_shift`] exposes that failure mode and
//! surfaces the validation error instead of an image.

use num_traits::{Signed, Zero};

use crate::matrix::{DistanceTable, MatrixError, MetricKind, MetricMatrix};
use crate::rat::{pow2, Rat};

use super::{check_unique_names, BoundedVector, C0Witness, EmbedError, VectorError};

/// Ground set of the paired-block embedding: points `"0" .. "2M-1"` in
/// two-point blocks, plus the joined point `"omega"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaPlusOne {
    blocks: usize,
}

impl OmegaPlusOne {
    pub fn new(blocks: usize) -> Result<Self, EmbedError> {
        if blocks == 0 {
            return Err(EmbedError::ZeroBlockCount);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn omega_label(&self) -> &'static str {
        "omega"
    }

    /// Block `k` holds the points `2k` and `2k + 1`.
    pub fn block_points(&self, k: usize) -> (String, String) {
        ((2 * k).to_string(), (2 * k + 1).to_string())
    }

    /// All labels: the finite part in block order, then the joined point.
    pub fn labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = (0..2 * self.blocks).map(|p| p.to_string()).collect();
        labels.push(self.omega_label().to_string());
        labels
    }
}

/// Pointwise minimum of a nonempty family of equal-length vectors.
pub fn net_min(family: &[BoundedVector]) -> Result<BoundedVector, EmbedError> {
    let first = family.first().ok_or(EmbedError::EmptyFamily)?;
    let len = first.len();
    for vector in family {
        if vector.len() != len {
            return Err(EmbedError::Vector(VectorError::LengthMismatch {
                left: len,
                right: vector.len(),
            }));
        }
    }
    let values: Vec<Rat> = (0..len)
        .map(|s| {
            family
                .iter()
                .map(|vector| vector.get(s).clone())
                .min()
                .expect("family is nonempty")
        })
        .collect();
    Ok(BoundedVector::with_tight_bound(values).expect("len >= 1"))
}

/// Canonical positivity shift for a family truncated to `blocks`
/// coordinates: `l(s) = |L(s)| + 2^{-s}` with `L` the pointwise minimum.
fn canonical_shift(truncated: &[BoundedVector], blocks: usize) -> BoundedVector {
    let low = net_min(truncated).expect("caller checked the family");
    let values: Vec<Rat> = (0..blocks)
        .map(|s| low.get(s).abs() + pow2(-(s as i32)))
        .collect();
    BoundedVector::with_tight_bound(values).expect("blocks >= 1")
}

fn truncate_family(
    family: &[(String, BoundedVector)],
    blocks: usize,
) -> Result<Vec<BoundedVector>, EmbedError> {
    if family.is_empty() {
        return Err(EmbedError::EmptyFamily);
    }
    if blocks == 0 {
        return Err(EmbedError::ZeroBlockCount);
    }
    family
        .iter()
        .map(|(_, vector)| {
            if vector.len() < blocks {
                return Err(EmbedError::BlockCountExceedsLength {
                    blocks,
                    len: vector.len(),
                });
            }
            let values = vector.values()[..blocks].to_vec();
            Ok(BoundedVector::with_tight_bound(values).expect("blocks >= 1"))
        })
        .collect()
}

/// Embeds the family with the canonical positivity shift. Every image is a
/// valid metric and pairwise sup-distances equal sup-norm distances of the
/// inputs over the first `blocks` coordinates.
pub fn c0_embed(
    family: &[(String, BoundedVector)],
    blocks: usize,
) -> Result<C0Witness, EmbedError> {
    check_unique_names(family)?;
    let truncated = truncate_family(family, blocks)?;
    let shift = canonical_shift(&truncated, blocks);
    build_witness(family, blocks, &shift)
}

/// Embeds the family with the shift disabled. For inputs whose used
/// coordinates are all strictly positive this coincides with a shifted
/// embedding by zero; otherwise some image fails validation and the error
/// names the offending point.
pub fn c0_embed_without_shift(
    family: &[(String, BoundedVector)],
    blocks: usize,
) -> Result<C0Witness, EmbedError> {
    check_unique_names(family)?;
    truncate_family(family, blocks)?;
    let zero = BoundedVector::new(vec![Rat::zero(); blocks], Rat::zero()).expect("blocks >= 1");
    build_witness(family, blocks, &zero)
}

/// Rebuild entry point used by witness recomputation: applies a recorded
/// shift instead of deriving one.
pub(crate) fn c0_embed_with_shift(
    family: &[(String, BoundedVector)],
    blocks: usize,
    shift: &BoundedVector,
) -> Result<C0Witness, EmbedError> {
    check_unique_names(family)?;
    truncate_family(family, blocks)?;
    build_witness(family, blocks, shift)
}

fn build_witness(
    family: &[(String, BoundedVector)],
    blocks: usize,
    shift: &BoundedVector,
) -> Result<C0Witness, EmbedError> {
    if shift.len() != blocks {
        return Err(EmbedError::Vector(VectorError::LengthMismatch {
            left: blocks,
            right: shift.len(),
        }));
    }
    let truncated = truncate_family(family, blocks)?;
    let shifted: Vec<Vec<Rat>> = truncated
        .iter()
        .map(|vector| (0..blocks).map(|s| vector.get(s) + shift.get(s)).collect())
        .collect();
    // Pointwise maximum of the shifted family.
    let upper: Vec<Rat> = (0..blocks)
        .map(|s| {
            shifted
                .iter()
                .map(|values| values[s].clone())
                .max()
                .expect("family is nonempty")
        })
        .collect();

    let space = OmegaPlusOne::new(blocks)?;
    let labels = space.labels();
    let n = 2 * blocks + 1;
    let omega = n - 1;

    let images = family
        .iter()
        .zip(&shifted)
        .map(|((name, _), values)| {
            let mut entries = vec![vec![Rat::zero(); n]; n];
            for p in 0..n {
                for q in (p + 1)..n {
                    let value = if q == omega {
                        upper[p / 2].clone()
                    } else if p / 2 == q / 2 {
                        values[p / 2].clone()
                    } else {
                        upper[p / 2].clone().max(upper[q / 2].clone())
                    };
                    entries[p][q] = value.clone();
                    entries[q][p] = value;
                }
            }
            let table = DistanceTable::new(labels.clone(), entries)
                .expect("paired-block labels are unique");
            match MetricMatrix::new(table, MetricKind::Metric) {
                Ok(image) => Ok((name.clone(), image)),
                Err(MatrixError::Invalid(report)) => Err(EmbedError::InvalidImage {
                    point: name.clone(),
                    report,
                }),
                Err(MatrixError::Structure(_)) => unreachable!("table shape is fixed"),
            }
        })
        .collect::<Result<Vec<_>, EmbedError>>()?;

    Ok(C0Witness {
        inputs: family.to_vec(),
        block_count: blocks,
        shift: shift.clone(),
        images,
    })
}
