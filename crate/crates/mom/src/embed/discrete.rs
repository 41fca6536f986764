//! Block embedding of bounded vectors into metrics on a finite discrete set.
//!
//! The ground set is partitioned into blocks `S_0 .. S_N`. Each block `i`
//! carries a surjection from its point pairs onto the coordinate indices
//! `0 .. M-1`; the distance inside block `i` between the pair assigned to
//! coordinate `s` is `clamp(2^i, a(s)) + 3 * 2^i`, which lies in
//! `[2^{i+1}, 2^{i+2}]` and is therefore automatically a metric on the
//! block. Distances between different blocks are the constant
//! `max(2^{i+2}, 2^{j+2})`, independent of the input, so they cancel when
//! two images are compared.
//!
//! When `2^N` dominates the recorded bounds of two vectors, the clamp at the
//! top block is the identity and the block's pair surjection makes every
//! coordinate difference visible: the sup-distance between the two images
//! equals the sup-norm of the vector difference, exactly. Plans whose clamp
//! level is too small for an input are refused rather than degraded to an
//! approximation.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{DistanceTable, MetricKind, MetricMatrix};
use crate::rat::{pow2, Rat};

use super::{check_unique_names, BoundedVector, DiscreteWitness, EmbedError};

/// `R_t`: clamps `x` into `[-t, t]`. 1-Lipschitz, the identity on `[-t, t]`.
///
/// Requires `t >= 0`.
pub fn clamp(t: &Rat, x: &Rat) -> Rat {
    assert!(!t.is_negative(), "clamp threshold must be nonnegative");
    let neg = -t;
    if x >= t {
        t.clone()
    } else if x <= &neg {
        neg
    } else {
        x.clone()
    }
}

/// Invariant failure in a [`TruncationPlan`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("a plan needs at least one coordinate")]
    ZeroCoordinates,
    #[error("a plan needs at least one block")]
    NoBlocks,
    #[error(
        "block {block} has {size} points, but {required} coordinates need C(m,2) >= {required}"
    )]
    BlockTooSmall {
        block: usize,
        size: usize,
        required: usize,
    },
    #[error("block {block} pairing has {got} entries, expected C({size},2) = {expected}")]
    PairingWrongLength {
        block: usize,
        size: usize,
        expected: usize,
        got: usize,
    },
    #[error("block {block} pairing assigns coordinate {index}, out of range for {coordinates}")]
    PairingIndexOutOfRange {
        block: usize,
        index: usize,
        coordinates: usize,
    },
    #[error("block {block} pairing misses coordinate {missing}: not surjective")]
    PairingNotSurjective { block: usize, missing: usize },
    #[error("label {0:?} appears in more than one block position")]
    DuplicateLabel(String),
}

/// One block of the plan: its point labels and the pair-to-coordinate
/// assignment, indexed by the lexicographic enumeration of point pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub labels: Vec<String>,
    pub pairing: Vec<usize>,
}

fn pairs_of(size: usize) -> usize {
    size * size.saturating_sub(1) / 2
}

/// Index of the pair `(u, v)`, `u < v`, in the lexicographic enumeration of
/// pairs from `0..size`.
fn pair_rank(size: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < size);
    u * (size - 1) - u * (u.saturating_sub(1)) / 2 + (v - u - 1)
}

/// Finite surrogate of a partition into blocks with pair surjections: block
/// label sets `S_0 .. S_N`, a surjection from each block's pairs onto the
/// coordinates `0 .. M-1`, and the clamp level `N` (the number of blocks
/// minus one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationPlan {
    coordinates: usize,
    blocks: Vec<Block>,
}

impl TruncationPlan {
    pub fn new(coordinates: usize, blocks: Vec<Block>) -> Result<Self, PlanError> {
        if coordinates == 0 {
            return Err(PlanError::ZeroCoordinates);
        }
        if blocks.is_empty() {
            return Err(PlanError::NoBlocks);
        }
        let mut seen = std::collections::HashSet::new();
        for (b, block) in blocks.iter().enumerate() {
            let size = block.labels.len();
            let expected = pairs_of(size);
            if expected < coordinates {
                return Err(PlanError::BlockTooSmall {
                    block: b,
                    size,
                    required: coordinates,
                });
            }
            if block.pairing.len() != expected {
                return Err(PlanError::PairingWrongLength {
                    block: b,
                    size,
                    expected,
                    got: block.pairing.len(),
                });
            }
            let mut hit = vec![false; coordinates];
            for &index in &block.pairing {
                if index >= coordinates {
                    return Err(PlanError::PairingIndexOutOfRange {
                        block: b,
                        index,
                        coordinates,
                    });
                }
                hit[index] = true;
            }
            if let Some(missing) = hit.iter().position(|&h| !h) {
                return Err(PlanError::PairingNotSurjective { block: b, missing });
            }
            for label in &block.labels {
                if !seen.insert(label.clone()) {
                    return Err(PlanError::DuplicateLabel(label.clone()));
                }
            }
        }
        Ok(Self {
            coordinates,
            blocks,
        })
    }

    /// Number of vector coordinates the plan serves (`M`).
    pub fn coordinates(&self) -> usize {
        self.coordinates
    }

    /// Clamp level `N`; the plan holds blocks `S_0 .. S_N`.
    pub fn clamp_level(&self) -> u32 {
        (self.blocks.len() - 1) as u32
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.labels.len()).collect()
    }

    /// All ground-set labels, block by block.
    pub fn ground_labels(&self) -> Vec<String> {
        self.blocks
            .iter()
            .flat_map(|b| b.labels.iter().cloned())
            .collect()
    }

    /// Largest input magnitude the plan embeds exactly: `2^N`.
    pub fn clamp_cap(&self) -> Rat {
        pow2(self.clamp_level() as i32)
    }
}

/// Builds the canonical plan for `coordinates`-long vectors bounded by
/// `bound`: the clamp level is the smallest `N` with `2^N >= bound`, every
/// block has the smallest size `m` with `C(m, 2) >= coordinates`, and each
/// block's pairing enumerates its pairs lexicographically, assigning
/// coordinates cyclically.
pub fn plan_truncation(coordinates: usize, bound: &Rat) -> Result<TruncationPlan, PlanError> {
    if coordinates == 0 {
        return Err(PlanError::ZeroCoordinates);
    }
    let mut level = 0u32;
    let mut cap = Rat::one();
    while &cap < bound {
        level += 1;
        cap = pow2(level as i32);
    }
    let mut size = 2usize;
    while pairs_of(size) < coordinates {
        size += 1;
    }
    let blocks = (0..=level)
        .map(|i| {
            let labels = (0..size).map(|j| format!("s{i}_{j}")).collect();
            let pairing = (0..pairs_of(size)).map(|t| t % coordinates).collect();
            Block { labels, pairing }
        })
        .collect();
    TruncationPlan::new(coordinates, blocks)
}

/// Embeds one bounded vector as a metric on the plan's ground set.
///
/// Refused unless `plan.coordinates()` matches the vector length and
/// `2^N >= a.bound()` (the recorded bound, not the actual sup-norm), so that
/// the top block's clamp is the identity and the result is exact.
pub fn discrete_embed(
    a: &BoundedVector,
    plan: &TruncationPlan,
) -> Result<MetricMatrix, EmbedError> {
    if a.len() != plan.coordinates() {
        return Err(EmbedError::LengthMismatch {
            expected: plan.coordinates(),
            got: a.len(),
        });
    }
    let cap = plan.clamp_cap();
    if a.bound() > &cap {
        return Err(EmbedError::ClampLevelTooSmall {
            bound: Box::new(a.bound().clone()),
            cap: Box::new(cap),
        });
    }

    // Ground-set index -> (block, index within block).
    let mut position: Vec<(usize, usize)> = Vec::new();
    for (b, block) in plan.blocks().iter().enumerate() {
        for within in 0..block.labels.len() {
            position.push((b, within));
        }
    }
    let thresholds: Vec<Rat> = (0..plan.blocks().len()).map(|i| pow2(i as i32)).collect();
    // 3 * 2^i, the shift placing block i's values inside [2^{i+1}, 2^{i+2}].
    let offsets: Vec<Rat> = thresholds.iter().map(|t| t + t + t).collect();
    let cross: Vec<Rat> = (0..plan.blocks().len())
        .map(|i| pow2(i as i32 + 2))
        .collect();

    let n = position.len();
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for p in 0..n {
        for q in (p + 1)..n {
            let (bp, wp) = position[p];
            let (bq, wq) = position[q];
            let value = if bp == bq {
                let block = &plan.blocks()[bp];
                let rank = pair_rank(block.labels.len(), wp, wq);
                let coordinate = block.pairing[rank];
                clamp(&thresholds[bp], a.get(coordinate)) + &offsets[bp]
            } else {
                cross[bp].clone().max(cross[bq].clone())
            };
            entries[p][q] = value.clone();
            entries[q][p] = value;
        }
    }

    let table = DistanceTable::new(plan.ground_labels(), entries)
        .expect("plan labels are unique and the table is square");
    Ok(MetricMatrix::new(table, MetricKind::Metric)
        .expect("block values lie in [2^{i+1}, 2^{i+2}] and cross distances dominate diameters"))
}

/// Embeds a named family of vectors with one shared plan, producing a
/// witness whose images all live on the same ground set.
pub fn discrete_witness(
    family: &[(String, BoundedVector)],
    plan: &TruncationPlan,
) -> Result<DiscreteWitness, EmbedError> {
    if family.is_empty() {
        return Err(EmbedError::EmptyFamily);
    }
    check_unique_names(family)?;
    let images = family
        .iter()
        .map(|(name, vector)| Ok((name.clone(), discrete_embed(vector, plan)?)))
        .collect::<Result<_, EmbedError>>()?;
    Ok(DiscreteWitness {
        inputs: family.to_vec(),
        plan: plan.clone(),
        images,
    })
}
