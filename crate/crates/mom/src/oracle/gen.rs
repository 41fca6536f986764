//! Seeded deterministic generators for test corpora: random metrics via
//! shortest-path closure, band maps, and bounded vectors. No platform
//! randomness; identical configs give identical output, on every platform.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embed::BoundedVector;
use crate::matrix::{DistanceTable, MetricKind, MetricMatrix};
use crate::rat::{rat, Rat};

/// Deterministic generator parameters. The seed fully determines the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Ground-set size for matrices.
    pub points: usize,
    /// Vector length.
    pub coordinates: usize,
    /// Numerator magnitudes are drawn from `1..=numerator_cap`
    /// (or `-cap..=cap` for signed values).
    pub numerator_cap: u64,
    /// Denominators are drawn from `1..=denominator_cap`.
    pub denominator_cap: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            points: 4,
            coordinates: 4,
            numerator_cap: 8,
            denominator_cap: 16,
        }
    }
}

fn rng_for(cfg: &GeneratorConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

fn draw_positive(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Rat {
    let num = rng.gen_range(1..=cfg.numerator_cap) as i64;
    let den = rng.gen_range(1..=cfg.denominator_cap) as i64;
    rat(num, den)
}

fn draw_signed(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Rat {
    let cap = cfg.numerator_cap as i64;
    let num = rng.gen_range(-cap..=cap);
    let den = rng.gen_range(1..=cfg.denominator_cap) as i64;
    rat(num, den)
}

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// All-pairs shortest-path relaxation `d(i,j) <- min(d(i,j), d(i,k)+d(k,j))`
/// to a fixed point. For a symmetric positive table this is the standard
/// exact repair: the largest metric below the input.
pub fn metric_closure(entries: &mut [Vec<Rat>]) {
    let n = entries.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &entries[i][k] + &entries[k][j];
                if via < entries[i][j] {
                    entries[i][j] = via;
                }
            }
        }
    }
}

/// Draws a symmetric positive table and repairs it into a metric by
/// shortest-path closure. Deterministic per config.
#[allow(clippy::needless_range_loop)]
pub fn gen_random_metric(cfg: &GeneratorConfig) -> MetricMatrix {
    assert!(cfg.points >= 1, "a metric space needs at least one point");
    assert!(cfg.numerator_cap >= 1 && cfg.denominator_cap >= 1);
    let n = cfg.points;
    let mut rng = rng_for(cfg);
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let value = draw_positive(&mut rng, cfg);
            entries[i][j] = value.clone();
            entries[j][i] = value;
        }
    }
    metric_closure(&mut entries);
    MetricMatrix::from_parts(point_labels(n), entries, MetricKind::Metric)
        .expect("shortest-path closure of a positive symmetric table is a metric")
}

/// Draws a symmetric zero-diagonal table with off-diagonal values in
/// `[low, 2*low]`, the hypothesis of the band construction.
#[allow(clippy::needless_range_loop)]
pub fn gen_band_map(cfg: &GeneratorConfig, low: &Rat) -> DistanceTable {
    assert!(cfg.points >= 1, "a band map needs at least one point");
    assert!(
        low > &Rat::zero(),
        "the band's lower bound must be positive"
    );
    let n = cfg.points;
    let mut rng = rng_for(cfg);
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            // low * (1 + num/den) with 0 <= num <= den lands in [low, 2*low].
            let den = rng.gen_range(1..=cfg.denominator_cap) as i64;
            let num = rng.gen_range(0..=den);
            let value = low * (rat(1, 1) + rat(num, den));
            entries[i][j] = value.clone();
            entries[j][i] = value;
        }
    }
    DistanceTable::new(point_labels(n), entries).expect("generated table is square")
}

/// Draws a vector of `cfg.coordinates` signed rationals with magnitudes at
/// most `numerator_cap`, recorded with its tight sup-norm bound.
pub fn gen_random_vector(cfg: &GeneratorConfig) -> BoundedVector {
    assert!(
        cfg.coordinates >= 1,
        "a vector needs at least one coordinate"
    );
    let mut rng = rng_for(cfg);
    let values = (0..cfg.coordinates)
        .map(|_| draw_signed(&mut rng, cfg))
        .collect();
    BoundedVector::with_tight_bound(values).expect("coordinates >= 1")
}

/// Draws `count` vectors named `v0, v1, ...` from one seeded stream.
pub fn gen_vector_family(cfg: &GeneratorConfig, count: usize) -> Vec<(String, BoundedVector)> {
    assert!(count >= 1, "a family needs at least one vector");
    assert!(cfg.coordinates >= 1);
    let mut rng = rng_for(cfg);
    (0..count)
        .map(|idx| {
            let values = (0..cfg.coordinates)
                .map(|_| draw_signed(&mut rng, cfg))
                .collect();
            (
                format!("v{idx}"),
                BoundedVector::with_tight_bound(values).expect("coordinates >= 1"),
            )
        })
        .collect()
}
