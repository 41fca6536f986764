//! One-point-extension embedding: a point `u` of `(X, d)` maps to the metric
//! `d_u` on `X` plus one fresh point, where `d_u` agrees with `d` on `X` and
//! `d_u(x, pt) = d(x, u) + 1`. The sup-distance between `d_u` and `d_v` is
//! exactly `d(u, v)`, achieved at the pair `(u, pt)`.

use num_traits::Zero;

use crate::matrix::{DistanceTable, MetricKind, MetricMatrix};
use crate::rat::{rat_int, Rat};

use super::{EmbedError, OnePointWitness, PointedSpace};

/// Embeds every point of `d` as a metric on the pointed extension of its
/// ground set.
pub fn one_point_embed(d: &MetricMatrix) -> Result<OnePointWitness, EmbedError> {
    if d.kind() != MetricKind::Metric {
        return Err(EmbedError::NotAMetric);
    }
    let space = PointedSpace::over(d.labels());
    let shift = rat_int(1);
    let n = d.len();
    let labels = space.labels();

    let images = d
        .labels()
        .iter()
        .enumerate()
        .map(|(u, point)| {
            let mut entries: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
            for x in 0..n {
                let mut row: Vec<Rat> = (0..n).map(|y| d.entry(x, y).clone()).collect();
                row.push(d.entry(x, u) + &shift);
                entries.push(row);
            }
            let mut pt_row: Vec<Rat> = (0..n).map(|y| d.entry(y, u) + &shift).collect();
            pt_row.push(Rat::zero());
            entries.push(pt_row);

            let table = DistanceTable::new(labels.clone(), entries)
                .expect("pointed ground set is square and duplicate-free");
            let image = MetricMatrix::new(table, MetricKind::Metric)
                .expect("one-point extension of a metric is a metric");
            (point.clone(), image)
        })
        .collect();

    Ok(OnePointWitness {
        input: d.clone(),
        space,
        shift,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sup_distance, sup_distance_with_pair};
    use crate::rat::rat_int;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn metric(names: &[&str], rows: &[&[i64]]) -> MetricMatrix {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|&v| rat_int(v)).collect())
            .collect();
        MetricMatrix::from_parts(labels(names), entries, MetricKind::Metric).unwrap()
    }

    fn image_of<'w>(w: &'w OnePointWitness, point: &str) -> &'w MetricMatrix {
        w.images
            .iter()
            .find(|(p, _)| p == point)
            .map(|(_, m)| m)
            .unwrap()
    }

    #[test]
    fn two_point_example() {
        let d = metric(&["a", "b"], &[&[0, 2], &[2, 0]]);
        let w = one_point_embed(&d).unwrap();

        let da = image_of(&w, "a");
        assert_eq!(da.distance("a", "b").unwrap(), &rat_int(2));
        assert_eq!(da.distance("a", "pt").unwrap(), &rat_int(1));
        assert_eq!(da.distance("b", "pt").unwrap(), &rat_int(3));

        let db = image_of(&w, "b");
        assert_eq!(db.distance("a", "pt").unwrap(), &rat_int(3));
        assert_eq!(db.distance("b", "pt").unwrap(), &rat_int(1));

        let (sup, pair) = sup_distance_with_pair(da, db).unwrap();
        assert_eq!(sup, rat_int(2));
        assert_eq!(pair, Some(("a".into(), "pt".into())));
    }

    #[test]
    fn same_point_gives_identical_images() {
        let d = metric(&["a", "b"], &[&[0, 2], &[2, 0]]);
        let w = one_point_embed(&d).unwrap();
        let da = image_of(&w, "a");
        assert_eq!(sup_distance(da, da).unwrap(), rat_int(0));
    }

    #[test]
    fn singleton_input() {
        let d = metric(&["a"], &[&[0]]);
        let w = one_point_embed(&d).unwrap();
        let da = image_of(&w, "a");
        assert_eq!(da.len(), 2);
        assert_eq!(da.distance("a", "pt").unwrap(), &rat_int(1));
    }

    #[test]
    fn isometry_on_a_small_space() {
        let d = metric(
            &["a", "b", "c", "e"],
            &[&[0, 1, 2, 2], &[1, 0, 2, 2], &[2, 2, 0, 1], &[2, 2, 1, 0]],
        );
        let w = one_point_embed(&d).unwrap();
        for (i, (_, mi)) in w.images.iter().enumerate() {
            for (j, (_, mj)) in w.images.iter().enumerate() {
                assert_eq!(sup_distance(mi, mj).unwrap(), *d.entry(i, j));
            }
        }
    }

    #[test]
    fn rejects_pseudometric_input() {
        let d = MetricMatrix::from_parts(
            labels(&["a", "b"]),
            vec![vec![rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(0)]],
            MetricKind::Pseudometric,
        )
        .unwrap();
        assert_eq!(one_point_embed(&d), Err(EmbedError::NotAMetric));
    }
}
