//! Coordinate embedding of a finite metric space into vectors under the
//! sup-norm: `x -> (d(x, q_a) - d(q_a, q_0))_a` over an enumeration
//! `q_0 .. q_{n-1}` of the points. On a finite space the enumeration plays
//! the role the dense subset plays in the classical construction, and the
//! embedding is an exact isometry for every choice of enumeration.

use std::collections::HashSet;

use crate::matrix::{MetricKind, MetricMatrix};
use crate::rat::Rat;

use super::{BoundedVector, EmbedError, FrechetWitness};

/// Embeds `d` as one vector per point. Coordinate `a` of the image of `u` is
/// `d(u, q_a) - d(q_a, q_0)`; the sup-norm distance between any two images
/// equals the input distance exactly.
pub fn frechet_embed(
    d: &MetricMatrix,
    enumeration: &[String],
) -> Result<FrechetWitness, EmbedError> {
    if d.kind() != MetricKind::Metric {
        return Err(EmbedError::NotAMetric);
    }
    let n = d.len();
    if enumeration.len() != n {
        return Err(EmbedError::BadEnumeration(format!(
            "expected {n} labels, got {}",
            enumeration.len()
        )));
    }
    let order: Vec<usize> = enumeration
        .iter()
        .map(|label| {
            d.label_index(label)
                .ok_or_else(|| EmbedError::BadEnumeration(format!("unknown label {label:?}")))
        })
        .collect::<Result<_, _>>()?;
    let distinct: HashSet<usize> = order.iter().copied().collect();
    if distinct.len() != n {
        return Err(EmbedError::BadEnumeration(
            "enumeration repeats a label".into(),
        ));
    }

    let base = order[0];
    let images = d
        .labels()
        .iter()
        .enumerate()
        .map(|(u, label)| {
            let values: Vec<Rat> = order
                .iter()
                .map(|&q| d.entry(u, q) - d.entry(q, base))
                .collect();
            let vector = BoundedVector::with_tight_bound(values).expect("n >= 1 coordinates");
            (label.clone(), vector)
        })
        .collect();

    Ok(FrechetWitness {
        input: d.clone(),
        enumeration: enumeration.to_vec(),
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::sup_norm_distance;
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

    fn vector_of(w: &FrechetWitness, point: &str) -> BoundedVector {
        w.images
            .iter()
            .find(|(p, _)| p == point)
            .map(|(_, v)| v.clone())
            .unwrap()
    }

    #[test]
    fn singleton_maps_to_zero() {
        let d = metric(&["a"], &[&[0]]);
        let w = frechet_embed(&d, &labels(&["a"])).unwrap();
        assert_eq!(vector_of(&w, "a").values(), &[rat_int(0)]);
    }

    #[test]
    fn two_point_example() {
        let d = metric(&["a", "b"], &[&[0, 1], &[1, 0]]);
        let w = frechet_embed(&d, &labels(&["a", "b"])).unwrap();
        assert_eq!(vector_of(&w, "a").values(), &[rat_int(0), rat_int(0)]);
        assert_eq!(vector_of(&w, "b").values(), &[rat_int(1), rat_int(-1)]);
        assert_eq!(
            sup_norm_distance(&vector_of(&w, "a"), &vector_of(&w, "b")).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn three_point_example() {
        let d = metric(&["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 2], &[1, 2, 0]]);
        let w = frechet_embed(&d, &labels(&["a", "b", "c"])).unwrap();
        assert_eq!(
            vector_of(&w, "a").values(),
            &[rat_int(0), rat_int(0), rat_int(0)]
        );
        assert_eq!(
            vector_of(&w, "b").values(),
            &[rat_int(1), rat_int(-1), rat_int(1)]
        );
        assert_eq!(
            vector_of(&w, "c").values(),
            &[rat_int(1), rat_int(1), rat_int(-1)]
        );
        for (i, (_, vi)) in w.images.iter().enumerate() {
            for (j, (_, vj)) in w.images.iter().enumerate() {
                assert_eq!(sup_norm_distance(vi, vj).unwrap(), *d.entry(i, j));
            }
        }
    }

    #[test]
    fn isometry_holds_for_every_enumeration_order() {
        let d = metric(&["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 2], &[1, 2, 0]]);
        for order in [
            labels(&["a", "b", "c"]),
            labels(&["c", "b", "a"]),
            labels(&["b", "c", "a"]),
        ] {
            let w = frechet_embed(&d, &order).unwrap();
            for (i, (_, vi)) in w.images.iter().enumerate() {
                for (j, (_, vj)) in w.images.iter().enumerate() {
                    assert_eq!(sup_norm_distance(vi, vj).unwrap(), *d.entry(i, j));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_enumerations() {
        let d = metric(&["a", "b"], &[&[0, 1], &[1, 0]]);
        assert!(matches!(
            frechet_embed(&d, &labels(&["a"])),
            Err(EmbedError::BadEnumeration(_))
        ));
        assert!(matches!(
            frechet_embed(&d, &labels(&["a", "z"])),
            Err(EmbedError::BadEnumeration(_))
        ));
        assert!(matches!(
            frechet_embed(&d, &labels(&["a", "a"])),
            Err(EmbedError::BadEnumeration(_))
        ));
    }

    #[test]
    fn rejects_pseudometric_input() {
        let d = MetricMatrix::from_parts(
            labels(&["a", "b"]),
            vec![vec![rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(0)]],
            MetricKind::Pseudometric,
        )
        .unwrap();
        assert_eq!(
            frechet_embed(&d, &labels(&["a", "b"])),
            Err(EmbedError::NotAMetric)
        );
    }
}
