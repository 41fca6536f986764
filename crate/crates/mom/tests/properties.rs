//! Property tests for the algebraic invariants: sup-metric axioms, the
//! metric-sum and band properties, pullback and restriction behavior, clamp
//! properties, and exact isometry of every embedding on random inputs.

#![allow(clippy::needless_range_loop)]

use proptest::collection::vec;
use proptest::prelude::*;

use mom::algebra::{add, band_metric, pullback, restrict, sup_distance, LabelMap};
use mom::embed::{
    c0_embed, clamp, discrete_embed, frechet_embed, one_point_embed, plan_truncation,
    sup_norm_distance, BoundedVector,
};
use mom::matrix::{validate, DistanceTable, MetricKind, MetricMatrix};
use mom::oracle::{brute_sup, exhaustive_triangle, gen::metric_closure};
use mom::rat::{rat, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=16).prop_map(|(num, den)| rat(num, den))
}

fn arb_positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=8, 1i64..=16).prop_map(|(num, den)| rat(num, den))
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn metric_from_upper(n: usize, upper: Vec<Rat>) -> MetricMatrix {
    let mut entries = vec![vec![Rat::from_integer(0.into()); n]; n];
    let mut it = upper.into_iter();
    for i in 0..n {
        for j in (i + 1)..n {
            let value = it.next().unwrap();
            entries[i][j] = value.clone();
            entries[j][i] = value;
        }
    }
    metric_closure(&mut entries);
    MetricMatrix::from_parts(labels(n), entries, MetricKind::Metric).unwrap()
}

fn arb_metric(max_points: usize) -> impl Strategy<Value = MetricMatrix> {
    (1..=max_points).prop_flat_map(|n| {
        vec(arb_positive_rat(), n * (n - 1) / 2).prop_map(move |upper| metric_from_upper(n, upper))
    })
}

fn arb_metric_pair(max_points: usize) -> impl Strategy<Value = (MetricMatrix, MetricMatrix)> {
    (2..=max_points).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            vec(arb_positive_rat(), pairs),
            vec(arb_positive_rat(), pairs),
        )
            .prop_map(move |(a, b)| (metric_from_upper(n, a), metric_from_upper(n, b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sup_metric_axioms((d, e) in arb_metric_pair(6), upper in vec(arb_positive_rat(), 15)) {
        let f = metric_from_upper(d.len(), upper[..d.len() * (d.len() - 1) / 2].to_vec());
        let dde = sup_distance(&d, &e).unwrap();
        // Symmetry and nonnegativity.
        prop_assert_eq!(&dde, &sup_distance(&e, &d).unwrap());
        prop_assert!(dde >= Rat::from_integer(0.into()));
        // Zero iff equal.
        prop_assert_eq!(dde == Rat::from_integer(0.into()), d == e);
        prop_assert_eq!(sup_distance(&d, &d).unwrap(), Rat::from_integer(0.into()));
        // Triangle inequality of the sup-metric itself.
        let ddf = sup_distance(&d, &f).unwrap();
        let def = sup_distance(&e, &f).unwrap();
        prop_assert!(ddf <= &dde + &def);
    }

    #[test]
    fn brute_sup_agrees_with_sup_distance((d, e) in arb_metric_pair(6)) {
        prop_assert_eq!(sup_distance(&d, &e).unwrap(), brute_sup(&d, &e).unwrap());
    }

    #[test]
    fn sum_of_pseudometric_and_metric_is_a_metric((d, e) in arb_metric_pair(6)) {
        // Collapse d to a pseudometric by pulling back along a non-injective map.
        let mut pairs: Vec<(String, String)> = d
            .labels()
            .iter()
            .map(|l| (l.clone(), l.clone()))
            .collect();
        pairs[0].1 = pairs[1].1.clone();
        let f = LabelMap::new(pairs).unwrap();
        let p = pullback(&f, &d).unwrap();
        let sum = add(&p, &e).unwrap();
        prop_assert!(validate(sum.table(), MetricKind::Metric).ok());
        prop_assert!(exhaustive_triangle(sum.table()).is_empty());
    }

    #[test]
    fn surjective_pullback_preserves_sup_distance(
        (d, e) in arb_metric_pair(5),
        seed in 0usize..120,
    ) {
        // Domain: one extra point folded onto a target chosen by the seed.
        let n = d.len();
        let mut pairs: Vec<(String, String)> = (0..n)
            .map(|i| (format!("x{i}"), d.labels()[i].clone()))
            .collect();
        pairs.push((format!("x{n}"), d.labels()[seed % n].clone()));
        let f = LabelMap::new(pairs).unwrap();
        prop_assert!(f.is_surjective_onto(d.labels()));
        let fd = pullback(&f, &d).unwrap();
        let fe = pullback(&f, &e).unwrap();
        prop_assert_eq!(
            sup_distance(&fd, &fe).unwrap(),
            sup_distance(&d, &e).unwrap()
        );
    }

    #[test]
    fn restriction_is_short((d, e) in arb_metric_pair(6), keep in vec(any::<bool>(), 6)) {
        let subset: Vec<String> = d
            .labels()
            .iter()
            .zip(keep.iter().chain(std::iter::repeat(&false)))
            .filter(|(_, &k)| k)
            .map(|(l, _)| l.clone())
            .collect();
        prop_assume!(!subset.is_empty());
        let rd = restrict(&d, &subset).unwrap();
        let re = restrict(&e, &subset).unwrap();
        prop_assert!(sup_distance(&rd, &re).unwrap() <= sup_distance(&d, &e).unwrap());
    }

    #[test]
    fn band_tables_are_metrics(n in 2usize..7, raw in vec((0i64..=16, 1i64..=16), 21)) {
        // low = 1/3; values low * (1 + t) with t in [0, 1].
        let low = rat(1, 3);
        let mut entries = vec![vec![Rat::from_integer(0.into()); n]; n];
        let mut it = raw.into_iter();
        for i in 0..n {
            for j in (i + 1)..n {
                let (num, den) = it.next().unwrap();
                let t = rat(num.min(den), den);
                let value = &low * (rat(1, 1) + t);
                entries[i][j] = value.clone();
                entries[j][i] = value;
            }
        }
        let table = DistanceTable::new(labels(n), entries).unwrap();
        let m = band_metric(table, &low).unwrap();
        prop_assert!(exhaustive_triangle(m.table()).is_empty());
    }

    #[test]
    fn clamp_is_lipschitz_and_idempotent(t in arb_positive_rat(), x in arb_rat(), y in arb_rat()) {
        let cx = clamp(&t, &x);
        let cy = clamp(&t, &y);
        let gap = if cx >= cy { &cx - &cy } else { &cy - &cx };
        let xy = if x >= y { &x - &y } else { &y - &x };
        prop_assert!(gap <= xy);
        prop_assert_eq!(clamp(&t, &cx), cx);
    }

    #[test]
    fn frechet_is_an_exact_isometry(d in arb_metric(6)) {
        let mut reversed = d.labels().to_vec();
        reversed.reverse();
        for order in [d.labels().to_vec(), reversed] {
            let w = frechet_embed(&d, &order).unwrap();
            for (i, (_, vi)) in w.images.iter().enumerate() {
                for (j, (_, vj)) in w.images.iter().enumerate() {
                    prop_assert_eq!(&sup_norm_distance(vi, vj).unwrap(), d.entry(i, j));
                }
            }
        }
    }

    #[test]
    fn one_point_is_an_exact_isometry(d in arb_metric(6)) {
        let w = one_point_embed(&d).unwrap();
        for (i, (_, mi)) in w.images.iter().enumerate() {
            for (j, (_, mj)) in w.images.iter().enumerate() {
                prop_assert_eq!(&sup_distance(mi, mj).unwrap(), d.entry(i, j));
                prop_assert!(exhaustive_triangle(mj.table()).is_empty());
            }
        }
    }

    #[test]
    fn discrete_is_an_exact_isometry(len in 1usize..6, a in vec(arb_rat(), 8), b in vec(arb_rat(), 8)) {
        let a = BoundedVector::with_tight_bound(a[..len].to_vec()).unwrap();
        let b = BoundedVector::with_tight_bound(b[..len].to_vec()).unwrap();
        let bound = a.bound().clone().max(b.bound().clone());
        let plan = plan_truncation(len, &bound).unwrap();
        let ha = discrete_embed(&a, &plan).unwrap();
        let hb = discrete_embed(&b, &plan).unwrap();
        prop_assert_eq!(
            sup_distance(&ha, &hb).unwrap(),
            sup_norm_distance(&a, &b).unwrap()
        );
        prop_assert!(exhaustive_triangle(ha.table()).is_empty());
    }

    #[test]
    fn paired_blocks_are_an_exact_isometry(len in 1usize..5, raws in vec(vec(arb_rat(), 6), 4)) {
        let family: Vec<(String, BoundedVector)> = raws
            .into_iter()
            .enumerate()
            .map(|(i, values)| {
                (
                    format!("v{i}"),
                    BoundedVector::with_tight_bound(values[..len].to_vec()).unwrap(),
                )
            })
            .collect();
        let w = c0_embed(&family, len).unwrap();
        for (i, (_, gi)) in w.images.iter().enumerate() {
            for (j, (_, gj)) in w.images.iter().enumerate() {
                let expected = sup_norm_distance(&family[i].1, &family[j].1).unwrap();
                prop_assert_eq!(sup_distance(gi, gj).unwrap(), expected);
            }
        }
    }
}
