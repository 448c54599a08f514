//! The exact lattice checker against enumeration of subgroup elements.
#![allow(dead_code)]

mod common;

use apoly::su2::{lattice_lemma_check, member, LatticeFamily, Subgroup};
use common::BruteSubgroup;
use proptest::prelude::*;

pub fn subgroup() -> impl Strategy<Value = Subgroup> {
    ((-4i64..=4, -4i64..=4), (-4i64..=4, -4i64..=4)).prop_map(|(a, b)| Subgroup::new(a, b))
}

pub fn family() -> impl Strategy<Value = LatticeFamily> {
    ((-6i64..=6, -6i64..=6), (-3i64..=3, -3i64..=3), prop::collection::vec(subgroup(), 1..5), -10i64..=10)
        .prop_filter("primitive direction, line off the origin", |(b, d, _, _)| {
            num_integer::Integer::gcd(&d.0, &d.1) == 1 && b.0 * d.1 - b.1 * d.0 != 0
        })
        .prop_map(|(base, direction, subgroups, k)| LatticeFamily {
            base,
            direction,
            subgroups,
            excluded_point: (base.0 + k * direction.0, base.1 + k * direction.1),
        })
}

/// The checker's report against `BruteSubgroup` on every window point.
pub fn report_agrees(f: &LatticeFamily, window: u32) -> Result<(), TestCaseError> {
    let reach = f.base.0.abs().max(f.base.1.abs()) + window as i64 * f.direction.0.abs().max(f.direction.1.abs());
    let brutes: Vec<BruteSubgroup> = f.subgroups.iter().map(|s| BruteSubgroup::new(s, reach)).collect();
    let point = |k: i64| (f.base.0 + k * f.direction.0, f.base.1 + k * f.direction.1);
    let r = lattice_lemma_check(f, window).unwrap();
    let w = window as i64;
    let expected: Vec<(i64, Vec<usize>)> = (-w..=w)
        .map(|k| (k, (0..brutes.len()).filter(|&i| brutes[i].contains(point(k))).collect::<Vec<_>>()))
        .filter(|(_, m)| !m.is_empty())
        .collect();
    prop_assert_eq!(&r.covered, &expected);
    prop_assert_eq!(r.uncovered_count, 2 * window as usize + 1 - expected.len());
    prop_assert!(r.excluded_point_on_line);
    prop_assert_eq!(r.excluded_point_excluded, member(&f.subgroups, f.excluded_point).is_empty());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn membership_matches_enumeration(s in subgroup(), p in (-60i64..=60, -60i64..=60)) {
        let brute = BruteSubgroup::new(&s, 60);
        prop_assert_eq!(s.contains(p), brute.contains(p));
    }

    #[test]
    fn rank_and_index_match_the_determinant(s in subgroup()) {
        let [a, b] = s.generators;
        let det = (a.0 * b.1 - a.1 * b.0).unsigned_abs();
        prop_assert_eq!(s.index(), (det != 0).then_some(det));
        let rank = if det != 0 { 2 } else if a == (0, 0) && b == (0, 0) { 0 } else { 1 };
        prop_assert_eq!(s.rank(), rank);
    }

    #[test]
    fn report_matches_enumeration(f in family()) {
        report_agrees(&f, 40)?;
    }
}
