//! Randomized properties of diagram parsing and knot groups, on braid closures.

use apoly::knotio::{
    bundled_knots, exponent_sum, filled_presentation, parse_braid, parse_dt, parse_pd_tuples, wirtinger, FillingSpec,
    KnotDiagram, KnotIoError,
};
use proptest::prelude::*;

/// Strand components of the closure of `word` on `n` strands.
fn components(word: &[i64], n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for l in word {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        let mut t = s;
        while label[t] == usize::MAX {
            label[t] = s;
            t = perm[t];
        }
    }
    label
}

/// Random braid word, extended by generators that merge closure components
/// until the closure is a knot.
fn braid_word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![1i64..=3, -3i64..=-1], 1..=10).prop_map(|mut w| {
        let n = w.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() + 1;
        let sign = w[0].signum();
        while let Some(i) = {
            let c = components(&w, n);
            (0..n - 1).find(|&i| c[i] != c[i + 1])
        } {
            w.push(sign * (i as i64 + 1));
        }
        w
    })
}

/// Equal up to a cyclic relabeling of the edges.
fn same_pd_up_to_shift(a: &[[usize; 4]], b: &[[usize; 4]]) -> bool {
    let m = 2 * a.len();
    let sorted = |v: Vec<[usize; 4]>| {
        let mut v = v;
        v.sort();
        v
    };
    let b = sorted(b.to_vec());
    (0..m).any(|s| sorted(a.iter().map(|x| x.map(|e| (e - 1 + s) % m + 1)).collect()) == b)
}

fn closure(word: &[i64]) -> Result<KnotDiagram, KnotIoError> {
    let text: Vec<String> = word.iter().map(|l| l.to_string()).collect();
    parse_braid(&text.join(" "))
}

fn check_group(d: &KnotDiagram) -> Result<(), TestCaseError> {
    let (pres, periph) = wirtinger(d);
    prop_assert!(pres.abelianization().is_infinite_cyclic());
    prop_assert_eq!(exponent_sum(&periph.longitude), 0);
    prop_assert_eq!(exponent_sum(&periph.meridian), 1);
    for n in -3..=3 {
        let filled = filled_presentation(&pres, &periph, FillingSpec::new(1, n).unwrap()).unwrap();
        prop_assert!(filled.abelianization().is_trivial());
    }
    // p/q filling has first homology of order |p|
    let filled = filled_presentation(&pres, &periph, FillingSpec::new(5, 2).unwrap()).unwrap();
    prop_assert_eq!(filled.abelianization().order(), Some(5));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn braid_closures_have_knot_groups(word in braid_word()) {
        let d = closure(&word).unwrap();
        prop_assert!(d.validate().is_ok());
        prop_assert_eq!(d.writhe(), word.iter().map(|l| l.signum()).sum::<i64>());
        check_group(&d)?;
        check_group(&d.mirror())?;
    }

    #[test]
    fn mirror_and_pd_round_trip(word in braid_word()) {
        let d = closure(&word).unwrap();
        let m = d.mirror();
        prop_assert_eq!(m.writhe(), -d.writhe());
        prop_assert_eq!(m.crossing_count(), d.crossing_count());
        prop_assert!(same_pd_up_to_shift(&m.mirror().to_pd(), &d.to_pd()));
        let tuples: Vec<[u64; 4]> = d.to_pd().iter().map(|x| x.map(|e| e as u64)).collect();
        let again = parse_pd_tuples(&tuples).unwrap();
        prop_assert_eq!(again.to_pd(), d.to_pd());
        prop_assert_eq!(again.writhe(), d.writhe());
    }

    #[test]
    fn inverse_word_gives_mirror_writhe(word in braid_word()) {
        let inv: Vec<i64> = word.iter().rev().map(|l| -l).collect();
        match (closure(&word), closure(&inv)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.writhe(), -b.writhe()),
            (a, b) => prop_assert!(false, "{a:?} {b:?}"),
        }
    }
}

#[test]
fn bundled_table_has_knot_groups() {
    for (name, code) in bundled_knots() {
        let d = parse_dt(code).unwrap_or_else(|e| panic!("{name}: {e}"));
        check_group(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
