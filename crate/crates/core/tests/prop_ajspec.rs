//! Randomized properties of q-difference operators: associativity, a naive
//! letter-rewriting oracle for products, and specialization at q = 1.
#![allow(dead_code, unused_imports)]

use apoly::ajspec::{aj_compare, op_mul, parse_operator, specialize_q1, AjError, AjVerdict, QDiffOperator, QPoly};
use apoly::elim::strip_reducible;
use apoly::mpoly::{content_in, Coeff, SparsePoly};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-3i64..=3, -2i64..=2), 1..=3)
        .prop_map(|ts| ts.into_iter().fold(QPoly::zero(), |acc, (c, k)| &acc + &QPoly::monomial(BigInt::from(c), k)))
}

pub fn operator() -> impl Strategy<Value = QDiffOperator> {
    prop::collection::vec((qpoly(), -2i64..=2, -2i64..=2), 1..=3).prop_map(|ts| {
        ts.into_iter().fold(QDiffOperator::zero(), |acc, (c, e, q)| &acc + &QDiffOperator::term(c, e, q))
    })
}

/// `Q^a E^b * Q^c E^d` by spelling out the letters and moving every `Q`
/// left past every `E` one adjacent swap at a time, in the order given by
/// `picks`. Returns the accumulated power of `q` and the sorted exponents.
fn rewrite(a: (i64, i64), b: (i64, i64), picks: &[usize]) -> (i64, i64, i64) {
    // letters: ('Q' | 'E', +-1)
    let spell = |q: i64, e: i64| {
        let mut w: Vec<(char, i64)> = (0..q.abs()).map(|_| ('Q', q.signum())).collect();
        w.extend((0..e.abs()).map(|_| ('E', e.signum())));
        w
    };
    let mut w = spell(a.1, a.0);
    w.extend(spell(b.1, b.0));
    let mut qpow = 0;
    let mut k = 0;
    loop {
        let spots: Vec<usize> =
            (0..w.len().saturating_sub(1)).filter(|&i| w[i].0 == 'E' && w[i + 1].0 == 'Q').collect();
        if spots.is_empty() {
            break;
        }
        let i = spots[picks[k % picks.len()] % spots.len()];
        k += 1;
        // E^s Q^t = q^(st) Q^t E^s
        qpow += w[i].1 * w[i + 1].1;
        w.swap(i, i + 1);
    }
    let qs: i64 = w.iter().filter(|l| l.0 == 'Q').map(|l| l.1).sum();
    let es: i64 = w.iter().filter(|l| l.0 == 'E').map(|l| l.1).sum();
    (qpow, es, qs)
}

fn rewrite_product(a: &QDiffOperator, b: &QDiffOperator, picks: &[usize]) -> QDiffOperator {
    let mut out = QDiffOperator::zero();
    for (&ka, ca) in a.terms() {
        for (&kb, cb) in b.terms() {
            let (qpow, e, q) = rewrite(ka, kb, picks);
            out = &out + &QDiffOperator::term((ca * cb).shift(qpow), e, q);
        }
    }
    out
}

/// The Laurent polynomial a specialization stands for, times `M^sm L^sl`.
fn raw_times(s: &apoly::ajspec::Specialized, sm: u32, sl: u32) -> SparsePoly {
    let c: Coeff = s.content.parse().unwrap();
    s.poly.scale(&c).shift(&[sm, sl])
}

fn ml(s: &str) -> SparsePoly {
    SparsePoly::parse(s, &["M", "L"]).unwrap()
}

pub fn associative(
    a: QDiffOperator,
    b: QDiffOperator,
    c: QDiffOperator,
    d: QDiffOperator,
) -> Result<(), TestCaseError> {
    let left = op_mul(&op_mul(&op_mul(&a, &b), &c), &d);
    prop_assert_eq!(&left, &op_mul(&a, &op_mul(&b, &op_mul(&c, &d))));
    prop_assert_eq!(&left, &op_mul(&op_mul(&a, &b), &op_mul(&c, &d)));
    prop_assert_eq!(&left, &op_mul(&op_mul(&a, &op_mul(&b, &c)), &d));
    prop_assert_eq!(op_mul(&a, &(&b + &c)), &op_mul(&a, &b) + &op_mul(&a, &c));
    Ok(())
}

/// Every rewriting order reaches `op_mul`'s normal form.
pub fn confluent(a: QDiffOperator, b: QDiffOperator, picks: Vec<usize>) -> Result<(), TestCaseError> {
    prop_assert_eq!(rewrite_product(&a, &b, &picks), op_mul(&a, &b));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn multiplication_is_associative(a in operator(), b in operator(), c in operator(), d in operator()) {
        associative(a, b, c, d)?;
    }

    #[test]
    fn rewriting_in_any_order_gives_the_product(a in operator(), b in operator(), picks in prop::collection::vec(any::<usize>(), 1..16)) {
        confluent(a, b, picks)?;
    }

    #[test]
    fn display_parses_back(a in operator()) {
        prop_assert_eq!(parse_operator(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn specialization_is_multiplicative(a in operator(), b in operator()) {
        let (sa, sb, sab) = (specialize_q1(&a), specialize_q1(&b), specialize_q1(&op_mul(&a, &b)));
        match (sa, sb) {
            (Ok(sa), Ok(sb)) => {
                let sab = sab.unwrap();
                // raw(ab) = raw(a) raw(b), each raw(x) = poly_x c_x / (M^m_x L^l_x)
                let (ma, la) = sa.cleared;
                let (mb, lb) = sb.cleared;
                let (mab, lab) = sab.cleared;
                let lhs = raw_times(&sab, ma + mb, la + lb);
                let rhs = &raw_times(&sa, 0, 0) * &raw_times(&sb, mab, lab);
                prop_assert_eq!(lhs, rhs);
            }
            _ => prop_assert_eq!(sab, Err(AjError::ZeroOperator)),
        }
    }

    #[test]
    fn classical_embedding_round_trips(
        terms in prop::collection::btree_map((0u32..3, 1u32..3), prop_oneof![-4i64..=-1, 1i64..=4], 1..5),
        c0 in prop_oneof![-3i64..=-1, 1i64..=3],
        k in 1u32..3,
    ) {
        // a nonzero constant term and positive L-degree elsewhere: no monomial
        // factor and no content in L
        let c0 = ([0, 0].into_iter().collect(), Coeff::from_integer(BigInt::from(c0)));
        let f = SparsePoly::from_terms(
            ml("0").vars_arc(),
            terms
                .into_iter()
                .map(|((m, l), c)| ([2 * m, l].into_iter().collect(), Coeff::from_integer(BigInt::from(c))))
                .chain([c0]),
        );
        prop_assert!(f.involves(1) && content_in(&f, 1).is_constant());
        let p = &ml("L - 1").pow(k) * &f;
        let op = QDiffOperator::from_classical(&p).unwrap();
        let s = specialize_q1(&op).unwrap();
        prop_assert!(s.poly.eq_up_to_unit(&p));
        let r = strip_reducible(&p).unwrap();
        prop_assert_eq!(aj_compare(&s.poly, &r).verdict, AjVerdict::Match);
    }
}
