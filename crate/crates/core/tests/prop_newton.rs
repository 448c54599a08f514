//! Randomized properties of Newton polygons and slopes.

use apoly::charvar::involution_image;
use apoly::mpoly::{Coeff, Exponents, SparsePoly};
use apoly::newton::{boundary_slopes, newton_polygon, polygon_of_points};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn points() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..12, 0i64..6), 1..12)
}

fn ml_poly(pts: &[(i64, i64)], coeffs: &[i64]) -> SparsePoly {
    let vars = SparsePoly::parse("0", &["M", "L"]).unwrap().vars_arc();
    let terms = pts
        .iter()
        .zip(coeffs.iter().cycle())
        .map(|(&(m, l), &c)| (Exponents::from_slice(&[m as u32, l as u32]), Coeff::from_integer(BigInt::from(c))));
    SparsePoly::from_terms(vars, terms)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    /// Vertices are support points in strictly convex counterclockwise
    /// position and every support point lies on the inner side of every
    /// edge: that pins down the hull.
    #[test]
    fn hull_is_the_convex_hull(pts in points()) {
        let poly = polygon_of_points(&pts);
        let v = &poly.vertices;
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert!(v.iter().all(|p| pts.contains(p)));
        match v.len() {
            0 => prop_assert!(false, "no vertices"),
            1 => {
                prop_assert_eq!(distinct.len(), 1);
                prop_assert!(poly.sides.is_empty());
            }
            2 => {
                // all points on the segment
                prop_assert!(pts.iter().all(|&p| cross(v[0], v[1], p) == 0));
                let inside = |p: (i64, i64)| (p.0 - v[0].0) * (p.0 - v[1].0) <= 0 && (p.1 - v[0].1) * (p.1 - v[1].1) <= 0;
                prop_assert!(pts.iter().all(|&p| inside(p)));
                prop_assert_eq!(poly.sides.len(), 1);
            }
            n => {
                for i in 0..n {
                    let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
                    prop_assert!(cross(a, b, c) > 0);
                    prop_assert!(pts.iter().all(|&p| cross(a, b, p) >= 0));
                }
                prop_assert_eq!(poly.sides.len(), n);
            }
        }
        for (i, s) in poly.sides.iter().enumerate() {
            let (dx, dy) = s.direction;
            prop_assert_eq!(dx.gcd(&dy), 1);
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            prop_assert_eq!((b.0 - a.0, b.1 - a.1), (dx * s.lattice_length, dy * s.lattice_length));
        }
    }

    /// Translating or point-reflecting the support keeps the slope set.
    #[test]
    fn slopes_survive_translation_and_reflection(pts in points(), shift in (0i64..5, 0i64..5)) {
        let base = boundary_slopes(&polygon_of_points(&pts));
        let moved: Vec<(i64, i64)> = pts.iter().map(|p| (p.0 + shift.0, p.1 + shift.1)).collect();
        prop_assert_eq!(&boundary_slopes(&polygon_of_points(&moved)), &base);
        let reflected: Vec<(i64, i64)> = pts.iter().map(|p| (20 - p.0, 10 - p.1)).collect();
        prop_assert_eq!(&boundary_slopes(&polygon_of_points(&reflected)), &base);
    }

    /// The same statement through polynomials and `involution_image`.
    #[test]
    fn involution_keeps_slopes(pts in points(), coeffs in prop::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 1..4)) {
        let p = ml_poly(&pts, &coeffs);
        prop_assume!(!p.is_zero());
        let q = involution_image(&p);
        let a = boundary_slopes(&newton_polygon(&p).unwrap());
        let b = boundary_slopes(&newton_polygon(&q).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn collinear_supports_give_one_slope(start in (0i64..5, 0i64..5), dir in (0i64..4, 0i64..4), ks in prop::collection::vec(0i64..4, 2..6)) {
        prop_assume!(dir != (0, 0));
        let pts: Vec<(i64, i64)> = ks.iter().map(|k| (start.0 + k * dir.0, start.1 + k * dir.1)).collect();
        let slopes = boundary_slopes(&polygon_of_points(&pts));
        let distinct = { let mut d = ks.clone(); d.sort(); d.dedup(); d.len() };
        prop_assert_eq!(slopes.len(), usize::from(distinct > 1));
    }
}

#[test]
fn single_point_has_no_slopes() {
    assert!(boundary_slopes(&polygon_of_points(&[(3, 2)])).is_empty());
    assert!(boundary_slopes(&polygon_of_points(&[(3, 2), (3, 2)])).is_empty());
}
