//! Bundled DT codes for the prime knots through 8 crossings.

const TABLE: &str = include_str!("../../data/knots8.txt");

/// `(name, dt_code)` pairs in table order.
pub fn bundled_knots() -> Vec<(&'static str, &'static str)> {
    TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_once(' ').expect("name and code"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::test_support::{determinant, three_colorings};
    use super::super::{parse_dt, wirtinger};
    use super::*;

    // |Alexander polynomial at -1| from the standard tables
    const DETERMINANTS: [u64; 35] = [
        3, 5, 5, 7, 9, 11, 13, 7, 11, 13, 15, 17, 19, 21, 13, 17, 17, 19, 21, 23, 23, 25, 25, 27, 27, 29, 29, 31, 33,
        35, 37, 45, 3, 9, 15,
    ];

    #[test]
    fn table_codes_parse_to_the_right_knots() {
        let knots = bundled_knots();
        assert_eq!(knots.len(), 35);
        for ((name, code), &det) in knots.iter().zip(&DETERMINANTS) {
            let d = parse_dt(code).unwrap_or_else(|e| panic!("{name}: {e}"));
            let crossings: usize = name.split('_').next().unwrap().parse().unwrap();
            assert_eq!(d.crossing_count(), crossings, "{name}");
            assert_eq!(determinant(&d), det, "{name}");
            let colorings = three_colorings(&d);
            if det % 3 == 0 {
                assert!(colorings >= 9 && 3usize.pow(colorings.ilog(3)) == colorings, "{name}");
            } else {
                assert_eq!(colorings, 3, "{name}");
            }
            assert!(wirtinger(&d).0.abelianization().is_infinite_cyclic(), "{name}");
        }
    }
}
