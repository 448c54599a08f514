use serde::{Deserialize, Serialize};

use super::group::{free_reduce, word_pow};
use super::{GroupPresentation, KnotDiagram, Word};

/// Meridian and longitude words. `longitude` already includes the factor
/// `meridian^writhe_correction`, so its exponent sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralSystem {
    pub meridian: Word,
    pub longitude: Word,
    pub writhe_correction: i64,
}

pub fn wirtinger(d: &KnotDiagram) -> (GroupPresentation, PeripheralSystem) {
    let n = d.crossing_count();
    if n == 0 {
        let pres = GroupPresentation { generator_count: 1, relators: Vec::new() };
        let periph = PeripheralSystem { meridian: vec![1], longitude: Vec::new(), writhe_correction: 0 };
        return (pres, periph);
    }
    let arc = d.arc_of_edges();
    let mut relators = Vec::with_capacity(n);
    // crossing whose under pass ends edge k, for the longitude walk
    let mut under_at = vec![None; 2 * n + 1];
    for (ci, c) in d.crossings().iter().enumerate() {
        let (o, j, k) = (arc[c.over_in] as i32, arc[c.under_in] as i32, arc[c.under_out] as i32);
        let e = c.sign as i32;
        relators.push(vec![e * o, k, -e * o, -j]);
        under_at[c.under_in] = Some(ci);
    }
    let mut longitude = Vec::new();
    for k in 1..=2 * n {
        if let Some(ci) = under_at[k] {
            let c = d.crossings()[ci];
            longitude.push(c.sign as i32 * arc[c.over_in] as i32);
        }
    }
    let correction = -d.writhe();
    longitude.extend(word_pow(&[1], correction));
    let pres = GroupPresentation { generator_count: n, relators };
    let periph =
        PeripheralSystem { meridian: vec![1], longitude: free_reduce(&longitude), writhe_correction: correction };
    (pres, periph)
}

#[cfg(test)]
mod tests {
    use super::super::{filled_presentation, parse_dt, FillingSpec};
    use super::*;
    use crate::knotio::group::exponent_sum;

    #[test]
    fn unknot_presentation() {
        let (p, per) = wirtinger(&KnotDiagram::unknot());
        assert_eq!(p.generator_count, 1);
        assert!(p.relators.is_empty());
        assert_eq!(per.meridian, vec![1]);
        assert!(per.longitude.is_empty());
        let s3 = filled_presentation(&p, &per, FillingSpec::new(1, 0).unwrap()).unwrap();
        assert!(s3.abelianization().is_trivial());
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let (p, per) = wirtinger(&parse_dt("4 6 2").unwrap());
        assert_eq!(p.generator_count, 3);
        assert_eq!(p.relators.len(), 3);
        assert!(p.relators.iter().all(|r| r.len() == 4));
        assert_eq!(exponent_sum(&per.longitude), 0);
        assert!(p.abelianization().is_infinite_cyclic());

        let d8 = parse_dt("4 6 8 2").unwrap();
        assert_eq!(d8.writhe(), 0);
        let (p8, per8) = wirtinger(&d8);
        assert_eq!((p8.generator_count, p8.relators.len()), (4, 4));
        assert_eq!(per8.writhe_correction, 0);
    }

    #[test]
    fn fillings_of_trefoil() {
        let (p, per) = wirtinger(&parse_dt("4 6 2").unwrap());
        let f = |a, b| filled_presentation(&p, &per, FillingSpec::new(a, b).unwrap()).unwrap().abelianization();
        assert!(f(1, 1).is_trivial());
        assert!(f(0, 1).is_infinite_cyclic());
        assert_eq!(f(5, 1).order(), Some(5));
        assert_eq!(f(3, 2).order(), Some(3));
    }
}
