//! Exact checks on families of subgroups of `Z^2` meeting an affine line.
//!
//! A line `base + k * direction` missing the origin is covered by a finite
//! family of subgroups `K_n` except for the points found uncovered. For a
//! finite family of finite-index subgroups excluding some line point `v0`,
//! every translate `v0 + h` with `h` in `H = gamma' ∩ (∩ K_n)` is
//! uncovered too (`gamma'` the parallel line through 0), so the uncovered
//! set keeps growing with the window.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type V2 = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the line passes through the origin")]
    LineThroughOrigin,
    #[error("direction {0:?} is not a primitive vector")]
    NonPrimitiveDirection(V2),
    #[error("window must be at least 1")]
    EmptyWindow,
}

/// Subgroup generated by the given vectors, kept in Hermite form
/// `[(a, b), (0, d)]` with `a, d >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub generators: [V2; 2],
}

impl Subgroup {
    pub fn new(g1: V2, g2: V2) -> Self {
        Subgroup { generators: [g1, g2] }
    }

    fn hermite(&self) -> [V2; 2] {
        let [mut u, mut v] = self.generators;
        // Euclid on the first column
        while v.0 != 0 {
            let t = Integer::div_floor(&u.0, &v.0);
            u = (u.0 - t * v.0, u.1 - t * v.1);
            std::mem::swap(&mut u, &mut v);
        }
        if u.0 < 0 {
            u = (-u.0, -u.1);
        }
        let d = v.1.abs();
        if d != 0 && u.0 != 0 {
            u.1 = u.1.rem_euclid(d);
        }
        if u.0 == 0 {
            // both generators lie on the y axis
            let g = u.1.gcd(&v.1);
            return [(0, g), (0, 0)];
        }
        [u, (0, d)]
    }

    pub fn rank(&self) -> u32 {
        let [u, v] = self.hermite();
        (u != (0, 0)) as u32 + (v != (0, 0)) as u32
    }

    /// `[Z^2 : K]`, or `None` for rank below 2.
    pub fn index(&self) -> Option<u64> {
        let [u, v] = self.hermite();
        let det = (u.0 * v.1 - u.1 * v.0).unsigned_abs();
        (det != 0).then_some(det)
    }

    pub fn contains(&self, p: V2) -> bool {
        let [u, v] = self.hermite();
        let (x, mut y) = p;
        if u.0 != 0 {
            if x % u.0 != 0 {
                return false;
            }
            y -= x / u.0 * u.1;
            return if v.1 != 0 { y % v.1 == 0 } else { y == 0 };
        }
        // rank <= 1 on the y axis
        x == 0 && if u.1 != 0 { y % u.1 == 0 } else { y == 0 }
    }
}

/// Membership of `p` in the union of `subgroups`: indices of those containing it.
pub fn member(subgroups: &[Subgroup], p: V2) -> Vec<usize> {
    subgroups.iter().enumerate().filter(|(_, s)| s.contains(p)).map(|(i, _)| i).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFamily {
    pub base: V2,
    pub direction: V2,
    pub subgroups: Vec<Subgroup>,
    pub excluded_point: V2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    /// `(k, subgroups containing base + k * direction)` for covered `|k| <= window`.
    pub covered: Vec<(i64, Vec<usize>)>,
    pub uncovered_count: usize,
    /// Uncovered count over the doubled window.
    pub uncovered_count_doubled: usize,
    pub excluded_point_on_line: bool,
    pub excluded_point_excluded: bool,
    pub ranks: Vec<u32>,
    /// Smallest positive `t` with `t * direction` in every rank-2 subgroup,
    /// so that `H` is generated by `t * direction`.
    pub h_step: Option<i64>,
    /// All hypotheses of the counting argument hold.
    pub hypotheses_hold: bool,
    /// With the hypotheses, the uncovered count grows strictly when the
    /// window doubles.
    pub growth_verified: Option<bool>,
}

fn det(a: V2, b: V2) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn uncovered(f: &LatticeFamily, window: i64) -> usize {
    (-window..=window)
        .filter(|k| member(&f.subgroups, (f.base.0 + k * f.direction.0, f.base.1 + k * f.direction.1)).is_empty())
        .count()
}

pub fn lattice_lemma_check(f: &LatticeFamily, window: u32) -> Result<LatticeReport, LatticeError> {
    if window == 0 {
        return Err(LatticeError::EmptyWindow);
    }
    let (dx, dy) = f.direction;
    if dx.gcd(&dy) != 1 {
        return Err(LatticeError::NonPrimitiveDirection(f.direction));
    }
    if det(f.base, f.direction) == 0 {
        return Err(LatticeError::LineThroughOrigin);
    }
    let w = window as i64;
    let covered: Vec<(i64, Vec<usize>)> = (-w..=w)
        .map(|k| (k, member(&f.subgroups, (f.base.0 + k * dx, f.base.1 + k * dy))))
        .filter(|(_, m)| !m.is_empty())
        .collect();
    let v0 = f.excluded_point;
    let excluded_point_on_line = det((v0.0 - f.base.0, v0.1 - f.base.1), f.direction) == 0;
    let excluded_point_excluded = member(&f.subgroups, v0).is_empty();
    let ranks: Vec<u32> = f.subgroups.iter().map(Subgroup::rank).collect();
    // rank-2 part: smallest t with t * direction in K, at most the index
    let h_step = f.subgroups.iter().filter(|s| s.rank() == 2).try_fold(1i64, |acc, s| {
        let n = s.index()? as i64;
        let t = (1..=n).find(|t| s.contains((t * dx, t * dy)))?;
        Some(acc.lcm(&t))
    });
    let hypotheses_hold = excluded_point_on_line && excluded_point_excluded && h_step.is_some();
    let uncovered_count = uncovered(f, w);
    let uncovered_count_doubled = uncovered(f, 2 * w);
    let growth_verified = hypotheses_hold.then_some(uncovered_count_doubled > uncovered_count);
    Ok(LatticeReport {
        covered,
        uncovered_count,
        uncovered_count_doubled,
        excluded_point_on_line,
        excluded_point_excluded,
        ranks,
        h_step,
        hypotheses_hold,
        growth_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_x1(subgroups: Vec<Subgroup>, v0: V2) -> LatticeFamily {
        LatticeFamily { base: (1, 0), direction: (0, 1), subgroups, excluded_point: v0 }
    }

    #[test]
    fn hermite_membership() {
        let s = Subgroup::new((1, 1), (0, 2));
        assert!(s.contains((1, 1)) && s.contains((3, 5)) && !s.contains((1, 0)));
        assert_eq!(s.index(), Some(2));
        let r = Subgroup::new((2, 4), (3, 6));
        assert_eq!(r.rank(), 1);
        assert!(r.contains((1, 2)) && r.contains((-5, -10)) && !r.contains((1, 3)));
        assert_eq!(Subgroup::new((0, 0), (0, 0)).rank(), 0);
        assert!(Subgroup::new((0, 4), (0, 6)).contains((0, -2)));
    }

    #[test]
    fn rank_one_family() {
        let f = line_x1((1..=5).map(|n| Subgroup::new((1, n), (0, 0))).collect(), (1, 0));
        let r = lattice_lemma_check(&f, 10).unwrap();
        assert_eq!(r.covered.len(), 5);
        assert!(r.covered.iter().all(|(_, m)| m.len() == 1));
        assert!(r.uncovered_count_doubled > r.uncovered_count);
        assert_eq!(r.growth_verified, Some(true));
    }

    #[test]
    fn whole_lattice_excludes_nothing() {
        for k in -5..=5 {
            let f = line_x1(vec![Subgroup::new((1, 0), (0, 1))], (1, k));
            assert!(!lattice_lemma_check(&f, 5).unwrap().excluded_point_excluded);
        }
    }

    #[test]
    fn parity_and_mod_three() {
        let f = line_x1(vec![Subgroup::new((1, 1), (0, 2)), Subgroup::new((1, 2), (0, 3))], (1, 0));
        let r = lattice_lemma_check(&f, 50).unwrap();
        assert!(r.excluded_point_excluded && r.hypotheses_hold);
        assert_eq!(r.h_step, Some(6));
        assert!(r.uncovered_count_doubled > r.uncovered_count);
        assert_eq!(r.growth_verified, Some(true));
    }

    #[test]
    fn errors() {
        let f = LatticeFamily { base: (2, 2), direction: (1, 1), subgroups: vec![], excluded_point: (2, 2) };
        assert_eq!(lattice_lemma_check(&f, 3), Err(LatticeError::LineThroughOrigin));
        let f = LatticeFamily { base: (1, 0), direction: (0, 2), subgroups: vec![], excluded_point: (1, 0) };
        assert_eq!(lattice_lemma_check(&f, 3), Err(LatticeError::NonPrimitiveDirection((0, 2))));
    }
}
