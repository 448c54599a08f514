//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use apoly::cli::{InputFormat, KnotInput};
use apoly::mpoly::SparsePoly;
use apoly::su2::Subgroup;

/// Frozen outputs of the Riley-representation eliminations in `oracles.rs`.
pub const TREFOIL_FULL: &str = "(L - 1)*(L*M^6 + 1)";
pub const FIGURE8_NONTRIVIAL: &str = "L^2*M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + M^4";

pub const TREFOIL_PD: &str = "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]";
pub const FIGURE8_PD: &str = "X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]";

pub fn ml(s: &str) -> SparsePoly {
    SparsePoly::parse(s, &["M", "L"]).unwrap()
}

pub fn input(format: InputFormat, code: &str) -> KnotInput {
    KnotInput { format, code: code.to_string() }
}

/// Subgroup membership by enumerating the subgroup's elements.
///
/// Rank 2: `K` contains `d Z^2` for `d = |det|`, so `K` is the preimage of
/// the finite set `{a g1 + b g2 mod d : 0 <= a, b < d}`. Otherwise `K` is
/// cyclic, and the combinations `a g1 + b g2` with `|b| <= 8` and `|a|`
/// slightly above `bound` reach every element with coordinates up to
/// `bound`, provided generator entries are at most 4 in absolute value.
pub struct BruteSubgroup {
    modulus: i64,
    residues: HashSet<(i64, i64)>,
    multiples: HashSet<(i64, i64)>,
}

impl BruteSubgroup {
    pub fn new(s: &Subgroup, bound: i64) -> Self {
        let [mut g1, mut g2] = s.generators;
        let det = (g1.0 * g2.1 - g1.1 * g2.0).abs();
        let mut residues = HashSet::new();
        let mut multiples = HashSet::new();
        if det != 0 {
            for a in 0..det {
                for b in 0..det {
                    residues.insert(((a * g1.0 + b * g2.0).rem_euclid(det), (a * g1.1 + b * g2.1).rem_euclid(det)));
                }
            }
        } else {
            if g1 == (0, 0) {
                std::mem::swap(&mut g1, &mut g2);
            }
            // both generators are multiples of one vector; walk all small
            // combinations and keep what lands in range
            for a in -bound - 40..=bound + 40 {
                for b in -8..=8 {
                    let p = (a * g1.0 + b * g2.0, a * g1.1 + b * g2.1);
                    if p.0.abs() <= bound && p.1.abs() <= bound {
                        multiples.insert(p);
                    }
                }
            }
        }
        BruteSubgroup { modulus: det, residues, multiples }
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        if self.modulus != 0 {
            self.residues.contains(&(p.0.rem_euclid(self.modulus), p.1.rem_euclid(self.modulus)))
        } else {
            self.multiples.contains(&p)
        }
    }
}
