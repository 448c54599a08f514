//! Knot diagram codes (DT, PD, braid words) and the Wirtinger presentation
//! of the knot group with its peripheral system.
//!
//! Conventions used throughout:
//!
//! * Edges of a diagram are labeled `1..=2n` along the orientation; edge `k`
//!   leaves the `(k-1)`-th pass and enters the `k`-th. Labels are rotated so
//!   that the crossing passed at the end of edge `2n` is passed *under*, which
//!   makes edge 1 the first edge of arc 1.
//! * A crossing is positive (right-handed) when the over strand, rotated
//!   counterclockwise by less than a half turn, lines up with the under strand.
//! * Generator `x_k` belongs to arc `k`. At a crossing with over arc `o`,
//!   incoming under arc `j`, outgoing under arc `k` and sign `e`, the relation
//!   is `x_k = x_o^-e x_j x_o^e`, stored as the relator `x_o^e x_k x_o^-e x_j^-1`.
//! * The meridian is `x_1`; the longitude records `x_o^e` for every under
//!   pass starting from arc 1 and is then multiplied by `x_1^-writhe`.

mod braid;
mod dt;
mod group;
mod pd;
mod table;
mod wirtinger;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use braid::parse_braid;
pub use dt::parse_dt;
pub use group::{exponent_sum, filled_presentation, free_reduce, Abelianization, FillingSpec, GroupPresentation, Word};
pub use pd::{parse_pd, parse_pd_tuples};
pub use table::bundled_knots;
pub use wirtinger::{wirtinger, PeripheralSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotIoError {
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("code is not realizable as a planar diagram: {0}")]
    Unrealizable(String),
    #[error("diagram has more than one component")]
    LinkNotKnot,
    #[error("inconsistent arc labels: {0}")]
    InconsistentArcs(String),
    #[error("filling slope {0}/{1} is not a pair of coprime integers")]
    NonCoprime(i64, i64),
}

/// One crossing, in edge labels of the owning diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
}

/// A pass of the traversal through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pass {
    pub crossing: usize,
    pub over: bool,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        KnotDiagram { crossings: Vec::new() }
    }

    /// Builds a diagram from a closed traversal (each crossing passed once
    /// over and once under) and per-crossing signs.
    pub(crate) fn from_traversal(passes: &[Pass], signs: &[i8]) -> Result<Self, KnotIoError> {
        let n = signs.len();
        if passes.len() != 2 * n {
            return Err(KnotIoError::InconsistentArcs("traversal length".into()));
        }
        if n == 0 {
            return Ok(KnotDiagram::unknot());
        }
        let start = passes.iter().rposition(|p| !p.over).expect("some under pass");
        // rotate so pass 0, the one entered by edge 2n, is an under pass
        let rotated: Vec<Pass> = (0..2 * n).map(|i| passes[(start + i) % (2 * n)]).collect();
        let mut under = vec![None; n];
        let mut over = vec![None; n];
        for (i, p) in rotated.iter().enumerate() {
            // pass i is entered by edge i (edge 2n for i = 0) and left by edge i+1
            let e_in = if i == 0 { 2 * n } else { i };
            let e_out = i + 1;
            let slot = if p.over { &mut over[p.crossing] } else { &mut under[p.crossing] };
            if slot.is_some() {
                return Err(KnotIoError::InconsistentArcs(format!(
                    "crossing {} passed twice on the same level",
                    p.crossing
                )));
            }
            *slot = Some((e_in, e_out));
        }
        let mut crossings = Vec::with_capacity(n);
        for c in 0..n {
            let (ui, uo) = under[c].ok_or_else(|| KnotIoError::InconsistentArcs("missing under pass".into()))?;
            let (oi, oo) = over[c].ok_or_else(|| KnotIoError::InconsistentArcs("missing over pass".into()))?;
            if signs[c] != 1 && signs[c] != -1 {
                return Err(KnotIoError::InconsistentArcs("crossing sign must be +-1".into()));
            }
            crossings.push(Crossing { under_in: ui, under_out: uo, over_in: oi, over_out: oo, sign: signs[c] });
        }
        let d = KnotDiagram { crossings };
        d.validate()?;
        Ok(d)
    }

    /// Checks the labeling invariants: every label used exactly twice, each
    /// strand runs from label `k` to `k+1`, and signs are `+-1`.
    pub fn validate(&self) -> Result<(), KnotIoError> {
        let m = self.edge_count();
        let mut uses = vec![0usize; m + 1];
        for c in &self.crossings {
            for l in [c.under_in, c.under_out, c.over_in, c.over_out] {
                if l == 0 || l > m {
                    return Err(KnotIoError::InconsistentArcs(format!("label {l} out of range")));
                }
                uses[l] += 1;
            }
            let next = |k: usize| if k == m { 1 } else { k + 1 };
            if next(c.under_in) != c.under_out || next(c.over_in) != c.over_out {
                return Err(KnotIoError::InconsistentArcs("strand labels not consecutive".into()));
            }
            if c.sign.abs() != 1 {
                return Err(KnotIoError::InconsistentArcs("crossing sign must be +-1".into()));
            }
        }
        if let Some(l) = (1..=m).find(|&l| uses[l] != 2) {
            return Err(KnotIoError::InconsistentArcs(format!("label {l} used {} times", uses[l])));
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of edge labels (`2n`).
    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Arc index (1-based) of every edge label; `result[k]` for label `k`.
    pub fn arc_of_edges(&self) -> Vec<usize> {
        let m = self.edge_count();
        let mut ends_arc = vec![false; m + 2];
        for c in &self.crossings {
            ends_arc[c.under_in] = true;
        }
        let mut arc = vec![0usize; m + 1];
        let mut current = 1;
        for k in 1..=m {
            arc[k] = current;
            if ends_arc[k] {
                current += 1;
            }
        }
        arc
    }

    /// The same diagram as a PD code `X[a,b,c,d]` (incoming under edge first,
    /// counterclockwise).
    pub fn to_pd(&self) -> Vec<[usize; 4]> {
        self.crossings
            .iter()
            .map(|c| {
                if c.sign > 0 {
                    [c.under_in, c.over_out, c.under_out, c.over_in]
                } else {
                    [c.under_in, c.over_in, c.under_out, c.over_out]
                }
            })
            .collect()
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                under_in: c.over_in,
                under_out: c.over_out,
                over_in: c.under_in,
                over_out: c.under_out,
                sign: -c.sign,
            })
            .collect();
        let passes = self.passes_of(&crossings);
        let signs: Vec<i8> = crossings.iter().map(|c| c.sign).collect();
        KnotDiagram::from_traversal(&passes, &signs).expect("mirror of a valid diagram")
    }

    fn passes_of(&self, crossings: &[Crossing]) -> Vec<Pass> {
        let m = self.edge_count();
        let mut passes = vec![Pass { crossing: 0, over: false }; m];
        for (i, c) in crossings.iter().enumerate() {
            // the pass entered by edge k sits at position k mod m
            passes[c.under_in % m] = Pass { crossing: i, over: false };
            passes[c.over_in % m] = Pass { crossing: i, over: true };
        }
        passes
    }
}
