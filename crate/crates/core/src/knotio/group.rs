use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{KnotIoError, PeripheralSystem};

/// A word in the generators: letter `k` is `x_k` (1-based), `-k` its inverse.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
}

/// Abelian group `Z^free_rank + sum Z/torsion_i`; torsion factors are > 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingSpec {
    p: i64,
    q: i64,
}

impl FillingSpec {
    pub fn new(p: i64, q: i64) -> Result<Self, KnotIoError> {
        if p.gcd(&q) != 1 {
            return Err(KnotIoError::NonCoprime(p, q));
        }
        Ok(FillingSpec { p, q })
    }

    /// The filling `1/n`.
    pub fn one_over(n: i64) -> Self {
        FillingSpec { p: 1, q: n }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl std::fmt::Display for FillingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl std::str::FromStr for FillingSpec {
    type Err = KnotIoError;

    /// Accepts `p/q` or a bare integer `p` (meaning `p/1`).
    fn from_str(s: &str) -> Result<Self, KnotIoError> {
        let bad = || KnotIoError::MalformedCode(format!("bad slope {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        FillingSpec::new(p, q)
    }
}

pub fn word_inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// `w^k`, with negative `k` meaning powers of the inverse.
pub fn word_pow(w: &[i32], k: i64) -> Word {
    let base = if k < 0 { word_inverse(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

/// Free reduction (cancel adjacent `x x^-1` pairs).
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Total exponent of a word.
pub fn exponent_sum(w: &[i32]) -> i64 {
    w.iter().map(|&l| l.signum() as i64).sum()
}

impl GroupPresentation {
    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generator_count];
                for &l in r {
                    row[l.unsigned_abs() as usize - 1] += l.signum() as i64;
                }
                row
            })
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let diag = smith_diagonal(self.exponent_matrix(), self.generator_count);
        let rank = diag.len();
        Abelianization {
            free_rank: self.generator_count - rank,
            torsion: diag.into_iter().filter(|&d| d > 1).collect(),
        }
    }
}

/// Nonzero diagonal entries of the Smith normal form.
fn smith_diagonal(mut a: Vec<Vec<i64>>, cols: usize) -> Vec<u64> {
    let rows = a.len();
    let mut a: Vec<Vec<i128>> = a.drain(..).map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    for j in t..cols {
                        a[i][j] -= f * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad =
                (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j];
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

/// Appends the filling relator `mu^p lambda^q`.
pub fn filled_presentation(
    pres: &GroupPresentation,
    periph: &PeripheralSystem,
    slope: FillingSpec,
) -> Result<GroupPresentation, KnotIoError> {
    let slope = FillingSpec::new(slope.p, slope.q)?;
    let mut rel = word_pow(&periph.meridian, slope.p);
    rel.extend(word_pow(&periph.longitude, slope.q));
    let mut out = pres.clone();
    out.relators.push(free_reduce(&rel));
    Ok(out)
}
