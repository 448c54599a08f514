//! Braid words: `i` is `sigma_i` (the strand moving from position `i` to `i+1`
//! passes over), `-i` its inverse. The closure must be a knot.

use super::pd::parse_pd_tuples;
use super::{KnotDiagram, KnotIoError};

pub fn parse_braid(word: &str) -> Result<KnotDiagram, KnotIoError> {
    let letters: Vec<i64> = word
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| KnotIoError::MalformedCode(format!("not an integer: {t:?}"))))
        .collect::<Result<_, _>>()?;
    if letters.contains(&0) {
        return Err(KnotIoError::MalformedCode("braid generators are nonzero".into()));
    }
    let strands = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
    if letters.is_empty() {
        return Ok(KnotDiagram::unknot());
    }

    // every edge gets a fresh id; the closure identifies top and bottom ids
    let mut next_id = 0u64;
    let mut fresh = || {
        next_id += 1;
        next_id
    };
    let bottom: Vec<u64> = (0..strands).map(|_| fresh()).collect();
    let mut cur = bottom.clone();
    let mut tuples = Vec::with_capacity(letters.len());
    for &l in &letters {
        let i = l.unsigned_abs() as usize - 1;
        let (in_left, in_right) = (cur[i], cur[i + 1]);
        let (out_left, out_right) = (fresh(), fresh());
        if l > 0 {
            tuples.push([in_right, out_right, out_left, in_left]);
        } else {
            tuples.push([in_left, in_right, out_right, out_left]);
        }
        cur[i] = out_left;
        cur[i + 1] = out_right;
    }
    if cur.iter().zip(&bottom).any(|(t, b)| t == b) {
        return Err(KnotIoError::LinkNotKnot);
    }
    let close = |id: u64| match cur.iter().position(|&t| t == id) {
        Some(s) => bottom[s],
        None => id,
    };
    let tuples: Vec<[u64; 4]> = tuples.iter().map(|t| t.map(close)).collect();
    parse_pd_tuples(&tuples)
}
