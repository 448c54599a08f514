//! PD codes: `X[i,j,k,l]` lists each crossing starting from the incoming
//! under edge and going counterclockwise. The crossing is positive when the
//! over strand runs from `l` to `j`.

use std::collections::HashMap;

use super::{KnotDiagram, KnotIoError, Pass};

/// Parses `X[a,b,c,d], X[...]`, optionally wrapped in `PD[...]`.
pub fn parse_pd(code: &str) -> Result<KnotDiagram, KnotIoError> {
    parse_pd_tuples(&tokenize(code)?)
}

fn tokenize(code: &str) -> Result<Vec<[u64; 4]>, KnotIoError> {
    let bad = |m: &str| KnotIoError::MalformedCode(format!("PD: {m}"));
    let mut s = code.trim();
    if let Some(inner) = s.strip_prefix("PD[") {
        s = inner.strip_suffix(']').ok_or_else(|| bad("unclosed PD["))?;
    }
    let mut out = Vec::new();
    let mut rest = s.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    while !rest.is_empty() {
        let body = rest.strip_prefix("X[").ok_or_else(|| bad("expected X["))?;
        let close = body.find(']').ok_or_else(|| bad("unclosed X["))?;
        let labels: Vec<u64> = body[..close]
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad("labels must be positive integers")))
            .collect::<Result<_, _>>()?;
        if labels.len() != 4 || labels.contains(&0) {
            return Err(bad("each crossing needs four positive labels"));
        }
        out.push([labels[0], labels[1], labels[2], labels[3]]);
        rest = body[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(out)
}

pub fn parse_pd_tuples(tuples: &[[u64; 4]]) -> Result<KnotDiagram, KnotIoError> {
    let n = tuples.len();
    if n == 0 {
        return Ok(KnotDiagram::unknot());
    }
    let mut slots: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (ci, t) in tuples.iter().enumerate() {
        for (pos, &l) in t.iter().enumerate() {
            slots.entry(l).or_default().push((ci, pos));
        }
    }
    if let Some((l, v)) = slots.iter().find(|(_, v)| v.len() != 2) {
        return Err(KnotIoError::InconsistentArcs(format!("label {l} appears {} times", v.len())));
    }
    let other = |l: u64, here: (usize, usize)| -> (usize, usize) {
        let v = &slots[&l];
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    };

    let mut passes = Vec::with_capacity(2 * n);
    let mut signs = vec![0i8; n];
    let (mut ci, mut pos) = (0usize, 0usize);
    loop {
        let over = match pos {
            0 => false,
            2 => return Err(KnotIoError::InconsistentArcs(format!("under strand of crossing {ci} runs backwards"))),
            1 | 3 => true,
            _ => unreachable!(),
        };
        if over {
            let s = if pos == 3 { 1 } else { -1 };
            if signs[ci] != 0 {
                return Err(KnotIoError::InconsistentArcs(format!("crossing {ci} passed over twice")));
            }
            signs[ci] = s;
        }
        passes.push(Pass { crossing: ci, over });
        if passes.len() > 2 * n {
            return Err(KnotIoError::InconsistentArcs("traversal does not close".into()));
        }
        let exit = (pos + 2) % 4;
        let next = other(tuples[ci][exit], (ci, exit));
        (ci, pos) = next;
        if (ci, pos) == (0, 0) {
            break;
        }
    }
    if passes.len() < 2 * n {
        return Err(KnotIoError::LinkNotKnot);
    }
    KnotDiagram::from_traversal(&passes, &signs)
}
