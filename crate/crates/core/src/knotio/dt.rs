//! Dowker–Thistlethwaite codes. Entry `i` pairs the odd pass `2i-1` with the
//! even pass `|a_i|`; a negative entry means the even pass goes over.
//!
//! The planar embedding is recovered by searching the local rotation at each
//! crossing for a choice whose face count satisfies Euler's formula
//! `F = n + 2`. The rotation at the first crossing is fixed, which selects
//! the mirror image: `4 6 2` is the trefoil with three positive crossings,
//! the closure of the braid `1 1 1`. This is the mirror of the diagram
//! KnotTheory draws for the same code.

use super::{KnotDiagram, KnotIoError, Pass};

/// Search over rotations is exponential; codes beyond this are refused.
const MAX_CROSSINGS: usize = 24;

pub fn parse_dt(code: &str) -> Result<KnotDiagram, KnotIoError> {
    let entries = tokenize(code)?;
    let n = entries.len();
    if n == 0 {
        return Ok(KnotDiagram::unknot());
    }
    if n > MAX_CROSSINGS {
        return Err(KnotIoError::MalformedCode(format!("more than {MAX_CROSSINGS} crossings")));
    }
    let mut seen = vec![false; n + 1];
    for &e in &entries {
        let a = e.unsigned_abs() as usize;
        if a % 2 != 0 || a == 0 || a > 2 * n || seen[a / 2] {
            return Err(KnotIoError::MalformedCode(format!("absolute values must be a permutation of 2..{}", 2 * n)));
        }
        seen[a / 2] = true;
    }
    // crossing of each pass (1-based pass labels)
    let mut crossing_of = vec![0usize; 2 * n + 1];
    for (i, &e) in entries.iter().enumerate() {
        let odd = 2 * i + 1;
        let even = e.unsigned_abs() as usize;
        let gap = odd.abs_diff(even);
        if gap == 1 || gap == 2 * n - 1 {
            return Err(KnotIoError::MalformedCode(format!("crossing {odd},{even} is a removable kink")));
        }
        crossing_of[odd] = i;
        crossing_of[even] = i;
    }
    let rot = find_planar_rotation(&entries, &crossing_of)
        .ok_or_else(|| KnotIoError::Unrealizable(format!("no planar diagram for {code:?}")))?;

    let passes: Vec<Pass> = (1..=2 * n)
        .map(|t| {
            let i = crossing_of[t];
            let even_over = entries[i] < 0;
            let is_even = t % 2 == 0;
            Pass { crossing: i, over: is_even == even_over }
        })
        .collect();
    let signs: Vec<i8> = (0..n)
        .map(|i| {
            let odd_over = entries[i] > 0;
            let base = if rot[i] { 1 } else { -1 };
            if odd_over {
                base
            } else {
                -base
            }
        })
        .collect();
    KnotDiagram::from_traversal(&passes, &signs)
}

fn tokenize(code: &str) -> Result<Vec<i64>, KnotIoError> {
    code.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| KnotIoError::MalformedCode(format!("not an integer: {t:?}"))))
        .collect()
}

/// Half-edge slots at a crossing, counterclockwise: `[in_odd, a, out_odd, b]`
/// where `(a, b)` is `(in_even, out_even)` when the rotation bit is false and
/// swapped otherwise. With the odd strand running west to east, a false bit
/// has the even strand running south to north.
fn find_planar_rotation(entries: &[i64], crossing_of: &[usize]) -> Option<Vec<bool>> {
    let n = entries.len();
    // half-edge id = 4 * crossing + slot
    let slot_of = |rot: &[bool], pass: usize, incoming: bool| -> usize {
        let c = crossing_of[pass];
        let is_odd = pass % 2 == 1;
        let slot = match (is_odd, incoming, rot[c]) {
            (true, true, _) => 0,
            (true, false, _) => 2,
            (false, true, false) | (false, false, true) => 1,
            (false, false, false) | (false, true, true) => 3,
        };
        4 * c + slot
    };
    let mut rot = vec![false; n];
    rot[0] = true;
    let mut partner = vec![0usize; 4 * n];
    let mut visited = vec![false; 4 * n];
    for mask in 0u64..(1u64 << (n - 1)) {
        for (i, r) in rot.iter_mut().enumerate().skip(1) {
            *r = mask >> (i - 1) & 1 == 1;
        }
        for t in 1..=2 * n {
            let next = if t == 2 * n { 1 } else { t + 1 };
            let a = slot_of(&rot, t, false);
            let b = slot_of(&rot, next, true);
            partner[a] = b;
            partner[b] = a;
        }
        visited.fill(false);
        let mut faces = 0;
        for start in 0..4 * n {
            if visited[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !visited[h] {
                visited[h] = true;
                let arrive = partner[h];
                h = arrive - arrive % 4 + (arrive % 4 + 1) % 4;
            }
        }
        if faces == n + 2 {
            return Some(rot);
        }
    }
    None
}
