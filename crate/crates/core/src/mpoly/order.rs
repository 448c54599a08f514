use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Monomial orders on exponent vectors (index 0 is the most significant variable).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Elimination order: degrevlex on the first `elim` variables, ties
    /// broken by degrevlex on the remaining ones.
    Block {
        elim: usize,
    },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Block { elim } => {
                let k = elim.min(a.len());
                match degrevlex(&a[..k], &b[..k]) {
                    Ordering::Equal => degrevlex(&a[k..], &b[k..]),
                    o => o,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        // x > y > z, x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1, 0], &[1, 1, 0]), Ordering::Equal);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block { elim: 1 };
        // any monomial with x beats every x-free monomial
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 9, 9]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[0, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn orders_are_multiplicative() {
        let monos: Vec<[u32; 3]> = vec![[0, 0, 1], [1, 2, 0], [2, 0, 1], [0, 3, 0], [1, 1, 1]];
        for o in [MonomialOrder::Lex, MonomialOrder::DegRevLex, MonomialOrder::Block { elim: 2 }] {
            for a in &monos {
                for b in &monos {
                    for c in &monos {
                        let ac: Vec<u32> = a.iter().zip(c).map(|(x, y)| x + y).collect();
                        let bc: Vec<u32> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                        assert_eq!(o.cmp(a, b), o.cmp(&ac, &bc));
                    }
                }
            }
        }
    }
}
