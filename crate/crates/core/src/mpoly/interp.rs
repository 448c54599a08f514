//! Evaluation and interpolation: resultants from Sylvester determinants at
//! integer points, and a modular test for coprimality.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Coeff, Exponents, PolyError, SparsePoly};

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = powmod_p(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_p(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    (0u64..).map(|k| (1u64 << 62) - 1 - 2 * k).filter(|&n| is_prime(n))
}

fn mulmod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_p(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_p(r, b, p);
        }
        b = mulmod_p(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_p(a: u64, p: u64) -> u64 {
    powmod_p(a, p - 2, p)
}

type ModTerms = Vec<(Exponents, u64)>;

fn degree(t: &ModTerms, v: usize) -> usize {
    t.iter().map(|(e, _)| e[v] as usize).max().unwrap_or(0)
}

fn eval_mod(t: &ModTerms, v: usize, x: u64, p: u64) -> ModTerms {
    let pows: Vec<u64> =
        std::iter::successors(Some(1u64), |&y| Some(mulmod_p(y, x, p))).take(degree(t, v) + 1).collect();
    let mut acc: BTreeMap<Exponents, u64> = BTreeMap::new();
    for (e, c) in t {
        let mut ne = e.clone();
        let k = std::mem::replace(&mut ne[v], 0) as usize;
        let slot = acc.entry(ne).or_insert(0);
        *slot = (*slot + mulmod_p(*c, pows[k], p)) % p;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Determinant mod `p` of the Sylvester matrix of `a`, `b` (coefficients
/// ascending) with formal degrees `da`, `db`.
fn sylvester_det_mod(a: &[u64], b: &[u64], da: usize, db: usize, p: u64) -> u64 {
    let n = da + db;
    let get = |c: &[u64], k: usize| c.get(k).copied().unwrap_or(0);
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..db {
        for k in 0..=da {
            m[i][i + k] = get(a, da - k);
        }
    }
    for i in 0..da {
        for k in 0..=db {
            m[db + i][i + k] = get(b, db - k);
        }
    }
    let mut det = 1u64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if r != k {
            m.swap(k, r);
            det = (p - det) % p;
        }
        det = mulmod_p(det, m[k][k], p);
        let pivot_inv = inv_p(m[k][k], p);
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let f = mulmod_p(m[i][k], pivot_inv, p);
            for j in k..n {
                m[i][j] = (m[i][j] + p - mulmod_p(f, m[k][j], p)) % p;
            }
        }
    }
    det
}

/// Coefficients mod `p` of the polynomial through `(j, ys[j])`, ascending.
fn interpolate_mod(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    let inverses: Vec<u64> = (0..n as u64).map(|k| if k == 0 { 0 } else { inv_p(k, p) }).collect();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = mulmod_p((dd[i] + p - dd[i - 1]) % p, inverses[level], p);
        }
    }
    let mut out = vec![0u64; n];
    out[0] = dd[n - 1];
    for i in (0..n - 1).rev() {
        // out = out * (x - i) + dd[i]
        let c = i as u64 % p;
        for k in (1..n - i).rev() {
            out[k] = (out[k - 1] + p - mulmod_p(c, out[k], p)) % p;
        }
        out[0] = (dd[i] + p - mulmod_p(c, out[0], p)) % p;
    }
    out
}

fn resultant_mod(
    a: &ModTerms,
    b: &ModTerms,
    idx: usize,
    da: usize,
    db: usize,
    p: u64,
    deadline: Option<Instant>,
) -> Result<ModTerms, PolyError> {
    let nvars = a.first().or(b.first()).map_or(0, |(e, _)| e.len());
    let involves = |t: &ModTerms, v: usize| t.iter().any(|(e, _)| e[v] > 0);
    let other = (0..nvars).find(|&v| v != idx && (involves(a, v) || involves(b, v)));
    let Some(v) = other else {
        let dense = |t: &ModTerms, d: usize| {
            let mut c = vec![0u64; d + 1];
            for (e, x) in t {
                c[e[idx] as usize] = *x;
            }
            c
        };
        let det = sylvester_det_mod(&dense(a, da), &dense(b, db), da, db, p);
        return Ok(if det == 0 { Vec::new() } else { vec![(Exponents::from_elem(0, nvars), det)] });
    };
    let bound = db * degree(a, v) + da * degree(b, v);
    let mut by_mono: BTreeMap<Exponents, Vec<u64>> = BTreeMap::new();
    for j in 0..=bound {
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Err(PolyError::Timeout);
        }
        let x = j as u64;
        let val = resultant_mod(&eval_mod(a, v, x, p), &eval_mod(b, v, x, p), idx, da, db, p, deadline)?;
        for (e, c) in val {
            by_mono.entry(e).or_insert_with(|| vec![0; bound + 1])[j] = c;
        }
    }
    let mut out = Vec::new();
    for (e, ys) in by_mono {
        for (k, c) in interpolate_mod(&ys, p).into_iter().enumerate() {
            if c != 0 {
                let mut ne = e.clone();
                ne[v] = k as u32;
                out.push((ne, c));
            }
        }
    }
    Ok(out)
}

/// Resultant in variable `idx` with formal degrees `da`, `db` of integer
/// polynomials, by evaluation and interpolation modulo enough primes to
/// cover the bound `|a|_1^db |b|_1^da` on every coefficient.
pub(super) fn resultant_interp(
    a: &SparsePoly,
    b: &SparsePoly,
    idx: usize,
    da: usize,
    db: usize,
    deadline: Option<Instant>,
) -> Result<SparsePoly, PolyError> {
    let norm1 = |q: &SparsePoly| q.terms().iter().fold(BigInt::zero(), |acc, (_, c)| acc + c.numer().abs());
    debug_assert!(a.terms().iter().chain(b.terms()).all(|(_, c)| c.is_integer()));
    let bound = num_traits::pow(norm1(a), db) * num_traits::pow(norm1(b), da);
    let mut modulus = BigInt::one();
    let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
    for p in primes() {
        if modulus > &bound * 2 {
            break;
        }
        let r: BTreeMap<Exponents, u64> =
            resultant_mod(&reduce(a, p), &reduce(b, p), idx, da, db, p, deadline)?.into_iter().collect();
        // Garner step: acc += modulus * ((r - acc) / modulus mod p)
        let pb = BigInt::from(p);
        let m_inv = inv_p(modulus.mod_floor(&pb).to_u64().expect("reduced"), p);
        let keys: Vec<Exponents> = acc.keys().chain(r.keys()).cloned().collect();
        for e in keys {
            let cur = acc.get(&e).cloned().unwrap_or_else(BigInt::zero);
            let ri = r.get(&e).copied().unwrap_or(0);
            let cm = cur.mod_floor(&pb).to_u64().expect("reduced");
            let t = mulmod_p((ri + p - cm) % p, m_inv, p);
            acc.insert(e, cur + &modulus * t);
        }
        modulus *= pb;
    }
    let half = &modulus / 2;
    let terms: Vec<(Exponents, Coeff)> = acc
        .into_iter()
        .map(|(e, c)| if c > half { (e, &c - &modulus) } else { (e, c) })
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e, Coeff::from_integer(c)))
        .collect();
    Ok(SparsePoly::from_terms(a.vars_arc(), terms))
}

fn reduce(q: &SparsePoly, p: u64) -> ModTerms {
    let pb = BigInt::from(p);
    q.terms()
        .iter()
        .map(|(e, c)| (e.clone(), c.numer().mod_floor(&pb).to_u64().expect("reduced")))
        .filter(|(_, c)| *c != 0)
        .collect()
}

fn trim_mod(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// `(quotient, remainder)` of dense polynomials mod `p`; `b` nonzero and trimmed.
fn divrem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim_mod(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = inv_p(*b.last().expect("nonzero"), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = mulmod_p(*r.last().expect("nonzero"), lb, p);
        q[shift] = f;
        for (k, &bk) in b.iter().enumerate() {
            r[k + shift] = (r[k + shift] + p - mulmod_p(f, bk, p)) % p;
        }
        trim_mod(&mut r);
    }
    (q, r)
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem_mod(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// `a / b mod m` with `|a|, b <= sqrt(m / 2)`, if such a fraction exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Coeff> {
    let limit = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > limit {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > limit || !Integer::gcd(&r1, &t1).is_one() {
        return None;
    }
    Some(Coeff::new(r1, t1))
}

/// Degrees in `keep` and in the other variable, then the leading exponent:
/// each entry can only drop at a prime that divides the content or the
/// leading coefficient of the true primitive part.
type Signature = (u32, u32, Exponents);

/// Primitive part mod `p` of `r` with respect to `keep`, scaled so that its
/// lex-leading coefficient is 1. `other` is the only other variable present.
fn primitive_mod(r: &ModTerms, keep: usize, other: Option<usize>, p: u64) -> (ModTerms, Signature) {
    let nvars = r[0].0.len();
    let dk = degree(r, keep);
    let dv = other.map_or(0, |v| degree(r, v));
    let mut rows = vec![vec![0u64; dv + 1]; dk + 1];
    for (e, c) in r {
        rows[e[keep] as usize][other.map_or(0, |v| e[v] as usize)] = *c;
    }
    let content = rows.iter().fold(Vec::new(), |g, row| if g.len() == 1 { g } else { gcd_mod(&g, row, p) });
    let mut out = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let (q, _) = divrem_mod(row, &content, p);
        for (j, &c) in q.iter().enumerate() {
            if c != 0 {
                let mut e = Exponents::from_elem(0, nvars);
                e[keep] = k as u32;
                if let Some(v) = other {
                    e[v] = j as u32;
                }
                out.push((e, c));
            }
        }
    }
    let (lead, lc) = out.iter().max_by(|x, y| x.0.cmp(&y.0)).cloned().expect("nonzero");
    let s = inv_p(lc, p);
    for t in out.iter_mut() {
        t.1 = mulmod_p(t.1, s, p);
    }
    let sig = (degree(&out, keep) as u32, other.map_or(0, |v| degree(&out, v) as u32), lead);
    (out, sig)
}

/// The primitive part with respect to variable `keep` of `Res_idx(a, b)`,
/// for integer polynomials in which at most one variable besides `idx`
/// and `keep` occurs. The content is removed modulo each prime and the
/// (usually much smaller) primitive part is rebuilt by Chinese remaindering
/// and rational reconstruction, stopping once two consecutive
/// reconstructions agree. Returns `None` when the resultant looks like zero
/// or the variable condition fails, so the caller can use the exact route.
pub(super) fn resultant_primitive(
    a: &SparsePoly,
    b: &SparsePoly,
    idx: usize,
    keep: usize,
    deadline: Option<Instant>,
) -> Result<Option<SparsePoly>, PolyError> {
    let (da, db) = (a.degree_in(idx) as usize, b.degree_in(idx) as usize);
    let others: Vec<usize> =
        (0..a.nvars()).filter(|&v| v != idx && v != keep && (a.involves(v) || b.involves(v))).collect();
    if others.len() > 1 {
        return Ok(None);
    }
    let other = others.first().copied();
    let mut best: Option<Signature> = None;
    let mut modulus = BigInt::one();
    let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
    let mut previous: Option<SparsePoly> = None;
    let mut zeros = 0;
    for p in primes() {
        let r = resultant_mod(&reduce(a, p), &reduce(b, p), idx, da, db, p, deadline)?;
        if r.is_empty() {
            zeros += 1;
            if zeros == 3 {
                return Ok(None);
            }
            continue;
        }
        let (pp, sig) = primitive_mod(&r, keep, other, p);
        if let Some(cur) = best.as_ref().filter(|cur| **cur != sig) {
            if !(sig.0 >= cur.0 && sig.1 >= cur.1 && sig.2 >= cur.2) {
                continue;
            }
            // the earlier primes were unlucky
            modulus = BigInt::one();
            acc.clear();
            previous = None;
        }
        best = Some(sig);
        let pb = BigInt::from(p);
        let m_inv = inv_p(modulus.mod_floor(&pb).to_u64().expect("reduced"), p);
        let r: BTreeMap<Exponents, u64> = pp.into_iter().collect();
        let keys: Vec<Exponents> = acc.keys().chain(r.keys()).cloned().collect();
        for e in keys {
            let cur = acc.get(&e).cloned().unwrap_or_else(BigInt::zero);
            let ri = r.get(&e).copied().unwrap_or(0);
            let cm = cur.mod_floor(&pb).to_u64().expect("reduced");
            let t = mulmod_p((ri + p - cm) % p, m_inv, p);
            acc.insert(e, cur + &modulus * t);
        }
        modulus *= pb;
        let rebuilt: Option<Vec<(Exponents, Coeff)>> = acc
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| rational_reconstruction(c, &modulus).map(|q| (e.clone(), q)))
            .collect();
        let Some(terms) = rebuilt else {
            previous = None;
            continue;
        };
        let cand = SparsePoly::from_terms(a.vars_arc(), terms).primitive();
        if previous.as_ref() == Some(&cand) {
            return Ok(Some(cand));
        }
        previous = Some(cand);
    }
    unreachable!("the prime supply is unbounded")
}

/// Coefficients mod `p` of the polynomial through `(xs[j], ys[j])`, ascending;
/// the `xs` must be distinct mod `p`.
fn interpolate_at(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let step = inv_p((xs[i] + p - xs[i - level]) % p, p);
            dd[i] = mulmod_p((dd[i] + p - dd[i - 1]) % p, step, p);
        }
    }
    let mut out = vec![0u64; n];
    out[0] = dd[n - 1];
    for i in (0..n - 1).rev() {
        let c = xs[i];
        for k in (1..n - i).rev() {
            out[k] = (out[k - 1] + p - mulmod_p(c, out[k], p)) % p;
        }
        out[0] = (dd[i] + p - mulmod_p(c, out[0], p)) % p;
    }
    trim_mod(&mut out);
    out
}

fn horner_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &k| (mulmod_p(acc, x, p) + k) % p)
}

/// `rows[i][j]` is the coefficient of `x^i y^j` mod `p`.
fn dense2(q: &SparsePoly, x: usize, y: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![0u64; q.degree_in(y) as usize + 1]; q.degree_in(x) as usize + 1];
    for (e, c) in reduce(q, p) {
        rows[e[x] as usize][e[y] as usize] = c;
    }
    rows
}

/// Image of the gcd mod `p`, scaled so that its leading coefficient in `x`
/// is `gamma`; `None` when the prime is unsuitable.
fn gcd_image_mod(
    a: &SparsePoly,
    b: &SparsePoly,
    gamma: &SparsePoly,
    x: usize,
    y: usize,
    p: u64,
) -> Option<Vec<Vec<u64>>> {
    let (ra, rb) = (dense2(a, x, y, p), dense2(b, x, y, p));
    let mut g = vec![0u64; gamma.degree_in(y) as usize + 1];
    for (e, c) in reduce(gamma, p) {
        g[e[y] as usize] = c;
    }
    let (la, lb) = (ra.last()?.clone(), rb.last()?.clone());
    if la.iter().all(|&c| c == 0) || lb.iter().all(|&c| c == 0) || g.last() == Some(&0) {
        return None;
    }
    let bound = gamma.degree_in(y) as usize + a.degree_in(y).min(b.degree_in(y)) as usize;
    let mut best = usize::MAX;
    let mut xs: Vec<u64> = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    let limit = 4 * (bound + 1) + 64;
    for m in 0..limit as u64 {
        if horner_mod(&la, m, p) == 0 || horner_mod(&lb, m, p) == 0 {
            continue;
        }
        let at = |rows: &[Vec<u64>]| rows.iter().map(|r| horner_mod(r, m, p)).collect::<Vec<u64>>();
        let mut h = gcd_mod(&at(&ra), &at(&rb), p);
        let d = h.len() - 1;
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            xs.clear();
            images.clear();
        }
        if d == 0 {
            return Some(vec![g]);
        }
        let s = mulmod_p(horner_mod(&g, m, p), inv_p(h[d], p), p);
        for c in h.iter_mut() {
            *c = mulmod_p(*c, s, p);
        }
        xs.push(m);
        images.push(h);
        if xs.len() == bound + 1 {
            let rows = (0..=best)
                .map(|k| interpolate_at(&xs, &images.iter().map(|h| h[k]).collect::<Vec<u64>>(), p))
                .collect();
            return Some(rows);
        }
    }
    None
}

/// Gcd of `a` and `b` in `Z[y][x]`, both primitive in `x` with integer
/// coefficients and no other variables, by Brown's modular algorithm.
/// `gamma` is the gcd of their leading coefficients in `x`. Each candidate
/// is confirmed by exact division, so a returned value is the true gcd;
/// `None` means the prime budget ran out.
pub(super) fn gcd_bivariate(
    a: &SparsePoly,
    b: &SparsePoly,
    gamma: &SparsePoly,
    x: usize,
    y: usize,
) -> Option<SparsePoly> {
    let vars = a.vars_arc();
    let mut modulus = BigInt::one();
    let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    let mut best = usize::MAX;
    let mut last: Option<BTreeMap<(usize, usize), BigInt>> = None;
    for p in primes().take(64) {
        let Some(rows) = gcd_image_mod(a, b, gamma, x, y, p) else {
            continue;
        };
        let d = rows.len() - 1;
        if d == 0 {
            return Some(SparsePoly::one_in(vars));
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            modulus = BigInt::one();
            acc.clear();
            last = None;
        }
        let pb = BigInt::from(p);
        let m_inv = inv_p(modulus.mod_floor(&pb).to_u64().expect("reduced"), p);
        let mut keys: Vec<(usize, usize)> = acc.keys().copied().collect();
        for (i, r) in rows.iter().enumerate() {
            keys.extend(r.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, _)| (i, j)));
        }
        for k in keys {
            let cur = acc.get(&k).cloned().unwrap_or_else(BigInt::zero);
            let ri = rows[k.0].get(k.1).copied().unwrap_or(0);
            let cm = cur.mod_floor(&pb).to_u64().expect("reduced");
            let t = mulmod_p((ri + p - cm) % p, m_inv, p);
            acc.insert(k, cur + &modulus * t);
        }
        modulus *= pb;
        let half = &modulus / 2;
        let sym: BTreeMap<(usize, usize), BigInt> = acc
            .iter()
            .map(|(k, c)| (*k, if c > &half { c - &modulus } else { c.clone() }))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if last.as_ref() == Some(&sym) {
            let terms = sym.iter().map(|(&(i, j), c)| {
                let mut e = Exponents::from_elem(0, a.nvars());
                e[x] = i as u32;
                e[y] = j as u32;
                (e, Coeff::from_integer(c.clone()))
            });
            let h = SparsePoly::from_terms(vars.clone(), terms);
            let h = super::prs::prim_in(&h, x);
            if a.exact_div(&h).is_ok() && b.exact_div(&h).is_ok() {
                return Some(h);
            }
        }
        last = Some(sym);
    }
    None
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

fn to_mod(c: &Coeff) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = c.numer().mod_floor(&p).to_u64()?;
    let d = c.denom().mod_floor(&p).to_u64()?;
    (d != 0).then(|| mulmod(n, inv(d)))
}

/// Image of `p` in `F_P[x_idx]` with the other variables set to `at`.
fn specialize_mod(p: &SparsePoly, idx: usize, at: &[u64]) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(idx) as usize + 1];
    for (e, c) in p.terms() {
        let mut t = to_mod(c)?;
        for (v, &k) in e.iter().enumerate() {
            if v != idx && k > 0 {
                t = mulmod(t, powmod(at[v], k as u64));
            }
        }
        let slot = &mut out[e[idx] as usize];
        *slot = (*slot + t) % PRIME;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb = inv(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let f = mulmod(*a.last().expect("nonempty"), lb);
            let shift = a.len() - b.len();
            for (k, &bk) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + PRIME - mulmod(f, bk)) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `a` and `b` certainly have no common factor of positive degree
/// in variable `idx`. A `false` answer is inconclusive.
pub(super) fn coprime_in(a: &SparsePoly, b: &SparsePoly, idx: usize) -> bool {
    let (da, db) = (a.degree_in(idx) as usize, b.degree_in(idx) as usize);
    for attempt in 0..3u64 {
        let at: Vec<u64> = (0..a.nvars() as u64).map(|v| 1_000_003 + 7919 * v + 104_729 * attempt).collect();
        let (Some(sa), Some(sb)) = (specialize_mod(a, idx, &at), specialize_mod(b, idx, &at)) else {
            return false;
        };
        // leading coefficients must survive the specialization
        if sa.get(da) == Some(&0) || sb.get(db) == Some(&0) {
            continue;
        }
        return gcd_degree_mod(sa, sb) == 0;
    }
    false
}
