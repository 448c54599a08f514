//! Buchberger's algorithm with the sugar selection strategy.
//!
//! Working polynomials carry integer coefficients and are divided by their
//! content after every reduction step, so coefficient growth stays bounded
//! by the size of the true normal form.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Exponents, MonomialOrder, PolyError, SparsePoly};

#[derive(Clone, Debug)]
struct GPoly {
    /// Sorted descending under the active order.
    terms: Vec<(Exponents, BigInt)>,
    sugar: u32,
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> Exponents {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

struct Ctx<'a> {
    order: &'a MonomialOrder,
    deadline: Option<Instant>,
}

impl Ctx<'_> {
    fn check(&self) -> Result<(), PolyError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(PolyError::Timeout),
            _ => Ok(()),
        }
    }

    fn to_g(&self, p: &SparsePoly) -> GPoly {
        let (_, prim) = p.content_primitive().expect("nonzero input");
        let mut terms: Vec<(Exponents, BigInt)> =
            prim.terms().iter().map(|(e, c)| (e.clone(), c.to_integer())).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        GPoly { sugar: p.total_degree(), terms }
    }

    /// `a*x - b*y*m` where `m` multiplies `y`; inputs sorted under the order.
    fn lin_comb(
        &self,
        x: &[(Exponents, BigInt)],
        a: &BigInt,
        y: &[(Exponents, BigInt)],
        b: &BigInt,
        m: &[u32],
    ) -> Vec<(Exponents, BigInt)> {
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &(Exponents, BigInt)| -> Exponents { t.0.iter().zip(m).map(|(p, q)| p + q).collect() };
        let mut ym: Option<Exponents> = y.first().map(shifted);
        while i < x.len() || j < y.len() {
            let ord = match (x.get(i), &ym) {
                (None, _) => Ordering::Less,
                (_, None) => Ordering::Greater,
                (Some(tx), Some(ey)) => self.order.cmp(&tx.0, ey),
            };
            match ord {
                Ordering::Greater => {
                    out.push((x[i].0.clone(), &x[i].1 * a));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((ym.take().unwrap(), -(&y[j].1 * b)));
                    j += 1;
                    ym = y.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let c = &x[i].1 * a - &y[j].1 * b;
                    if !c.is_zero() {
                        out.push((x[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    ym = y.get(j).map(shifted);
                }
            }
        }
        out
    }

    fn spoly(&self, f: &GPoly, g: &GPoly) -> GPoly {
        let (ef, cf) = &f.terms[0];
        let (eg, cg) = &g.terms[0];
        let l = lcm(ef, eg);
        let mf = quotient(&l, ef);
        let mg = quotient(&l, eg);
        let gc = cf.gcd(cg);
        let a = cg / &gc;
        let b = cf / &gc;
        // a*mf*f - b*mg*g with the leading terms cancelling
        let fm: Vec<(Exponents, BigInt)> =
            f.terms.iter().map(|(e, c)| (e.iter().zip(&mf).map(|(p, q)| p + q).collect(), c.clone())).collect();
        let terms = self.lin_comb(&fm, &a, &g.terms, &b, &mg);
        let sugar = (f.sugar + deg(&mf)).max(g.sugar + deg(&mg));
        GPoly { terms, sugar }
    }

    /// Full reduction of `f` modulo `basis`, returning a primitive remainder.
    fn reduce(&self, f: GPoly, basis: &[GPoly]) -> Result<GPoly, PolyError> {
        let mut rest = f.terms;
        let mut start = 0usize;
        let sugar = f.sugar;
        let mut done: Vec<(Exponents, BigInt)> = Vec::new();
        let mut steps = 0usize;
        while start < rest.len() {
            let lead = rest[start].0.clone();
            let divisor = basis.iter().find(|g| divides(&g.terms[0].0, &lead));
            match divisor {
                None => {
                    done.push(rest[start].clone());
                    start += 1;
                }
                Some(g) => {
                    let m = quotient(&lead, &g.terms[0].0);
                    let cg = &g.terms[0].1;
                    let cr = &rest[start].1;
                    let gc = cg.gcd(cr);
                    let a = cg / &gc;
                    let b = cr / &gc;
                    if !a.is_one() {
                        for t in done.iter_mut() {
                            t.1 *= &a;
                        }
                    }
                    rest = self.lin_comb(&rest[start..], &a, &g.terms, &b, &m);
                    start = 0;
                    steps += 1;
                    if steps % 16 == 0 {
                        self.check()?;
                    }
                    normalize_pair(&mut done, &mut rest);
                }
            }
        }
        let mut out = GPoly { terms: done, sugar };
        make_primitive(&mut out.terms);
        Ok(out)
    }
}

fn normalize_pair(a: &mut [(Exponents, BigInt)], b: &mut [(Exponents, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in a.iter().chain(b.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in a.iter_mut().chain(b.iter_mut()) {
        *c = &*c / &g;
    }
}

fn make_primitive(t: &mut [(Exponents, BigInt)]) {
    normalize_pair(t, &mut []);
    if t.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in t.iter_mut() {
            *c = -&*c;
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
    sugar: u32,
}

fn from_g(vars: &Arc<[String]>, g: &GPoly) -> SparsePoly {
    SparsePoly::from_terms(vars.clone(), g.terms.iter().map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone()))))
}

fn aligned(gens: &[SparsePoly]) -> (Arc<[String]>, Vec<SparsePoly>) {
    let mut vars: Arc<[String]> = gens.first().map(|g| g.vars_arc()).unwrap_or_else(|| Arc::from(vec![]));
    for g in gens.iter().skip(1) {
        vars = SparsePoly::union_vars(&vars, &g.vars_arc());
    }
    let polys = gens.iter().map(|g| g.align_to(&vars).expect("union")).collect();
    (vars, polys)
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Elements are
/// returned integer-primitive with positive leading coefficient, sorted by
/// increasing leading monomial.
pub fn buchberger(gens: &[SparsePoly], order: MonomialOrder) -> Vec<SparsePoly> {
    buchberger_with_deadline(gens, order, None).expect("no deadline set")
}

pub fn buchberger_with_deadline(
    gens: &[SparsePoly],
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<Vec<SparsePoly>, PolyError> {
    let (vars, gens) = aligned(gens);
    let ctx = Ctx { order: &order, deadline };
    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<GPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| ctx.to_g(g)).collect();
    inputs.sort_by(|a, b| order.cmp(&a.terms[0].0, &b.terms[0].0));
    for g in inputs {
        let r = ctx.reduce(g, &basis)?;
        if !r.terms.is_empty() {
            add_to_basis(&mut basis, &mut pairs, r);
        }
    }

    while !pairs.is_empty() {
        ctx.check()?;
        let k = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm)))
            .expect("nonempty");
        let p = pairs.swap_remove(k);
        let s = ctx.spoly(&basis[p.i], &basis[p.j]);
        if s.terms.is_empty() {
            continue;
        }
        let r = ctx.reduce(s, &basis)?;
        if !r.terms.is_empty() {
            if r.terms[0].0.iter().all(|&x| x == 0) {
                // unit ideal
                return Ok(vec![SparsePoly::one_in(vars)]);
            }
            add_to_basis(&mut basis, &mut pairs, r);
        }
    }

    // minimalize
    let mut keep: Vec<GPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lead = &g.terms[0].0;
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && divides(&h.terms[0].0, lead) && (h.terms[0].0 != *lead || j < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<GPoly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let r = ctx.reduce(keep[i].clone(), &others)?;
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a.terms[0].0, &b.terms[0].0));
    Ok(reduced.iter().map(|g| from_g(&vars, g)).collect())
}

fn add_to_basis(basis: &mut Vec<GPoly>, pairs: &mut Vec<Pair>, h: GPoly) {
    let t = basis.len();
    let lt = h.terms[0].0.clone();
    // Buchberger's chain criterion on existing pairs
    pairs.retain(|p| {
        !(divides(&lt, &p.lcm)
            && lcm(&basis[p.i].terms[0].0, &lt) != p.lcm
            && lcm(&basis[p.j].terms[0].0, &lt) != p.lcm)
    });
    let mut fresh: Vec<Pair> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let gl = &g.terms[0].0;
        let l = lcm(gl, &lt);
        let sugar = (g.sugar + deg(&l) - deg(gl)).max(h.sugar + deg(&l) - deg(&lt));
        fresh.push(Pair { i, j: t, lcm: l, sugar });
    }
    // drop pairs whose lcm is a proper multiple of another new pair's lcm
    let lcms: Vec<Exponents> = fresh.iter().map(|p| p.lcm.clone()).collect();
    let mut selected: Vec<Pair> = Vec::new();
    for p in fresh {
        let dominated = lcms.iter().any(|l| *l != p.lcm && divides(l, &p.lcm));
        if dominated || selected.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        selected.push(p);
    }
    // product criterion: coprime leading monomials reduce to zero
    for p in selected {
        let gl = &basis[p.i].terms[0].0;
        let coprime = gl.iter().zip(&lt).all(|(a, b)| *a == 0 || *b == 0);
        if !coprime {
            pairs.push(p);
        }
    }
    basis.push(h);
}

/// Normal form of `f` modulo `basis` under `order`, up to a nonzero scalar.
pub fn reduce(f: &SparsePoly, basis: &[SparsePoly], order: MonomialOrder) -> SparsePoly {
    let mut all = vec![f.clone()];
    all.extend(basis.iter().cloned());
    let (vars, all) = aligned(&all);
    if all[0].is_zero() {
        return all[0].clone();
    }
    let ctx = Ctx { order: &order, deadline: None };
    let gb: Vec<GPoly> = all[1..].iter().filter(|g| !g.is_zero()).map(|g| ctx.to_g(g)).collect();
    let r = ctx.reduce(ctx.to_g(&all[0]), &gb).expect("no deadline");
    from_g(&vars, &r)
}

/// S-polynomial of `f` and `g` under `order`, up to a nonzero scalar.
pub fn s_polynomial(f: &SparsePoly, g: &SparsePoly, order: MonomialOrder) -> SparsePoly {
    let (vars, all) = aligned(&[f.clone(), g.clone()]);
    let ctx = Ctx { order: &order, deadline: None };
    let s = ctx.spoly(&ctx.to_g(&all[0]), &ctx.to_g(&all[1]));
    from_g(&vars, &s)
}

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[SparsePoly], order: MonomialOrder) -> bool {
    let (_, all) = aligned(basis);
    let ctx = Ctx { order: &order, deadline: None };
    let gb: Vec<GPoly> = all.iter().filter(|g| !g.is_zero()).map(|g| ctx.to_g(g)).collect();
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            let s = ctx.spoly(&gb[i], &gb[j]);
            if s.terms.is_empty() {
                continue;
            }
            if !ctx.reduce(s, &gb).expect("no deadline").terms.is_empty() {
                return false;
            }
        }
    }
    true
}
