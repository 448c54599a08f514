//! Polynomial remainder sequences: pseudo-remainders, subresultant
//! resultants, recursive multivariate gcd and squarefree splitting.

use std::sync::Arc;
use std::time::Instant;

use num_traits::One;

use super::{Coeff, PolyError, SparsePoly};

/// Dense view in one variable: `coeffs[k]` multiplies `var^k`; no trailing zeros.
#[derive(Clone, Debug)]
struct UPoly {
    coeffs: Vec<SparsePoly>,
}

impl UPoly {
    fn of(p: &SparsePoly, idx: usize) -> Self {
        let mut u = UPoly { coeffs: p.coefficients_in(idx) };
        u.trim();
        u
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0 (callers check `is_zero`).
    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &SparsePoly {
        self.coeffs.last().expect("nonzero")
    }

    fn to_poly(&self, vars: Arc<[String]>, idx: usize) -> SparsePoly {
        SparsePoly::from_coefficients_in(vars, idx, &self.coeffs)
    }

    fn map(&self, f: impl Fn(&SparsePoly) -> SparsePoly) -> Self {
        let mut u = UPoly { coeffs: self.coeffs.iter().map(f).collect() };
        u.trim();
        u
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without divisions.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!b.is_zero());
    if a.is_zero() || a.deg() < b.deg() {
        return a.clone();
    }
    let db = b.deg();
    let lcb = b.lc().clone();
    let delta = a.deg() - db;
    let mut r = a.clone();
    let mut steps = 0usize;
    while !r.is_zero() && r.deg() >= db {
        let lr = r.lc().clone();
        let shift = r.deg() - db;
        let mut next: Vec<SparsePoly> = r.coeffs.iter().map(|c| c * &lcb).collect();
        for (k, bc) in b.coeffs.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(bc * &lr);
        }
        debug_assert!(next.last().unwrap().is_zero());
        next.pop();
        r = UPoly { coeffs: next };
        r.trim();
        steps += 1;
    }
    let missing = delta + 1 - steps;
    if missing > 0 && !r.is_zero() {
        let f = lcb.pow(missing as u32);
        r = r.map(|c| c * &f);
    }
    r
}

/// Pseudo-remainder of `a` by `b` with respect to the variable `var`.
pub fn pseudo_remainder(a: &SparsePoly, b: &SparsePoly, var: &str) -> Result<SparsePoly, PolyError> {
    let vars = SparsePoly::union_vars(&a.vars, &b.vars);
    let a = a.align_to(&vars)?;
    let b = b.align_to(&vars)?;
    let idx = a.var_index(var)?;
    if b.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    Ok(prem(&UPoly::of(&a, idx), &UPoly::of(&b, idx)).to_poly(vars, idx))
}

fn exact(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    a.exact_div(b).expect("subresultant division is exact")
}

/// Subresultant PRS resultant of two nonzero univariate views.
fn resultant_u(a: &UPoly, b: &UPoly, vars: &Arc<[String]>) -> SparsePoly {
    if a.is_zero() || b.is_zero() {
        return SparsePoly::zero_in(vars.clone());
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_neg = false;
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign_neg = true;
        }
    }
    if b.deg() == 0 {
        let r = b.lc().pow(a.deg() as u32);
        return if sign_neg { -r } else { r };
    }
    let mut g = SparsePoly::one_in(vars.clone());
    let mut h = SparsePoly::one_in(vars.clone());
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_zero() {
            return SparsePoly::zero_in(vars.clone());
        }
        let divisor = &g * &h.pow(delta as u32);
        b = r.map(|c| exact(c, &divisor));
        g = a.lc().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => exact(&g.pow(d as u32), &h.pow(d as u32 - 1)),
        };
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let last = exact(&b.lc().pow(da), &h.pow(da - 1));
    if sign_neg {
        -last
    } else {
        last
    }
}

/// Resultant of `a` and `b` with respect to `var` (the Sylvester determinant),
/// via the subresultant PRS. The result does not involve `var`.
pub fn resultant(a: &SparsePoly, b: &SparsePoly, var: &str) -> Result<SparsePoly, PolyError> {
    resultant_with_deadline(a, b, var, None)
}

/// `resultant`, giving up with `PolyError::Timeout` after `deadline`.
pub fn resultant_with_deadline(
    a: &SparsePoly,
    b: &SparsePoly,
    var: &str,
    deadline: Option<Instant>,
) -> Result<SparsePoly, PolyError> {
    let vars = SparsePoly::union_vars(&a.vars, &b.vars);
    let a = a.align_to(&vars)?;
    let b = b.align_to(&vars)?;
    let idx = a.var_index(var)?;
    if a.degree_in(idx) == 0 && b.degree_in(idx) == 0 {
        return Err(PolyError::BothConstant(var.to_string()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(SparsePoly::zero_in(vars));
    }
    let (da, db) = (a.degree_in(idx) as usize, b.degree_in(idx) as usize);
    // Res(sa a, sb b) = sa^db sb^da Res(a, b)
    let (sa, ia) = integer_scale(&a);
    let (sb, ib) = integer_scale(&b);
    let r = super::interp::resultant_interp(&ia, &ib, idx, da, db, deadline)?;
    let scale = num_traits::pow(sa, db) * num_traits::pow(sb, da);
    Ok(r.scale(&scale.recip()))
}

/// Primitive part of `resultant(a, b, var)` with respect to `keep`, with
/// positive leading coefficient; zero when the resultant is zero. Faster
/// than the full resultant when its content in the remaining variable is
/// large, which is typical for elimination towers.
pub fn resultant_primitive(
    a: &SparsePoly,
    b: &SparsePoly,
    var: &str,
    keep: &str,
    deadline: Option<Instant>,
) -> Result<SparsePoly, PolyError> {
    let vars = SparsePoly::union_vars(&a.vars, &b.vars);
    let a = a.align_to(&vars)?;
    let b = b.align_to(&vars)?;
    let idx = a.var_index(var)?;
    let k = a.var_index(keep)?;
    if a.degree_in(idx) == 0 && b.degree_in(idx) == 0 {
        return Err(PolyError::BothConstant(var.to_string()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(SparsePoly::zero_in(vars));
    }
    let (_, ia) = integer_scale(&a);
    let (_, ib) = integer_scale(&b);
    if k != idx {
        if let Some(p) = super::interp::resultant_primitive(&ia, &ib, idx, k, deadline)? {
            return Ok(p);
        }
    }
    let r = resultant_with_deadline(&ia, &ib, var, deadline)?;
    if r.is_zero() {
        return Ok(r);
    }
    let c = content_in(&r, k);
    Ok(r.exact_div(&c).expect("content divides").primitive())
}

/// `(s, s * p)` with `s * p` having integer coefficients.
fn integer_scale(p: &SparsePoly) -> (Coeff, SparsePoly) {
    let den = p.terms.iter().fold(num_bigint::BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
    let s = Coeff::from_integer(den);
    let q = p.scale(&s);
    (s, q)
}

/// The same resultant computed by the subresultant PRS over the other variables.
pub fn resultant_prs(a: &SparsePoly, b: &SparsePoly, var: &str) -> Result<SparsePoly, PolyError> {
    let vars = SparsePoly::union_vars(&a.vars, &b.vars);
    let a = a.align_to(&vars)?;
    let b = b.align_to(&vars)?;
    let idx = a.var_index(var)?;
    if a.degree_in(idx) == 0 && b.degree_in(idx) == 0 {
        return Err(PolyError::BothConstant(var.to_string()));
    }
    Ok(resultant_u(&UPoly::of(&a, idx), &UPoly::of(&b, idx), &vars))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `idx`.
pub fn content_in(p: &SparsePoly, idx: usize) -> SparsePoly {
    content_with(p, idx, true)
}

fn content_with(p: &SparsePoly, idx: usize, modular: bool) -> SparsePoly {
    let mut acc: Option<SparsePoly> = None;
    for c in p.coefficients_in(idx).into_iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.primitive(),
            Some(g) if g.is_constant() => return SparsePoly::one_in(p.vars.clone()),
            Some(g) => gcd_rec(&g, &c, modular),
        });
    }
    acc.unwrap_or_else(|| SparsePoly::zero_in(p.vars.clone()))
}

/// `p` divided by its content in variable `idx`, made primitive.
pub fn prim_in(p: &SparsePoly, idx: usize) -> SparsePoly {
    prim_with(p, idx, true)
}

fn prim_with(p: &SparsePoly, idx: usize, modular: bool) -> SparsePoly {
    let c = content_with(p, idx, modular);
    if c.is_constant() {
        p.primitive()
    } else {
        exact(p, &c).primitive()
    }
}

/// Gcd of two nonzero polynomials over the same variables, up to units.
fn gcd_rec(a: &SparsePoly, b: &SparsePoly, modular: bool) -> SparsePoly {
    let vars = a.vars.clone();
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one_in(vars);
    }
    if let Some(i) = (0..a.nvars()).find(|&i| a.involves(i) != b.involves(i)) {
        return if a.involves(i) {
            gcd_rec(&content_with(a, i, modular), b, modular)
        } else {
            gcd_rec(a, &content_with(b, i, modular), modular)
        };
    }
    // main variable of smallest degree
    let idx = match (0..a.nvars()).filter(|&i| a.involves(i)).min_by_key(|&i| a.degree_in(i).max(b.degree_in(i))) {
        Some(i) => i,
        None => return SparsePoly::one_in(vars),
    };
    let ca = content_with(a, idx, modular);
    let cb = content_with(b, idx, modular);
    let c = gcd_rec(&ca, &cb, modular);
    if modular && super::interp::coprime_in(a, b, idx) {
        return c;
    }
    let pa = exact(a, &ca).primitive();
    let pb = exact(b, &cb).primitive();
    let involved: Vec<usize> = (0..a.nvars()).filter(|&i| a.involves(i) || b.involves(i)).collect();
    if modular && involved.len() == 2 {
        let y = involved[0] + involved[1] - idx;
        let lc = |q: &SparsePoly| q.coefficients_in(idx).pop().expect("nonzero");
        let gamma = gcd_rec(&lc(&pa), &lc(&pb), modular);
        if let Some(g) = super::interp::gcd_bivariate(&pa, &pb, &gamma, idx, y) {
            return (&c * &g).primitive();
        }
    }
    let (mut u, mut v) = (UPoly::of(&pa, idx), UPoly::of(&pb, idx));
    if u.deg() < v.deg() {
        std::mem::swap(&mut u, &mut v);
    }
    let g = loop {
        let r = prem(&u, &v);
        if r.is_zero() {
            break prim_with(&v.to_poly(vars.clone(), idx), idx, modular);
        }
        if r.deg() == 0 {
            break SparsePoly::one_in(vars.clone());
        }
        u = v;
        v = UPoly::of(&prim_with(&r.to_poly(vars.clone(), idx), idx, modular), idx);
    };
    (&c * &g).primitive()
}

/// Primitive gcd (integer coefficients, positive degrevlex leading coefficient).
/// `gcd(0, p)` is the primitive part of `p`; `gcd(0, 0) = 0`.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let vars = SparsePoly::union_vars(&a.vars, &b.vars);
    let a = a.align_to(&vars).expect("union");
    let b = b.align_to(&vars).expect("union");
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    gcd_rec(&a, &b, true).primitive()
}

/// `gcd` computed by primitive PRS only, without the modular bivariate route.
pub fn gcd_prs(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let vars = SparsePoly::union_vars(&a.vars, &b.vars);
    let a = a.align_to(&vars).expect("union");
    let b = b.align_to(&vars).expect("union");
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    gcd_rec(&a, &b, false).primitive()
}

/// `a / gcd(a, da/dvar)`, made primitive. Constants map to 1.
pub fn squarefree_part(a: &SparsePoly, var: &str) -> Result<SparsePoly, PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let d = a.derivative(var)?;
    let g = gcd(a, &d);
    Ok(a.exact_div(&g)?.primitive())
}

/// Yun's squarefree decomposition in `var`: pairwise coprime primitive factors
/// `f_i` with `a = content_var(a) * prod f_i^i` up to units. Factors not
/// involving `var` are not reported.
pub fn squarefree_decomposition(a: &SparsePoly, var: &str) -> Result<Vec<(SparsePoly, u32)>, PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let idx = a.var_index(var)?;
    let a = prim_in(a, idx);
    let mut out = Vec::new();
    if !a.involves(idx) {
        return Ok(out);
    }
    let b = a.derivative_in(idx);
    let c = gcd(&a, &b);
    let mut w = a.exact_div(&c)?;
    let mut y = b.exact_div(&c)?;
    let mut z = &y - &w.derivative_in(idx);
    let mut i = 1u32;
    while w.involves(idx) {
        let g = gcd(&w, &z);
        if g.involves(idx) {
            out.push((g.primitive(), i));
        }
        w = w.exact_div(&g)?;
        y = z.exact_div(&g)?;
        z = &y - &w.derivative_in(idx);
        i += 1;
    }
    Ok(out)
}
