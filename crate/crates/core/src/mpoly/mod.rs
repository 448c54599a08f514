//! Exact sparse multivariate polynomials with rational coefficients.
//!
//! A [`SparsePoly`] carries its own ordered variable list. Binary operations
//! between polynomials over different variable lists first align both onto
//! the union of the two lists (variables of the left operand first).
//!
//! Terms are stored sorted descending in lexicographic order of their
//! exponent vectors; that storage order is canonical, so structurally equal
//! polynomials over the same variable list compare equal. Order-dependent
//! notions (leading terms, sign normalization) take a [`MonomialOrder`].

mod groebner;
mod interp;
mod json;
mod order;
mod parse;
mod prs;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use groebner::{buchberger, buchberger_with_deadline, is_groebner_basis, reduce, s_polynomial};
pub use json::PolyJson;
pub use order::MonomialOrder;

pub type Coeff = BigRational;
pub type Exponents = SmallVec<[u32; 8]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no content or normal form")]
    ZeroPolynomial,
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("both operands are constant in {0}")]
    BothConstant(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("malformed polynomial: {0}")]
    Malformed(String),
    #[error("computation exceeded its time budget")]
    Timeout,
}

#[derive(Clone)]
pub struct SparsePoly {
    vars: Arc<[String]>,
    /// Sorted descending by lex order of exponent vectors, no zero coefficients.
    terms: Vec<(Exponents, Coeff)>,
}

pub(crate) fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

fn lex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    b.cmp(a)
}

impl SparsePoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_in(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_in(vars: Arc<[String]>) -> Self {
        SparsePoly { vars, terms: Vec::new() }
    }

    pub fn constant_in(vars: Arc<[String]>, c: Coeff) -> Self {
        let n = vars.len();
        let mut p = SparsePoly::zero_in(vars);
        if !c.is_zero() {
            p.terms.push((SmallVec::from_elem(0, n), c));
        }
        p
    }

    pub fn constant(vars: &[&str], c: i64) -> Self {
        let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        Self::constant_in(vars, rat(c))
    }

    pub fn one_in(vars: Arc<[String]>) -> Self {
        Self::constant_in(vars, Coeff::one())
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        Self::var_in(vars, name)
    }

    pub fn var_in(vars: Arc<[String]>, name: &str) -> Result<Self, PolyError> {
        let idx = vars.iter().position(|v| v == name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut e: Exponents = SmallVec::from_elem(0, vars.len());
        e[idx] = 1;
        Ok(SparsePoly { vars, terms: vec![(e, Coeff::one())] })
    }

    pub fn monomial_in(vars: Arc<[String]>, exps: &[u32], c: Coeff) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut p = SparsePoly::zero_in(vars);
        if !c.is_zero() {
            p.terms.push((SmallVec::from_slice(exps), c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Coeff)>,
    {
        let mut acc: HashMap<Exponents, Coeff> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            *acc.entry(e).or_insert_with(Coeff::zero) += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: Arc<[String]>, acc: HashMap<Exponents, Coeff>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| lex_desc(&a.0, &b.0));
        SparsePoly { vars, terms }
    }

    /// Builds from already sorted (descending lex), zero-free terms.
    pub(crate) fn from_sorted(vars: Arc<[String]>, terms: Vec<(Exponents, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn vars_arc(&self) -> Arc<[String]> {
        self.vars.clone()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> &[(Exponents, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant term value (zero if absent).
    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => Coeff::zero(),
        }
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Coeff {
        self.terms
            .binary_search_by(|(e, _)| exps.cmp(e.as_slice()))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Coeff::zero())
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[idx]).max().unwrap_or(0)
    }

    pub fn degree(&self, name: &str) -> Result<u32, PolyError> {
        Ok(self.degree_in(self.var_index(name)?))
    }

    pub fn min_degree_in(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[idx]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn involves(&self, idx: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[idx] > 0)
    }

    /// Names of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<String> {
        (0..self.nvars()).filter(|&i| self.involves(i)).map(|i| self.vars[i].clone()).collect()
    }

    /// Re-embeds into `vars`, which must contain every variable that occurs.
    pub fn align_to(&self, vars: &Arc<[String]>) -> Result<Self, PolyError> {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return Ok(SparsePoly { vars: vars.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        let n = vars.len();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne: Exponents = SmallVec::from_elem(0, n);
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    ne[*j] = e[i];
                }
            }
            (ne, c.clone())
        });
        Ok(SparsePoly::from_terms(vars.clone(), terms))
    }

    /// Same polynomial over a list of variable names; convenience for `align_to`.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self, PolyError> {
        let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        self.align_to(&vars)
    }

    /// Drops variables that do not occur, keeping the relative order of the rest.
    pub fn compact(&self) -> Self {
        let keep: Vec<usize> = (0..self.nvars()).filter(|&i| self.involves(i)).collect();
        let vars: Arc<[String]> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms =
            self.terms.iter().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect::<Exponents>(), c.clone())).collect();
        SparsePoly::from_sorted(vars, terms)
    }

    pub(crate) fn union_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
        if Arc::ptr_eq(a, b) || **a == **b {
            return a.clone();
        }
        let mut out: Vec<String> = a.to_vec();
        for v in b.iter() {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        out.into()
    }

    fn aligned_pair(&self, other: &Self) -> (SparsePoly, SparsePoly) {
        let vars = Self::union_vars(&self.vars, &other.vars);
        (
            self.align_to(&vars).expect("union contains all vars"),
            other.align_to(&vars).expect("union contains all vars"),
        )
    }

    fn same_vars(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return SparsePoly::zero_in(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        SparsePoly::from_sorted(self.vars.clone(), terms)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[u32]) -> Self {
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone())).collect();
        SparsePoly::from_sorted(self.vars.clone(), terms)
    }

    /// Divides by the monomial `exps`; fails if some term is not divisible.
    pub fn div_monomial(&self, exps: &[u32]) -> Result<Self, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for (x, &d) in ne.iter_mut().zip(exps) {
                *x = x.checked_sub(d).ok_or(PolyError::NotDivisible)?;
            }
            terms.push((ne, c.clone()));
        }
        Ok(SparsePoly::from_sorted(self.vars.clone(), terms))
    }

    fn add_sorted(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                lex_desc(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparsePoly::from_sorted(self.vars.clone(), out)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero_in(self.vars.clone());
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.shift(e).scale(c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.shift(e).scale(c);
        }
        let mut acc: HashMap<Exponents, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        SparsePoly::from_map(self.vars.clone(), acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = SparsePoly::one_in(self.vars.clone());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if !self.same_vars(divisor) {
            let (a, b) = self.aligned_pair(divisor);
            return a.exact_div(&b);
        }
        if self.is_zero() {
            return Ok(SparsePoly::zero_in(self.vars.clone()));
        }
        let (lead_e, lead_c) = &divisor.terms[0];
        if divisor.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let mut q: Exponents = SmallVec::with_capacity(e.len());
                for (x, y) in e.iter().zip(lead_e.iter()) {
                    if x < y {
                        return Err(PolyError::NotDivisible);
                    }
                    q.push(x - y);
                }
                terms.push((q, c / lead_c));
            }
            return Ok(SparsePoly::from_sorted(self.vars.clone(), terms));
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Exponents, Coeff)> = Vec::new();
        while let Some((e, c)) = rem.terms.first() {
            let mut q: Exponents = SmallVec::with_capacity(e.len());
            for (x, y) in e.iter().zip(lead_e.iter()) {
                if x < y {
                    return Err(PolyError::NotDivisible);
                }
                q.push(x - y);
            }
            let qc = c / lead_c;
            let t = divisor.shift(&q).scale(&qc);
            rem = rem.add_sorted(&t, true);
            quot.push((q, qc));
        }
        // Lex leading terms of successive remainders strictly decrease, so the
        // quotient terms come out sorted.
        Ok(SparsePoly::from_sorted(self.vars.clone(), quot))
    }

    /// Leading term `(exponents, coefficient)` under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponents, &Coeff)> {
        match order {
            MonomialOrder::Lex => self.terms.first().map(|(e, c)| (e, c)),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)).map(|(e, c)| (e, c)),
        }
    }

    /// Splits off the rational content: returns `(c, p)` with `self = c * p`,
    /// `p` having coprime integer coefficients and a positive leading
    /// coefficient under degrevlex in this polynomial's variable order.
    pub fn content_primitive(&self) -> Result<(Coeff, SparsePoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let (_, lc) = self.leading_term(&MonomialOrder::DegRevLex).expect("nonzero");
        let mut content = BigRational::new(num_gcd, den_lcm);
        if lc.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        Ok((content, prim))
    }

    /// The primitive normalized representative; zero stays zero.
    pub fn primitive(&self) -> SparsePoly {
        match self.content_primitive() {
            Ok((_, p)) => p,
            Err(_) => self.clone(),
        }
    }

    pub fn derivative_in(&self, idx: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[idx] > 0).map(|(e, c)| {
            let mut ne = e.clone();
            ne[idx] -= 1;
            (ne, c * rat(e[idx] as i64))
        });
        SparsePoly::from_terms(self.vars.clone(), terms)
    }

    pub fn derivative(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.derivative_in(self.var_index(name)?))
    }

    /// Exact evaluation at a full rational point.
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars());
        let mut total = Coeff::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars());
        let mut total = Complex64::zero();
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            total += t;
        }
        total
    }

    /// Sum of `|c| * |monomial(point)|`, the natural scale for residuals.
    pub fn eval_abs_complex(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN).abs();
                for (x, &k) in point.iter().zip(e.iter()) {
                    if k > 0 {
                        t *= x.norm().powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Substitutes a rational value for one variable (the variable stays in the list).
    pub fn eval_var(&self, idx: usize, value: &Coeff) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = e.clone();
            let k = ne[idx];
            ne[idx] = 0;
            (ne, c * num_traits::pow(value.clone(), k as usize))
        });
        SparsePoly::from_terms(self.vars.clone(), terms)
    }

    /// Replaces variable `idx` by the polynomial `value` (over the same variables).
    pub fn substitute(&self, idx: usize, value: &SparsePoly) -> Self {
        let value = value.align_to(&self.vars).expect("substituted value must share variables");
        let coeffs = self.coefficients_in(idx);
        // Horner in the substituted variable.
        let mut acc = SparsePoly::zero_in(self.vars.clone());
        for c in coeffs.iter().rev() {
            acc = &(&acc * &value) + c;
        }
        acc
    }

    /// Coefficients as polynomials in the other variables, indexed by degree in `idx`.
    pub fn coefficients_in(&self, idx: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(idx) as usize;
        let mut buckets: Vec<Vec<(Exponents, Coeff)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[idx] as usize;
            ne[idx] = 0;
            buckets[k].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| lex_desc(&a.0, &b.0));
                SparsePoly::from_sorted(self.vars.clone(), t)
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(vars: Arc<[String]>, idx: usize, coeffs: &[SparsePoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                debug_assert_eq!(e[idx], 0);
                let mut ne = e.clone();
                ne[idx] = k as u32;
                terms.push((ne, x.clone()));
            }
        }
        SparsePoly::from_terms(vars, terms)
    }

    /// Componentwise minimum exponent over all terms (the largest monomial divisor).
    pub fn monomial_content(&self) -> Exponents {
        let n = self.nvars();
        let mut m: Exponents = SmallVec::from_elem(u32::MAX, n);
        for (e, _) in &self.terms {
            for i in 0..n {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.is_zero() {
            m.iter_mut().for_each(|x| *x = 0);
        }
        m
    }

    /// Divides out the largest monomial factor, returning it with the quotient.
    pub fn strip_monomial(&self) -> (Exponents, SparsePoly) {
        let m = self.monomial_content();
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(m.iter()).map(|(a, b)| a - b).collect(), c.clone())).collect();
        (m, SparsePoly::from_sorted(self.vars.clone(), terms))
    }

    /// Normal form up to units of the Laurent ring: monomial factor removed,
    /// then integer-primitive with positive degrevlex leading coefficient.
    pub fn unit_normal(&self) -> SparsePoly {
        if self.is_zero() {
            return self.clone();
        }
        self.strip_monomial().1.primitive()
    }

    /// Equality up to a nonzero rational scalar and a monomial factor.
    pub fn eq_up_to_unit(&self, other: &SparsePoly) -> bool {
        let (a, b) = self.aligned_pair(other);
        a.unit_normal() == b.unit_normal()
    }

    /// Equality up to a nonzero rational scalar.
    pub fn eq_up_to_scalar(&self, other: &SparsePoly) -> bool {
        let (a, b) = self.aligned_pair(other);
        a.primitive() == b.primitive()
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(c)));
        SparsePoly::from_terms(self.vars.clone(), terms)
    }

    /// Parses text like `L*M^6 + 1` or `(x-1)*(x+2)/3` over the given variables.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, PolyError> {
        let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        parse::parse_poly(text, vars)
    }

    pub fn parse_in(text: &str, vars: Arc<[String]>) -> Result<Self, PolyError> {
        parse::parse_poly(text, vars)
    }

    /// Largest absolute numerator / denominator bit length; a size measure for logs.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        if self.same_vars(other) {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned_pair(other);
        a.terms == b.terms
    }
}

impl Eq for SparsePoly {}

impl std::hash::Hash for SparsePoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
        self.terms.hash(state);
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        if self.same_vars(rhs) {
            self.add_sorted(rhs, false)
        } else {
            let (a, b) = self.aligned_pair(rhs);
            a.add_sorted(&b, false)
        }
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        if self.same_vars(rhs) {
            self.add_sorted(rhs, true)
        } else {
            let (a, b) = self.aligned_pair(rhs);
            a.add_sorted(&b, true)
        }
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.same_vars(rhs) {
            self.mul_same(rhs)
        } else {
            let (a, b) = self.aligned_pair(rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        SparsePoly::from_sorted(self.vars.clone(), terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for SparsePoly {
    /// Prints terms in descending degrevlex order, e.g. `L*M^6 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<&(Exponents, Coeff)> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        for (k, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], x) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({})", self.vars.join(","), self)
    }
}

pub use prs::{
    content_in, gcd, gcd_prs, prim_in, pseudo_remainder, resultant, resultant_primitive, resultant_prs,
    resultant_with_deadline, squarefree_decomposition, squarefree_part,
};

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["M", "L"]).unwrap()
    }

    #[test]
    fn basic_ring_examples() {
        assert_eq!(&p("L-1") * &p("L+1"), p("L^2-1"));
        assert_eq!(&p("M+L") + &p("-M"), p("L"));
        assert_eq!(p("M+1").pow(2), p("M^2+2*M+1"));
        assert_eq!(p("M+1").pow(0), p("1"));
    }

    #[test]
    fn exact_division() {
        let a = &p("L-1") * &p("L*M^6+1");
        assert_eq!(a.exact_div(&p("L-1")).unwrap(), p("L*M^6+1"));
        assert_eq!(p("L-1").exact_div(&p("M")), Err(PolyError::NotDivisible));
        assert!(p("0").exact_div(&p("L-1")).unwrap().is_zero());
        assert_eq!(p("L").exact_div(&p("0")), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn content_and_sign() {
        let (c, q) = p("2*L-2").content_primitive().unwrap();
        assert_eq!((c, q), (rat(2), p("L-1")));
        let (c, q) = p("-L+1").content_primitive().unwrap();
        assert_eq!((c, q), (rat(-1), p("L-1")));
        let (c, q) = p("M/2+1/2").content_primitive().unwrap();
        assert_eq!((c, q), (BigRational::new(1.into(), 2.into()), p("M+1")));
        assert_eq!(p("0").content_primitive(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn variable_alignment() {
        let a = SparsePoly::parse("x+1", &["x"]).unwrap();
        let b = SparsePoly::parse("L", &["L"]).unwrap();
        let s = &a * &b;
        assert_eq!(s.vars(), &["x".to_string(), "L".to_string()]);
        assert_eq!(s, SparsePoly::parse("x*L+L", &["x", "L"]).unwrap());
        // equality is insensitive to an unused trailing variable
        assert_eq!(p("L"), SparsePoly::parse("L", &["L"]).unwrap());
    }

    #[test]
    fn display_is_degrevlex() {
        assert_eq!(p("1+L*M^6").to_string(), "M^6*L + 1");
        assert_eq!(p("-L+1").to_string(), "-L + 1");
        assert_eq!(p("M/3").to_string(), "1/3*M");
    }

    #[test]
    fn unit_normal_removes_monomials() {
        assert!(p("M^3*L*(L-1)").eq_up_to_unit(&p("1-L")));
        assert!(!p("L+1").eq_up_to_unit(&p("L-1")));
    }

    #[test]
    fn substitution_and_eval() {
        let q = p("M^2*L + 3");
        let r = q.substitute(1, &p("M+1"));
        assert_eq!(r, p("M^3+M^2+3"));
        assert_eq!(q.eval(&[rat(2), rat(5)]), rat(23));
    }
}
