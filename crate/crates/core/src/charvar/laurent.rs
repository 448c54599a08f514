//! Polynomials with `M` inverted, stored as `num * M^-shift`, and 2x2
//! matrices over them.

use std::sync::Arc;

use num_complex::Complex64;

use crate::mpoly::SparsePoly;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Laurent {
    pub num: SparsePoly,
    pub shift: u32,
    m: usize,
}

impl Laurent {
    pub fn from_poly(num: SparsePoly, m: usize) -> Self {
        Laurent { num, shift: 0, m }.normalized()
    }

    pub fn constant(vars: Arc<[String]>, c: i64, m: usize) -> Self {
        Laurent { num: SparsePoly::constant_in(vars, crate::mpoly::rat(c)), shift: 0, m }
    }

    pub fn zero(vars: Arc<[String]>, m: usize) -> Self {
        Laurent { num: SparsePoly::zero_in(vars), shift: 0, m }
    }

    /// `M^k` for any integer `k`.
    pub fn m_power(vars: Arc<[String]>, k: i32, m: usize) -> Self {
        let mut e = vec![0u32; vars.len()];
        if k >= 0 {
            e[m] = k as u32;
        }
        let num = SparsePoly::monomial_in(vars, &e, crate::mpoly::rat(1));
        Laurent { num, shift: if k < 0 { (-k) as u32 } else { 0 }, m }
    }

    fn normalized(mut self) -> Self {
        if self.shift == 0 || self.num.is_zero() {
            if self.num.is_zero() {
                self.shift = 0;
            }
            return self;
        }
        let k = self.shift.min(self.num.min_degree_in(self.m));
        if k > 0 {
            let mut e = vec![0u32; self.num.nvars()];
            e[self.m] = k;
            self.num = self.num.div_monomial(&e).expect("divisible by construction");
            self.shift -= k;
        }
        self
    }

    fn lift(&self, to: u32) -> SparsePoly {
        if to == self.shift {
            return self.num.clone();
        }
        let mut e = vec![0u32; self.num.nvars()];
        e[self.m] = to - self.shift;
        self.num.shift(&e)
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.shift.max(o.shift);
        Laurent { num: &self.lift(k) + &o.lift(k), shift: k, m: self.m }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let k = self.shift.max(o.shift);
        Laurent { num: &self.lift(k) - &o.lift(k), shift: k, m: self.m }.normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Laurent { num: &self.num * &o.num, shift: self.shift + o.shift, m: self.m }.normalized()
    }

    pub fn neg(&self) -> Self {
        Laurent { num: -&self.num, shift: self.shift, m: self.m }
    }

    /// Polynomial numerator and the power of `M` it was multiplied by.
    pub fn cleared(&self) -> (SparsePoly, u32) {
        (self.num.clone(), self.shift)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.num.eval_complex(point) / point[self.m].powu(self.shift)
    }
}

/// Row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Mat2(pub [Laurent; 4]);

impl Mat2 {
    pub fn identity(vars: Arc<[String]>, m: usize) -> Self {
        let one = Laurent::constant(vars.clone(), 1, m);
        let zero = Laurent::zero(vars, m);
        Mat2([one.clone(), zero.clone(), zero, one])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([a.mul(e).add(&b.mul(g)), a.mul(f).add(&b.mul(h)), c.mul(e).add(&d.mul(g)), c.mul(f).add(&d.mul(h))])
    }

    /// Adjugate, which is the inverse on the determinant-one locus.
    pub fn adj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Mat2([d.clone(), b.neg(), c.neg(), a.clone()])
    }

    pub fn det(&self) -> Laurent {
        let [a, b, c, d] = &self.0;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([a.sub(e), b.sub(f), c.sub(g), d.sub(h)])
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> [Complex64; 4] {
        [0, 1, 2, 3].map(|i| self.0[i].eval_complex(point))
    }
}

/// Product of generator images along a word (letters as in `knotio::Word`).
pub(crate) fn eval_word(word: &[i32], gens: &[Mat2], identity: &Mat2) -> Mat2 {
    let mut acc = identity.clone();
    for &l in word {
        let g = &gens[l.unsigned_abs() as usize - 1];
        acc = if l > 0 { acc.mul(g) } else { acc.mul(&g.adj()) };
    }
    acc
}
