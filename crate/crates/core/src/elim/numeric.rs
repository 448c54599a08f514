//! Floating-point helpers for certification: univariate complex roots and a
//! Levenberg–Marquardt solver for holomorphic systems.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::mpoly::SparsePoly;

/// A polynomial flattened for fast floating-point evaluation with gradient.
#[derive(Debug, Clone)]
pub(crate) struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &SparsePoly) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| {
                let f = c.to_f64().unwrap_or(f64::NAN);
                let vars = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k)).collect();
                (f, vars)
            })
            .collect();
        CompiledPoly { terms }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, vs)| vs.iter().fold(Complex64::new(*c, 0.0), |acc, &(i, k)| acc * x[i].powu(k)))
            .sum()
    }

    /// Sum of absolute values of the terms at `x`.
    pub fn scale(&self, x: &[Complex64]) -> f64 {
        self.terms.iter().map(|(c, vs)| vs.iter().fold(c.abs(), |acc, &(i, k)| acc * x[i].norm().powi(k as i32))).sum()
    }

    /// Value, with the gradient added into `grad` (indexed by variable).
    pub fn eval_grad(&self, x: &[Complex64], grad: &mut [Complex64]) -> Complex64 {
        let mut val = Complex64::new(0.0, 0.0);
        for (c, vs) in &self.terms {
            let pows: Vec<Complex64> = vs.iter().map(|&(i, k)| x[i].powu(k)).collect();
            val += pows.iter().fold(Complex64::new(*c, 0.0), |a, b| a * b);
            for (t, &(i, k)) in vs.iter().enumerate() {
                let mut d = Complex64::new(*c * k as f64, 0.0) * x[i].powu(k - 1);
                for (s, p) in pows.iter().enumerate() {
                    if s != t {
                        d *= p;
                    }
                }
                grad[i] += d;
            }
        }
        val
    }
}

/// Roots of `sum c_i z^i` (coefficients ascending) by Aberth–Ehrlich
/// iteration followed by Newton polishing.
pub(crate) fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() <= 1e-14 * scale) {
        c.pop();
    }
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    let c = &c[zeros..];
    let n = c.len().saturating_sub(1);
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return roots;
    }
    let lead = c[n];
    let radius = (0..n).map(|i| (c[i] / lead).norm().powf(1.0 / (n - i) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4)).collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..800 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*r);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *r -= step;
                }
            }
        }
    }
    roots.extend(z);
    roots
}

pub(crate) struct Solve {
    pub x: DVector<Complex64>,
    pub residual: f64,
}

/// Minimizes `|F(x)|^2` for a holomorphic `F`; `eval` returns `F(x)` and its
/// complex Jacobian.
pub(crate) fn levenberg_marquardt<F>(x0: DVector<Complex64>, mut eval: F, max_iter: usize) -> Solve
where
    F: FnMut(&DVector<Complex64>) -> (DVector<Complex64>, DMatrix<Complex64>),
{
    let mut x = x0;
    let (mut r, mut j) = eval(&x);
    let mut norm = r.norm();
    let mut lambda = 1e-3;
    for _ in 0..max_iter {
        if norm < 1e-15 {
            break;
        }
        let jh = j.adjoint();
        let g = &jh * &r;
        let mut a = &jh * &j;
        let scale = (0..a.nrows()).map(|i| a[(i, i)].re).fold(0.0, f64::max).max(1e-300);
        for i in 0..a.nrows() {
            a[(i, i)] += Complex64::new(lambda * scale, 0.0);
        }
        let Some(step) = a.lu().solve(&(-g)) else {
            lambda *= 10.0;
            continue;
        };
        let candidate = &x + &step;
        let (r2, j2) = eval(&candidate);
        let n2 = r2.norm();
        if n2.is_finite() && n2 < norm {
            x = candidate;
            r = r2;
            j = j2;
            norm = n2;
            lambda = (lambda / 5.0).max(1e-16);
            if step.norm() < 1e-16 * (1.0 + x.norm()) {
                break;
            }
        } else {
            lambda *= 4.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    Solve { x, residual: norm }
}
