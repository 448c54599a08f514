//! Numerical certification of eliminant factors.
//!
//! For each candidate factor `F(M, L)` we pick points on `F = 0` and try to
//! solve the full representation system there. Starting points come from
//! the propagated branches (roots of the longitude equation in the branch
//! parameter) and from a few random starts; all of them are polished with
//! Levenberg–Marquardt on the full system. Samples at `M = +-1` are taken
//! and reported, but only samples with `M^2 != 1` can certify a factor:
//! at `M = +-1` the meridian is parabolic and many curves pass through the
//! few points available there.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ml_vars;
use super::numeric::{levenberg_marquardt, poly_roots, CompiledPoly};
use super::propagate::{best_plan, branches, Branch};
use crate::charvar::RepSystem;
use crate::mpoly::{squarefree_decomposition, SparsePoly};

pub const DEFAULT_SEED: u64 = 0x00a9_017e;
const ROOTS_PER_SAMPLE: usize = 3;
const RANDOM_STARTS: usize = 3;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Certificate {
    /// Real and imaginary parts of `M`.
    pub m: [String; 2],
    pub l: [String; 2],
    /// Normalized residual of the best solve found.
    pub residual: String,
    pub parabolic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorStatus {
    Certified,
    Rejected,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorReport {
    pub factor: SparsePoly,
    pub multiplicity: u32,
    pub status: FactorStatus,
    pub certificates: Vec<Certificate>,
}

/// Splits `p` into squarefree pieces and then peels off small binomial
/// factors such as `L - 1` or `L M^6 + 1` by trial division.
pub fn candidate_factors(p: &SparsePoly) -> Vec<(SparsePoly, u32)> {
    let p = p.with_vars(&["M", "L"]).expect("bivariate input");
    let mut out = Vec::new();
    for (f, mult) in squarefree_decomposition(&p, "L").expect("nonzero") {
        let mut f = f.strip_monomial().1;
        let dm = f.degree_in(0);
        let dl = f.degree_in(1);
        let mut cands = Vec::new();
        for a in 1..=dl.min(2) {
            cands.push(format!("L^{a} - 1"));
            cands.push(format!("L^{a} + 1"));
            for b in 1..=dm {
                for s in ["+", "-"] {
                    cands.push(format!("L^{a}*M^{b} {s} 1"));
                    cands.push(format!("L^{a} {s} M^{b}"));
                }
            }
        }
        for c in cands {
            let c = SparsePoly::parse_in(&c, ml_vars()).expect("valid");
            while f.len() > c.len() || (f.len() == c.len() && f != c.primitive()) {
                match f.exact_div(&c) {
                    Ok(q) if !q.is_constant() => {
                        out.push((c.primitive(), mult));
                        f = q;
                    }
                    _ => break,
                }
            }
        }
        if f.involves(1) {
            out.push((f.unit_normal(), mult));
        }
    }
    out
}

/// The full system with `M` and `L` fixed, over the entry unknowns.
struct FullSystem {
    eqs: Vec<CompiledPoly>,
    entries: usize,
    nvars: usize,
}

impl FullSystem {
    fn new(sys: &RepSystem) -> Self {
        FullSystem {
            eqs: sys.equations.iter().map(CompiledPoly::new).collect(),
            entries: sys.unknowns.len() - 2,
            nvars: sys.unknowns.len(),
        }
    }

    fn point(&self, x: &DVector<Complex64>, m: Complex64, l: Complex64) -> Vec<Complex64> {
        let mut pt: Vec<Complex64> = x.iter().copied().collect();
        pt.push(m);
        pt.push(l);
        pt
    }

    /// Max over equations of `|E| / max(1, sum |terms|)`.
    fn residual(&self, x: &DVector<Complex64>, m: Complex64, l: Complex64) -> f64 {
        let pt = self.point(x, m, l);
        self.eqs.iter().map(|e| e.eval(&pt).norm() / e.scale(&pt).max(1.0)).fold(0.0, f64::max)
    }

    fn polish(&self, x0: DVector<Complex64>, m: Complex64, l: Complex64) -> (DVector<Complex64>, f64) {
        if self.entries == 0 {
            return (x0.clone(), self.residual(&x0, m, l));
        }
        // rows are scaled at the start point so large equations do not dominate
        let pt0 = self.point(&x0, m, l);
        let weights: Vec<f64> = self.eqs.iter().map(|e| 1.0 / e.scale(&pt0).max(1.0)).collect();
        let eval = |x: &DVector<Complex64>| {
            let pt = self.point(x, m, l);
            let mut r = DVector::zeros(self.eqs.len());
            let mut j = DMatrix::zeros(self.eqs.len(), self.entries);
            let mut grad = vec![Complex64::new(0.0, 0.0); self.nvars];
            for (i, e) in self.eqs.iter().enumerate() {
                grad.iter_mut().for_each(|g| *g = Complex64::new(0.0, 0.0));
                r[i] = e.eval_grad(&pt, &mut grad) * weights[i];
                for k in 0..self.entries {
                    j[(i, k)] = grad[k] * weights[i];
                }
            }
            (r, j)
        };
        let s = levenberg_marquardt(x0, eval, 60);
        let res = self.residual(&s.x, m, l);
        (s.x, res)
    }
}

/// Entry vector of the full system from a branch point.
fn entries_from_branch(
    sys: &RepSystem,
    b: &Branch,
    params: &[Complex64],
    m: Complex64,
    l: Complex64,
) -> DVector<Complex64> {
    let mut pt = params.to_vec();
    pt.push(m);
    pt.push(l);
    let mut x = DVector::zeros(sys.unknowns.len() - 2);
    for k in 1..=sys.presentation.generator_count {
        if let Some(base) = sys.entry_index(k, 0) {
            let v = b.gens[k - 1].eval_complex(&pt);
            for e in 0..4 {
                x[base + e] = v[e];
            }
        }
    }
    x
}

/// Candidate parameter values on a branch at `(m, l)`.
fn branch_starts(b: &Branch, m: Complex64, l: Complex64, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let tail = |params: &[Complex64]| {
        let mut pt = params.to_vec();
        pt.push(m);
        pt.push(l);
        pt
    };
    match b.params {
        0 => vec![vec![]],
        1 => {
            let pick = if b.longitude.involves(0) {
                Some(&b.longitude)
            } else {
                b.constraints.iter().filter(|c| c.involves(0)).min_by_key(|c| c.degree_in(0))
            };
            match pick {
                Some(poly) => {
                    let coeffs: Vec<Complex64> = poly
                        .coefficients_in(0)
                        .iter()
                        .map(|c| c.eval_complex(&tail(&[Complex64::new(0.0, 0.0)])))
                        .collect();
                    poly_roots(&coeffs).into_iter().map(|r| vec![r]).collect()
                }
                None => (0..RANDOM_STARTS).map(|_| vec![random_c(rng)]).collect(),
            }
        }
        n => {
            // least squares on the branch equations from random starts
            let mut eqs: Vec<CompiledPoly> = b.constraints.iter().map(CompiledPoly::new).collect();
            eqs.push(CompiledPoly::new(&b.longitude));
            let mut out = Vec::new();
            for _ in 0..4 * RANDOM_STARTS {
                let x0 = DVector::from_fn(n, |_, _| random_c(rng));
                let eval = |x: &DVector<Complex64>| {
                    let pt = tail(x.as_slice());
                    let mut r = DVector::zeros(eqs.len());
                    let mut j = DMatrix::zeros(eqs.len(), n);
                    let mut grad = vec![Complex64::new(0.0, 0.0); n + 2];
                    for (i, e) in eqs.iter().enumerate() {
                        grad.iter_mut().for_each(|g| *g = Complex64::new(0.0, 0.0));
                        let w = 1.0 / e.scale(&pt).max(1.0);
                        r[i] = e.eval_grad(&pt, &mut grad) * w;
                        for k in 0..n {
                            j[(i, k)] = grad[k] * w;
                        }
                    }
                    (r, j)
                };
                let s = levenberg_marquardt(x0, eval, 200);
                if s.residual < 1e-6 {
                    out.push(s.x.iter().copied().collect());
                }
            }
            out
        }
    }
}

fn random_c(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
}

/// Best normalized residual of the full system at `(m, l)`.
fn witness(
    sys: &RepSystem,
    full: &FullSystem,
    brs: &[Branch],
    m: Complex64,
    l: Complex64,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let mut best = f64::INFINITY;
    for b in brs {
        for params in branch_starts(b, m, l, rng) {
            let x0 = entries_from_branch(sys, b, &params, m, l);
            if !x0.iter().all(|v| v.is_finite()) {
                continue;
            }
            let (_, r) = full.polish(x0, m, l);
            best = best.min(r);
            if best < tol {
                return best;
            }
        }
    }
    for _ in 0..RANDOM_STARTS {
        let x0 = DVector::from_fn(full.entries, |_, _| random_c(rng));
        let (_, r) = full.polish(x0, m, l);
        best = best.min(r);
        if best < tol {
            return best;
        }
    }
    best
}

fn roots_in_l(f: &SparsePoly, m: Complex64) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> =
        f.coefficients_in(1).iter().map(|c| c.eval_complex(&[m, Complex64::new(0.0, 0.0)])).collect();
    poly_roots(&coeffs).into_iter().filter(|l| l.norm() > 1e-9 && l.is_finite()).collect()
}

fn fmt(x: f64) -> String {
    format!("{x:.17e}")
}

/// Certifies each factor of `p` (in `M`, `L`) against `sys` using
/// `samples` random values of `M` plus the two parabolic values `M = +-1`.
pub fn certify_factors(p: &SparsePoly, sys: &RepSystem, samples: usize, tol: f64) -> Vec<FactorReport> {
    certify_factors_seeded(p, sys, samples, tol, DEFAULT_SEED)
}

/// `certify_factors` with an explicit seed for the sample points.
pub fn certify_factors_seeded(
    p: &SparsePoly,
    sys: &RepSystem,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Vec<FactorReport> {
    let plan = best_plan(sys);
    let brs = branches(sys, &plan);
    let full = FullSystem::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    for (factor, multiplicity) in candidate_factors(p) {
        let mut certificates = Vec::new();
        let mut certified = false;
        let mut ms: Vec<(Complex64, bool)> = (0..samples)
            .map(|_| {
                let r = rng.gen_range(-0.6..0.6f64).exp();
                let theta = loop {
                    let t = rng.gen_range(0.0..std::f64::consts::TAU);
                    if t.sin().abs() > 0.2 {
                        break t;
                    }
                };
                (Complex64::from_polar(r, theta), false)
            })
            .collect();
        ms.push((Complex64::new(1.0, 0.0), true));
        ms.push((Complex64::new(-1.0, 0.0), true));
        for (m, parabolic) in ms {
            if certified && !parabolic {
                continue;
            }
            for l in roots_in_l(&factor, m).into_iter().take(ROOTS_PER_SAMPLE) {
                let r = witness(sys, &full, &brs, m, l, tol, &mut rng);
                if r < tol && !parabolic {
                    certified = true;
                }
                certificates.push(Certificate {
                    m: [fmt(m.re), fmt(m.im)],
                    l: [fmt(l.re), fmt(l.im)],
                    residual: fmt(r),
                    parabolic,
                });
                if r < tol {
                    break;
                }
            }
        }
        let status = if certified { FactorStatus::Certified } else { FactorStatus::Rejected };
        reports.push(FactorReport { factor, multiplicity, status, certificates });
    }
    reports
}
