//! SU(2) representations of finitely presented groups, found numerically on
//! products of unit quaternions, and the eigenvalue pairs they induce on
//! the boundary torus.
//!
//! A search that finds nothing is only that: no representation was found
//! within the given attempts.

mod lattice;
pub mod quat;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knotio::{FillingSpec, GroupPresentation, PeripheralSystem};
use quat::Quat;

pub use lattice::{lattice_lemma_check, member, LatticeError, LatticeFamily, LatticeReport, Subgroup};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_ATTEMPTS: usize = 200;
/// Commutator defect above which two images count as non-commuting.
pub const COMMUTE_TOL: f64 = 1e-6;
const DEDUP_TOL: f64 = 1e-6;
const WORDS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Su2Error {
    #[error("meridian and longitude images do not commute (defect {0:e})")]
    NonCommutingBoundary(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SU2Rep {
    pub quaternions: Vec<Quat>,
    /// Largest `|rho(r) - 1|` over relators, which is the operator norm.
    pub residual: f64,
    pub non_cyclic: bool,
}

impl SU2Rep {
    fn new(quaternions: Vec<Quat>, pres: &GroupPresentation) -> Self {
        let residual = relator_defect(pres, &quaternions);
        let non_cyclic = max_commutator(&quaternions) > COMMUTE_TOL;
        SU2Rep { quaternions, residual, non_cyclic }
    }

    pub fn image(&self, word: &[i32]) -> Quat {
        quat::eval_word(word, &self.quaternions)
    }
}

fn relator_defect(pres: &GroupPresentation, gens: &[Quat]) -> f64 {
    pres.relators.iter().map(|r| quat::dist(&quat::eval_word(r, gens), &quat::ONE)).fold(0.0, f64::max)
}

fn max_commutator(gens: &[Quat]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            worst = worst.max(quat::dist(&quat::mul(&gens[i], &gens[j]), &quat::mul(&gens[j], &gens[i])));
        }
    }
    worst
}

/// Residual vector: the four components of `rho(r) - 1` for each relator.
fn residuals(pres: &GroupPresentation, gens: &[Quat]) -> DVector<f64> {
    let mut out = DVector::zeros(4 * pres.relators.len());
    for (i, r) in pres.relators.iter().enumerate() {
        let q = quat::eval_word(r, gens);
        out[4 * i] = q[0] - 1.0;
        for c in 1..4 {
            out[4 * i + c] = q[c];
        }
    }
    out
}

fn perturb(gens: &[Quat], delta: &[f64]) -> Vec<Quat> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| quat::normalize(&quat::mul(g, &quat::exp(&[delta[3 * i], delta[3 * i + 1], delta[3 * i + 2]]))))
        .collect()
}

/// Levenberg–Marquardt in the tangent coordinates `g_i exp(delta_i)`, with
/// a central-difference Jacobian.
fn refine(pres: &GroupPresentation, mut gens: Vec<Quat>, iters: usize) -> Vec<Quat> {
    let n = 3 * gens.len();
    let mut r = residuals(pres, &gens);
    let mut lambda = 1e-3;
    let h = 1e-7;
    for _ in 0..iters {
        let norm = r.norm();
        if norm < 1e-15 {
            break;
        }
        let mut j = DMatrix::zeros(r.len(), n);
        let mut d = vec![0.0; n];
        for k in 0..n {
            d[k] = h;
            let plus = residuals(pres, &perturb(&gens, &d));
            d[k] = -h;
            let minus = residuals(pres, &perturb(&gens, &d));
            d[k] = 0.0;
            j.set_column(k, &((plus - minus) / (2.0 * h)));
        }
        let jt = j.transpose();
        let g = &jt * &r;
        let a = &jt * &j;
        let mut accepted = false;
        for _ in 0..12 {
            let mut m = a.clone();
            for i in 0..n {
                m[(i, i)] += lambda * (1.0 + a[(i, i)]);
            }
            let Some(step) = m.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let cand = perturb(&gens, step.as_slice());
            let rc = residuals(pres, &cand);
            if rc.norm() < norm {
                gens = cand;
                r = rc;
                lambda = (lambda / 3.0).max(1e-12);
                accepted = true;
                break;
            }
            lambda *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    gens
}

fn random_unit(rng: &mut ChaCha8Rng) -> Quat {
    loop {
        let q =
            [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = quat::norm(&q);
        if n > 0.1 && n <= 1.0 {
            return quat::normalize(&q);
        }
    }
}

/// Words whose traces, with those of the generators, identify a
/// representation up to conjugation in practice.
fn probe_words(gens: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let g = gens as i32;
    'outer: for len in 2..=3 {
        for code in 0..(2 * g).pow(len) {
            let mut w = Vec::new();
            let mut c = code;
            for _ in 0..len {
                let l = c % (2 * g);
                c /= 2 * g;
                w.push(if l < g { l + 1 } else { -(l - g + 1) });
            }
            if crate::knotio::free_reduce(&w).len() == w.len() && !out.contains(&w) {
                out.push(w);
                if out.len() == WORDS {
                    break 'outer;
                }
            }
        }
    }
    out
}

fn signature(rep: &SU2Rep, words: &[Vec<i32>]) -> Vec<f64> {
    let mut gen_traces: Vec<f64> = rep.quaternions.iter().map(quat::trace).collect();
    gen_traces.sort_by(f64::total_cmp);
    let mut word_traces: Vec<f64> = words.iter().map(|w| quat::trace(&rep.image(w))).collect();
    word_traces.sort_by(f64::total_cmp);
    gen_traces.extend(word_traces);
    gen_traces
}

/// Multi-start search for representations with relator defect below `tol`.
/// Results are sorted by residual and then by quaternion data, and
/// deduplicated up to conjugation by trace signatures.
pub fn find_su2(pres: &GroupPresentation, attempts: usize, tol: f64, seed: u64) -> Vec<SU2Rep> {
    let g = pres.generator_count;
    let mut found: Vec<SU2Rep> = (0..attempts as u64)
        .into_par_iter()
        .filter_map(|a| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(a);
            let start: Vec<Quat> = (0..g).map(|_| random_unit(&mut rng)).collect();
            let rep = SU2Rep::new(refine(pres, start, 200), pres);
            (rep.residual < tol).then_some(rep)
        })
        .collect();
    found.sort_by(|a, b| {
        a.residual.total_cmp(&b.residual).then_with(|| {
            let fa = a.quaternions.iter().flatten();
            let fb = b.quaternions.iter().flatten();
            fa.zip(fb).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let words = probe_words(g);
    let mut sigs: Vec<Vec<f64>> = Vec::new();
    let mut out = Vec::new();
    for rep in found {
        let s = signature(&rep, &words);
        if sigs.iter().any(|t| t.iter().zip(&s).all(|(x, y)| (x - y).abs() < DEDUP_TOL)) {
            continue;
        }
        sigs.push(s);
        out.push(rep);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct SU2RepJson {
    quaternions: Vec<[String; 4]>,
    residual: String,
    non_cyclic: bool,
}

impl Serialize for SU2Rep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SU2RepJson {
            quaternions: self.quaternions.iter().map(|q| q.map(dec)).collect(),
            residual: dec(self.residual),
            non_cyclic: self.non_cyclic,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SU2Rep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = SU2RepJson::deserialize(d)?;
        let f = |s: &String| s.parse::<f64>().map_err(D::Error::custom);
        let mut quaternions = Vec::new();
        for q in &j.quaternions {
            quaternions.push([f(&q[0])?, f(&q[1])?, f(&q[2])?, f(&q[3])?]);
        }
        Ok(SU2Rep { quaternions, residual: f(&j.residual)?, non_cyclic: j.non_cyclic })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub m_eigenvalue: Complex64,
    pub l_eigenvalue: Complex64,
    pub filling: FillingSpec,
}

impl BoundaryPoint {
    pub fn distance(&self, other: &BoundaryPoint) -> f64 {
        ((self.m_eigenvalue - other.m_eigenvalue).norm_sqr() + (self.l_eigenvalue - other.l_eigenvalue).norm_sqr())
            .sqrt()
    }

    /// `|m l^n - 1|` for a `(1, n)` filling.
    pub fn filling_defect(&self) -> f64 {
        let (p, q) = (self.filling.p(), self.filling.q());
        (self.m_eigenvalue.powi(p as i32) * self.l_eigenvalue.powi(q as i32) - 1.0).norm()
    }
}

#[derive(Serialize, Deserialize)]
struct BoundaryPointJson {
    m: [String; 2],
    l: [String; 2],
    filling: String,
}

fn dec(x: f64) -> String {
    format!("{x:.17e}")
}

impl Serialize for BoundaryPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BoundaryPointJson {
            m: [dec(self.m_eigenvalue.re), dec(self.m_eigenvalue.im)],
            l: [dec(self.l_eigenvalue.re), dec(self.l_eigenvalue.im)],
            filling: self.filling.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = BoundaryPointJson::deserialize(d)?;
        let f = |s: &String| s.parse::<f64>().map_err(D::Error::custom);
        Ok(BoundaryPoint {
            m_eigenvalue: Complex64::new(f(&j.m[0])?, f(&j.m[1])?),
            l_eigenvalue: Complex64::new(f(&j.l[0])?, f(&j.l[1])?),
            filling: j.filling.parse().map_err(D::Error::custom)?,
        })
    }
}

/// Eigenvalues of the meridian and longitude images in a common eigenbasis,
/// normalized so that `Im m >= 0` (and `Im l >= 0` when `m` is real).
pub fn boundary_point(
    rep: &SU2Rep,
    periph: &PeripheralSystem,
    filling: FillingSpec,
) -> Result<BoundaryPoint, Su2Error> {
    let mu = rep.image(&periph.meridian);
    let la = rep.image(&periph.longitude);
    let defect = quat::dist(&quat::mul(&mu, &la), &quat::mul(&la, &mu));
    if defect > COMMUTE_TOL {
        return Err(Su2Error::NonCommutingBoundary(defect));
    }
    let imag = |q: &Quat| (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    // the element farther from +-1 fixes the common axis
    let axis_src = if imag(&mu) >= imag(&la) { mu } else { la };
    let n = imag(&axis_src);
    let axis = if n > 0.0 { [axis_src[1] / n, axis_src[2] / n, axis_src[3] / n] } else { [1.0, 0.0, 0.0] };
    let eig = |q: &Quat| Complex64::new(q[0], q[1] * axis[0] + q[2] * axis[1] + q[3] * axis[2]);
    let (mut m, mut l) = (eig(&mu), eig(&la));
    let eps = 1e-12;
    if m.im < -eps || (m.im.abs() <= eps && l.im < 0.0) {
        m = m.conj();
        l = l.conj();
    }
    Ok(BoundaryPoint { m_eigenvalue: m, l_eigenvalue: l, filling })
}

/// Smallest distance between points coming from different fillings, with
/// the pair attaining it; `None` with fewer than two fillings represented.
pub fn min_cross_distance(points: &[BoundaryPoint]) -> Option<(f64, usize, usize)> {
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].filling == points[j].filling {
                continue;
            }
            let d = points[i].distance(&points[j]);
            if best.is_none_or(|b| d < b.0) {
                best = Some((d, i, j));
            }
        }
    }
    best
}
