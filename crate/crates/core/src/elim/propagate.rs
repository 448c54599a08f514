//! Reduction of a representation system by propagation along Wirtinger
//! relations.
//!
//! Starting from a few seed generators whose images are parametrized, each
//! relation `x_k = x_o^-e x_j x_o^e` with two known sides determines the
//! third. Relators not used for propagation become constraints on the
//! parameters. The meridian is always a seed with image
//! `[[M, 1], [0, 1/M]]`; the second seed uses the remaining conjugation
//! freedom to pin its `(2,1)` entry to 1 or 0, giving separate branches.

use std::sync::Arc;

use crate::charvar::laurent::{eval_word, Laurent, Mat2};
use crate::charvar::RepSystem;
use crate::mpoly::SparsePoly;

/// A relator `x_o^e x_k x_o^-e x_j^-1`, i.e. `x_k = x_o^-e x_j x_o^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Conj {
    pub relator: usize,
    pub over: usize,
    pub from: usize,
    pub to: usize,
    pub sign: i32,
}

pub(crate) fn as_conjugation(relator: usize, r: &[i32]) -> Option<Conj> {
    match *r {
        [a, k, b, j] if a == -b && k > 0 && j < 0 => Some(Conj {
            relator,
            over: a.unsigned_abs() as usize,
            from: j.unsigned_abs() as usize,
            to: k as usize,
            sign: a.signum(),
        }),
        _ => None,
    }
}

/// Order in which generators get determined from a seed set.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub seeds: Vec<usize>,
    /// `(conjugation, solve_for_to)`: if the flag is false the relation is
    /// solved for `from` instead.
    pub steps: Vec<(Conj, bool)>,
    /// Relators not used in any step.
    pub leftover: Vec<usize>,
    cost: (u64, u64),
}

/// Propagates from `seeds`; `None` if some generator stays undetermined.
pub(crate) fn plan(gen_count: usize, conj: &[Conj], relator_count: usize, seeds: &[usize]) -> Option<Plan> {
    // rough parameter degree of each image, to compare seed choices
    let mut deg: Vec<Option<u64>> = vec![None; gen_count + 1];
    for (i, &s) in seeds.iter().enumerate() {
        deg[s] = Some(if i == 0 { 0 } else { 1 });
    }
    let mut used = vec![false; conj.len()];
    let mut steps = Vec::new();
    loop {
        let mut progress = false;
        for (ci, c) in conj.iter().enumerate() {
            if used[ci] {
                continue;
            }
            let (o, f, t) = (deg[c.over], deg[c.from], deg[c.to]);
            match (o, f, t) {
                (Some(o), Some(f), None) => {
                    deg[c.to] = Some(2 * o + f);
                    steps.push((*c, true));
                }
                (Some(o), None, Some(t)) => {
                    deg[c.from] = Some(2 * o + t);
                    steps.push((*c, false));
                }
                _ => continue,
            }
            used[ci] = true;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    if (1..=gen_count).any(|k| deg[k].is_none()) {
        return None;
    }
    let used_relators: Vec<usize> = conj.iter().zip(&used).filter(|(_, &u)| u).map(|(c, _)| c.relator).collect();
    let leftover: Vec<usize> = (0..relator_count).filter(|r| !used_relators.contains(r)).collect();
    let max = (1..=gen_count).filter_map(|k| deg[k]).max().unwrap_or(0);
    let sum = (1..=gen_count).filter_map(|k| deg[k]).sum();
    Some(Plan { seeds: seeds.to_vec(), steps, leftover, cost: (max, sum) })
}

/// Cheapest seed set containing the meridian, trying sizes 1, 2, 3, ...
pub(crate) fn best_plan(sys: &RepSystem) -> Plan {
    let n = sys.presentation.generator_count;
    let conj: Vec<Conj> =
        sys.presentation.relators.iter().enumerate().filter_map(|(i, r)| as_conjugation(i, r)).collect();
    let rc = sys.presentation.relators.len();
    let others: Vec<usize> = (1..=n).filter(|&k| k != sys.meridian).collect();
    for extra in 0..=others.len() {
        let mut best: Option<Plan> = None;
        for combo in combinations(&others, extra) {
            let mut seeds = vec![sys.meridian];
            seeds.extend(combo);
            if let Some(p) = plan(n, &conj, rc, &seeds) {
                if best.as_ref().is_none_or(|b| p.cost < b.cost) {
                    best = Some(p);
                }
            }
        }
        if let Some(b) = best {
            return b;
        }
    }
    unreachable!("all generators as seeds always closes")
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// One branch of the reduced system: all generator images in terms of a few
/// parameters and `M`, with the constraints they must satisfy.
#[derive(Debug, Clone)]
pub(crate) struct Branch {
    /// Ring: parameters, then `M`, then `L`.
    pub vars: Arc<[String]>,
    pub params: usize,
    pub gens: Vec<Mat2>,
    /// Cleared equations in the parameters and `M`.
    pub constraints: Vec<SparsePoly>,
    /// `L * M^k - rho(lambda)_11 * M^k`.
    pub longitude: SparsePoly,
}

/// Seed images for one branch: the matrices of every seed after the
/// meridian, plus constraints on the parameters.
struct SeedChoice {
    params: Vec<String>,
    build: Box<dyn Fn(&Arc<[String]>, usize) -> (Vec<Mat2>, Vec<Laurent>)>,
}

fn var(vars: &Arc<[String]>, name: &str, m: usize) -> Laurent {
    Laurent::from_poly(SparsePoly::var_in(vars.clone(), name).expect("declared"), m)
}

fn trace_m(vars: &Arc<[String]>, m: usize) -> Laurent {
    Laurent::m_power(vars.clone(), 1, m).add(&Laurent::m_power(vars.clone(), -1, m))
}

/// Generic image of a further seed `t`: `[[x, y], [z, tr - x]]` with
/// determinant one as a constraint.
fn generic_seed(vars: &Arc<[String]>, m: usize, t: usize) -> (Mat2, Laurent) {
    let x = var(vars, &format!("x{t}"), m);
    let y = var(vars, &format!("y{t}"), m);
    let z = var(vars, &format!("z{t}"), m);
    let w = trace_m(vars, m).sub(&x);
    let mat = Mat2([x, y, z, w]);
    let det = mat.det().sub(&Laurent::constant(vars.clone(), 1, m));
    (mat, det)
}

fn seed_choices(plan: &Plan) -> Vec<SeedChoice> {
    let extra: Vec<usize> = plan.seeds[2.min(plan.seeds.len())..].to_vec();
    let extra_params: Vec<String> =
        extra.iter().flat_map(|t| [format!("x{t}"), format!("y{t}"), format!("z{t}")]).collect();
    let with_extra = move |vars: &Arc<[String]>, m: usize, mut mats: Vec<Mat2>, mut cons: Vec<Laurent>| {
        for &t in &extra {
            let (mat, det) = generic_seed(vars, m, t);
            mats.push(mat);
            cons.push(det);
        }
        (mats, cons)
    };
    if plan.seeds.len() == 1 {
        return vec![SeedChoice { params: vec![], build: Box::new(|_, _| (vec![], vec![])) }];
    }
    let mut out = Vec::new();
    {
        let w = with_extra.clone();
        let mut params = vec!["p".to_string()];
        params.extend(extra_params.clone());
        out.push(SeedChoice {
            params,
            build: Box::new(move |vars, m| {
                // [[p, p s - 1], [1, s]] with s = M + 1/M - p
                let p = var(vars, "p", m);
                let s = trace_m(vars, m).sub(&p);
                let one = Laurent::constant(vars.clone(), 1, m);
                let b = Mat2([p.clone(), p.mul(&s).sub(&one), one, s]);
                w(vars, m, vec![b], vec![])
            }),
        });
    }
    // b_11 = M or 1/M
    for k in [1, -1] {
        let w = with_extra.clone();
        let mut params = vec!["q".to_string()];
        params.extend(extra_params.clone());
        out.push(SeedChoice {
            params,
            build: Box::new(move |vars, m| {
                let q = var(vars, "q", m);
                let b = Mat2([
                    Laurent::m_power(vars.clone(), k, m),
                    q,
                    Laurent::zero(vars.clone(), m),
                    Laurent::m_power(vars.clone(), -k, m),
                ]);
                w(vars, m, vec![b], vec![])
            }),
        });
    }
    out
}

/// Builds all branches of the reduced system for `plan`.
pub(crate) fn branches(sys: &RepSystem, plan: &Plan) -> Vec<Branch> {
    let n = sys.presentation.generator_count;
    let mut out = Vec::new();
    for choice in seed_choices(plan) {
        let mut names = choice.params.clone();
        names.push("M".into());
        names.push("L".into());
        let vars: Arc<[String]> = names.into();
        let m = choice.params.len();
        let zero = Laurent::zero(vars.clone(), m);
        let placeholder = Mat2([zero.clone(), zero.clone(), zero.clone(), zero]);
        let mut gens = vec![placeholder; n];
        let mut known = vec![false; n + 1];
        gens[sys.meridian - 1] = Mat2([
            Laurent::m_power(vars.clone(), 1, m),
            Laurent::constant(vars.clone(), 1, m),
            Laurent::zero(vars.clone(), m),
            Laurent::m_power(vars.clone(), -1, m),
        ]);
        known[sys.meridian] = true;
        let (seed_mats, mut cons) = (choice.build)(&vars, m);
        for (&s, mat) in plan.seeds[1..].iter().zip(seed_mats) {
            gens[s - 1] = mat;
            known[s] = true;
        }
        for &(c, forward) in &plan.steps {
            let o = &gens[c.over - 1];
            let (oi, ol) = if c.sign > 0 { (o.adj(), o.clone()) } else { (o.clone(), o.adj()) };
            // x_to = x_o^-e x_from x_o^e
            if forward {
                gens[c.to - 1] = oi.mul(&gens[c.from - 1]).mul(&ol);
            } else {
                gens[c.from - 1] = ol.mul(&gens[c.to - 1]).mul(&oi);
            }
        }
        let identity = Mat2::identity(vars.clone(), m);
        for &r in &plan.leftover {
            let d = eval_word(&sys.presentation.relators[r], &gens, &identity).sub(&identity);
            cons.extend(d.0);
        }
        let mut constraints: Vec<SparsePoly> = Vec::new();
        for c in cons {
            let (num, _) = c.cleared();
            if num.is_zero() {
                continue;
            }
            let num = num.primitive();
            if !constraints.contains(&num) {
                constraints.push(num);
            }
        }
        let lam = eval_word(&sys.peripheral.longitude, &gens, &identity);
        let l = Laurent::from_poly(SparsePoly::var_in(vars.clone(), "L").expect("L"), m);
        let (longitude, _) = l.sub(&lam.0[0]).cleared();
        out.push(Branch { vars, params: m, gens, constraints, longitude });
    }
    out
}
