//! Elimination of the matrix unknowns, leaving a polynomial in `M` and `L`.
//!
//! The representation system is first reduced by propagation (see
//! `propagate`), which splits it into a few branches with one or more
//! parameters. Each branch is eliminated on its own and the results are
//! combined by least common multiple. Factors involving only `M` and
//! monomial factors are dropped, and the result is made squarefree.

mod certify;
mod numeric;
pub(crate) mod propagate;

use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvar::RepSystem;
use crate::mpoly::{
    buchberger_with_deadline, content_in, gcd, resultant_primitive, squarefree_decomposition, MonomialOrder, PolyError,
    SparsePoly,
};
pub use certify::{
    candidate_factors, certify_factors, certify_factors_seeded, Certificate, FactorReport, FactorStatus, DEFAULT_SEED,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElimError {
    #[error("elimination exceeded its budget of {0:?}")]
    EliminationTimeout(Duration),
    #[error("no polynomial in M and L was found")]
    EmptyEliminant,
    #[error("zero polynomial")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Groebner,
    ResultantTower,
    #[default]
    Auto,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "groebner" => Ok(Strategy::Groebner),
            "resultant_tower" | "resultant" | "tower" => Ok(Strategy::ResultantTower),
            "auto" => Ok(Strategy::Auto),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Groebner => "groebner",
            Strategy::ResultantTower => "resultant_tower",
            Strategy::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    TrivialUnknotLike,
    NonTrivial,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct APolyResult {
    #[serde(flatten)]
    pub full: SparsePoly,
    #[serde(rename = "l1_power")]
    pub l_minus_one_power: u32,
    pub nontrivial_part: SparsePoly,
    pub verdict: Verdict,
    #[serde(default)]
    pub certificates: Vec<FactorReport>,
}

pub(crate) fn ml_vars() -> Arc<[String]> {
    vec!["M".to_string(), "L".to_string()].into()
}

struct Budget {
    limit: Duration,
    deadline: Instant,
}

impl Budget {
    fn check(&self) -> Result<(), ElimError> {
        if Instant::now() > self.deadline {
            Err(ElimError::EliminationTimeout(self.limit))
        } else {
            Ok(())
        }
    }

    fn map(&self, e: PolyError) -> ElimError {
        match e {
            PolyError::Timeout => ElimError::EliminationTimeout(self.limit),
            PolyError::ZeroPolynomial => ElimError::ZeroPolynomial,
            _ => ElimError::EmptyEliminant,
        }
    }
}

/// Eliminates all unknowns except `M` and `L`. The output is in the ring
/// `[M, L]`, squarefree, primitive, free of monomial factors and of factors
/// involving `M` alone.
pub fn eliminate(sys: &RepSystem, strategy: Strategy, budget: Duration) -> Result<SparsePoly, ElimError> {
    let budget = Budget { limit: budget, deadline: Instant::now() + budget };
    let plan = propagate::best_plan(sys);
    let branches = propagate::branches(sys, &plan);
    let run = |s: Strategy| -> Result<SparsePoly, ElimError> {
        let mut acc = SparsePoly::one_in(ml_vars());
        for b in &branches {
            budget.check()?;
            let part = match s {
                Strategy::Groebner => groebner_branch(b, &budget)?,
                _ => tower_branch(b, &budget)?,
            };
            if let Some(part) = part {
                acc = lcm(&acc, &part);
            }
        }
        if acc.is_constant() {
            return Err(ElimError::EmptyEliminant);
        }
        Ok(acc)
    };
    match strategy {
        Strategy::Groebner => run(Strategy::Groebner),
        Strategy::ResultantTower => run(Strategy::ResultantTower),
        Strategy::Auto => match run(Strategy::ResultantTower) {
            Err(ElimError::EmptyEliminant) => run(Strategy::Groebner),
            other => other,
        },
    }
}

fn lcm(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let g = gcd(a, b);
    (a * &b.exact_div(&g).expect("gcd divides")).primitive()
}

/// Brings an `(M, L)` polynomial (possibly in a larger ring) to the
/// normal form described at `eliminate`. `None` if nothing involving `L` is left.
pub(crate) fn normalize_ml(p: &SparsePoly) -> Option<SparsePoly> {
    let p = p.with_vars(&["M", "L"]).expect("only M and L remain");
    if p.is_zero() {
        return None;
    }
    let (_, p) = p.strip_monomial();
    let c = content_in(&p, 1);
    let p = if c.is_constant() { p } else { p.exact_div(&c).expect("content divides") };
    if !p.involves(1) {
        return None;
    }
    let sf: SparsePoly = squarefree_decomposition(&p, "L")
        .expect("nonzero")
        .into_iter()
        .fold(SparsePoly::one_in(ml_vars()), |acc, (f, _)| &acc * &f);
    Some(sf.unit_normal())
}

/// Primitive part in `idx` of every constraint, or `Err(())` when some
/// constraint does not involve the parameter at all (so the branch is empty
/// for generic `M`).
fn primitive_constraints(constraints: &[SparsePoly], idx: usize) -> Result<Vec<SparsePoly>, ()> {
    let mut out = Vec::new();
    for c in constraints {
        if !c.involves(idx) {
            return Err(());
        }
        let cont = content_in(c, idx);
        out.push(if cont.is_constant() {
            c.primitive()
        } else {
            c.exact_div(&cont).expect("content divides").primitive()
        });
    }
    out.sort_by_key(|c| (c.degree_in(idx), c.len()));
    Ok(out)
}

use propagate::Branch;

/// One-parameter branches: `phi = gcd(constraints)` in the parameter, then
/// `Res_p(phi, longitude)`. Branches with more parameters go through the
/// Groebner route.
fn tower_branch(b: &Branch, budget: &Budget) -> Result<Option<SparsePoly>, ElimError> {
    if b.params == 0 {
        return Ok(normalize_ml(&b.longitude));
    }
    if b.params > 1 {
        return groebner_branch(b, budget);
    }
    let p = 0;
    let pname = b.vars[p].clone();
    let cons = match primitive_constraints(&b.constraints, p) {
        Ok(c) => c,
        Err(()) => return Ok(None),
    };
    let g = &b.longitude;
    if cons.is_empty() {
        if g.involves(p) {
            // the parameter is unconstrained; nothing can be eliminated
            return Ok(None);
        }
        return Ok(normalize_ml(g));
    }
    let mut phi = cons[0].clone();
    for c in &cons[1..] {
        budget.check()?;
        if !phi.involves(p) {
            break;
        }
        phi = crate::mpoly::prim_in(&gcd(&phi, c), p);
    }
    if !phi.involves(p) {
        return Ok(None);
    }
    budget.check()?;
    if !g.involves(p) {
        return Ok(normalize_ml(g));
    }
    let res = resultant_primitive(&phi, g, &pname, "L", Some(budget.deadline)).map_err(|e| budget.map(e))?;
    Ok(normalize_ml(&res))
}

/// Groebner basis of the branch constraints, the longitude equation and
/// `u M - 1`, under a block order eliminating parameters and `u`.
fn groebner_branch(b: &Branch, budget: &Budget) -> Result<Option<SparsePoly>, ElimError> {
    let mut names: Vec<String> = b.vars[..b.params].to_vec();
    names.push("u".into());
    names.push("M".into());
    names.push("L".into());
    let vars: Arc<[String]> = names.into();
    let mut gens: Vec<SparsePoly> = b.constraints.iter().map(|c| c.align_to(&vars).expect("subset")).collect();
    gens.push(b.longitude.align_to(&vars).expect("subset"));
    gens.push(SparsePoly::parse_in("u*M - 1", vars.clone()).expect("valid"));
    let order = MonomialOrder::Block { elim: b.params + 1 };
    let basis = buchberger_with_deadline(&gens, order, Some(budget.deadline)).map_err(|e| budget.map(e))?;
    let elim: Vec<&SparsePoly> = basis.iter().filter(|g| (0..=b.params).all(|i| !g.involves(i))).collect();
    if elim.is_empty() {
        return Ok(None);
    }
    let mut acc = elim[0].clone();
    for e in &elim[1..] {
        acc = gcd(&acc, e);
    }
    Ok(normalize_ml(&acc))
}

/// Sampling parameters for `a_polynomial`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { samples: 5, tol: 1e-10, seed: DEFAULT_SEED }
    }
}

/// The whole pipeline on one system: eliminate, certify each candidate
/// factor, keep the certified ones and split off `L - 1`. Under `Auto`, a
/// tower result with no certified factor is recomputed by Groebner bases.
pub fn a_polynomial(
    sys: &RepSystem,
    strategy: Strategy,
    budget: Duration,
    opts: CertifyOptions,
) -> Result<APolyResult, ElimError> {
    let start = Instant::now();
    let first = eliminate(sys, strategy, budget)?;
    let mut reports = certify_factors_seeded(&first, sys, opts.samples, opts.tol, opts.seed);
    let none_certified = |r: &[FactorReport]| r.iter().all(|f| f.status == FactorStatus::Rejected);
    if strategy == Strategy::Auto && none_certified(&reports) {
        let left = budget.saturating_sub(start.elapsed());
        let second = eliminate(sys, Strategy::Groebner, left)?;
        reports = certify_factors_seeded(&second, sys, opts.samples, opts.tol, opts.seed);
    }
    let kept = reports
        .iter()
        .filter(|f| f.status == FactorStatus::Certified)
        .fold(SparsePoly::one_in(ml_vars()), |acc, f| &acc * &f.factor);
    if kept.is_constant() {
        return Err(ElimError::EmptyEliminant);
    }
    let mut out = strip_reducible(&kept)?;
    out.certificates = reports;
    Ok(out)
}

/// Divides out `L - 1` as often as possible.
pub fn strip_reducible(p: &SparsePoly) -> Result<APolyResult, ElimError> {
    if p.is_zero() {
        return Err(ElimError::ZeroPolynomial);
    }
    let p = p.with_vars(&["M", "L"]).map_err(|_| ElimError::EmptyEliminant)?;
    let l1 = SparsePoly::parse_in("L - 1", ml_vars()).expect("valid");
    let mut rest = p.clone();
    let mut power = 0;
    while let Ok(q) = rest.exact_div(&l1) {
        if q.is_zero() {
            break;
        }
        rest = q;
        power += 1;
    }
    let nontrivial_part = rest.unit_normal();
    let verdict = if nontrivial_part.is_constant() { Verdict::TrivialUnknotLike } else { Verdict::NonTrivial };
    Ok(APolyResult { full: p.unit_normal(), l_minus_one_power: power, nontrivial_part, verdict, certificates: vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::build_rep_system;
    use crate::knotio::{parse_dt, wirtinger, KnotDiagram};

    fn ml(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["M", "L"]).unwrap()
    }

    fn apoly(code: &str, s: Strategy) -> SparsePoly {
        let d = if code.is_empty() { KnotDiagram::unknot() } else { parse_dt(code).unwrap() };
        let (p, per) = wirtinger(&d);
        let sys = build_rep_system(&p, &per).unwrap();
        eliminate(&sys, s, Duration::from_secs(120)).unwrap()
    }

    #[test]
    fn unknot_trefoil_figure_eight() {
        assert_eq!(apoly("", Strategy::Auto), ml("L - 1"));
        assert!(apoly("4 6 2", Strategy::ResultantTower).eq_up_to_unit(&ml("(L - 1)*(L*M^6 + 1)")));
        let fig8 = ml("(L-1)*(-M^4 + L*(1 - M^2 - 2*M^4 - M^6 + M^8) - L^2*M^4)");
        assert!(apoly("4 6 8 2", Strategy::ResultantTower).eq_up_to_unit(&fig8));
    }

    #[test]
    fn pipeline_on_trefoil() {
        let (p, per) = wirtinger(&parse_dt("4 6 2").unwrap());
        let sys = build_rep_system(&p, &per).unwrap();
        let r = a_polynomial(&sys, Strategy::Auto, Duration::from_secs(60), CertifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NonTrivial);
        assert_eq!(r.l_minus_one_power, 1);
        assert_eq!(r.nontrivial_part, ml("L*M^6 + 1"));
        assert_eq!(r.certificates.len(), 2);
        assert!(r.certificates.iter().all(|f| f.status == FactorStatus::Certified));
    }

    #[test]
    fn strategies_agree_on_small_knots() {
        for code in ["4 6 2", "4 6 8 2"] {
            assert_eq!(apoly(code, Strategy::Groebner), apoly(code, Strategy::ResultantTower), "{code}");
        }
    }

    #[test]
    fn strip_examples() {
        let r = strip_reducible(&ml("L - 1")).unwrap();
        assert_eq!((r.l_minus_one_power, r.verdict), (1, Verdict::TrivialUnknotLike));
        assert!(r.nontrivial_part.is_one());
        let r = strip_reducible(&ml("(L - 1)*(L*M^6 + 1)")).unwrap();
        assert_eq!((r.l_minus_one_power, r.verdict), (1, Verdict::NonTrivial));
        assert_eq!(r.nontrivial_part, ml("L*M^6 + 1"));
        let r = strip_reducible(&ml("(L - 1)^3")).unwrap();
        assert_eq!((r.l_minus_one_power, r.verdict), (3, Verdict::TrivialUnknotLike));
        assert_eq!(strip_reducible(&ml("0")).unwrap_err(), ElimError::ZeroPolynomial);
    }
}
