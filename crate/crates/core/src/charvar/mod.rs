//! Polynomial systems for SL(2,C) representations of a knot group.
//!
//! The meridian generator is sent to `[[M, 1], [0, 1/M]]`, every other
//! generator to a matrix of four unknowns `a_k, b_k, c_k, d_k` with
//! determinant one. Each relator contributes the four entries of
//! `rho(r) - I`, and the longitude contributes `rho(lambda)_11 - L`.
//! Negative powers of `M` are cleared by multiplying each equation with a
//! power of `M`, which is recorded.

pub(crate) mod laurent;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knotio::{GroupPresentation, PeripheralSystem};
use crate::mpoly::{Coeff, PolyJson, SparsePoly};
use laurent::{eval_word, Laurent, Mat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharvarError {
    #[error("meridian word {0:?} is not a single generator")]
    MeridianNotGenerator(Vec<i32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationKind {
    Determinant { generator: usize },
    Relator { relator: usize, entry: usize },
    Longitude,
}

#[derive(Debug, Clone)]
pub struct RepSystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<SparsePoly>,
    /// Power of `M` each equation was multiplied by.
    pub cleared_denominators: Vec<SparsePoly>,
    pub distinguished: (String, String),
    pub kinds: Vec<EquationKind>,
    pub presentation: GroupPresentation,
    pub peripheral: PeripheralSystem,
    /// 1-based index of the meridian generator.
    pub meridian: usize,
}

/// `--dump-system` layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemDump {
    pub unknowns: Vec<String>,
    pub distinguished: [String; 2],
    pub equations: Vec<PolyJson>,
    pub kinds: Vec<EquationKind>,
    pub cleared_denominators: Vec<PolyJson>,
}

pub(crate) fn entry_names(k: usize) -> [String; 4] {
    ["a", "b", "c", "d"].map(|e| format!("{e}{k}"))
}

pub fn build_rep_system(pres: &GroupPresentation, periph: &PeripheralSystem) -> Result<RepSystem, CharvarError> {
    let meridian = match periph.meridian.as_slice() {
        [g] if *g > 0 && (*g as usize) <= pres.generator_count => *g as usize,
        other => return Err(CharvarError::MeridianNotGenerator(other.to_vec())),
    };
    let mut unknowns: Vec<String> = Vec::new();
    for k in (1..=pres.generator_count).filter(|&k| k != meridian) {
        unknowns.extend(entry_names(k));
    }
    unknowns.push("M".into());
    unknowns.push("L".into());
    let mut sys = RepSystem {
        unknowns,
        equations: Vec::new(),
        cleared_denominators: Vec::new(),
        distinguished: ("M".into(), "L".into()),
        kinds: Vec::new(),
        presentation: pres.clone(),
        peripheral: periph.clone(),
        meridian,
    };
    let (vars, m, gens) = sys.generator_matrices();
    let identity = Mat2::identity(vars.clone(), m);
    let one = Laurent::constant(vars.clone(), 1, m);
    let push = |sys: &mut RepSystem, eq: Laurent, kind| {
        let (num, k) = eq.cleared();
        let mut e = vec![0u32; vars.len()];
        e[m] = k;
        sys.equations.push(num);
        sys.cleared_denominators.push(SparsePoly::monomial_in(vars.clone(), &e, crate::mpoly::rat(1)));
        sys.kinds.push(kind);
    };
    for k in (1..=pres.generator_count).filter(|&k| k != meridian) {
        push(&mut sys, gens[k - 1].det().sub(&one), EquationKind::Determinant { generator: k });
    }
    for (ri, r) in pres.relators.iter().enumerate() {
        let diff = eval_word(r, &gens, &identity).sub(&identity);
        for (entry, eq) in diff.0.into_iter().enumerate() {
            push(&mut sys, eq, EquationKind::Relator { relator: ri, entry });
        }
    }
    let lam = eval_word(&periph.longitude, &gens, &identity);
    let l = Laurent::from_poly(SparsePoly::var_in(vars.clone(), "L").expect("L"), m);
    push(&mut sys, lam.0[0].sub(&l), EquationKind::Longitude);
    Ok(sys)
}

impl RepSystem {
    pub fn vars(&self) -> Arc<[String]> {
        self.unknowns.clone().into()
    }

    pub fn m_index(&self) -> usize {
        self.unknowns.len() - 2
    }

    pub fn l_index(&self) -> usize {
        self.unknowns.len() - 1
    }

    /// Generator images over the system's ring (`M` inverted).
    pub(crate) fn generator_matrices(&self) -> (Arc<[String]>, usize, Vec<Mat2>) {
        let vars = self.vars();
        let m = self.m_index();
        let mats = (1..=self.presentation.generator_count)
            .map(|k| {
                if k == self.meridian {
                    Mat2([
                        Laurent::m_power(vars.clone(), 1, m),
                        Laurent::constant(vars.clone(), 1, m),
                        Laurent::zero(vars.clone(), m),
                        Laurent::m_power(vars.clone(), -1, m),
                    ])
                } else {
                    Mat2(
                        entry_names(k)
                            .map(|n| Laurent::from_poly(SparsePoly::var_in(vars.clone(), &n).expect("entry"), m)),
                    )
                }
            })
            .collect();
        (vars, m, mats)
    }

    /// Index of entry `e` (0..4) of generator `k` among the unknowns.
    pub fn entry_index(&self, k: usize, e: usize) -> Option<usize> {
        if k == self.meridian || k == 0 || k > self.presentation.generator_count {
            return None;
        }
        let slot = if k < self.meridian { k - 1 } else { k - 2 };
        Some(4 * slot + e)
    }

    pub fn dump(&self) -> SystemDump {
        SystemDump {
            unknowns: self.unknowns.clone(),
            distinguished: [self.distinguished.0.clone(), self.distinguished.1.clone()],
            equations: self.equations.iter().map(PolyJson::from).collect(),
            kinds: self.kinds.clone(),
            cleared_denominators: self.cleared_denominators.iter().map(PolyJson::from).collect(),
        }
    }
}

/// True when the abelian representation sending every generator to the
/// meridian image `[[M, 1], [0, 1/M]]`, together with `L = 1`, solves every
/// equation identically in `M`.
pub fn reducible_locus_check(sys: &RepSystem) -> bool {
    let m = sys.m_index();
    let l = sys.l_index();
    // each unknown becomes 0 or +-M^k; None = 0
    let mut value: Vec<Option<i64>> = vec![Some(0); sys.unknowns.len()];
    for k in (1..=sys.presentation.generator_count).filter(|&k| k != sys.meridian) {
        let base = sys.entry_index(k, 0).expect("non-meridian");
        value[base] = Some(1);
        value[base + 1] = Some(0);
        value[base + 2] = None;
        value[base + 3] = Some(-1);
    }
    value[m] = Some(1);
    value[l] = Some(0);
    sys.equations.iter().all(|eq| {
        let mut acc: BTreeMap<i64, Coeff> = BTreeMap::new();
        'terms: for (e, c) in eq.terms() {
            let mut deg = 0i64;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match value[i] {
                    None => continue 'terms,
                    Some(v) => deg += v * x as i64,
                }
            }
            *acc.entry(deg).or_insert_with(Coeff::zero) += c;
        }
        acc.values().all(Zero::is_zero)
    })
}

/// Image under `(M, L) -> (1/M, 1/L)`, with the denominator cleared by the
/// smallest monomial and the result in unit normal form. Every variable of
/// `p` is inverted.
pub fn involution_image(p: &SparsePoly) -> SparsePoly {
    if p.is_zero() {
        return p.clone();
    }
    let n = p.nvars();
    let mut top = vec![0u32; n];
    for (e, _) in p.terms() {
        for i in 0..n {
            top[i] = top[i].max(e[i]);
        }
    }
    let terms = p.terms().iter().map(|(e, c)| {
        let ne: crate::mpoly::Exponents = (0..n).map(|i| top[i] - e[i]).collect();
        (ne, c.clone())
    });
    SparsePoly::from_terms(p.vars_arc(), terms).unit_normal()
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::knotio::{parse_dt, wirtinger, KnotDiagram};

    fn ml(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["M", "L"]).unwrap()
    }

    #[test]
    fn unknot_system() {
        let (p, per) = wirtinger(&KnotDiagram::unknot());
        let sys = build_rep_system(&p, &per).unwrap();
        assert_eq!(sys.unknowns, vec!["M", "L"]);
        assert_eq!(sys.equations.len(), 1);
        assert!(sys.equations[0].eq_up_to_scalar(&ml("L - 1")));
        assert!(reducible_locus_check(&sys));
    }

    #[test]
    fn trefoil_counts() {
        let (p, per) = wirtinger(&parse_dt("4 6 2").unwrap());
        let sys = build_rep_system(&p, &per).unwrap();
        assert_eq!(sys.unknowns.len(), 10);
        assert_eq!(sys.equations.len(), 2 + 3 * 4 + 1);
        assert!(reducible_locus_check(&sys));
        for eq in &sys.equations {
            assert!(eq.terms().iter().all(|(e, _)| e.len() == 10));
        }
    }

    #[test]
    fn corrupted_system_fails_reducible_check() {
        let (p, per) = wirtinger(&parse_dt("4 6 2").unwrap());
        let mut sys = build_rep_system(&p, &per).unwrap();
        let i = sys.kinds.iter().position(|k| matches!(k, EquationKind::Relator { .. })).unwrap();
        sys.equations[i] = &sys.equations[i] + &SparsePoly::one_in(sys.vars());
        assert!(!reducible_locus_check(&sys));
    }

    #[test]
    fn meridian_must_be_a_generator() {
        let (p, mut per) = wirtinger(&parse_dt("4 6 2").unwrap());
        per.meridian = vec![1, 2];
        assert_eq!(build_rep_system(&p, &per).unwrap_err(), CharvarError::MeridianNotGenerator(vec![1, 2]));
    }

    #[test]
    fn cleared_equations_match_rational_ones() {
        let (p, per) = wirtinger(&parse_dt("4 6 8 2").unwrap());
        let sys = build_rep_system(&p, &per).unwrap();
        let (_, _, gens) = sys.generator_matrices();
        let pt: Vec<Complex64> =
            (0..sys.unknowns.len()).map(|i| Complex64::new(0.3 + 0.1 * i as f64, 0.7 - 0.05 * i as f64)).collect();
        let mk = pt[sys.m_index()];
        for (i, kind) in sys.kinds.iter().enumerate() {
            if let EquationKind::Determinant { generator } = kind {
                let direct = gens[generator - 1].det().eval_complex(&pt) - 1.0;
                let k = sys.cleared_denominators[i].degree_in(sys.m_index()) as i32;
                let cleared = sys.equations[i].eval_complex(&pt) / mk.powi(k);
                assert!((direct - cleared).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involution_image(&ml("L - 1")), ml("L - 1"));
        assert_eq!(involution_image(&ml("L*M^6 + 1")), ml("L*M^6 + 1"));
        assert!(involution_image(&ml("M^2*L")).is_one());
    }
}
