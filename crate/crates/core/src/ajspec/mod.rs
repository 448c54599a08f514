//! Operators in `Z[q^±1]<Q^±1, E^±1> / (EQ - qQE)`, their specialization at
//! `q = 1` under `(E, Q) = (L, M^2)`, and comparison with A-polynomials.
//!
//! Operators are stored in the normal form `sum c(q) Q^k E^j`, keyed by
//! `(j, k)`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elim::{candidate_factors, APolyResult};
use crate::mpoly::{content_in, Coeff, SparsePoly};

pub use parse::parse_operator;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AjError {
    #[error("operator specializes to zero at q = 1")]
    ZeroOperator,
    #[error("malformed operator: {0}")]
    Malformed(String),
}

/// Integer Laurent polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct QPoly(BTreeMap<i64, BigInt>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(BTreeMap::new())
    }

    pub fn monomial(c: BigInt, k: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        QPoly(m)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    pub fn q_power(k: i64) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.0
    }

    pub fn at_one(&self) -> BigInt {
        self.0.values().sum()
    }

    pub fn shift(&self, k: i64) -> Self {
        QPoly(self.0.iter().map(|(e, c)| (e + k, c.clone())).collect())
    }

    fn add_term(&mut self, k: i64, c: &BigInt) {
        let slot = self.0.entry(k).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.add_term(*k, c);
        }
        out
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.0.iter().rev().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let sep = if i > 0 { " " } else { "" };
            let a = c.abs();
            let body = match (*k, a.is_one()) {
                (0, _) => a.to_string(),
                (1, true) => "q".into(),
                (1, false) => format!("{a}*q"),
                (k, true) => format!("q^{k}"),
                (k, false) => format!("{a}*q^{k}"),
            };
            if i > 0 {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDiffOperator {
    /// `(E-exponent, Q-exponent) -> c(q)` for the term `c(q) Q^k E^j`.
    terms: BTreeMap<(i64, i64), QPoly>,
}

impl QDiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(QPoly::constant(1), 0, 0)
    }

    /// `c(q) Q^k E^j`.
    pub fn term(c: QPoly, e: i64, q: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e, q), c);
        }
        QDiffOperator { terms }
    }

    pub fn e() -> Self {
        Self::term(QPoly::constant(1), 1, 0)
    }

    pub fn big_q() -> Self {
        Self::term(QPoly::constant(1), 0, 1)
    }

    pub fn small_q() -> Self {
        Self::term(QPoly::q_power(1), 0, 0)
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), QPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (i64, i64), c: &QPoly) {
        let slot = self.terms.entry(key).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Embeds `p(M, L)` via `L -> E`, `M^2 -> Q`; `None` when an odd power
    /// of `M` occurs.
    pub fn from_classical(p: &SparsePoly) -> Option<Self> {
        let p = p.with_vars(&["M", "L"]).ok()?;
        let mut out = QDiffOperator::zero();
        for (e, c) in p.terms() {
            if e[0] % 2 != 0 || !c.is_integer() {
                return None;
            }
            out.add_term((e[1] as i64, e[0] as i64 / 2), &QPoly::monomial(c.to_integer(), 0));
        }
        Some(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(QDiffOperator::one(), |acc, _| op_mul(&acc, self))
    }
}

/// `Q^a E^b * Q^c E^d = q^(bc) Q^(a+c) E^(b+d)`.
pub fn op_mul(a: &QDiffOperator, b: &QDiffOperator) -> QDiffOperator {
    let mut out = QDiffOperator::zero();
    for (&(e1, q1), c1) in &a.terms {
        for (&(e2, q2), c2) in &b.terms {
            let c = (c1 * c2).shift(e1 * q2);
            out.add_term((e1 + e2, q1 + q2), &c);
        }
    }
    out
}

impl Add for &QDiffOperator {
    type Output = QDiffOperator;
    fn add(self, o: &QDiffOperator) -> QDiffOperator {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &QDiffOperator {
    type Output = QDiffOperator;
    fn sub(self, o: &QDiffOperator) -> QDiffOperator {
        self + &-o
    }
}

impl Neg for &QDiffOperator {
    type Output = QDiffOperator;
    fn neg(self) -> QDiffOperator {
        QDiffOperator { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul for &QDiffOperator {
    type Output = QDiffOperator;
    fn mul(self, o: &QDiffOperator) -> QDiffOperator {
        op_mul(self, o)
    }
}

impl fmt::Display for QDiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((e, q), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if *q != 0 {
                write!(f, "*Q^{q}")?;
            }
            if *e != 0 {
                write!(f, "*E^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(rename = "E")]
    e: i64,
    #[serde(rename = "Q")]
    q: i64,
    /// q-exponent to decimal coefficient
    coeff: BTreeMap<i64, String>,
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    terms: Vec<TermJson>,
}

impl Serialize for QDiffOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(&(e, q), c)| TermJson { e, q, coeff: c.0.iter().map(|(k, v)| (*k, v.to_string())).collect() })
            .collect();
        OperatorJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QDiffOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = OperatorJson::deserialize(d)?;
        let mut out = QDiffOperator::zero();
        for t in j.terms {
            let mut c = QPoly::zero();
            for (k, v) in t.coeff {
                let v: BigInt = v.parse().map_err(serde::de::Error::custom)?;
                c.add_term(k, &v);
            }
            out.add_term((t.e, t.q), &c);
        }
        Ok(out)
    }
}

/// Result of `specialize_q1`: the polynomial together with the monomial
/// `M^a L^b` it was multiplied by to clear negative exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Specialized {
    pub poly: SparsePoly,
    /// Exponents `(a, b)` of the clearing monomial `M^a L^b`.
    pub cleared: (u32, u32),
    /// Integer content divided out (with sign).
    pub content: String,
}

fn ml_vars() -> std::sync::Arc<[String]> {
    vec!["M".to_string(), "L".to_string()].into()
}

pub fn specialize_q1(op: &QDiffOperator) -> Result<Specialized, AjError> {
    let mut raw: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    for (&(e, q), c) in &op.terms {
        let v = c.at_one();
        if !v.is_zero() {
            *raw.entry((2 * q, e)).or_insert_with(BigInt::zero) += v;
        }
    }
    raw.retain(|_, v| !v.is_zero());
    if raw.is_empty() {
        return Err(AjError::ZeroOperator);
    }
    let min_m = raw.keys().map(|k| k.0).min().expect("nonempty");
    let min_l = raw.keys().map(|k| k.1).min().expect("nonempty");
    let cleared = ((-min_m).max(0) as u32, (-min_l).max(0) as u32);
    let terms = raw.into_iter().map(|((m, l), c)| {
        let e: crate::mpoly::Exponents =
            [(m + cleared.0 as i64) as u32, (l + cleared.1 as i64) as u32].into_iter().collect();
        (e, Coeff::from_integer(c))
    });
    let p = SparsePoly::from_terms(ml_vars(), terms);
    // positive leading coefficient, as in `SparsePoly::primitive`
    let poly = p.primitive();
    let content = p.terms()[0].1.clone() / poly.terms()[0].1.clone();
    Ok(Specialized { poly, cleared, content: content.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AjVerdict {
    Match,
    MatchUpToAllowances,
    Mismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorRole {
    /// Present on both sides.
    Common,
    OnlySpecialized,
    OnlyApoly,
    /// Monomial or `M`-only factor of the specialized operator, dropped.
    Discarded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorRow {
    pub factor: SparsePoly,
    pub multiplicity_specialized: u32,
    pub multiplicity_apoly: u32,
    pub role: FactorRole,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AjReport {
    pub verdict: AjVerdict,
    pub factors: Vec<FactorRow>,
    pub l1_power_specialized: u32,
    pub l1_power_apoly: u32,
}

struct Split {
    /// Factors involving `L`, with multiplicity.
    main: Vec<(SparsePoly, u32)>,
    /// Monomial and `M`-only parts.
    dropped: Vec<SparsePoly>,
}

fn split(p: &SparsePoly) -> Split {
    let p = p.with_vars(&["M", "L"]).expect("bivariate");
    let mut dropped = Vec::new();
    let (mono, rest) = p.strip_monomial();
    if mono.iter().any(|&e| e > 0) {
        dropped.push(SparsePoly::monomial_in(ml_vars(), &mono, crate::mpoly::rat(1)));
    }
    let c = content_in(&rest, 1);
    let rest = if c.is_constant() {
        rest
    } else {
        dropped.push(c.unit_normal());
        rest.exact_div(&c).expect("content divides")
    };
    let main = if rest.involves(1) { candidate_factors(&rest) } else { Vec::new() };
    Split { main, dropped }
}

/// Compares a specialized operator with a computed A-polynomial. Factors
/// in `M` alone and monomials on the operator side are allowances; the
/// power of `L - 1` is reported but does not decide the verdict.
pub fn aj_compare(specialized: &SparsePoly, apoly: &APolyResult) -> AjReport {
    let l1 = SparsePoly::parse_in("L - 1", ml_vars()).expect("valid");
    let s = split(specialized);
    let a = split(&apoly.full);
    let mult = |v: &[(SparsePoly, u32)], f: &SparsePoly| v.iter().filter(|(g, _)| g == f).map(|(_, m)| *m).sum::<u32>();
    let mut keys: Vec<SparsePoly> = s.main.iter().chain(a.main.iter()).map(|(f, _)| f.clone()).collect();
    keys.sort_by_key(|f| f.to_string());
    keys.dedup();
    let mut factors = Vec::new();
    let mut nontrivial_equal = true;
    let mut exact = s.dropped.is_empty();
    for f in keys {
        let ms = mult(&s.main, &f);
        let ma = mult(&a.main, &f);
        let role = match (ms > 0, ma > 0) {
            (true, true) => FactorRole::Common,
            (true, false) => FactorRole::OnlySpecialized,
            _ => FactorRole::OnlyApoly,
        };
        if f == l1 {
            exact &= ms == ma;
        } else {
            nontrivial_equal &= role == FactorRole::Common;
            exact &= ms == ma;
        }
        factors.push(FactorRow { factor: f, multiplicity_specialized: ms, multiplicity_apoly: ma, role });
    }
    for d in s.dropped {
        factors.push(FactorRow {
            factor: d,
            multiplicity_specialized: 1,
            multiplicity_apoly: 0,
            role: FactorRole::Discarded,
        });
    }
    let verdict = if !nontrivial_equal {
        AjVerdict::Mismatch
    } else if exact {
        AjVerdict::Match
    } else {
        AjVerdict::MatchUpToAllowances
    };
    AjReport { verdict, factors, l1_power_specialized: mult(&s.main, &l1), l1_power_apoly: apoly.l_minus_one_power }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elim::strip_reducible;

    fn op(s: &str) -> QDiffOperator {
        parse_operator(s).unwrap()
    }

    fn ml(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["M", "L"]).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(op_mul(&QDiffOperator::e(), &QDiffOperator::big_q()), QDiffOperator::term(QPoly::q_power(1), 1, 1));
        assert_eq!(op_mul(&QDiffOperator::big_q(), &QDiffOperator::e()), QDiffOperator::term(QPoly::constant(1), 1, 1));
        assert_eq!(op_mul(&QDiffOperator::e(), &QDiffOperator::e()), QDiffOperator::term(QPoly::constant(1), 2, 0));
        assert_eq!(op("E*Q"), op("q*Q*E"));
        assert_eq!(op("E^-1*Q"), op("q^-1*Q*E^-1"));
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(specialize_q1(&op("E - 1")).unwrap().poly, ml("L - 1"));
        assert_eq!(specialize_q1(&op("(q^2 - q)*E")), Err(AjError::ZeroOperator));
        assert_eq!(specialize_q1(&op("Q^3*E + 1")).unwrap().poly, ml("M^6*L + 1"));
        let s = specialize_q1(&op("Q^-1*E + 2*E^-1")).unwrap();
        assert_eq!(s.cleared, (2, 1));
        assert_eq!(s.poly, ml("L^2 + 2*M^2"));
    }

    #[test]
    fn comparison_examples() {
        let trefoil = strip_reducible(&ml("(L - 1)*(L*M^6 + 1)")).unwrap();
        let unknot = strip_reducible(&ml("L - 1")).unwrap();
        let r = aj_compare(&ml("(L - 1)*(M^6*L + 1)*M^3"), &trefoil);
        assert_eq!(r.verdict, AjVerdict::MatchUpToAllowances);
        assert!(r.factors.iter().any(|f| f.role == FactorRole::Discarded && f.factor == ml("M^3")));
        assert_eq!(aj_compare(&ml("L - 1"), &unknot).verdict, AjVerdict::Match);
        assert_eq!(aj_compare(&ml("L + 1"), &unknot).verdict, AjVerdict::Mismatch);
        assert_eq!(aj_compare(&ml("L - 1"), &trefoil).verdict, AjVerdict::Mismatch);
        let r = aj_compare(&ml("M^6*L + 1"), &trefoil);
        assert_eq!((r.verdict, r.l1_power_specialized, r.l1_power_apoly), (AjVerdict::MatchUpToAllowances, 0, 1));
        assert_eq!(aj_compare(&trefoil.full, &trefoil).verdict, AjVerdict::Match);
        assert_eq!(aj_compare(&ml("(M^2 - 1)*(L - 1)"), &unknot).verdict, AjVerdict::MatchUpToAllowances);
    }

    #[test]
    fn json_round_trip() {
        let o = op("(q^2 - 1)*Q^-1*E^2 + 3");
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(serde_json::from_str::<QDiffOperator>(&s).unwrap(), o);
        assert_eq!(parse_operator(&o.to_string()).unwrap(), o);
    }
}
