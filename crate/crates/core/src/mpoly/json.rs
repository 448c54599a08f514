//! Interchange format:
//! `{"vars":["M","L"],"terms":[{"c":"-1","e":[0,0]},{"c":"1","e":[0,1]}]}`.
//! Coefficients are decimal strings (`"p/q"` for non-integers); terms are
//! listed in ascending lex order of exponent vectors.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{Coeff, PolyError, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

pub(crate) fn coeff_to_string(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn coeff_from_str(s: &str) -> Result<Coeff, PolyError> {
    let bad = || PolyError::Malformed(format!("bad coefficient {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl From<&SparsePoly> for PolyJson {
    fn from(p: &SparsePoly) -> Self {
        PolyJson {
            vars: p.vars().to_vec(),
            terms: p.terms().iter().rev().map(|(e, c)| TermJson { c: coeff_to_string(c), e: e.to_vec() }).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for SparsePoly {
    type Error = PolyError;

    fn try_from(j: &PolyJson) -> Result<Self, PolyError> {
        let vars: Arc<[String]> = j.vars.clone().into();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.e.len() != vars.len() {
                return Err(PolyError::Malformed("exponent vector length".into()));
            }
            terms.push((SmallVec::from_slice(&t.e), coeff_from_str(&t.c)?));
        }
        Ok(SparsePoly::from_terms(vars, terms))
    }
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        SparsePoly::try_from(&j).map_err(serde::de::Error::custom)
    }
}
