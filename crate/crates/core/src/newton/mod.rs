//! Newton polygons of polynomials in `M`, `L` and the slopes of their sides.
//!
//! Points are `(M-exponent, L-exponent)`. A side with primitive direction
//! `(a, b)` has slope `-a/b`, and `inf` when `b = 0`. With this reading the
//! trefoil `L M^6 + 1` has slope `-6` and `L - 1` has slope `0`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::mpoly::SparsePoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("polynomial must be in M and L, got variables {0:?}")]
    NotBivariate(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    /// Primitive direction `(dM, dL)`.
    pub direction: (i64, i64),
    pub lattice_length: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    /// Counterclockwise, starting from the lowest then leftmost point.
    pub vertices: Vec<(i64, i64)>,
    pub sides: Vec<Side>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational64),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Slope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Slope::Infinite);
        }
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| format!("bad slope {s:?}"))?;
                let q: i64 = q.trim().parse().map_err(|_| format!("bad slope {s:?}"))?;
                if q == 0 {
                    return Ok(Slope::Infinite);
                }
                Rational64::new(p, q)
            }
            None => Rational64::from_integer(s.parse().map_err(|_| format!("bad slope {s:?}"))?),
        };
        Ok(Slope::Finite(r))
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull of lattice points, counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort_by_key(|&(x, y)| (y, x));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    // monotone chain in the order (y, x)
    let chain = |iter: &mut dyn Iterator<Item = (i64, i64)>| {
        let mut h: Vec<(i64, i64)> = Vec::new();
        for p in iter {
            while h.len() >= 2 && cross(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
                h.pop();
            }
            h.push(p);
        }
        h
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

pub fn newton_polygon(p: &SparsePoly) -> Result<NewtonPolygon, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let p = p.with_vars(&["M", "L"]).map_err(|_| NewtonError::NotBivariate(p.support_vars()))?;
    let support: Vec<(i64, i64)> = p.terms().iter().map(|(e, _)| (e[0] as i64, e[1] as i64)).collect();
    Ok(polygon_of_points(&support))
}

pub fn polygon_of_points(support: &[(i64, i64)]) -> NewtonPolygon {
    let vertices = convex_hull(support);
    let edges = match vertices.len() {
        0 | 1 => 0,
        2 => 1,
        n => n,
    };
    let sides = (0..edges)
        .map(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % vertices.len()];
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let g = dx.gcd(&dy);
            Side { direction: (dx / g, dy / g), lattice_length: g }
        })
        .collect();
    NewtonPolygon { vertices, sides }
}

/// `-a/b` for each side direction `(a, b)`, deduplicated and sorted.
pub fn boundary_slopes(poly: &NewtonPolygon) -> BTreeSet<Slope> {
    poly.sides
        .iter()
        .map(|s| {
            let (a, b) = s.direction;
            if b == 0 {
                Slope::Infinite
            } else {
                Slope::Finite(Rational64::new(-a, b))
            }
        })
        .collect()
}

/// JSON layout for `slopes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeReport {
    pub vertices: Vec<(i64, i64)>,
    pub slopes: Vec<Slope>,
}

impl From<&NewtonPolygon> for SlopeReport {
    fn from(p: &NewtonPolygon) -> Self {
        SlopeReport { vertices: p.vertices.clone(), slopes: boundary_slopes(p).into_iter().collect() }
    }
}
