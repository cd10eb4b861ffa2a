//! Assembly of `U(FG) = C_3^{2n} × C_{q−1} × ∏ GL_3(F_{q^{d_i}})`, `q = 3^n`.
//!
//! The `C_3^{2n} × C_{q−1}` part is the unit group of `F(G/H) = F C_3`: its radical
//! has dimension 2, so `1 + J` has order `q^2`, and every `1 + j` cubes to 1. The
//! `GL_3` factors come from the Wedderburn components of `Δ(G,H)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::components;
use crate::group::{validate_params, GroupError};

pub const MAX_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("n must satisfy 1 <= n <= {MAX_N} (got n = {0})")]
    NOutOfRange(usize),
    #[error("malformed structure: {0}")]
    Malformed(String),
}

/// `multiplicity` copies of `GL_3(F_{field_order})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlFactor {
    pub degree: u32,
    pub field_order: BigUint,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupStructure {
    pub m: u64,
    pub t: u64,
    pub n: usize,
    pub q: BigUint,
    /// Multiplicity of the `C_3` factors, `2n`.
    pub elementary_abelian_exponent: usize,
    /// `q − 1`.
    pub cyclic_order: BigUint,
    /// Grouped by field order, ascending.
    pub gl_factors: Vec<GlFactor>,
    pub total_order: BigUint,
}

/// `|GL_3(F_Q)| = (Q³−1)(Q³−Q)(Q³−Q²)`.
pub fn gl_order(q: &BigUint) -> BigUint {
    let q3 = q.pow(3);
    (&q3 - 1u32) * (&q3 - q) * (&q3 - q * q)
}

/// Exact product of all factor orders.
pub fn total_order(s: &UnitGroupStructure) -> BigUint {
    let mut acc = BigUint::from(3u32).pow(s.elementary_abelian_exponent as u32) * &s.cyclic_order;
    for f in &s.gl_factors {
        let g = gl_order_general(f.degree, &f.field_order);
        acc *= g.pow(f.multiplicity as u32);
    }
    acc
}

/// `|GL_d(F_Q)| = ∏_{i<d} (Q^d − Q^i)`.
fn gl_order_general(d: u32, q: &BigUint) -> BigUint {
    let qd = q.pow(d);
    (0..d).fold(BigUint::one(), |acc, i| acc * (&qd - q.pow(i)))
}

pub fn structure(m: u64, t: u64, n: usize) -> Result<UnitGroupStructure, UnitsError> {
    let p = validate_params(m, t)?;
    if !(1..=MAX_N).contains(&n) {
        return Err(UnitsError::NOutOfRange(n));
    }
    let q = BigUint::from(3u32).pow(n as u32);
    let mut degrees: Vec<usize> = components(&p, n).iter().map(|c| c.field_degree).collect();
    degrees.sort_unstable();
    let mut gl_factors: Vec<GlFactor> = Vec::new();
    for d in degrees {
        let field_order = q.pow(d as u32);
        match gl_factors.last_mut() {
            Some(last) if last.field_order == field_order => last.multiplicity += 1,
            _ => gl_factors.push(GlFactor { degree: 3, field_order, multiplicity: 1 }),
        }
    }
    let mut s = UnitGroupStructure {
        m,
        t,
        n,
        cyclic_order: &q - 1u32,
        q,
        elementary_abelian_exponent: 2 * n,
        gl_factors,
        total_order: BigUint::default(),
    };
    s.total_order = total_order(&s);
    Ok(s)
}

impl UnitGroupStructure {
    /// Order of the whole algebra, `q^{3m}`.
    pub fn algebra_size(&self) -> BigUint {
        self.q.pow(3 * self.m as u32)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Wire::from(self)).expect("wire format serializes")
    }

    pub fn from_json(s: &str) -> Result<UnitGroupStructure, UnitsError> {
        let wire: Wire = serde_json::from_str(s).map_err(|e| UnitsError::Malformed(e.to_string()))?;
        wire.try_into()
    }
}

impl fmt::Display for UnitGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C3^{} x C{}", self.elementary_abelian_exponent, self.cyclic_order)?;
        for g in &self.gl_factors {
            write!(f, " x GL({},F{})", g.degree, g.field_order)?;
            if g.multiplicity > 1 {
                write!(f, "^{}", g.multiplicity)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    m: u64,
    t: u64,
    n: usize,
    q: String,
    factors: Vec<WireFactor>,
    total_order: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum WireFactor {
    C { order: String, multiplicity: usize },
    GL { degree: u32, field_order: String, multiplicity: usize },
}

impl From<&UnitGroupStructure> for Wire {
    fn from(s: &UnitGroupStructure) -> Wire {
        let mut factors = vec![
            WireFactor::C { order: "3".into(), multiplicity: s.elementary_abelian_exponent },
            WireFactor::C { order: s.cyclic_order.to_string(), multiplicity: 1 },
        ];
        factors.extend(s.gl_factors.iter().map(|g| WireFactor::GL {
            degree: g.degree,
            field_order: g.field_order.to_string(),
            multiplicity: g.multiplicity,
        }));
        Wire { m: s.m, t: s.t, n: s.n, q: s.q.to_string(), factors, total_order: s.total_order.to_string() }
    }
}

fn parse_big(s: &str) -> Result<BigUint, UnitsError> {
    s.parse().map_err(|_| UnitsError::Malformed(format!("{s:?} is not a decimal integer")))
}

impl TryFrom<Wire> for UnitGroupStructure {
    type Error = UnitsError;

    fn try_from(w: Wire) -> Result<UnitGroupStructure, UnitsError> {
        let bad = |msg: &str| UnitsError::Malformed(msg.to_string());
        let mut factors = w.factors.into_iter();
        let elementary_abelian_exponent = match factors.next() {
            Some(WireFactor::C { order, multiplicity }) if order == "3" => multiplicity,
            _ => return Err(bad("first factor must be C3")),
        };
        let cyclic_order = match factors.next() {
            Some(WireFactor::C { order, multiplicity: 1 }) => parse_big(&order)?,
            _ => return Err(bad("second factor must be a single cyclic group")),
        };
        let gl_factors = factors
            .map(|f| match f {
                WireFactor::GL { degree, field_order, multiplicity } => {
                    Ok(GlFactor { degree, field_order: parse_big(&field_order)?, multiplicity })
                }
                WireFactor::C { .. } => Err(bad("cyclic factor after GL factors")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let s = UnitGroupStructure {
            m: w.m,
            t: w.t,
            n: w.n,
            q: parse_big(&w.q)?,
            elementary_abelian_exponent,
            cyclic_order,
            gl_factors,
            total_order: parse_big(&w.total_order)?,
        };
        if total_order(&s) != s.total_order {
            return Err(bad("total_order disagrees with the factors"));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(&big(3)), big(11232));
        assert_eq!(gl_order(&big(2)), big(168));
        assert_eq!(gl_order(&big(9)), big(339655680));
        assert_eq!(gl_order(&big(9)), big(728 * 720 * 648));
    }

    #[test]
    fn t39_structures() {
        assert_eq!(structure(13, 3, 1).unwrap().to_string(), "C3^2 x C2 x GL(3,F3)^4");
        assert_eq!(structure(13, 3, 2).unwrap().to_string(), "C3^4 x C8 x GL(3,F9)^4");
        assert_eq!(structure(13, 3, 3).unwrap().to_string(), "C3^6 x C26 x GL(3,F27)^4");
        assert_eq!(structure(7, 2, 1).unwrap().to_string(), "C3^2 x C2 x GL(3,F9)");
        assert_eq!(structure(7, 2, 2).unwrap().to_string(), "C3^4 x C8 x GL(3,F9)^2");
    }

    #[test]
    fn totals() {
        let s = structure(13, 3, 1).unwrap();
        assert_eq!(s.total_order, big(9) * big(2) * big(11232).pow(4));
        let s = structure(7, 2, 1).unwrap();
        assert_eq!(s.total_order, big(9) * big(2) * gl_order(&big(9)));
        // degenerate: no GL factors
        let mut d = structure(7, 2, 1).unwrap();
        d.gl_factors.clear();
        assert_eq!(total_order(&d), big(9) * big(2));
    }

    #[test]
    fn order_two_ways_and_density() {
        for (m, t) in [(7, 2), (13, 3), (13, 9), (19, 7), (31, 5), (37, 10)] {
            for n in 1..=4 {
                let s = structure(m, t, n).unwrap();
                let q = &s.q;
                let alt = components(&validate_params(m, t).unwrap(), n)
                    .iter()
                    .fold(q * q * (q - 1u32), |acc, c| acc * gl_order(&q.pow(c.field_degree as u32)));
                assert_eq!(alt, s.total_order);
                assert!(s.total_order < s.algebra_size());
                assert!(s.total_order > big(0));
                // log_q of the largest factors: Σ 9 d_i + 2 + 1 = 3m exactly
                let dims: usize = components(&validate_params(m, t).unwrap(), n).iter().map(|c| c.dim()).sum();
                assert_eq!(dims + 3, 3 * m as usize);
            }
        }
    }

    #[test]
    fn json_schema_and_round_trip() {
        let s = structure(13, 3, 1).unwrap();
        let js = s.to_json();
        assert_eq!(
            js,
            format!(
                r#"{{"m":13,"t":3,"n":1,"q":"3","factors":[{{"kind":"C","order":"3","multiplicity":2}},{{"kind":"C","order":"2","multiplicity":1}},{{"kind":"GL","degree":3,"field_order":"3","multiplicity":4}}],"total_order":"{}"}}"#,
                s.total_order
            )
        );
        assert_eq!(UnitGroupStructure::from_json(&js).unwrap(), s);
        for (m, t, n) in [(7, 2, 1), (7, 2, 2), (31, 5, 3)] {
            let s = structure(m, t, n).unwrap();
            assert_eq!(UnitGroupStructure::from_json(&s.to_json()).unwrap(), s);
        }
        let tampered = js.replace("\"multiplicity\":4", "\"multiplicity\":3");
        assert!(UnitGroupStructure::from_json(&tampered).is_err());
    }

    #[test]
    fn errors() {
        assert_eq!(structure(9, 4, 1), Err(UnitsError::Group(GroupError::NotThreeKPlusOne { m: 9 })));
        assert_eq!(structure(13, 3, 0), Err(UnitsError::NOutOfRange(0)));
        assert_eq!(structure(13, 3, 9), Err(UnitsError::NOutOfRange(9)));
        assert_eq!(structure(9, 4, 1).unwrap_err().to_string(), "m must be 3k+1 (got m = 9)");
    }
}
