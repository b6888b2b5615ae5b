//! Exact minimization of a pointwise maximum of affine functions with
//! integer slopes and rational intercepts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MinresError, Result};
use crate::padic::{fmt_q, Q64};

/// One affine piece `slope·t + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub slope: i64,
    pub intercept: Q64,
}

/// The function `t ↦ max_i (slope_i·t + intercept_i)`, with at most one
/// term per slope, sorted by slope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PWLFunc {
    terms: Vec<Term>,
}

/// Result of [`PWLFunc::minimize`]: the minimum value and the closed
/// interval `[lo, hi]` where it is attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argmin {
    #[serde(with = "q_serde")]
    pub value: Q64,
    #[serde(with = "q_serde")]
    pub lo: Q64,
    #[serde(with = "q_serde")]
    pub hi: Q64,
}

impl Argmin {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl PWLFunc {
    /// Builds the function from arbitrary terms, keeping the largest
    /// intercept for each slope.
    pub fn new<I: IntoIterator<Item = (i64, Q64)>>(terms: I) -> PWLFunc {
        let mut by_slope: BTreeMap<i64, Q64> = BTreeMap::new();
        for (s, b) in terms {
            by_slope.entry(s).and_modify(|x| *x = (*x).max(b)).or_insert(b);
        }
        PWLFunc { terms: by_slope.into_iter().map(|(slope, intercept)| Term { slope, intercept }).collect() }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: Q64) -> Q64 {
        self.terms
            .iter()
            .map(|x| Q64::from_integer(x.slope) * t + x.intercept)
            .max()
            .expect("evaluating an empty function")
    }

    /// Exact minimum and argmin interval.
    pub fn minimize(&self) -> Result<Argmin> {
        let has_pos = self.terms.iter().any(|x| x.slope > 0);
        let has_neg = self.terms.iter().any(|x| x.slope < 0);
        if !(has_pos && has_neg) {
            return Err(MinresError::Unbounded(format!("{self}")));
        }
        let mut value: Option<Q64> = None;
        for (i, a) in self.terms.iter().enumerate() {
            for b in &self.terms[i + 1..] {
                let t = (b.intercept - a.intercept) / Q64::from_integer(a.slope - b.slope);
                let v = self.eval(t);
                value = Some(value.map_or(v, |w| w.min(v)));
            }
        }
        let value = value.unwrap();
        let mut lo: Option<Q64> = None;
        let mut hi: Option<Q64> = None;
        for x in &self.terms {
            if x.slope == 0 {
                continue;
            }
            let t = (value - x.intercept) / Q64::from_integer(x.slope);
            if x.slope < 0 {
                lo = Some(lo.map_or(t, |w| w.max(t)));
            } else {
                hi = Some(hi.map_or(t, |w| w.min(t)));
            }
        }
        Ok(Argmin { value, lo: lo.unwrap(), hi: hi.unwrap() })
    }

    /// Points where the active term changes, in increasing order.
    pub fn breakpoints(&self) -> Vec<Q64> {
        let Ok(_) = self.minimize() else { return Vec::new() };
        let mut out: Vec<Q64> = Vec::new();
        for (i, a) in self.terms.iter().enumerate() {
            for b in &self.terms[i + 1..] {
                let t = (b.intercept - a.intercept) / Q64::from_integer(a.slope - b.slope);
                let v = self.eval(t);
                let ta = Q64::from_integer(a.slope) * t + a.intercept;
                if ta == v && !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for PWLFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|x| match x.slope {
                0 => fmt_q(&x.intercept),
                s => format!("{} + {}t", fmt_q(&x.intercept), s),
            })
            .collect();
        write!(f, "max({})", parts.join(", "))
    }
}

pub(crate) mod q_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::padic::{fmt_q, parse_q, Q64};

    pub fn serialize<S: Serializer>(x: &Q64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q64, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}
