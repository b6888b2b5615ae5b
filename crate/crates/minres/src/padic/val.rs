use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational with machine-word numerator and denominator. Valuations,
/// slopes and breakpoints all live here.
pub type Q64 = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q64 {
    Q64::new(n, d)
}

pub fn qi(n: i64) -> Q64 {
    Q64::from_integer(n)
}

/// Formats a rational as `"num/den"`, or `"num"` when the denominator is 1.
pub fn fmt_q(x: &Q64) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_q(s: &str) -> Option<Q64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Q64::new(n.trim().parse().ok()?, d))
        }
        None => Some(qi(s.parse().ok()?)),
    }
}

pub fn fmt_big_q(x: &BigRational) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn ceil_q(x: &Q64) -> i64 {
    x.ceil().to_integer()
}

pub fn floor_q(x: &Q64) -> i64 {
    x.floor().to_integer()
}

/// An exact valuation: a rational number or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValQ {
    Fin(Q64),
    Inf,
}

impl ValQ {
    pub fn int(n: i64) -> ValQ {
        ValQ::Fin(qi(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ValQ::Inf)
    }

    pub fn fin(&self) -> Option<Q64> {
        match self {
            ValQ::Fin(x) => Some(*x),
            ValQ::Inf => None,
        }
    }

    pub fn min(self, other: ValQ) -> ValQ {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ValQ) -> ValQ {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Multiplies by an integer; `+∞` stays `+∞` (the factor must be
    /// nonnegative for that to be meaningful).
    pub fn scale(self, k: i64) -> ValQ {
        match self {
            ValQ::Fin(x) => ValQ::Fin(x * k),
            ValQ::Inf => ValQ::Inf,
        }
    }
}

impl PartialOrd for ValQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValQ {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValQ::Inf, ValQ::Inf) => Ordering::Equal,
            (ValQ::Inf, _) => Ordering::Greater,
            (_, ValQ::Inf) => Ordering::Less,
            (ValQ::Fin(a), ValQ::Fin(b)) => a.cmp(b),
        }
    }
}

impl Add for ValQ {
    type Output = ValQ;
    fn add(self, rhs: ValQ) -> ValQ {
        match (self, rhs) {
            (ValQ::Fin(a), ValQ::Fin(b)) => ValQ::Fin(a + b),
            _ => ValQ::Inf,
        }
    }
}

impl Add<Q64> for ValQ {
    type Output = ValQ;
    fn add(self, rhs: Q64) -> ValQ {
        match self {
            ValQ::Fin(a) => ValQ::Fin(a + rhs),
            ValQ::Inf => ValQ::Inf,
        }
    }
}

impl Sub<Q64> for ValQ {
    type Output = ValQ;
    fn sub(self, rhs: Q64) -> ValQ {
        self + (-rhs)
    }
}

impl Neg for ValQ {
    type Output = Option<ValQ>;
    fn neg(self) -> Option<ValQ> {
        self.fin().map(|x| ValQ::Fin(-x))
    }
}

impl From<Q64> for ValQ {
    fn from(x: Q64) -> ValQ {
        ValQ::Fin(x)
    }
}

impl From<i64> for ValQ {
    fn from(x: i64) -> ValQ {
        ValQ::Fin(qi(x))
    }
}

impl fmt::Display for ValQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValQ::Fin(x) => write!(f, "{}", fmt_q(x)),
            ValQ::Inf => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn ordp_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut k = 0;
    loop {
        let (qt, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(k);
        }
        m = qt;
        k += 1;
    }
}

/// Splits a nonzero integer as `p^k · u` with `p ∤ u`.
pub fn split_p(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (qt, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (k, m);
        }
        m = qt;
        k += 1;
    }
}

/// The `p`-adic valuation of an exact rational, `+∞` for zero.
pub fn ordp(r: &BigRational, p: u64) -> ValQ {
    match ordp_int(r.numer(), p) {
        None => ValQ::Inf,
        Some(a) => ValQ::int(a - ordp_int(r.denom(), p).unwrap()),
    }
}

pub fn ordp_i64(n: i64, p: u64) -> ValQ {
    ordp(&BigRational::from_integer(BigInt::from(n)), p)
}

/// Smallest prime factor test by trial division (inputs are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn big_to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}
