//! Polynomials over `Q` and over local fields: Newton polygons, squarefree
//! decomposition, exact Sylvester resultants, and root finding in
//! extension towers.

pub mod epoly;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{MinresError, Result};
use crate::padic::{fmt_big_q, ordp, EltVal, FieldElt, LocalField, ValQ, Q64};

pub use roots::{roots, roots_in_disc, RootOptions, RootRec};

/// A dense polynomial with exact rational coefficients, lowest degree
/// first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    c: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> QPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> QPoly {
        QPoly { c: Vec::new() }
    }

    pub fn constant(x: BigRational) -> QPoly {
        QPoly::new(vec![x])
    }

    /// The monomial `z`.
    pub fn z() -> QPoly {
        QPoly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, x: &BigRational) -> QPoly {
        QPoly::new(self.c.iter().map(|c| c * x).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.c.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut qt = vec![BigRational::zero(); r.len() - dd];
        let lead = d.lead();
        for k in (0..qt.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, di) in d.c.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            qt[k] = c;
        }
        r.truncate(dd);
        (QPoly::new(qt), QPoly::new(r))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(BigRational::one() / self.lead()))
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient.
    pub fn primitive(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for c in &self.c {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = num_integer::Integer::gcd(&g, x);
        }
        if self.lead().is_negative() {
            g = -g;
        }
        QPoly::new(ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect())
    }

    /// `self(a·z + b)`.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> QPoly {
        let lin = QPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = QPoly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// Coefficients as elements of `field`.
    pub fn to_field(&self, field: &LocalField) -> Vec<FieldElt> {
        self.c.iter().map(|c| field.from_rational(c)).collect()
    }

    /// Evaluates at a field element.
    pub fn eval_elt(&self, x: &FieldElt) -> FieldElt {
        let field = x.field();
        let mut acc = field.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(&field.from_rational(c));
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_big_q(c);
            parts.push(match i {
                0 => cs,
                1 => format!("({cs})*z"),
                _ => format!("({cs})*z^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A segment of a Newton polygon: `length` consecutive roots of valuation
/// `-slope`, starting at x-coordinate `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NPSegment {
    pub slope: Q64,
    pub length: usize,
    pub start: usize,
}

impl NPSegment {
    pub fn root_valuation(&self) -> Q64 {
        -self.slope
    }
}

/// Lower convex hull of points `(i, v_i)` sorted by `i`.
pub fn lower_hull(points: &[(usize, Q64)]) -> Vec<NPSegment> {
    let mut hull: Vec<(usize, Q64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Drop the middle point unless it lies strictly below the chord.
            let lhs = (y2 - y1) * Q64::from_integer((pt.0 - x1) as i64);
            let rhs = (pt.1 - y1) * Q64::from_integer((x2 - x1) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| NPSegment {
            slope: (w[1].1 - w[0].1) / Q64::from_integer((w[1].0 - w[0].0) as i64),
            length: w[1].0 - w[0].0,
            start: w[0].0,
        })
        .collect()
}

/// Value of the hull at x-coordinate `x` inside its span.
pub fn hull_value(points_start: (usize, Q64), segs: &[NPSegment], x: usize) -> Q64 {
    let mut y = points_start.1;
    for s in segs {
        if x <= s.start + s.length {
            return y + s.slope * Q64::from_integer((x - s.start) as i64);
        }
        y += s.slope * Q64::from_integer(s.length as i64);
    }
    y
}

/// Newton polygon of a polynomial over a local field. Coefficients whose
/// valuation is unknown at the working precision must lie strictly above
/// the polygon; otherwise a precision error is returned.
pub fn newton_polygon(poly: &[FieldElt]) -> Result<Vec<NPSegment>> {
    let vals: Vec<EltVal> = poly.iter().map(|c| c.val()).collect();
    let exact: Vec<(usize, Q64)> = vals.iter().enumerate().filter_map(|(i, v)| v.exact().map(|x| (i, x))).collect();
    if exact.is_empty() {
        return Err(MinresError::Precision("polynomial indistinguishable from 0".into()));
    }
    let (lo, hi) = (exact[0].0, exact[exact.len() - 1].0);
    if hi + 1 != vals.len() {
        return Err(MinresError::Precision("leading coefficient below precision".into()));
    }
    if lo != 0 {
        return Err(MinresError::Precision("constant coefficient below precision".into()));
    }
    let segs = lower_hull(&exact);
    for (i, v) in vals.iter().enumerate().take(hi + 1).skip(lo) {
        if let EltVal::AtLeast(p) = v {
            if *p <= hull_value(exact[0], &segs, i) {
                return Err(MinresError::Precision(format!("coefficient {i} too imprecise for the polygon")));
            }
        }
    }
    Ok(segs)
}

/// Newton polygon of a rational polynomial at `p`.
pub fn newton_polygon_q(poly: &QPoly, p: u64) -> Vec<NPSegment> {
    let pts: Vec<(usize, Q64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| ordp(c, p).fin().map(|v| (i, v)))
        .collect();
    lower_hull(&pts)
}

/// Squarefree decomposition over `Q` (Yun): pairwise coprime squarefree
/// monic factors `a_i`, each with multiplicity `i`, and their product.
#[derive(Clone, Debug)]
pub struct Squarefree {
    pub part: QPoly,
    pub factors: Vec<(QPoly, usize)>,
}

pub fn squarefree_part(poly: &QPoly) -> Squarefree {
    let f = poly.monic();
    let mut factors = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Squarefree { part: f, factors };
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.divrem(&a0).0;
    let mut c = fp.divrem(&a0).0;
    let mut dpoly = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = b.gcd(&dpoly);
        if a.degree().unwrap_or(0) > 0 {
            factors.push((a.clone(), i));
        }
        b = b.divrem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = dpoly.divrem(&a).0;
        dpoly = c.sub(&b.derivative());
        i += 1;
    }
    let mut part = QPoly::from_i64(&[1]);
    for (a, _) in &factors {
        part = part.mul(a);
    }
    Squarefree { part, factors }
}

/// Determinant of a square matrix of integers (fraction-free Bareiss).
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two binary forms of degree `d`, given by coefficient
/// sequences from `X^d` down to `Y^d`: the determinant of the `2d × 2d`
/// Sylvester matrix.
pub fn resultant(f: &[BigRational], g: &[BigRational], d: usize) -> BigRational {
    assert_eq!(f.len(), d + 1);
    assert_eq!(g.len(), d + 1);
    if d == 0 {
        return BigRational::one();
    }
    let mut den = BigInt::one();
    for c in f.iter().chain(g) {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let scale = BigRational::from_integer(den.clone());
    let fi: Vec<BigInt> = f.iter().map(|c| (c * &scale).to_integer()).collect();
    let gi: Vec<BigInt> = g.iter().map(|c| (c * &scale).to_integer()).collect();
    let n = 2 * d;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..d {
        for (j, c) in fi.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
        for (j, c) in gi.iter().enumerate() {
            m[d + r][r + j] = c.clone();
        }
    }
    let det = bareiss_det(m);
    BigRational::new(det, num_traits::pow(den, n))
}

/// Valuation of the resultant; `+∞` when it vanishes.
pub fn ord_resultant(f: &[BigRational], g: &[BigRational], d: usize, p: u64) -> ValQ {
    ordp(&resultant(f, g, d), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q, qi};

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&v(&[1, 0, 0]), &v(&[0, 0, 1]), 2), rat(1));
        assert_eq!(resultant(&v(&[1, 0, -1]), &v(&[0, 2, 0]), 2), rat(-4));
        assert_eq!(resultant(&v(&[1, 0, 0, -5]), &v(&[0, 1, 0, 0]), 3), rat(25));
    }

    #[test]
    fn resultant_vanishes_on_common_factor() {
        // (X - Y)(X + Y) and (X - Y) X
        assert_eq!(resultant(&v(&[1, 0, -1]), &v(&[1, -1, 0]), 2), rat(0));
    }

    #[test]
    fn newton_polygon_of_quartic() {
        // 1 + 5z + 5^4 z^3 - 5^6 z^4
        let p = QPoly::from_i64(&[1, 5, 0, 625, -15625]);
        let segs = newton_polygon_q(&p, 5);
        let got: Vec<(Q64, usize)> = segs.iter().map(|s| (s.slope, s.length)).collect();
        assert_eq!(got, vec![(qi(1), 1), (q(3, 2), 2), (qi(2), 1)]);
    }

    #[test]
    fn newton_polygon_simple_cases() {
        let segs = newton_polygon_q(&QPoly::from_i64(&[-5, 0, 1]), 5);
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].root_valuation(), q(1, 2));
        let segs = newton_polygon_q(&QPoly::from_i64(&[2, -3, 1]), 5);
        assert_eq!(segs, vec![NPSegment { slope: qi(0), length: 2, start: 0 }]);
    }

    #[test]
    fn squarefree_examples() {
        let s = squarefree_part(&QPoly::from_i64(&[1, -2, 1]));
        assert_eq!(s.part, QPoly::from_i64(&[-1, 1]));
        assert_eq!(s.factors, vec![(QPoly::from_i64(&[-1, 1]), 2)]);
        let s = squarefree_part(&QPoly::from_i64(&[0, 1, 1]));
        assert_eq!(s.part, QPoly::from_i64(&[0, 1, 1]));
        let s = squarefree_part(&QPoly::from_i64(&[0, 0, -1, 1]));
        assert_eq!(s.part, QPoly::from_i64(&[0, -1, 1]));
        assert_eq!(s.factors, vec![(QPoly::from_i64(&[-1, 1]), 1), (QPoly::from_i64(&[0, 1]), 2)]);
    }

    #[test]
    fn field_newton_polygon_matches_rational_one() {
        let k = LocalField::qp(5, 30, 4);
        let p = QPoly::from_i64(&[1, 5, 0, 625, -15625]);
        let segs = newton_polygon(&p.to_field(&k)).unwrap();
        assert_eq!(segs, newton_polygon_q(&p, 5));
    }
}
