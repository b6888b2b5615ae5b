//! Homogeneous representations `(F, G)` of a rational map, their
//! conjugates, and the resultant function on type II points.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{MinresError, Result};
use crate::padic::{fmt_big_q, modinv, ordp, qi, EltVal, FieldElt, Fq, FqElt, FqPoly, LocalField, ValQ, Q64};
use crate::polyroots::epoly::closeness;
use crate::polyroots::{ord_resultant, resultant, QPoly};
use crate::pwl::PWLFunc;

/// Coefficient ring for homogeneous pairs: exact rationals or elements
/// of a local field.
pub trait Scalar: Clone + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_zero_elt(&self) -> bool;
    /// Valuation, `+∞` for zero and for elements indistinguishable from
    /// zero at the working precision.
    fn ord(&self, p: u64) -> ValQ;
    /// Lower bound on the valuation when it is not known exactly.
    fn uncertain(&self) -> Option<Q64>;
    /// Multiplies by a fixed element of valuation `k`.
    fn shift(&self, k: Q64, p: u64) -> Result<Self>;
    fn residue_field(&self, p: u64) -> Arc<Fq>;
    fn residue(&self, p: u64) -> Result<FqElt>;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn ord(&self, p: u64) -> ValQ {
        ordp(self, p)
    }
    fn uncertain(&self) -> Option<Q64> {
        None
    }
    fn shift(&self, k: Q64, p: u64) -> Result<Self> {
        if !k.is_integer() {
            return Err(MinresError::Invalid(format!("no element of valuation {k} in Q")));
        }
        Ok(self * ppow(p, k.to_integer()))
    }
    fn residue_field(&self, p: u64) -> Arc<Fq> {
        Fq::prime(p)
    }
    fn residue(&self, p: u64) -> Result<FqElt> {
        match self.ord(p) {
            ValQ::Inf => Ok(vec![0]),
            ValQ::Fin(v) if v < qi(0) => Err(MinresError::NegativeValuation),
            _ => {
                let pb = BigInt::from(p);
                let num = self.numer().mod_floor(&pb);
                let den = modinv(&self.denom().mod_floor(&pb), &pb);
                Ok(vec![(num * den).mod_floor(&pb).to_u64().unwrap()])
            }
        }
    }
}

impl Scalar for FieldElt {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn is_zero_elt(&self) -> bool {
        FieldElt::is_zero(self)
    }
    fn ord(&self, _p: u64) -> ValQ {
        match self.val() {
            EltVal::Exact(v) => ValQ::Fin(v),
            EltVal::AtLeast(_) => ValQ::Inf,
        }
    }
    fn uncertain(&self) -> Option<Q64> {
        match self.val() {
            EltVal::Exact(_) => None,
            EltVal::AtLeast(v) => Some(v),
        }
    }
    fn shift(&self, k: Q64, _p: u64) -> Result<Self> {
        let f = self.field();
        let n = k * f.e();
        if !n.is_integer() {
            return Err(MinresError::Invalid(format!("no element of valuation {k} in {}", f.describe())));
        }
        let n = n.to_integer();
        let pw = if n >= 0 { f.uniformizer().pow(n as u64) } else { f.uniformizer_inv().pow((-n) as u64) };
        Ok(self.mul(&pw))
    }
    fn residue_field(&self, _p: u64) -> Arc<Fq> {
        self.field().residue_field().clone()
    }
    fn residue(&self, _p: u64) -> Result<FqElt> {
        FieldElt::residue(self)
    }
}

pub(crate) fn ppow(p: u64, k: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(b, k as usize)
    } else {
        num_traits::pow(b.recip(), (-k) as usize)
    }
}

/// A pair of binary forms of degree `d`. Coefficients are stored lowest
/// `X`-power first: `a[ℓ]` is the coefficient of `X^ℓ Y^(d-ℓ)` in `F`.
#[derive(Clone, Debug)]
pub struct HomogPair<T = BigRational> {
    d: usize,
    a: Vec<T>,
    b: Vec<T>,
}

/// A matrix `[[A, B], [C, D]]` acting by Möbius transformations.
#[derive(Clone, Debug)]
pub struct MobiusMap<T = BigRational> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> MobiusMap<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<MobiusMap<T>> {
        let m = MobiusMap { a, b, c, d };
        if m.det().is_zero_elt() {
            return Err(MinresError::Singular);
        }
        Ok(m)
    }

    pub fn identity(one: &T) -> MobiusMap<T> {
        let z = one.zero_like();
        MobiusMap { a: one.clone(), b: z.clone(), c: z, d: one.clone() }
    }

    /// `z ↦ A z + B`.
    pub fn affine(a: T, b: T) -> MobiusMap<T> {
        let z = a.zero_like();
        let o = a.one_like();
        MobiusMap { a, b, c: z, d: o }
    }

    pub fn det(&self) -> T {
        self.a.times(&self.d).minus(&self.b.times(&self.c))
    }

    pub fn compose(&self, o: &MobiusMap<T>) -> MobiusMap<T> {
        MobiusMap {
            a: self.a.times(&o.a).plus(&self.b.times(&o.c)),
            b: self.a.times(&o.b).plus(&self.b.times(&o.d)),
            c: self.c.times(&o.a).plus(&self.d.times(&o.c)),
            d: self.c.times(&o.b).plus(&self.d.times(&o.d)),
        }
    }

    pub fn entries(&self) -> [[&T; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }
}

impl MobiusMap<BigRational> {
    pub fn to_field(&self, k: &LocalField) -> MobiusMap<FieldElt> {
        MobiusMap {
            a: k.from_rational(&self.a),
            b: k.from_rational(&self.b),
            c: k.from_rational(&self.c),
            d: k.from_rational(&self.d),
        }
    }
}

/// Outcome of the direction test at a type II point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Decreasing,
    Constant,
    Increasing,
}

/// A tangent direction at `ζ_G`.
#[derive(Clone, Debug)]
pub enum Direction<T = BigRational> {
    AtInfinity,
    /// The direction containing `β` (`ord(β) ≥ 0`).
    Residue(T),
}

fn poly_mul<T: Scalar>(f: &[T], g: &[T]) -> Vec<T> {
    let mut out = vec![f[0].zero_like(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

impl<T: Scalar> HomogPair<T> {
    /// Builds a pair from coefficients listed lowest `X`-power first.
    pub fn from_low(a: Vec<T>, b: Vec<T>) -> Result<HomogPair<T>> {
        if a.len() != b.len() || a.len() < 2 {
            return Err(MinresError::Invalid("coefficient lists must have equal length d + 1 ≥ 2".into()));
        }
        Ok(HomogPair { d: a.len() - 1, a, b })
    }

    /// Builds a pair from coefficients listed `a_d, …, a_0`.
    pub fn from_desc(mut a: Vec<T>, mut b: Vec<T>) -> Result<HomogPair<T>> {
        a.reverse();
        b.reverse();
        HomogPair::from_low(a, b)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Coefficient of `X^ℓ Y^(d-ℓ)` in `F`.
    pub fn a(&self, l: usize) -> &T {
        &self.a[l]
    }

    /// Coefficient of `X^ℓ Y^(d-ℓ)` in `G`.
    pub fn b(&self, l: usize) -> &T {
        &self.b[l]
    }

    pub fn a_low(&self) -> &[T] {
        &self.a
    }

    pub fn b_low(&self) -> &[T] {
        &self.b
    }

    pub fn min_ord(&self, p: u64) -> ValQ {
        self.a.iter().chain(&self.b).map(|c| c.ord(p)).fold(ValQ::Inf, ValQ::min)
    }

    pub fn is_normalized(&self, p: u64) -> bool {
        self.min_ord(p) == ValQ::int(0)
    }

    /// Scales the pair so that the minimal coefficient valuation is 0 and
    /// returns the valuation that was removed.
    pub fn normalize(&self, p: u64) -> Result<(HomogPair<T>, Q64)> {
        let m = self.min_ord(p).fin().ok_or_else(|| MinresError::Degenerate("zero pair".into()))?;
        let sc = |v: &Vec<T>| v.iter().map(|c| c.shift(-m, p)).collect::<Result<Vec<T>>>();
        Ok((HomogPair { d: self.d, a: sc(&self.a)?, b: sc(&self.b)? }, m))
    }

    /// `(D·F∘γ - B·G∘γ, -C·F∘γ + A·G∘γ)`.
    pub fn conjugate(&self, g: &MobiusMap<T>) -> Result<HomogPair<T>> {
        let lin1 = [g.b.clone(), g.a.clone()];
        let lin2 = [g.d.clone(), g.c.clone()];
        let d = self.d;
        let mut p1 = vec![vec![self.a[0].one_like()]];
        let mut p2 = vec![vec![self.a[0].one_like()]];
        for k in 0..d {
            p1.push(poly_mul(&p1[k], &lin1));
            p2.push(poly_mul(&p2[k], &lin2));
        }
        let zero = self.a[0].zero_like();
        let mut fg = vec![zero.clone(); d + 1];
        let mut gg = vec![zero; d + 1];
        for l in 0..=d {
            let m = poly_mul(&p1[l], &p2[d - l]);
            for (i, c) in m.iter().enumerate() {
                fg[i] = fg[i].plus(&self.a[l].times(c));
                gg[i] = gg[i].plus(&self.b[l].times(c));
            }
        }
        let fa: Vec<T> = (0..=d).map(|i| g.d.times(&fg[i]).minus(&g.b.times(&gg[i]))).collect();
        let ga: Vec<T> = (0..=d).map(|i| g.a.times(&gg[i]).minus(&g.c.times(&fg[i]))).collect();
        HomogPair::from_low(fa, ga)
    }

    /// Conjugation by `z ↦ z + β`: `(F(X+βY, Y) - β G(X+βY, Y), G(X+βY, Y))`.
    pub fn translate(&self, beta: &T) -> HomogPair<T> {
        let tr = |c: &[T]| -> Vec<T> {
            let mut a = c.to_vec();
            let n = a.len();
            for i in 0..n {
                for j in (i..n - 1).rev() {
                    let t = beta.times(&a[j + 1]);
                    a[j] = a[j].plus(&t);
                }
            }
            a
        };
        let gb = tr(&self.b);
        let fb: Vec<T> = tr(&self.a).iter().zip(&gb).map(|(f, g)| f.minus(&beta.times(g))).collect();
        HomogPair { d: self.d, a: fb, b: gb }
    }

    /// Conjugation by `z ↦ A z`: `(F(AX, Y), A·G(AX, Y))`.
    pub fn scale(&self, big_a: &T) -> HomogPair<T> {
        let mut pw = big_a.one_like();
        let mut a = Vec::with_capacity(self.d + 1);
        let mut b = Vec::with_capacity(self.d + 1);
        for l in 0..=self.d {
            a.push(self.a[l].times(&pw));
            pw = pw.times(big_a);
            b.push(self.b[l].times(&pw));
        }
        HomogPair { d: self.d, a, b }
    }

    /// The resultant function along the path from `ζ_G` toward `0`,
    /// parametrized by `t = ord(A)`, given the valuation of the resultant
    /// of this pair.
    pub fn path_function(&self, p: u64, ord_res: Q64) -> PWLFunc {
        let d = self.d as i64;
        let top = d * d + d;
        let mut terms = Vec::new();
        for l in 0..=self.d {
            let li = l as i64;
            if let ValQ::Fin(v) = self.a[l].ord(p) {
                terms.push((top - 2 * d * li, ord_res - v * (2 * d)));
            }
            if let ValQ::Fin(v) = self.b[l].ord(p) {
                terms.push((top - 2 * d * (li + 1), ord_res - v * (2 * d)));
            }
        }
        PWLFunc::new(terms)
    }

    /// The direction test at `ζ_G` for a normalized pair.
    pub fn classify_direction(&self, p: u64, dir: &Direction<T>) -> Result<Trend> {
        if !self.is_normalized(p) {
            return Err(MinresError::NotNormalized);
        }
        let d = self.d as i64;
        let pos = |c: &T| c.ord(p) > ValQ::int(0);
        let (pair, up) = match dir {
            Direction::AtInfinity => (self.clone(), true),
            Direction::Residue(beta) => {
                if beta.ord(p) < ValQ::int(0) {
                    return Err(MinresError::Invalid("direction β must be integral".into()));
                }
                (self.translate(beta), false)
            }
        };
        // Index ranges compared as 2ℓ against d ± 1.
        let in_a = |l: i64, strict: bool| {
            if up {
                if strict { 2 * l > d + 1 } else { 2 * l > d }
            } else if strict {
                2 * l < d + 1
            } else {
                2 * l <= d + 1
            }
        };
        let in_b = |l: i64, strict: bool| {
            if up {
                if strict { 2 * l > d - 1 } else { 2 * l >= d - 1 }
            } else if strict {
                2 * l < d - 1
            } else {
                2 * l < d
            }
        };
        let dec = (0..=d).all(|l| (!in_a(l, false) || pos(&pair.a[l as usize])) && (!in_b(l, false) || pos(&pair.b[l as usize])));
        if dec {
            return Ok(Trend::Decreasing);
        }
        if d % 2 == 1 {
            let da = ((d + 1) / 2) as usize;
            let eb = ((d - 1) / 2) as usize;
            let unit = !pos(&pair.a[da]) || !pos(&pair.b[eb]);
            let rest = (0..=d).all(|l| (!in_a(l, true) || pos(&pair.a[l as usize])) && (!in_b(l, true) || pos(&pair.b[l as usize])));
            if unit && rest {
                return Ok(Trend::Constant);
            }
        }
        Ok(Trend::Increasing)
    }

    /// Whether the reduction of a normalized pair still has degree `d`.
    pub fn good_reduction_check(&self, p: u64) -> Result<bool> {
        if !self.is_normalized(p) {
            return Err(MinresError::NotNormalized);
        }
        let res = self.a[0].residue_field(p);
        let red = |v: &[T]| -> Result<FqPoly> {
            let mut out: FqPoly = v.iter().map(|c| c.residue(p)).collect::<Result<_>>()?;
            res.poly_trim(&mut out);
            Ok(out)
        };
        let fr = red(&self.a)?;
        let gr = red(&self.b)?;
        if fr.is_empty() || gr.is_empty() {
            return Ok(false);
        }
        let g = res.poly_gcd(&fr, &gr);
        let common_x = g.len() - 1;
        let y_f = self.d + 1 - fr.len();
        let y_g = self.d + 1 - gr.len();
        Ok(common_x == 0 && y_f.min(y_g) == 0)
    }
}

impl HomogPair<BigRational> {
    /// The pair `(Y^d f(X/Y), Y^d g(X/Y))` of `f/g` with
    /// `d = max(deg f, deg g)`; rejects maps with a common factor.
    pub fn from_polys(f: &QPoly, g: &QPoly) -> Result<HomogPair> {
        if g.is_zero() {
            return Err(MinresError::Degenerate("zero denominator".into()));
        }
        let d = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
        if d == 0 {
            return Err(MinresError::Degenerate("constant map".into()));
        }
        let pad = |q: &QPoly| (0..=d).map(|i| q.coeff(i)).collect::<Vec<_>>();
        let pair = HomogPair { d, a: pad(f), b: pad(g) };
        if pair.resultant().is_zero() {
            return Err(MinresError::Degenerate("numerator and denominator share a factor".into()));
        }
        Ok(pair)
    }

    pub fn from_i64(a_low: &[i64], b_low: &[i64]) -> Result<HomogPair> {
        let conv = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        HomogPair::from_low(conv(a_low), conv(b_low))
    }

    pub fn numerator(&self) -> QPoly {
        QPoly::new(self.a.clone())
    }

    pub fn denominator(&self) -> QPoly {
        QPoly::new(self.b.clone())
    }

    pub fn resultant(&self) -> BigRational {
        let hi = |v: &[BigRational]| v.iter().rev().cloned().collect::<Vec<_>>();
        resultant(&hi(&self.a), &hi(&self.b), self.d)
    }

    pub fn ord_resultant(&self, p: u64) -> ValQ {
        let hi = |v: &[BigRational]| v.iter().rev().cloned().collect::<Vec<_>>();
        ord_resultant(&hi(&self.a), &hi(&self.b), self.d, p)
    }

    /// `ord(Res(F, G)) - 2d·min(ord F, ord G)`.
    pub fn ordres(&self, p: u64) -> Result<Q64> {
        let r = self.ord_resultant(p).fin().ok_or_else(|| MinresError::Degenerate("zero resultant".into()))?;
        let m = self.min_ord(p).fin().ok_or_else(|| MinresError::Degenerate("zero pair".into()))?;
        Ok(r - m * (2 * self.d as i64))
    }

    pub fn to_field(&self, k: &LocalField) -> HomogPair<FieldElt> {
        HomogPair {
            d: self.d,
            a: self.a.iter().map(|c| k.from_rational(c)).collect(),
            b: self.b.iter().map(|c| k.from_rational(c)).collect(),
        }
    }

    /// Clears denominators and common content so the coefficients are
    /// coprime integers.
    pub fn primitive(&self) -> HomogPair {
        let all: Vec<BigRational> = self.a.iter().chain(&self.b).cloned().collect();
        let q = QPoly::new(all).primitive();
        let c = q.coeffs();
        let get = |i: usize| c.get(i).cloned().unwrap_or_else(BigRational::zero);
        let n = self.d + 1;
        HomogPair { d: self.d, a: (0..n).map(get).collect(), b: (n..2 * n).map(get).collect() }
    }
}

impl<T: Scalar> fmt::Display for HomogPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = |v: &[T]| {
            let parts: Vec<String> = v.iter().rev().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(", "))
        };
        write!(f, "F={};G={}", form(&self.a), form(&self.b))
    }
}

/// Center of a disc: an exact rational, or a point of an extension
/// together with the polynomial over `Q_p` whose roots are its
/// conjugates.
#[derive(Clone, Debug)]
pub enum Center {
    Rational(BigRational),
    Algebraic { value: FieldElt, orbit: Vec<FieldElt> },
}

impl Center {
    pub fn zero() -> Center {
        Center::Rational(BigRational::zero())
    }

    pub fn ord(&self, p: u64) -> ValQ {
        match self {
            Center::Rational(r) => ordp(r, p),
            Center::Algebraic { value, .. } => value.ord(p),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Center::Rational(r) => Some(r),
            Center::Algebraic { .. } => None,
        }
    }

    pub fn to_field(&self, k: &LocalField) -> Result<FieldElt> {
        match self {
            Center::Rational(r) => Ok(k.from_rational(r)),
            Center::Algebraic { value, .. } => value.embed(k),
        }
    }

    fn orbit_poly(&self, k: &LocalField) -> Vec<FieldElt> {
        match self {
            Center::Rational(r) => vec![k.from_rational(&-r.clone()), k.one()],
            Center::Algebraic { orbit, .. } if orbit.iter().all(|c| c.field().is_subfield_of(k)) => orbit.clone(),
            Center::Algebraic { orbit, .. } => orbit
                .iter()
                .map(|c| match c.to_rational() {
                    Some(r) => k.from_rational(&r).with_prec(c.prec()),
                    None => k.zero().with_prec(qi(0)),
                })
                .collect(),
        }
    }

    /// `max ord(self - σ(other))` over the conjugates of `other`
    /// (`+∞` when some conjugate coincides with `self`).
    pub fn closeness(&self, other: &Center, p: u64) -> Result<ValQ> {
        if let (Center::Rational(x), Center::Rational(y)) = (self, other) {
            return Ok(ordp(&(x - y), p));
        }
        let k = match self {
            Center::Algebraic { value, .. } => value.field().clone(),
            Center::Rational(_) => match other {
                Center::Algebraic { value, .. } => value.field().base(),
                Center::Rational(_) => unreachable!(),
            },
        };
        let x = match self {
            Center::Algebraic { value, .. } => value.clone(),
            Center::Rational(r) => LocalField::from_rational(&k, r),
        };
        let base = k.base();
        let orbit = other.orbit_poly(&base);
        Ok(match closeness(&x, &orbit)? {
            Some(v) => ValQ::Fin(v),
            None => ValQ::Inf,
        })
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Rational(r) => write!(f, "{}", fmt_big_q(r)),
            Center::Algebraic { value, .. } => write!(f, "{value}"),
        }
    }
}

/// The type II point `ζ_{D(center, p^s)}`.
#[derive(Clone, Debug)]
pub struct TypeIIPoint {
    pub center: Center,
    pub s: Q64,
}

impl TypeIIPoint {
    pub fn gauss() -> TypeIIPoint {
        TypeIIPoint { center: Center::zero(), s: qi(0) }
    }

    pub fn rational(center: BigRational, s: Q64) -> TypeIIPoint {
        TypeIIPoint { center: Center::Rational(center), s }
    }

    /// Equality of points up to Galois conjugation of the centers.
    pub fn same_as(&self, other: &TypeIIPoint, p: u64) -> Result<bool> {
        if self.s != other.s {
            return Ok(false);
        }
        Ok(self.center.closeness(&other.center, p)? >= ValQ::Fin(-self.s))
    }

    /// Whether this point lies on the path from `other` up to `∞`.
    pub fn is_below_or_at(&self, other: &TypeIIPoint, p: u64) -> Result<bool> {
        if self.s > other.s {
            return Ok(false);
        }
        Ok(self.center.closeness(&other.center, p)? >= ValQ::Fin(-other.s))
    }
}

/// Path distance from `ζ_G` to `ζ_{D(c, p^s)}` in units of `log p`.
pub fn rho_to_gauss(q: &TypeIIPoint, p: u64) -> Q64 {
    let top = match q.center.ord(p) {
        ValQ::Fin(v) => qi(0).max(-v).max(q.s),
        ValQ::Inf => qi(0).max(q.s),
    };
    top * 2 - q.s
}

/// `ordRes_φ` at a type II point, from a pair with rational
/// coefficients. The conjugating matrix `[[A, c], [0, 1]]` with
/// `ord(A) = -s` enters only through valuations.
pub fn ordres_at(pair: &HomogPair, q: &TypeIIPoint, p: u64) -> Result<Q64> {
    let r = pair.ord_resultant(p).fin().ok_or_else(|| MinresError::Degenerate("zero resultant".into()))?;
    let t = -q.s;
    match &q.center {
        Center::Rational(c) => {
            let tp = pair.translate(c);
            Ok(tp.path_function(p, r).eval(t))
        }
        Center::Algebraic { value, .. } => {
            let tp = pair.to_field(value.field()).translate(value);
            let f = tp.path_function(p, r);
            let val = f.eval(t);
            let d = pair.degree() as i64;
            let top = d * d + d;
            for l in 0..=pair.degree() {
                let li = l as i64;
                for (c, slope) in [(tp.a(l), top - 2 * d * li), (tp.b(l), top - 2 * d * (li + 1))] {
                    if let Some(lb) = c.uncertain() {
                        if Q64::from_integer(slope) * t + r - lb * (2 * d) >= val {
                            return Err(MinresError::Precision("translated coefficient below precision".into()));
                        }
                    }
                }
            }
            Ok(val)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::q;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn normalize_examples() {
        let pair = HomogPair::from_low(vec![r(0), r(0), r(5)], vec![r(10), r(0), r(0)]).unwrap();
        let (n, m) = pair.normalize(5).unwrap();
        assert_eq!(m, qi(1));
        assert_eq!(n.a(2), &r(1));
        assert_eq!(n.b(0), &r(2));
        let half = BigRational::new(1.into(), 2.into());
        let pair = HomogPair::from_low(vec![r(1), r(0), half], vec![r(0), r(1), r(0)]).unwrap();
        let (n, m) = pair.normalize(2).unwrap();
        assert_eq!(m, qi(-1));
        assert_eq!(n.a_low(), &[r(2), r(0), r(1)]);
        assert_eq!(n.b_low(), &[r(0), r(2), r(0)]);
    }

    #[test]
    fn ordres_examples() {
        // (z^3 - 5)/z^2
        let ex1 = HomogPair::from_i64(&[-5, 0, 0, 1], &[0, 0, 1, 0]).unwrap();
        assert_eq!(ex1.ordres(5).unwrap(), qi(2));
        // (z^3 - z)/3
        let ex3 = HomogPair::from_i64(&[0, -1, 0, 1], &[3, 0, 0, 0]).unwrap();
        assert_eq!(ex3.ordres(3).unwrap(), qi(3));
        let sq = HomogPair::from_i64(&[0, 0, 1], &[1, 0, 0]).unwrap();
        assert_eq!(sq.ordres(7).unwrap(), qi(0));
    }

    #[test]
    fn conjugate_identity_and_scaling() {
        let ex1 = HomogPair::from_i64(&[-5, 0, 0, 1], &[0, 0, 1, 0]).unwrap();
        let id = MobiusMap::identity(&r(1));
        let c = ex1.conjugate(&id).unwrap();
        assert_eq!(c.a_low(), ex1.a_low());
        let g = MobiusMap::affine(r(5), r(0));
        let c = ex1.conjugate(&g).unwrap();
        let s = ex1.scale(&r(5));
        for l in 0..=3 {
            assert_eq!(c.a(l), s.a(l));
            assert_eq!(c.b(l), s.b(l));
        }
        let t = MobiusMap::affine(r(1), r(3));
        let c = ex1.conjugate(&t).unwrap();
        let s = ex1.translate(&r(3));
        assert_eq!(c.a_low(), s.a_low());
        assert_eq!(c.b_low(), s.b_low());
    }

    #[test]
    fn path_function_examples() {
        let ex1 = HomogPair::from_i64(&[-5, 0, 0, 1], &[0, 0, 1, 0]).unwrap();
        let f = ex1.path_function(5, qi(2));
        assert_eq!(f, PWLFunc::new([(-6, qi(2)), (12, qi(-4))]));
        let sq = HomogPair::from_i64(&[0, 0, 1], &[1, 0, 0]).unwrap();
        assert_eq!(sq.path_function(3, qi(0)), PWLFunc::new([(-2, qi(0)), (2, qi(0))]));
    }

    #[test]
    fn ordres_at_examples() {
        let ex1 = HomogPair::from_i64(&[-5, 0, 0, 1], &[0, 0, 1, 0]).unwrap();
        assert_eq!(ordres_at(&ex1, &TypeIIPoint::rational(r(0), qi(1)), 5).unwrap(), qi(8));
        assert_eq!(ordres_at(&ex1, &TypeIIPoint::rational(r(0), q(-1, 3)), 5).unwrap(), qi(0));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_to_gauss(&TypeIIPoint::rational(r(0), qi(1)), 5), qi(1));
        let c = BigRational::new(1.into(), 5.into());
        assert_eq!(rho_to_gauss(&TypeIIPoint::rational(c, qi(-1)), 5), qi(3));
        assert_eq!(rho_to_gauss(&TypeIIPoint::rational(r(3), qi(-2)), 5), qi(2));
    }

    #[test]
    fn good_reduction_of_squaring() {
        let sq = HomogPair::from_i64(&[0, 0, 1], &[1, 0, 0]).unwrap();
        assert!(sq.good_reduction_check(5).unwrap());
        let ex3 = HomogPair::from_i64(&[0, -1, 0, 1], &[3, 0, 0, 0]).unwrap();
        assert!(!ex3.good_reduction_check(3).unwrap());
    }
}
