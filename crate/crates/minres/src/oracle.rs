//! Brute-force cross-checks: `ordRes_φ` on a grid of rational type II
//! points, the transformation law by direct determinants, and the
//! direction test at locus endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::dynrep::{ordres_at, ppow, Direction, HomogPair, MobiusMap, Scalar, Trend, TypeIIPoint};
use crate::error::{MinresError, Result};
use crate::minres_a::{Anchor, Locus};
use crate::padic::{ceil_q, ordp, qi, ValQ, Q64};

/// Points `ζ_{D(b, p^s)}` with `0 ≤ b < p^depth` and `s` stepping through
/// `[s_lo, s_hi]`.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub depth: u32,
    pub s_lo: Q64,
    pub s_hi: Q64,
    pub s_step: Q64,
}

impl GridSpec {
    pub fn new(depth: u32, s_lo: Q64, s_hi: Q64, s_step: Q64) -> GridSpec {
        GridSpec { depth, s_lo, s_hi, s_step }
    }

    pub fn radii(&self) -> Vec<Q64> {
        let mut out = Vec::new();
        let mut s = self.s_lo;
        while s <= self.s_hi {
            out.push(s);
            s += self.s_step;
        }
        out
    }

    /// Distinct points of the grid: a center only matters modulo `p^⌈-s⌉`.
    pub fn points(&self, p: u64) -> Vec<TypeIIPoint> {
        let mut out = Vec::new();
        for s in self.radii() {
            let digits = if s >= qi(0) { 0 } else { ceil_q(&-s).min(self.depth as i64) };
            let n = num_traits::pow(BigInt::from(p), digits as usize);
            let mut b = BigInt::zero();
            while b < n {
                out.push(TypeIIPoint::rational(BigRational::from_integer(b.clone()), s));
                b += 1;
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct GridResult {
    pub min: Q64,
    pub argmin: Vec<TypeIIPoint>,
    pub evaluated: usize,
}

/// Minimum of `ordRes_φ` over the grid, with every point attaining it.
pub fn grid_min(pair: &HomogPair, p: u64, spec: &GridSpec) -> Result<GridResult> {
    let pts = spec.points(p);
    if pts.is_empty() {
        return Err(MinresError::Invalid("empty grid".into()));
    }
    let vals: Vec<Q64> = pts.par_iter().map(|q| ordres_at(pair, q, p)).collect::<Result<_>>()?;
    let min = *vals.iter().min().unwrap();
    let argmin = pts.iter().zip(&vals).filter(|(_, v)| **v == min).map(|(q, _)| q.clone()).collect();
    Ok(GridResult { min, argmin, evaluated: pts.len() })
}

/// `Res(F^γ, G^γ) = Res(F, G)·det(γ)^(d²+d)`, with both resultants taken
/// as Sylvester determinants over `Q`.
pub fn check_transformation_law(pair: &HomogPair, gamma: &MobiusMap<BigRational>) -> Result<bool> {
    let conj = pair.conjugate(gamma)?;
    let d = pair.degree();
    let det = gamma.det();
    if det.is_zero() {
        return Err(MinresError::Singular);
    }
    let lhs = conj.resultant();
    let rhs = pair.resultant() * num_traits::pow(det, d * d + d);
    Ok(lhs == rhs)
}

/// One direction tested at a locus anchor.
#[derive(Clone, Debug)]
pub struct DirectionCheck {
    pub anchor: usize,
    /// `None` for the direction toward `∞`.
    pub residue: Option<u64>,
    pub trend: Trend,
}

/// `γ = [[A, c], [0, 1]]` with `A = p^(-s)` for a rational anchor with
/// integral `s`.
fn rational_gamma(q: &TypeIIPoint, p: u64) -> Result<MobiusMap<BigRational>> {
    let c = q.center.as_rational().ok_or_else(|| MinresError::Invalid("anchor center is not rational".into()))?;
    if !q.s.is_integer() {
        return Err(MinresError::Invalid("anchor is not a rational type II point".into()));
    }
    Ok(MobiusMap::affine(ppow(p, -q.s.to_integer()), c.clone()))
}

/// The direction at `ζ_G` containing `γ⁻¹(other)`, as `None` for `∞` or
/// the residue of the center.
fn toward(q: &TypeIIPoint, other: &TypeIIPoint, p: u64) -> Result<Option<u64>> {
    let c = q.center.as_rational().unwrap();
    let c2 = other.center.as_rational().ok_or_else(|| MinresError::Invalid("anchor center is not rational".into()))?;
    let w = (c2 - c) * ppow(p, q.s.to_integer());
    let rel = other.s - q.s;
    if rel > qi(0) || w.ord(p) < ValQ::int(0) {
        return Ok(None);
    }
    Ok(Some(w.residue(p)?[0]))
}

/// Runs the direction test in every tangent direction at each type II
/// anchor of a locus, except the directions pointing into the locus.
pub fn check_directions_off_locus(pair: &HomogPair, p: u64, locus: &Locus) -> Result<Vec<DirectionCheck>> {
    let anchors: Vec<&TypeIIPoint> = locus.anchors.iter().filter_map(Anchor::as_disc).collect();
    let mut out = Vec::new();
    for (i, q) in anchors.iter().enumerate() {
        let g = rational_gamma(q, p)?;
        let (local, _) = pair.conjugate(&g)?.normalize(p)?;
        let inside: Vec<Option<u64>> =
            anchors.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| toward(q, o, p)).collect::<Result<_>>()?;
        let mut dirs: Vec<Option<u64>> = vec![None];
        dirs.extend((0..p).map(Some));
        for dir in dirs {
            if inside.contains(&dir) {
                continue;
            }
            let d = match dir {
                None => Direction::AtInfinity,
                Some(b) => Direction::Residue(BigRational::from_integer(b.into())),
            };
            out.push(DirectionCheck { anchor: i, residue: dir, trend: local.classify_direction(p, &d)? });
        }
    }
    Ok(out)
}

/// A random matrix with entries in `Z` whose determinant is a `p`-adic
/// unit, from a stream of small integers.
pub fn unit_matrix(p: u64, mut next: impl FnMut() -> i64) -> MobiusMap<BigRational> {
    loop {
        let e: Vec<BigRational> = (0..4).map(|_| BigRational::from_integer(next().into())).collect();
        let m = MobiusMap { a: e[0].clone(), b: e[1].clone(), c: e[2].clone(), d: e[3].clone() };
        if ordp(&m.det(), p) == ValQ::int(0) {
            return m;
        }
    }
}

/// Identity as a rational matrix.
pub fn identity() -> MobiusMap<BigRational> {
    MobiusMap::identity(&BigRational::one())
}
