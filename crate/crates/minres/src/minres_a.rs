//! The minimal resultant locus over the full Berkovich line: the minimum
//! of `ordRes_φ`, the point or segment where it is attained, and a
//! conjugating matrix reaching it. Also the degree-one classification and
//! the precision thresholds for stability under perturbation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::dynrep::{Center, HomogPair, MobiusMap, Scalar, TypeIIPoint};
use crate::error::{MinresError, Result};
use crate::padic::{ceil_q, modinv, ordp, q, qi, EltVal, FieldElt, LocalField, StepKind, ValQ, Q64};
use crate::polyroots::epoly::charpoly;
use crate::polyroots::{roots, squarefree_part, QPoly};
use crate::pwl::{Argmin, PWLFunc};

/// Largest working precision reached by automatic escalation.
pub const MAX_AUTO_PRECISION: i64 = 2048;

/// Smallest working precision used by automatic escalation.
pub const MIN_AUTO_PRECISION: i64 = 8;

/// The point `a` whose preimages, together with the fixed points, span
/// the tree that is searched.
#[derive(Clone, Debug, Default)]
pub enum BasePoint {
    /// `a = φ(∞)`.
    #[default]
    ImageOfInfinity,
    Value(BigRational),
    Infinity,
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeConfig {
    /// Explicit working precision; automatic escalation when `None`.
    pub precision: Option<i64>,
    /// Cap on the degree of any extension built; `(d+1)²` when `None`.
    pub max_ext_degree: Option<usize>,
    pub base_point: BasePoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusKind {
    Point,
    Segment,
    Everything,
    Path,
    StrongTube { radius: Q64 },
    Horodisc { codiameter_exponent: Q64 },
}

impl LocusKind {
    pub fn name(&self) -> &'static str {
        match self {
            LocusKind::Point => "Point",
            LocusKind::Segment => "Segment",
            LocusKind::Everything => "Everything",
            LocusKind::Path => "Path",
            LocusKind::StrongTube { .. } => "StrongTube",
            LocusKind::Horodisc { .. } => "Horodisc",
        }
    }
}

/// An endpoint of a locus.
#[derive(Clone, Debug)]
pub enum Anchor {
    Disc(TypeIIPoint),
    /// A type I point of `P¹`.
    Point(Center),
    Infinity,
}

impl Anchor {
    pub fn as_disc(&self) -> Option<&TypeIIPoint> {
        match self {
            Anchor::Disc(q) => Some(q),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Locus {
    pub kind: LocusKind,
    /// Sorted by `s` ascending for type II anchors.
    pub anchors: Vec<Anchor>,
}

/// The meeting point of the paths from two roots up to `∞`.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub i: usize,
    pub j: usize,
    /// `ord(α_i - α_j)`, maximized over conjugates.
    pub meet: ValQ,
}

/// Restriction of `ordRes_φ` to the path `[α, ∞]`.
#[derive(Clone, Debug)]
pub struct PathReport {
    pub id: usize,
    pub center: Center,
    pub orbit_size: usize,
    pub func: PWLFunc,
    /// Argmin in the path parameter `t = -s`.
    pub argmin: Argmin,
}

#[derive(Clone, Debug)]
pub struct MinResReport {
    pub degree: usize,
    pub prime: u64,
    pub ordres_at_gauss: Q64,
    pub min_value: Q64,
    pub locus: Locus,
    pub gamma: MobiusMap<FieldElt>,
    pub extension_degree: usize,
    pub pgr: bool,
    pub per_path: Vec<PathReport>,
    pub nodes: Vec<TreeNode>,
    pub precision: i64,
}

impl MinResReport {
    pub fn gamma_field(&self) -> &LocalField {
        self.gamma.a.field()
    }

    /// The entries of `γ` when they all lie in `Q`.
    pub fn gamma_rational(&self) -> Option<MobiusMap<BigRational>> {
        if self.gamma_field().degree() != 1 {
            return None;
        }
        Some(MobiusMap {
            a: self.gamma.a.to_rational()?,
            b: self.gamma.b.to_rational()?,
            c: self.gamma.c.to_rational()?,
            d: self.gamma.d.to_rational()?,
        })
    }
}

/// `f(d) = (2d² + 3d - 1) / (2d² - 2d)`.
pub fn stability_factor(d: usize) -> Q64 {
    let d = d as i64;
    q(2 * d * d + 3 * d - 1, 2 * d * d - 2 * d)
}

/// Precision thresholds above which perturbations of the coefficients
/// preserve `ordRes_φ` on the ball `ρ ≤ m` around `ζ_G`, respectively the
/// minimal resultant locus.
pub fn stability_bounds(r: Q64, d: usize, m: Q64) -> (Q64, Q64) {
    let di = d as i64;
    let eval = r.max((r + m * (di * di + di)) / (2 * di));
    (eval, stability_factor(d) * r)
}

/// Default working precision `ceil(f(d)·R) + 2`.
pub fn default_precision(r: Q64, d: usize) -> i64 {
    ceil_q(&(stability_factor(d) * r)) + 2
}

/// `(F, G)` conjugated by `γ` and normalized, over the field of `γ`.
pub fn conjugate_at_gamma(pair: &HomogPair, gamma: &MobiusMap<FieldElt>) -> Result<HomogPair<FieldElt>> {
    let k = gamma.a.field();
    let c = pair.to_field(k).conjugate(gamma)?;
    Ok(c.normalize(k.p())?.0)
}

/// `f^(ℓ)/ℓ!` as a polynomial.
fn taylor_coeff(f: &QPoly, l: usize) -> QPoly {
    let c = f.coeffs();
    if c.len() <= l {
        return QPoly::zero();
    }
    let mut out = Vec::with_capacity(c.len() - l);
    let mut binom = BigInt::one();
    for k in l..c.len() {
        if k > l {
            binom = binom * BigInt::from(k) / BigInt::from(k - l);
        }
        out.push(&c[k] * BigRational::from_integer(binom.clone()));
    }
    QPoly::new(out)
}

/// Exact valuation of `P(α)` for a root `α` of the squarefree `s`;
/// `+∞` only when `P(α) = 0` exactly.
fn exact_ord(pp: &QPoly, s: &QPoly, alpha: &FieldElt) -> Result<ValQ> {
    if pp.is_zero() {
        return Ok(ValQ::Inf);
    }
    let g = pp.gcd(s);
    if g.degree().unwrap_or(0) > 0 {
        let (cof, _) = s.divrem(&g);
        match (g.eval_elt(alpha).val(), cof.eval_elt(alpha).val()) {
            (EltVal::Exact(_), _) => {}
            (_, EltVal::Exact(_)) => return Ok(ValQ::Inf),
            _ => return Err(MinresError::Precision("cannot separate roots of a coefficient".into())),
        }
    }
    match pp.eval_elt(alpha).val() {
        EltVal::Exact(v) => Ok(ValQ::Fin(v)),
        EltVal::AtLeast(_) => Err(MinresError::Precision("translated coefficient below precision".into())),
    }
}

/// The point of the minimal resultant locus and related data for a map of
/// degree `d ≥ 2`.
pub fn analyze(pair: &HomogPair, p: u64, cfg: &AnalyzeConfig) -> Result<MinResReport> {
    let d = pair.degree();
    if d < 2 {
        return Err(MinresError::Invalid("degree-one maps are handled by classify_mobius".into()));
    }
    let r0 = pair.ordres(p)?;
    let mut cap = match cfg.precision {
        Some(n) if n >= 1 => n,
        Some(_) => return Err(MinresError::Invalid("precision must be at least 1".into())),
        None => default_precision(r0, d).max(MIN_AUTO_PRECISION),
    };
    loop {
        match analyze_at(pair, p, cfg, cap, r0) {
            Err(MinresError::Precision(msg)) => {
                if cfg.precision.is_some() || cap >= MAX_AUTO_PRECISION {
                    return Err(MinresError::Precision(format!("{msg} (precision {cap})")));
                }
                cap *= 2;
            }
            other => return other,
        }
    }
}

fn analyze_at(pair: &HomogPair, p: u64, cfg: &AnalyzeConfig, cap: i64, r0: Q64) -> Result<MinResReport> {
    let d = pair.degree();
    let max_ext = cfg.max_ext_degree.unwrap_or((d + 1) * (d + 1));
    let k0 = LocalField::qp(p, cap, max_ext.max(2 * d + 1));
    let rres = pair.ord_resultant(p).fin().ok_or_else(|| MinresError::Degenerate("zero resultant".into()))?;
    let f = pair.numerator();
    let g = pair.denominator();
    let h = f.sub(&QPoly::z().mul(&g));
    let other = match &cfg.base_point {
        BasePoint::ImageOfInfinity if g.coeff(d).is_zero() => g.clone(),
        BasePoint::ImageOfInfinity => f.sub(&g.scale(&(f.coeff(d) / g.coeff(d)))),
        BasePoint::Value(a) => f.sub(&g.scale(a)),
        BasePoint::Infinity => g.clone(),
    };
    let s = squarefree_part(&h.mul(&other)).part;
    if s.degree().unwrap_or(0) == 0 {
        return Err(MinresError::Degenerate("no finite fixed points or preimages".into()));
    }
    let sh = squarefree_part(&h).part;
    let so = squarefree_part(&other).part;
    let (so, _) = so.divrem(&so.gcd(&sh));
    let mut recs = roots(&sh, &k0)?;
    if so.degree().unwrap_or(0) > 0 {
        recs.extend(roots(&so, &k0)?);
    }

    let fpad = QPoly::new((0..=d).map(|i| f.coeff(i)).collect());
    let gpad = QPoly::new((0..=d).map(|i| g.coeff(i)).collect());
    let a_polys: Vec<QPoly> = (0..=d)
        .map(|l| taylor_coeff(&fpad, l).sub(&QPoly::z().mul(&taylor_coeff(&gpad, l))))
        .collect();
    let b_polys: Vec<QPoly> = (0..=d).map(|l| taylor_coeff(&gpad, l)).collect();

    let di = d as i64;
    let top = di * di + di;
    let per_path: Vec<PathReport> = recs
        .par_iter()
        .enumerate()
        .map(|(id, rec)| -> Result<PathReport> {
            let alpha = rec.value.with_prec(rec.accuracy);
            let mut terms = Vec::new();
            for l in 0..=d {
                let li = l as i64;
                if let ValQ::Fin(v) = exact_ord(&a_polys[l], &s, &alpha)? {
                    terms.push((top - 2 * di * li, rres - v * (2 * di)));
                }
                if let ValQ::Fin(v) = exact_ord(&b_polys[l], &s, &alpha)? {
                    terms.push((top - 2 * di * (li + 1), rres - v * (2 * di)));
                }
            }
            let func = PWLFunc::new(terms);
            let argmin = func.minimize()?;
            let center = if rec.host.degree() == 1 {
                Center::Rational(alpha.to_rational().expect("element of Q_p"))
            } else {
                Center::Algebraic { value: alpha.clone(), orbit: charpoly(&alpha)? }
            };
            Ok(PathReport { id, center, orbit_size: rec.orbit_size, func, argmin })
        })
        .collect::<Result<_>>()?;

    let min_value = per_path.iter().map(|x| x.argmin.value).min().expect("at least one path");
    let (locus, nodes) = collate(&per_path, min_value, p)?;
    let at_gauss = min_value == r0;
    let gamma = if at_gauss {
        MobiusMap::identity(&k0.one())
    } else {
        let anchor = locus.anchors[0].as_disc().expect("type II anchor");
        gamma_for(anchor, &k0)?
    };
    let extension_degree = gamma.a.field().degree();
    if extension_degree > max_ext {
        return Err(MinresError::ResourceCap(format!("extension of degree {extension_degree} exceeds {max_ext}")));
    }
    Ok(MinResReport {
        degree: d,
        prime: p,
        ordres_at_gauss: r0,
        min_value,
        locus,
        gamma,
        extension_degree,
        pgr: min_value.is_zero(),
        per_path,
        nodes,
        precision: cap,
    })
}

fn collate(paths: &[PathReport], m: Q64, p: u64) -> Result<(Locus, Vec<TreeNode>)> {
    let sel: Vec<&PathReport> = paths.iter().filter(|x| x.argmin.value == m).collect();
    let s_lo = |x: &PathReport| -x.argmin.hi;
    let s_hi = |x: &PathReport| -x.argmin.lo;
    let low = *sel.iter().min_by_key(|x| s_lo(x)).unwrap();
    let s_top = sel.iter().map(|x| s_hi(x)).max().unwrap();
    let mut nodes = Vec::new();
    let mut leg: Option<&PathReport> = None;
    for x in &sel {
        if x.id == low.id {
            continue;
        }
        let meet = x.center.closeness(&low.center, p)?;
        nodes.push(TreeNode { i: low.id, j: x.id, meet });
        if meet < ValQ::Fin(-s_lo(x)) && leg.is_none_or(|l| s_lo(x) < s_lo(l)) {
            leg = Some(x);
        }
    }
    let e1 = TypeIIPoint { center: simplify_center(&low.center, s_lo(low), p), s: s_lo(low) };
    let (kind, mut anchors) = match leg {
        Some(l) => {
            let e2 = TypeIIPoint { center: simplify_center(&l.center, s_lo(l), p), s: s_lo(l) };
            (LocusKind::Segment, vec![e1, e2])
        }
        None if s_top > s_lo(low) => {
            let t = TypeIIPoint { center: simplify_center(&low.center, s_top, p), s: s_top };
            (LocusKind::Segment, vec![e1, t])
        }
        None => (LocusKind::Point, vec![e1]),
    };
    anchors.sort_by_key(|a| a.s);
    Ok((Locus { kind, anchors: anchors.into_iter().map(Anchor::Disc).collect() }, nodes))
}

/// A short center for the disc `D(c, p^s)`: `0` when the disc contains
/// it, otherwise a balanced truncation of a rational center.
pub fn simplify_center(c: &Center, s: Q64, p: u64) -> Center {
    if c.ord(p) >= ValQ::Fin(-s) {
        return Center::zero();
    }
    let Center::Rational(r) = c else { return c.clone() };
    let v = match ordp(r, p) {
        ValQ::Fin(v) => v.to_integer(),
        ValQ::Inf => return Center::zero(),
    };
    let n = ceil_q(&-s);
    let pb = BigInt::from(p);
    let m = num_traits::pow(pb.clone(), (n - v) as usize);
    let unit = r * crate::dynrep::ppow(p, -v);
    let mut u = (unit.numer() * modinv(&unit.denom().mod_floor(&m), &m)).mod_floor(&m);
    if &u * 2 > m {
        u -= &m;
    }
    Center::Rational(BigRational::from_integer(u) * crate::dynrep::ppow(p, v))
}

/// `γ = [[A, c], [0, 1]]` with `ord(A) = -s`, over the smallest Kummer
/// extension of the center's field containing such an `A`.
pub fn gamma_for(q: &TypeIIPoint, k0: &LocalField) -> Result<MobiusMap<FieldElt>> {
    let k = match &q.center {
        Center::Rational(_) => k0.clone(),
        Center::Algebraic { value, .. } => value.field().clone(),
    };
    let t = -q.s;
    let n = t * k.e();
    let l = if n.is_integer() {
        k
    } else {
        let e2 = *n.denom() as usize;
        let mut poly = vec![k.uniformizer().neg()];
        poly.resize(e2, k.zero());
        poly.push(k.one());
        k.adjoin(StepKind::Eisenstein, &poly)?
    };
    let a = l.one().shift(t, l.p())?;
    let c = q.center.to_field(&l)?;
    Ok(MobiusMap::affine(a, c))
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    let r = BigRational::new(n, d);
    (&r * &r == *x).then_some(r)
}

/// Classification of a degree-one map by the eigenvalues of its matrix.
pub fn classify_mobius(pair: &HomogPair, p: u64) -> Result<MinResReport> {
    if pair.degree() != 1 {
        return Err(MinresError::Invalid("classify_mobius needs a map of degree one".into()));
    }
    let (f0, f1) = (pair.a(0).clone(), pair.a(1).clone());
    let (g0, g1) = (pair.b(0).clone(), pair.b(1).clone());
    let det = &f1 * &g0 - &f0 * &g1;
    if det.is_zero() {
        return Err(MinresError::Singular);
    }
    let r0 = pair.ordres(p)?;
    let cap = 40.max(4 * ceil_q(&r0) + 8);
    let k0 = LocalField::qp(p, cap, 2);
    let tr = &f1 + &g0;
    let disc = &tr * &tr - BigRational::from_integer(4.into()) * &det;
    let report = |kind: LocusKind, anchors: Vec<Anchor>, min_value: Q64, gamma: MobiusMap<FieldElt>| MinResReport {
        degree: 1,
        prime: p,
        ordres_at_gauss: r0,
        min_value,
        locus: Locus { kind, anchors },
        extension_degree: gamma.a.field().degree(),
        gamma,
        pgr: min_value.is_zero(),
        per_path: Vec::new(),
        nodes: Vec::new(),
        precision: cap,
    };

    if f0.is_zero() && g1.is_zero() && f1 == g0 {
        return Ok(report(LocusKind::Everything, Vec::new(), qi(0), MobiusMap::identity(&k0.one())));
    }

    if disc.is_zero() {
        let two = BigRational::from_integer(2.into());
        let lam = &tr / &two;
        let n1 = (&f1 - &lam, g1.clone());
        let (v, w) = if !(n1.0.is_zero() && n1.1.is_zero()) {
            ((BigRational::one(), BigRational::zero()), n1)
        } else {
            ((BigRational::zero(), BigRational::one()), (f0.clone(), &g0 - &lam))
        };
        let c = lam.recip();
        let x0 = if w.1.is_zero() { Anchor::Infinity } else { Anchor::Point(Center::Rational(&w.0 / &w.1)) };
        let gamma = MobiusMap { a: &c * &w.0, b: v.0, c: &c * &w.1, d: v.1 }.to_field(&k0);
        let kind = LocusKind::Horodisc { codiameter_exponent: -ordp(&c, p).fin().unwrap() };
        return Ok(report(kind, vec![x0], qi(0), gamma));
    }

    let a = ordp(&tr, p);
    let b = ordp(&det, p).fin().unwrap();
    let ord_c = match a {
        ValQ::Fin(a) if a < b / 2 => b - a * 2,
        _ => qi(0),
    };
    let kind = if ord_c.is_zero() {
        let radius = ordp(&disc, p).fin().unwrap() / 2 - b / 2;
        if radius > qi(0) { LocusKind::StrongTube { radius } } else { LocusKind::Path }
    } else {
        LocusKind::Path
    };

    let (anchors, gamma) = if g1.is_zero() {
        let x0 = &f0 / (&g0 - &f1);
        let gamma = MobiusMap { a: x0.clone(), b: BigRational::one(), c: BigRational::one(), d: BigRational::zero() };
        (vec![Anchor::Point(Center::Rational(x0)), Anchor::Infinity], gamma.to_field(&k0))
    } else if let Some(sq) = rational_sqrt(&disc) {
        let two_g = BigRational::from_integer(2.into()) * &g1;
        let x0 = (&f1 - &g0 + &sq) / &two_g;
        let x1 = (&f1 - &g0 - &sq) / &two_g;
        let gamma = MobiusMap { a: x0.clone(), b: x1.clone(), c: BigRational::one(), d: BigRational::one() };
        (vec![Anchor::Point(Center::Rational(x0)), Anchor::Point(Center::Rational(x1))], gamma.to_field(&k0))
    } else {
        let quad = QPoly::new(vec![-f0.clone(), &g0 - &f1, g1.clone()]);
        let recs = roots(&quad, &k0)?;
        let x0 = recs[0].value.clone();
        let k = x0.field().clone();
        let x1 = match recs.get(1) {
            Some(r) => r.value.clone(),
            None => k.from_rational(&((&f1 - &g0) / &g1)).sub(&x0),
        };
        let center = |x: &FieldElt| -> Result<Center> { Ok(Center::Algebraic { value: x.clone(), orbit: charpoly(x)? }) };
        let anchors = vec![Anchor::Point(center(&x0)?), Anchor::Point(center(&x1)?)];
        (anchors, MobiusMap { a: x0, b: x1, c: k.one(), d: k.one() })
    };
    Ok(report(kind, anchors, ord_c, gamma))
}
