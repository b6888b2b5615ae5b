use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::fq::{Fq, FqElt};
use super::pad::{PCtx, Pad};
use super::val::{fmt_big_q, qi, Q64};
use crate::error::{MinresError, Result};

/// Kind of a single extension step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Unramified,
    Eisenstein,
}

/// Valuation of an element at its known precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EltVal {
    Exact(Q64),
    /// The element is indistinguishable from zero modulo this valuation.
    AtLeast(Q64),
}

impl EltVal {
    pub fn lower(&self) -> Q64 {
        match self {
            EltVal::Exact(v) | EltVal::AtLeast(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<Q64> {
        match self {
            EltVal::Exact(v) => Some(*v),
            EltVal::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct FieldData {
    ctx: Arc<PCtx>,
    parent: Option<LocalField>,
    kind: Option<StepKind>,
    /// Non-leading coefficients of the monic step polynomial, in parent
    /// coordinates, lowest degree first.
    coeffs: Vec<Vec<Pad>>,
    step_deg: usize,
    deg: usize,
    e: i64,
    f: usize,
    res: Arc<Fq>,
    max_degree: usize,
    pi: Vec<Pad>,
    pi_inv: Vec<Pad>,
    pi_inv_prec: Q64,
    depth: usize,
}

/// `Q_p` or a finite tower of unramified and Eisenstein extensions of it.
/// Cheap to clone; immutable.
#[derive(Clone, Debug)]
pub struct LocalField(Arc<FieldData>);

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for LocalField {}

fn raw_zero(n: usize) -> Vec<Pad> {
    vec![Pad::zero(); n]
}

fn raw_add(ctx: &PCtx, a: &[Pad], b: &[Pad]) -> Vec<Pad> {
    a.iter().zip(b).map(|(x, y)| x.add(y, ctx)).collect()
}

fn raw_sub(ctx: &PCtx, a: &[Pad], b: &[Pad]) -> Vec<Pad> {
    a.iter().zip(b).map(|(x, y)| x.sub(y, ctx)).collect()
}

fn raw_is_zero(a: &[Pad]) -> bool {
    a.iter().all(|x| x.is_zero())
}

impl FieldData {
    fn raw_one(&self) -> Vec<Pad> {
        let mut v = raw_zero(self.deg);
        v[0] = Pad { u: BigInt::one(), v: 0 };
        v
    }

    fn raw_mul(&self, a: &[Pad], b: &[Pad]) -> Vec<Pad> {
        let ctx = &*self.ctx;
        let par = match &self.parent {
            None => return vec![a[0].mul(&b[0], ctx)],
            Some(par) => &par.0,
        };
        let n = self.step_deg;
        let bl = par.deg;
        let mut prod: Vec<Vec<Pad>> = vec![raw_zero(bl); 2 * n - 1];
        for i in 0..n {
            let ai = &a[i * bl..(i + 1) * bl];
            if raw_is_zero(ai) {
                continue;
            }
            for j in 0..n {
                let bj = &b[j * bl..(j + 1) * bl];
                if raw_is_zero(bj) {
                    continue;
                }
                let t = par.raw_mul(ai, bj);
                prod[i + j] = raw_add(ctx, &prod[i + j], &t);
            }
        }
        for k in (n..2 * n - 1).rev() {
            let top = std::mem::replace(&mut prod[k], raw_zero(bl));
            if raw_is_zero(&top) {
                continue;
            }
            for i in 0..n {
                if raw_is_zero(&self.coeffs[i]) {
                    continue;
                }
                let t = par.raw_mul(&top, &self.coeffs[i]);
                prod[k - n + i] = raw_sub(ctx, &prod[k - n + i], &t);
            }
        }
        prod.truncate(n);
        prod.concat()
    }

    fn raw_val(&self, a: &[Pad]) -> Option<Q64> {
        let par = match &self.parent {
            None => return a[0].val().map(qi),
            Some(par) => &par.0,
        };
        let bl = par.deg;
        let mut best: Option<Q64> = None;
        for i in 0..self.step_deg {
            if let Some(v) = par.raw_val(&a[i * bl..(i + 1) * bl]) {
                let w = match self.kind {
                    Some(StepKind::Eisenstein) => v + Q64::new(i as i64, par.e * self.step_deg as i64),
                    _ => v,
                };
                best = Some(match best {
                    Some(b) if b <= w => b,
                    _ => w,
                });
            }
        }
        best
    }

    fn raw_residue(&self, a: &[Pad]) -> FqElt {
        let par = match &self.parent {
            None => return vec![a[0].residue(&self.ctx)],
            Some(par) => &par.0,
        };
        let bl = par.deg;
        match self.kind {
            Some(StepKind::Eisenstein) => par.raw_residue(&a[..bl]),
            _ => (0..self.step_deg).flat_map(|i| par.raw_residue(&a[i * bl..(i + 1) * bl])).collect(),
        }
    }

    fn raw_lift(&self, r: &FqElt) -> Vec<Pad> {
        let par = match &self.parent {
            None => return vec![Pad::from_int(&self.ctx, &BigInt::from(r[0]))],
            Some(par) => &par.0,
        };
        match self.kind {
            Some(StepKind::Eisenstein) => {
                let mut v = par.raw_lift(r);
                v.resize(self.deg, Pad::zero());
                v
            }
            _ => {
                let rl = par.res.degree();
                (0..self.step_deg).flat_map(|i| par.raw_lift(&r[i * rl..(i + 1) * rl].to_vec())).collect()
            }
        }
    }
}

/// An element of a [`LocalField`] with a known absolute precision: the
/// stored value agrees with the true value modulo elements of valuation
/// at least `prec`.
#[derive(Clone, Debug)]
pub struct FieldElt {
    field: LocalField,
    c: Vec<Pad>,
    prec: Q64,
}

impl LocalField {
    /// `Q_p` with coordinates stored modulo `p^cap`; towers built on it may
    /// reach absolute degree `max_degree`.
    pub fn qp(p: u64, cap: i64, max_degree: usize) -> LocalField {
        let ctx = Arc::new(PCtx::new(p, cap));
        let pi = vec![Pad { u: BigInt::one(), v: 1 }];
        let pi_inv = vec![Pad { u: BigInt::one(), v: -1 }];
        LocalField(Arc::new(FieldData {
            ctx,
            parent: None,
            kind: None,
            coeffs: Vec::new(),
            step_deg: 1,
            deg: 1,
            e: 1,
            f: 1,
            res: Fq::prime(p),
            max_degree,
            pi,
            pi_inv,
            pi_inv_prec: qi(cap),
            depth: 0,
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.ctx.p
    }

    /// Storage cap in units of `ord(p)`.
    pub fn cap(&self) -> i64 {
        self.0.ctx.cap
    }

    pub fn degree(&self) -> usize {
        self.0.deg
    }

    pub fn e(&self) -> i64 {
        self.0.e
    }

    pub fn f(&self) -> usize {
        self.0.f
    }

    pub fn max_degree(&self) -> usize {
        self.0.max_degree
    }

    pub fn residue_field(&self) -> &Arc<Fq> {
        &self.0.res
    }

    pub fn parent(&self) -> Option<&LocalField> {
        self.0.parent.as_ref()
    }

    pub fn step_kind(&self) -> Option<StepKind> {
        self.0.kind
    }

    pub fn base(&self) -> LocalField {
        match self.parent() {
            None => self.clone(),
            Some(p) => p.base(),
        }
    }

    /// True when `self` is `other` or one of its subfields in the tower.
    pub fn is_subfield_of(&self, other: &LocalField) -> bool {
        let mut cur = Some(other);
        while let Some(f) = cur {
            if f == self {
                return true;
            }
            cur = f.parent();
        }
        false
    }

    pub fn zero(&self) -> FieldElt {
        FieldElt { field: self.clone(), c: raw_zero(self.0.deg), prec: qi(self.cap()) }
    }

    pub fn one(&self) -> FieldElt {
        FieldElt { field: self.clone(), c: self.0.raw_one(), prec: qi(self.cap()) }
    }

    pub fn from_int(&self, n: i64) -> FieldElt {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElt {
        let mut x = self.zero();
        x.c[0] = Pad::from_int(&self.0.ctx, n);
        x
    }

    pub fn from_rational(&self, r: &BigRational) -> FieldElt {
        let mut x = self.zero();
        x.c[0] = Pad::from_rational(&self.0.ctx, r);
        x
    }

    /// The generator of the top step.
    pub fn generator(&self) -> FieldElt {
        let par = self.parent().expect("Q_p has no generator");
        let mut x = self.zero();
        x.c[par.degree()] = Pad { u: BigInt::one(), v: 0 };
        x
    }

    pub fn uniformizer(&self) -> FieldElt {
        FieldElt { field: self.clone(), c: self.0.pi.clone(), prec: qi(self.cap()) }
    }

    pub fn uniformizer_inv(&self) -> FieldElt {
        FieldElt { field: self.clone(), c: self.0.pi_inv.clone(), prec: self.0.pi_inv_prec }
    }

    /// Lifts a residue-field element to a Teichmüller-free representative.
    pub fn lift_residue(&self, r: &FqElt) -> FieldElt {
        FieldElt { field: self.clone(), c: self.0.raw_lift(r), prec: qi(self.cap()) }
    }

    /// Adjoins a root of the monic polynomial `poly` (coefficients in this
    /// field, lowest degree first, leading 1 included).
    pub fn adjoin(&self, kind: StepKind, poly: &[FieldElt]) -> Result<LocalField> {
        let n = poly.len().saturating_sub(1);
        if n < 2 {
            return Err(MinresError::Invalid("extension step of degree < 2".into()));
        }
        if poly.iter().any(|c| c.field != *self) {
            return Err(MinresError::Invalid("step polynomial over a different field".into()));
        }
        let lead = &poly[n];
        if !lead.sub(&self.one()).is_zero() {
            return Err(MinresError::Invalid("step polynomial must be monic".into()));
        }
        let deg = self.degree() * n;
        if deg > self.max_degree() {
            return Err(MinresError::ResourceCap(format!(
                "extension degree {deg} exceeds cap {}",
                self.max_degree()
            )));
        }
        let res_field = &self.0.res;
        let (e, f, res) = match kind {
            StepKind::Unramified => {
                let mut red = Vec::with_capacity(n + 1);
                for c in poly {
                    match c.residue() {
                        Ok(r) => red.push(r),
                        Err(_) => {
                            return Err(MinresError::Reducible(
                                "unramified step needs integral coefficients".into(),
                            ))
                        }
                    }
                }
                if !res_field.is_irreducible(&red) {
                    return Err(MinresError::Reducible("residual polynomial is reducible".into()));
                }
                (self.e(), self.f() * n, res_field.extend(&red))
            }
            StepKind::Eisenstein => {
                let vpi = Q64::new(1, self.e());
                for (i, c) in poly[..n].iter().enumerate() {
                    let ok = match c.val() {
                        EltVal::Exact(v) => {
                            if i == 0 {
                                v == vpi
                            } else {
                                v > qi(0)
                            }
                        }
                        EltVal::AtLeast(v) => i > 0 && v > qi(0),
                    };
                    if !ok {
                        return Err(MinresError::Reducible("polynomial is not Eisenstein".into()));
                    }
                }
                (self.e() * n as i64, self.f(), res_field.clone())
            }
        };
        let bl = self.degree();
        let mut pi = raw_zero(deg);
        match kind {
            StepKind::Unramified => pi[..bl].clone_from_slice(&self.0.pi),
            StepKind::Eisenstein => pi[bl] = Pad { u: BigInt::one(), v: 0 },
        }
        let mut data = FieldData {
            ctx: self.0.ctx.clone(),
            parent: Some(self.clone()),
            kind: Some(kind),
            coeffs: poly[..n].iter().map(|c| c.c.clone()).collect(),
            step_deg: n,
            deg,
            e,
            f,
            res,
            max_degree: self.max_degree(),
            pi,
            pi_inv: raw_zero(deg),
            pi_inv_prec: qi(self.cap()),
            depth: self.0.depth + 1,
        };
        match kind {
            StepKind::Unramified => {
                data.pi_inv[..bl].clone_from_slice(&self.0.pi_inv);
                data.pi_inv_prec = self.0.pi_inv_prec;
            }
            StepKind::Eisenstein => {
                let c0_inv = poly[0].inv()?;
                let tmp = LocalField(Arc::new(data.clone()));
                let mut s = tmp.zero();
                for i in 1..=n {
                    s.c[(i - 1) * bl..i * bl].clone_from_slice(&poly[i].c);
                }
                let r = s.mul(&c0_inv.embed(&tmp)?).neg();
                data.pi_inv = r.c;
                data.pi_inv_prec = r.prec;
            }
        }
        Ok(LocalField(Arc::new(data)))
    }

    /// Monic defining polynomial of the top step over the parent field,
    /// lowest degree first.
    pub fn step_poly(&self) -> Option<Vec<FieldElt>> {
        let par = self.parent()?;
        let mut out: Vec<FieldElt> = self
            .0
            .coeffs
            .iter()
            .map(|c| FieldElt { field: par.clone(), c: c.clone(), prec: qi(self.cap()) })
            .collect();
        out.push(par.one());
        Some(out)
    }

    /// Human-readable description of the tower, e.g. `Q_5(t1: t1^3 - 5)`.
    pub fn describe(&self) -> String {
        match self.parent() {
            None => format!("Q_{}", self.p()),
            Some(par) => {
                let name = format!("t{}", self.0.depth);
                let kind = match self.0.kind {
                    Some(StepKind::Eisenstein) => "E",
                    _ => "U",
                };
                let mut terms = vec![format!("{name}^{}", self.0.step_deg)];
                for i in (0..self.0.step_deg).rev() {
                    let c = FieldElt { field: par.clone(), c: self.0.coeffs[i].clone(), prec: qi(self.cap()) };
                    if c.is_zero() {
                        continue;
                    }
                    let cs = c.to_string();
                    terms.push(match i {
                        0 => format!("({cs})"),
                        1 => format!("({cs})*{name}"),
                        _ => format!("({cs})*{name}^{i}"),
                    });
                }
                format!("{}({kind} {name}: {})", par.describe(), terms.join(" + "))
            }
        }
    }
}

impl FieldElt {
    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn prec(&self) -> Q64 {
        self.prec
    }

    pub fn coords(&self) -> &[Pad] {
        &self.c
    }

    /// Coordinates as exact rationals over `Q_p`.
    pub fn coords_rational(&self) -> Vec<BigRational> {
        self.c.iter().map(|x| x.to_rational(&self.field.0.ctx)).collect()
    }

    /// The rational value when the element lies in `Q_p`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if raw_is_zero(&self.c[1..]) {
            Some(self.c[0].to_rational(&self.field.0.ctx))
        } else {
            None
        }
    }

    /// Treats the stored value as exact at the storage cap.
    pub fn exactify(&self) -> FieldElt {
        FieldElt { prec: qi(self.field.cap()), ..self.clone() }
    }

    pub fn with_prec(&self, p: Q64) -> FieldElt {
        FieldElt { prec: self.prec.min(p), ..self.clone() }
    }

    fn ctx(&self) -> &PCtx {
        &self.field.0.ctx
    }

    fn check(&self, other: &FieldElt) {
        assert!(self.field == other.field, "mixing elements of different fields");
    }

    fn raw_low(&self) -> Q64 {
        match self.field.0.raw_val(&self.c) {
            Some(v) if v < self.prec => v,
            _ => self.prec,
        }
    }

    pub fn val(&self) -> EltVal {
        match self.field.0.raw_val(&self.c) {
            Some(v) if v < self.prec => EltVal::Exact(v),
            _ => EltVal::AtLeast(self.prec),
        }
    }

    /// True when the element is indistinguishable from zero.
    pub fn is_zero(&self) -> bool {
        matches!(self.val(), EltVal::AtLeast(_))
    }

    pub fn add(&self, other: &FieldElt) -> FieldElt {
        self.check(other);
        FieldElt {
            field: self.field.clone(),
            c: raw_add(self.ctx(), &self.c, &other.c),
            prec: self.prec.min(other.prec),
        }
    }

    pub fn sub(&self, other: &FieldElt) -> FieldElt {
        self.check(other);
        FieldElt {
            field: self.field.clone(),
            c: raw_sub(self.ctx(), &self.c, &other.c),
            prec: self.prec.min(other.prec),
        }
    }

    pub fn neg(&self) -> FieldElt {
        FieldElt { field: self.field.clone(), c: self.c.iter().map(Pad::neg).collect(), prec: self.prec }
    }

    pub fn mul(&self, other: &FieldElt) -> FieldElt {
        self.check(other);
        let prec = (self.prec + other.raw_low())
            .min(other.prec + self.raw_low())
            .min(qi(self.field.cap()));
        FieldElt { field: self.field.clone(), c: self.field.0.raw_mul(&self.c, &other.c), prec }
    }

    pub fn pow(&self, n: u64) -> FieldElt {
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; fails when the element is zero at its
    /// precision.
    pub fn inv(&self) -> Result<FieldElt> {
        let v = self
            .val()
            .exact()
            .ok_or_else(|| MinresError::Precision("inverting an element indistinguishable from 0".into()))?;
        let k = v * self.field.e();
        assert!(k.is_integer());
        let k = k.to_integer();
        let shift = if k > 0 {
            self.field.uniformizer_inv().pow(k as u64)
        } else {
            self.field.uniformizer().pow((-k) as u64)
        };
        let u = self.mul(&shift);
        if u.val() != EltVal::Exact(qi(0)) {
            return Err(MinresError::Precision("unit part lost at this precision".into()));
        }
        let res = self.field.residue_field();
        let r = res.inv(&u.residue()?).expect("unit residue");
        let fd = &self.field.0;
        let cap = qi(self.field.cap());
        let mut z = fd.raw_lift(&r);
        let one = fd.raw_one();
        let mut last = qi(0);
        for _ in 0..256 {
            let w = raw_sub(&fd.ctx, &one, &fd.raw_mul(&u.c, &z));
            match fd.raw_val(&w) {
                None => break,
                Some(vw) if vw >= cap || vw <= last => break,
                Some(vw) => {
                    last = vw;
                    z = raw_add(&fd.ctx, &z, &fd.raw_mul(&z, &w));
                }
            }
        }
        let zi = FieldElt { field: self.field.clone(), c: z, prec: u.prec.min(cap) };
        let out = zi.mul(&shift);
        let prec = out.prec.min(self.prec - v * 2);
        Ok(out.with_prec(prec))
    }

    pub fn div(&self, other: &FieldElt) -> Result<FieldElt> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn mul_int(&self, n: i64) -> FieldElt {
        self.mul(&self.field.from_int(n))
    }

    /// Image in the residue field; requires nonnegative valuation.
    pub fn residue(&self) -> Result<FqElt> {
        match self.val() {
            EltVal::Exact(v) if v < qi(0) => Err(MinresError::NegativeValuation),
            EltVal::Exact(_) => Ok(self.field.0.raw_residue(&self.c)),
            EltVal::AtLeast(p) if p > qi(0) => Ok(self.field.residue_field().zero()),
            EltVal::AtLeast(_) => Err(MinresError::Precision("residue below known precision".into())),
        }
    }

    /// Embeds into an extension of this element's field.
    pub fn embed(&self, into: &LocalField) -> Result<FieldElt> {
        if !self.field.is_subfield_of(into) {
            return Err(MinresError::Invalid("target is not an extension of the element's field".into()));
        }
        let mut c = self.c.clone();
        c.resize(into.degree(), Pad::zero());
        Ok(FieldElt { field: into.clone(), c, prec: self.prec })
    }

    /// Coordinates over the parent field in the power basis of the top
    /// step.
    pub fn parent_coords(&self) -> Option<Vec<FieldElt>> {
        let par = self.field.parent()?;
        let bl = par.degree();
        Some(
            self.c
                .chunks(bl)
                .map(|ch| FieldElt { field: par.clone(), c: ch.to_vec(), prec: self.prec })
                .collect(),
        )
    }

    /// The coordinate of `1` in the power basis of the top step over the
    /// parent field.
    pub fn project_to_parent(&self) -> Option<FieldElt> {
        let par = self.field.parent()?;
        let c = self.c[..par.degree()].to_vec();
        Some(FieldElt { field: par.clone(), c, prec: self.prec })
    }

    /// Deterministic total order on stored coordinates.
    pub fn cmp_coords(&self, other: &FieldElt) -> Ordering {
        let key = |x: &Pad| (x.is_zero(), x.v, x.u.clone());
        self.c.iter().map(key).cmp(other.c.iter().map(key))
    }
}

/// Brings two elements into a common field when one field contains the
/// other.
pub fn coerce(a: &FieldElt, b: &FieldElt) -> Result<(FieldElt, FieldElt)> {
    if a.field.is_subfield_of(&b.field) {
        Ok((a.embed(&b.field)?, b.clone()))
    } else if b.field.is_subfield_of(&a.field) {
        Ok((a.clone(), b.embed(&a.field)?))
    } else {
        Err(MinresError::Invalid("elements live in unrelated fields".into()))
    }
}

impl fmt::Display for FieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", fmt_big_q(&r));
        }
        let parts: Vec<String> = self.coords_rational().iter().map(fmt_big_q).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::val::q;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eisenstein_cube_root_of_five() {
        let k = LocalField::qp(5, 20, 16);
        let poly = vec![k.from_int(-5), k.zero(), k.zero(), k.one()];
        let l = k.adjoin(StepKind::Eisenstein, &poly).unwrap();
        assert_eq!(l.e(), 3);
        assert_eq!(l.uniformizer().val(), EltVal::Exact(q(1, 3)));
        let pi = l.uniformizer();
        let pinv = l.uniformizer_inv();
        assert!(pi.mul(&pinv).sub(&l.one()).val().lower() >= qi(15));
    }

    #[test]
    fn unramified_quadratic_over_q2() {
        let k = LocalField::qp(2, 20, 16);
        let poly = vec![k.one(), k.one(), k.one()];
        let l = k.adjoin(StepKind::Unramified, &poly).unwrap();
        assert_eq!(l.f(), 2);
        assert_eq!(l.residue_field().size(), Some(4));
    }

    #[test]
    fn x2_plus_1_over_q2_rejected_in_both_kinds() {
        let k = LocalField::qp(2, 20, 16);
        let poly = vec![k.one(), k.zero(), k.one()];
        assert!(k.adjoin(StepKind::Unramified, &poly).is_err());
        assert!(k.adjoin(StepKind::Eisenstein, &poly).is_err());
    }

    #[test]
    fn valuations_and_residues() {
        let k = LocalField::qp(5, 20, 16);
        assert_eq!(k.from_rational(&r(1, 5)).val(), EltVal::Exact(qi(-1)));
        assert_eq!(k.from_int(7).residue().unwrap(), vec![2]);
        assert_eq!(k.from_int(5).residue().unwrap(), vec![0]);
        let tiny = k.from_bigint(&num_traits::pow(BigInt::from(5), 20));
        assert_eq!(tiny.val(), EltVal::AtLeast(qi(20)));
    }

    #[test]
    fn gaussian_integers_over_q2() {
        // Q_2(i) presented through the Eisenstein polynomial x^2 + 2x + 2
        // satisfied by i - 1.
        let k = LocalField::qp(2, 24, 16);
        let poly = vec![k.from_int(2), k.from_int(2), k.one()];
        let l = k.adjoin(StepKind::Eisenstein, &poly).unwrap();
        let i = l.generator().add(&l.one());
        assert!(i.mul(&i).add(&l.one()).is_zero());
        let one_plus_i = i.add(&l.one());
        assert_eq!(one_plus_i.val(), EltVal::Exact(q(1, 2)));
        assert_eq!(i.residue().unwrap(), vec![1]);
    }

    #[test]
    fn inverse_in_tower() {
        let k = LocalField::qp(3, 30, 16);
        let u = k.adjoin(StepKind::Unramified, &[k.from_int(-1), k.from_int(-1), k.one()]).unwrap();
        let poly = vec![u.from_int(3), u.zero(), u.one()];
        let l = u.adjoin(StepKind::Eisenstein, &poly).unwrap();
        let x = l.generator().pow(3).add(&l.from_int(7).mul(&u.generator().embed(&l).unwrap()));
        let y = x.inv().unwrap();
        let e = x.mul(&y).sub(&l.one());
        assert!(e.is_zero());
        assert!(y.prec() > qi(20));
    }
}
