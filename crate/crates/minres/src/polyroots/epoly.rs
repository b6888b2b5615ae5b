//! Dense polynomials with coefficients in a local field, lowest degree
//! first, together with Hensel factorization and power-sum conversions.

use crate::error::{MinresError, Result};
use crate::padic::{EltVal, FieldElt, FqPoly, LocalField, Q64};

pub type EPoly = Vec<FieldElt>;

pub fn ep_add(f: &[FieldElt], g: &[FieldElt], k: &LocalField) -> EPoly {
    let n = f.len().max(g.len());
    (0..n)
        .map(|i| match (f.get(i), g.get(i)) {
            (Some(a), Some(b)) => a.add(b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => k.zero(),
        })
        .collect()
}

pub fn ep_sub(f: &[FieldElt], g: &[FieldElt], k: &LocalField) -> EPoly {
    let ng: EPoly = g.iter().map(|x| x.neg()).collect();
    ep_add(f, &ng, k)
}

pub fn ep_mul(f: &[FieldElt], g: &[FieldElt], k: &LocalField) -> EPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

/// Division with remainder by a monic polynomial.
pub fn ep_divrem_monic(f: &[FieldElt], g: &[FieldElt], k: &LocalField) -> (EPoly, EPoly) {
    let dg = g.len() - 1;
    let mut r: EPoly = f.to_vec();
    if r.len() <= dg {
        r.resize(dg, k.zero());
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg].clone();
        for (j, gj) in g.iter().enumerate().take(dg) {
            r[i + j] = r[i + j].sub(&c.mul(gj));
        }
        r[i + dg] = k.zero();
        q[i] = c;
    }
    r.truncate(dg);
    (q, r)
}

pub fn ep_eval(f: &[FieldElt], x: &FieldElt) -> FieldElt {
    let mut acc = x.field().zero();
    for c in f.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn ep_reduce(f: &[FieldElt]) -> Result<FqPoly> {
    let k = f.first().map(|x| x.field().clone());
    let mut out: FqPoly = f.iter().map(|c| c.residue()).collect::<Result<_>>()?;
    if let Some(k) = k {
        k.residue_field().poly_trim(&mut out);
    }
    Ok(out)
}

pub fn ep_lift(f: &FqPoly, k: &LocalField) -> EPoly {
    f.iter().map(|c| k.lift_residue(c)).collect()
}

fn ep_is_zero(f: &[FieldElt]) -> bool {
    f.iter().all(|c| matches!(c.val(), EltVal::AtLeast(_)))
}

/// Lifts a coprime factorization `f ≡ ḡ·h̄ (mod 𝔪)` with `ḡ` monic to
/// `f = g·h` over the valuation ring, with `g` monic and `g ≡ ḡ`. The
/// coefficients of `f` must be integral.
pub fn hensel_split(f: &[FieldElt], gbar: &FqPoly, k: &LocalField) -> Result<(EPoly, EPoly)> {
    let res = k.residue_field();
    let fbar = ep_reduce(f)?;
    let (hbar, rem) = res.poly_divrem(&fbar, gbar);
    if !rem.is_empty() {
        return Err(MinresError::Invalid("residual factor does not divide".into()));
    }
    let (one, _, tbar) = res.poly_xgcd(gbar, &hbar);
    if one.len() != 1 {
        return Err(MinresError::Invalid("residual factors are not coprime".into()));
    }
    let two = [k.from_int(2)];
    let mut g = ep_lift(gbar, k);
    let mut t = ep_lift(&tbar, k);
    let (mut h, mut e) = ep_divrem_monic(f, &g, k);
    for _ in 0..64 {
        if ep_is_zero(&e) {
            break;
        }
        let (_, dg) = ep_divrem_monic(&ep_mul(&t, &e, k), &g, k);
        g = ep_add(&g, &dg, k);
        (h, e) = ep_divrem_monic(f, &g, k);
        let th = ep_divrem_monic(&ep_mul(&t, &h, k), &g, k).1;
        t = ep_divrem_monic(&ep_mul(&t, &ep_sub(&two, &th, k), k), &g, k).1;
    }
    if !ep_is_zero(&e) {
        return Err(MinresError::Precision("Hensel lifting did not converge".into()));
    }
    Ok((g, h))
}

/// Power sums `p_1..p_n` of the roots of a monic polynomial.
pub fn power_sums(f: &[FieldElt], n: usize, k: &LocalField) -> EPoly {
    let d = f.len() - 1;
    let c = |i: usize| -> FieldElt {
        // coefficient of x^{d-i} for i in 1..=d
        if i <= d {
            f[d - i].clone()
        } else {
            k.zero()
        }
    };
    let mut p: EPoly = Vec::with_capacity(n + 1);
    p.push(k.from_int(d as i64));
    for j in 1..=n {
        let mut acc = if j <= d { c(j).mul_int(j as i64).neg() } else { k.zero() };
        for i in 1..j.min(d + 1) {
            acc = acc.sub(&c(i).mul(&p[j - i]));
        }
        p.push(acc);
    }
    p
}

/// Monic polynomial of degree `n` with the given power sums `p_1..p_n`
/// (index 0 ignored).
pub fn from_power_sums(p: &[FieldElt], n: usize, k: &LocalField) -> Result<EPoly> {
    let mut el: EPoly = vec![k.one()];
    for j in 1..=n {
        let mut acc = k.zero();
        for i in 1..=j {
            let term = el[j - i].mul(&p[i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        el.push(acc.div(&k.from_int(j as i64))?);
    }
    let mut out = vec![k.zero(); n + 1];
    for (j, e) in el.iter().enumerate() {
        out[n - j] = if j % 2 == 0 { e.clone() } else { e.neg() };
    }
    Ok(out)
}

/// Trace down to `Q_p`.
pub fn trace(x: &FieldElt) -> FieldElt {
    let Some(coords) = x.parent_coords() else { return x.clone() };
    let par = coords[0].field().clone();
    let step = x.field().step_poly().unwrap();
    let n = step.len() - 1;
    let ps = power_sums(&step, n - 1, &par);
    let mut acc = par.zero();
    for (c, s) in coords.iter().zip(&ps) {
        acc = acc.add(&c.mul(s));
    }
    trace(&acc)
}

/// Characteristic polynomial over `Q_p` of multiplication by `x` on its
/// field, monic, lowest degree first. It is a power of the minimal
/// polynomial of `x`.
pub fn charpoly(x: &FieldElt) -> Result<EPoly> {
    let n = x.field().degree();
    let base = x.field().base();
    let mut sums = vec![base.zero()];
    let mut pw = x.field().one();
    for _ in 0..n {
        pw = pw.mul(x);
        sums.push(trace(&pw));
    }
    from_power_sums(&sums, n, &base)
}

/// `max ord(x - y)` over the roots `y` of the monic polynomial `orbit`
/// (coefficients in `Q_p`). Returns `None` when `x` is itself a root at
/// the working precision.
pub fn closeness(x: &FieldElt, orbit: &[FieldElt]) -> Result<Option<Q64>> {
    let k = x.field();
    let mut a: EPoly = orbit.iter().map(|c| c.embed(k)).collect::<Result<_>>()?;
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = x.mul(&a[j + 1]);
            a[j] = a[j].add(&t);
        }
    }
    if a[0].is_zero() {
        return Ok(None);
    }
    let segs = super::newton_polygon(&a)?;
    Ok(Some(-segs[0].slope))
}
