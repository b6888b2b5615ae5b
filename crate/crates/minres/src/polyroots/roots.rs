//! Root finding over `Q_p` by Newton-polygon segmentation, residual
//! polynomial factorization and Hensel lifting, adjoining unramified and
//! Eisenstein steps as needed.
//!
//! Roots are searched inside "clusters": a cluster is a center `c` and a
//! scale `λ` in some tower `k`, and stands for the roots `z = c + λw` with
//! `ord(w) > 0` (or for all roots at the top level). Only one cluster per
//! Galois-conjugacy class is explored; `mult` counts the conjugate copies.

use num_integer::Integer;

use super::{epoly, lower_hull, squarefree_part, NPSegment, QPoly};
use crate::error::{MinresError, Result};
use crate::padic::{qi, EltVal, FieldElt, FqPoly, LocalField, StepKind, Q64};

const MAX_DEPTH: usize = 400;

/// One representative root of a Galois orbit.
#[derive(Clone, Debug)]
pub struct RootRec {
    pub host: LocalField,
    pub value: FieldElt,
    pub multiplicity: usize,
    /// Number of roots of the polynomial this record stands for.
    pub orbit_size: usize,
    /// The true root `α` satisfies `ord(α - value) ≥ accuracy`.
    pub accuracy: Q64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RootOptions {
    /// Stop after the first root found (all roots of the searched disc are
    /// then known to be conjugate).
    pub want_one: bool,
}

struct Cluster {
    c: FieldElt,
    lam: FieldElt,
    strict: bool,
    mult: usize,
    want_one: Option<usize>,
    no_adjoin: bool,
    depth: usize,
}

/// Coefficients of `P(c + λw)` as a polynomial in `w`.
pub(crate) fn translated(poly: &QPoly, c: &FieldElt, lam: &FieldElt) -> Vec<FieldElt> {
    let mut a = poly.to_field(c.field());
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c.mul(&a[j + 1]);
            a[j] = a[j].add(&t);
        }
    }
    let mut lp = c.field().one();
    for x in a.iter_mut() {
        *x = x.mul(&lp);
        lp = lp.mul(lam);
    }
    a
}

pub(crate) fn pow_signed(x: &FieldElt, k: i64) -> Result<FieldElt> {
    if k >= 0 {
        Ok(x.pow(k as u64))
    } else {
        Ok(x.inv()?.pow((-k) as u64))
    }
}

fn uniformizer_pow(field: &LocalField, k: i64) -> FieldElt {
    if k >= 0 {
        field.uniformizer().pow(k as u64)
    } else {
        field.uniformizer_inv().pow((-k) as u64)
    }
}

/// All roots of a nonzero rational polynomial, one record per orbit, with
/// multiplicities from the squarefree decomposition.
pub fn roots(poly: &QPoly, base: &LocalField) -> Result<Vec<RootRec>> {
    let sq = squarefree_part(poly);
    let mut out = Vec::new();
    for (factor, m) in &sq.factors {
        let cl = Cluster {
            c: base.zero(),
            lam: base.one(),
            strict: false,
            mult: 1,
            want_one: None,
            no_adjoin: false,
            depth: 0,
        };
        let start = out.len();
        search(factor, cl, &mut out)?;
        for r in &mut out[start..] {
            r.multiplicity = *m;
        }
    }
    Ok(out)
}

/// Roots `z = c + λw` with `ord(w) > 0` of a squarefree rational
/// polynomial.
pub fn roots_in_disc(poly: &QPoly, c: &FieldElt, lam: &FieldElt, opts: RootOptions) -> Result<Vec<RootRec>> {
    let cl = Cluster {
        c: c.exactify(),
        lam: lam.exactify(),
        strict: true,
        mult: 1,
        want_one: if opts.want_one { Some(1) } else { None },
        no_adjoin: false,
        depth: 0,
    };
    let mut out = Vec::new();
    search(poly, cl, &mut out)?;
    Ok(out)
}

fn finish_root(poly: &QPoly, z: FieldElt, orbit_size: usize) -> Result<RootRec> {
    let z = z.exactify();
    let pz = poly.eval_elt(&z);
    let pd = poly.derivative().eval_elt(&z);
    let vd = pd
        .val()
        .exact()
        .ok_or_else(|| MinresError::Precision("derivative vanishes at approximate root".into()))?;
    let vz = pz.val().lower();
    if vz <= vd * 2 {
        return Err(MinresError::Precision("approximate root not yet in the Hensel range".into()));
    }
    Ok(RootRec {
        host: z.field().clone(),
        value: z,
        multiplicity: 1,
        orbit_size,
        accuracy: vz - vd,
    })
}

struct Branch {
    seg: NPSegment,
    h: i64,
    e: i64,
    factor: FqPoly,
    mu: usize,
}

fn search(poly: &QPoly, cl: Cluster, out: &mut Vec<RootRec>) -> Result<bool> {
    if cl.depth > MAX_DEPTH {
        return Err(MinresError::Precision("root separation exceeds working precision".into()));
    }
    let field = cl.c.field().clone();
    let q = translated(poly, &cl.c, &cl.lam);
    let vals: Vec<EltVal> = q.iter().map(|x| x.val()).collect();
    let n = q.len() - 1;
    if vals[n].exact().is_none() {
        return Err(MinresError::Precision("leading coefficient lost".into()));
    }
    let jmin = vals.iter().position(|v| v.exact().is_some()).unwrap();
    if jmin >= 2 {
        return Err(MinresError::Precision("several roots closer than working precision".into()));
    }
    let exact: Vec<(usize, Q64)> = vals
        .iter()
        .enumerate()
        .skip(jmin)
        .filter_map(|(i, v)| v.exact().map(|x| (i, x)))
        .collect();
    if jmin == 1 {
        let p0 = vals[0].lower();
        let v1 = exact[0].1;
        for &(j, vj) in &exact[1..] {
            let jq = qi(j as i64);
            if (v1 - p0) * jq >= vj - p0 {
                return Err(MinresError::Precision("root at the center not isolated".into()));
            }
        }
        let size = cl.want_one.unwrap_or(cl.mult);
        out.push(finish_root(poly, cl.c.clone(), size)?);
        if cl.want_one.is_some() {
            return Ok(true);
        }
    }
    let segs = lower_hull(&exact);
    for (i, v) in vals.iter().enumerate().skip(jmin) {
        if let EltVal::AtLeast(p) = v {
            if *p <= super::hull_value(exact[0], &segs, i) {
                return Err(MinresError::Precision(format!("coefficient {i} too imprecise")));
            }
        }
    }
    let big_e = field.e();
    let res = field.residue_field().clone();
    let mut branches = Vec::new();
    for seg in &segs {
        let nu = -seg.slope;
        if cl.strict && nu <= qi(0) {
            continue;
        }
        let x = nu * big_e;
        let (h, e) = (*x.numer(), *x.denom());
        let j0 = seg.start;
        let norm = q[j0].inv()?;
        let pih = uniformizer_pow(&field, h);
        let mut s: FqPoly = Vec::new();
        let mut pw = field.one();
        let steps = seg.length / e as usize;
        for i in 0..=steps {
            let t = q[j0 + i * e as usize].mul(&norm).mul(&pw);
            s.push(t.residue()?);
            pw = pw.mul(&pih);
        }
        for (factor, mu) in res.factor(&s) {
            branches.push(Branch { seg: *seg, h, e, factor, mu });
        }
    }
    if cl.want_one.is_some() {
        branches.sort_by_key(|b| (b.e * (b.factor.len() as i64 - 1), b.mu));
    }
    let p = field.p() as i64;
    for b in branches {
        let m = b.factor.len() - 1;
        if cl.no_adjoin && (m > 1 || b.e > 1) {
            continue;
        }
        let (k1, yt) = if m > 1 {
            let lifted: Vec<FieldElt> = b.factor.iter().map(|c| field.lift_residue(c)).collect();
            let k1 = field.adjoin(StepKind::Unramified, &lifted)?;
            let g = k1.generator();
            (k1, g)
        } else {
            let root = res.neg(&b.factor[0]);
            (field.clone(), field.lift_residue(&root))
        };
        let m_i = m as i64;
        if b.mu == 1 && b.e % p == 0 {
            let size = cl.want_one.unwrap_or(cl.mult * (b.e * m_i) as usize);
            let mut r = wild_root(poly, &cl, &q, &b, &k1, &yt)?;
            r.orbit_size = size;
            out.push(r);
            if cl.want_one.is_some() {
                return Ok(true);
            }
            continue;
        }
        let (k2, rho) = if b.e > 1 {
            let (a, bb) = bezout_pair(b.h, b.e);
            let k2 = k1.adjoin(StepKind::Eisenstein, &kummer_poly(&k1, &yt, a, b.e)?)?;
            let rho = pow_signed(&k2.generator(), b.h)?.mul(&pow_signed(&yt.embed(&k2)?, -bb)?);
            (k2, rho)
        } else {
            (k1.clone(), uniformizer_pow(&k1, b.h).mul(&yt))
        };
        let c = cl.c.embed(&k2)?;
        let lam = cl.lam.embed(&k2)?;
        let step = lam.mul(&rho);
        let c2 = c.add(&step).exactify();
        let lam2 = step.exactify();
        if b.mu == 1 && b.e % p != 0 {
            let size = cl.want_one.unwrap_or(cl.mult * (b.e * m_i) as usize);
            let u = hensel_unit(&q, &rho, b.seg.start, &k2)?;
            let z = c.add(&lam.mul(&rho).mul(&u));
            out.push(finish_root(poly, z, size)?);
            if cl.want_one.is_some() {
                return Ok(true);
            }
            continue;
        }
        let mut e_prime = b.e;
        while e_prime % p == 0 {
            e_prime /= p;
        }
        let sub = if b.mu == 1 {
            Cluster {
                c: c2,
                lam: lam2,
                strict: true,
                mult: 1,
                want_one: Some(cl.want_one.unwrap_or(cl.mult * (b.e * m_i) as usize)),
                no_adjoin: cl.no_adjoin,
                depth: cl.depth + 1,
            }
        } else {
            Cluster {
                c: c2,
                lam: lam2,
                strict: true,
                mult: cl.mult * (e_prime * m_i) as usize,
                want_one: cl.want_one,
                no_adjoin: cl.no_adjoin,
                depth: cl.depth + 1,
            }
        };
        let done = search(poly, sub, out)?;
        if done && cl.want_one.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `(a, b)` with `a·h - b·e = 1` and `0 < a < e`.
fn bezout_pair(h: i64, e: i64) -> (i64, i64) {
    let a = (1..e).find(|&a0| (a0 * h).rem_euclid(e) == 1).unwrap();
    (a, Integer::div_floor(&(a * h - 1), &e))
}

/// `x^e - ỹ^a·π`.
fn kummer_poly(k1: &LocalField, yt: &FieldElt, a: i64, e: i64) -> Result<Vec<FieldElt>> {
    let mut out = vec![k1.zero(); e as usize + 1];
    out[0] = pow_signed(yt, a)?.mul(&k1.uniformizer()).neg().exactify();
    out[e as usize] = k1.one();
    Ok(out)
}

/// One root of a wildly ramified branch whose residual factor is simple.
///
/// The branch factor `A(w)` of `q` is split off by Hensel lifting over an
/// auxiliary Kummer-type extension. The characteristic polynomial of the
/// uniformizer `w^a·π^(-b)` of the branch field is then Eisenstein over
/// `k1`, and the root is found inside the resulting field without further
/// adjunction.
fn wild_root(
    poly: &QPoly,
    cl: &Cluster,
    q: &[FieldElt],
    b: &Branch,
    k1: &LocalField,
    yt: &FieldElt,
) -> Result<RootRec> {
    let e = b.e as usize;
    let (a, bb) = bezout_pair(b.h, b.e);
    let kx = k1.adjoin(StepKind::Eisenstein, &kummer_poly(k1, yt, a, b.e)?)?;
    let rho = pow_signed(&kx.generator(), b.h)?.mul(&pow_signed(&yt.embed(&kx)?, -bb)?);
    let j0 = b.seg.start;
    let mut qs = Vec::with_capacity(q.len());
    let mut rp = kx.one();
    for c in q {
        qs.push(c.embed(&kx)?.mul(&rp));
        rp = rp.mul(&rho);
    }
    let norm = qs[j0].inv()?;
    let qs: Vec<FieldElt> = qs.iter().map(|c| c.mul(&norm)).collect();
    let res = kx.residue_field();
    let mut gbar = vec![res.zero(); e + 1];
    gbar[0] = res.neg(&res.one());
    gbar[e] = res.one();
    let (g, _) = epoly::hensel_split(&qs, &gbar, &kx)?;
    let mut branch = Vec::with_capacity(e + 1);
    let mut rp = kx.one();
    for j in (0..=e).rev() {
        branch.push(g[j].mul(&rp));
        rp = rp.mul(&rho);
    }
    branch.reverse();
    let branch: Vec<FieldElt> = branch.iter().map(|c| c.project_to_parent().unwrap()).collect();
    let ps = epoly::power_sums(&branch, a as usize * e, k1);
    let pinv = uniformizer_pow(k1, -bb);
    let mut sums = vec![k1.zero()];
    let mut scale = k1.one();
    for kk in 1..=e {
        scale = scale.mul(&pinv);
        sums.push(ps[a as usize * kk].mul(&scale));
    }
    let eis = epoly::from_power_sums(&sums, e, k1)?;
    let kr = k1.adjoin(StepKind::Eisenstein, &eis)?;
    let sub = Cluster {
        c: cl.c.embed(&kr)?,
        lam: cl.lam.embed(&kr)?,
        strict: cl.strict,
        mult: 1,
        want_one: None,
        no_adjoin: true,
        depth: cl.depth + 1,
    };
    let mut found = Vec::new();
    search(poly, sub, &mut found)?;
    let nu = Q64::new(b.h, b.e * cl.c.field().e());
    let target = yt.residue()?;
    let pih = uniformizer_pow(k1, -b.h).embed(&kr)?;
    for r in found {
        let w = r.value.sub(&cl.c.embed(&kr)?).div(&cl.lam.embed(&kr)?)?;
        if w.val() != EltVal::Exact(nu) {
            continue;
        }
        if w.pow(e as u64).mul(&pih).residue()? == target {
            return Ok(r);
        }
    }
    Err(MinresError::Precision("no root found in the branch field".into()))
}

/// Newton iteration for the root `u ≡ 1` of `q(ρu)` (normalized).
fn hensel_unit(q: &[FieldElt], rho: &FieldElt, j0: usize, k2: &LocalField) -> Result<FieldElt> {
    let mut coeffs = Vec::with_capacity(q.len());
    let mut rp = k2.one();
    for c in q {
        coeffs.push(c.embed(k2)?.mul(&rp));
        rp = rp.mul(rho);
    }
    let norm = coeffs[j0].inv()?;
    let coeffs: Vec<FieldElt> = coeffs.iter().map(|c| c.mul(&norm)).collect();
    let deriv: Vec<FieldElt> = coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect();
    let eval = |cs: &[FieldElt], u: &FieldElt| {
        let mut acc = k2.zero();
        for c in cs.iter().rev() {
            acc = acc.mul(u).add(c);
        }
        acc
    };
    let mut u = k2.one();
    let mut last = qi(-1);
    for _ in 0..200 {
        let val = eval(&coeffs, &u);
        let v = match val.val() {
            EltVal::AtLeast(_) => break,
            EltVal::Exact(v) => v,
        };
        if v <= last {
            break;
        }
        last = v;
        let d = eval(&deriv, &u);
        u = u.sub(&val.div(&d)?).exactify();
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::q;

    fn total(rs: &[RootRec]) -> usize {
        rs.iter().map(|r| r.orbit_size * r.multiplicity).sum()
    }

    #[test]
    fn x2_plus_1_over_q5_has_two_rational_roots() {
        let k = LocalField::qp(5, 30, 16);
        let rs = roots(&QPoly::from_i64(&[1, 0, 1]), &k).unwrap();
        assert_eq!(rs.len(), 2);
        let mut residues: Vec<u64> = rs.iter().map(|r| r.value.residue().unwrap()[0]).collect();
        residues.sort();
        assert_eq!(residues, vec![2, 3]);
        assert!(rs.iter().all(|r| r.host.degree() == 1 && r.accuracy > qi(20)));
    }

    #[test]
    fn cube_root_of_five_is_one_orbit() {
        let k = LocalField::qp(5, 30, 16);
        let rs = roots(&QPoly::from_i64(&[-5, 0, 0, 1]), &k).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].orbit_size, 3);
        assert_eq!(rs[0].host.e(), 3);
        assert_eq!(rs[0].value.val(), EltVal::Exact(q(1, 3)));
    }

    #[test]
    fn quartic_root_valuations() {
        let k = LocalField::qp(5, 60, 16);
        let poly = QPoly::from_i64(&[1, 5, 0, 625, -15625]);
        let rs = roots(&poly, &k).unwrap();
        assert_eq!(total(&rs), 4);
        let mut vals: Vec<(Q64, usize)> = rs.iter().map(|r| (r.value.val().exact().unwrap(), r.orbit_size)).collect();
        vals.sort();
        assert_eq!(vals, vec![(qi(-2), 1), (q(-3, 2), 2), (qi(-1), 1)]);
    }

    #[test]
    fn wild_roots_over_q2() {
        let k = LocalField::qp(2, 40, 16);
        let rs = roots(&QPoly::from_i64(&[1, 0, 1]), &k).unwrap();
        assert_eq!(total(&rs), 2);
        for r in &rs {
            let z = &r.value;
            assert!(z.mul(z).add(&r.host.one()).val().lower() >= qi(10));
        }
    }

    #[test]
    fn repeated_and_rational_roots() {
        let k = LocalField::qp(3, 30, 16);
        // z^2 (z - 1)^3 (z^2 - 3)
        let mut poly = QPoly::from_i64(&[0, 0, 1]);
        for _ in 0..3 {
            poly = poly.mul(&QPoly::from_i64(&[-1, 1]));
        }
        poly = poly.mul(&QPoly::from_i64(&[-3, 0, 1]));
        let rs = roots(&poly, &k).unwrap();
        assert_eq!(total(&rs), 7);
        assert!(rs.iter().any(|r| r.multiplicity == 3 && r.value.to_rational().is_some()));
    }

    #[test]
    fn unramified_roots() {
        let k = LocalField::qp(2, 30, 16);
        let rs = roots(&QPoly::from_i64(&[1, 1, 1]), &k).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].orbit_size, 2);
        assert_eq!(rs[0].host.f(), 2);
    }
}
