//! Finite residue fields built as towers of extensions of F_p, and dense
//! polynomials over them.
//!
//! An element of a tower of total degree f is a vector of f integers in
//! `[0, p)`. The layout mirrors the layout of `FieldElt` coordinates: the
//! top step contributes the outermost blocks, each block being an element of
//! the previous level.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An element of a finite field tower, stored as coordinates over F_p.
pub type FqElt = Vec<u64>;

/// A dense polynomial over a finite field, lowest degree first.
pub type FqPoly = Vec<FqElt>;

/// A finite field `F_p[t_1,...,t_k]` given by successive monic irreducible
/// polynomials.
#[derive(Debug)]
pub struct Fq {
    p: u64,
    parent: Option<Arc<Fq>>,
    /// Monic defining polynomial over the parent, lowest degree first.
    poly: Vec<FqElt>,
    deg: usize,
}

/// Cap on the field size for exhaustive enumeration of residue roots.
pub const ENUMERATION_CAP: u64 = 65536;

impl Fq {
    pub fn prime(p: u64) -> Arc<Fq> {
        Arc::new(Fq { p, parent: None, poly: Vec::new(), deg: 1 })
    }

    /// Extends by a monic polynomial over `self`; irreducibility is the
    /// caller's responsibility (see [`Fq::is_irreducible`]).
    pub fn extend(self: &Arc<Fq>, poly: &FqPoly) -> Arc<Fq> {
        let n = poly.len() - 1;
        Arc::new(Fq { p: self.p, parent: Some(self.clone()), poly: poly.clone(), deg: self.deg * n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute degree over F_p.
    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Field size `p^f`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        let mut q: u64 = 1;
        for _ in 0..self.deg {
            q = q.checked_mul(self.p)?;
        }
        Some(q)
    }

    pub fn size_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.deg as u32)
    }

    pub fn zero(&self) -> FqElt {
        vec![0; self.deg]
    }

    pub fn one(&self) -> FqElt {
        let mut v = vec![0; self.deg];
        v[0] = 1;
        v
    }

    pub fn from_int(&self, n: i64) -> FqElt {
        let mut v = vec![0; self.deg];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    pub fn is_zero(&self, a: &FqElt) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &FqElt, b: &FqElt) -> FqElt {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &FqElt, b: &FqElt) -> FqElt {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &FqElt) -> FqElt {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &FqElt, b: &FqElt) -> FqElt {
        match &self.parent {
            None => vec![((a[0] as u128 * b[0] as u128) % self.p as u128) as u64],
            Some(par) => {
                let n = self.poly.len() - 1;
                let bl = par.deg;
                let blocks_a: Vec<&[u64]> = a.chunks(bl).collect();
                let blocks_b: Vec<&[u64]> = b.chunks(bl).collect();
                let mut prod: Vec<FqElt> = vec![par.zero(); 2 * n - 1];
                for (i, ai) in blocks_a.iter().enumerate() {
                    if par.is_zero(&ai.to_vec()) {
                        continue;
                    }
                    for (j, bj) in blocks_b.iter().enumerate() {
                        if par.is_zero(&bj.to_vec()) {
                            continue;
                        }
                        let t = par.mul(&ai.to_vec(), &bj.to_vec());
                        prod[i + j] = par.add(&prod[i + j], &t);
                    }
                }
                for k in (n..2 * n - 1).rev() {
                    let top = std::mem::replace(&mut prod[k], par.zero());
                    if par.is_zero(&top) {
                        continue;
                    }
                    for i in 0..n {
                        if par.is_zero(&self.poly[i]) {
                            continue;
                        }
                        let t = par.mul(&top, &self.poly[i]);
                        prod[k - n + i] = par.sub(&prod[k - n + i], &t);
                    }
                }
                prod.truncate(n);
                prod.concat()
            }
        }
    }

    pub fn pow(&self, a: &FqElt, e: &BigUint) -> FqElt {
        let mut result = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FqElt) -> Option<FqElt> {
        if self.is_zero(a) {
            return None;
        }
        let e = self.size_big() - BigUint::from(2u32);
        Some(self.pow(a, &e))
    }

    /// The image of the generator of the top step (or 1 for F_p itself).
    pub fn generator(&self) -> FqElt {
        let mut v = self.zero();
        match &self.parent {
            None => v[0] = 1,
            Some(par) => {
                if self.poly.len() > 2 {
                    v[par.deg] = 1;
                } else {
                    let r = par.neg(&self.poly[0]);
                    v[..par.deg].copy_from_slice(&r);
                }
            }
        }
        v
    }

    /// Embeds an element of the parent field.
    pub fn embed_parent(&self, a: &FqElt) -> FqElt {
        let mut v = a.clone();
        v.resize(self.deg, 0);
        v
    }

    pub fn parent(&self) -> Option<&Arc<Fq>> {
        self.parent.as_ref()
    }

    /// Enumerates every element (only sensible for small fields).
    pub fn elements(&self) -> Vec<FqElt> {
        let q = self.size().expect("field too large to enumerate");
        let mut out = Vec::with_capacity(q as usize);
        for mut n in 0..q {
            let mut v = Vec::with_capacity(self.deg);
            for _ in 0..self.deg {
                v.push(n % self.p);
                n /= self.p;
            }
            out.push(v);
        }
        out
    }

    // ---- polynomials -------------------------------------------------

    pub fn poly_trim(&self, f: &mut FqPoly) {
        while f.last().is_some_and(|c| self.is_zero(c)) {
            f.pop();
        }
    }

    pub fn poly_deg(&self, f: &FqPoly) -> Option<usize> {
        let mut g = f.clone();
        self.poly_trim(&mut g);
        if g.is_empty() {
            None
        } else {
            Some(g.len() - 1)
        }
    }

    pub fn poly_add(&self, f: &FqPoly, g: &FqPoly) -> FqPoly {
        let n = f.len().max(g.len());
        let z = self.zero();
        let mut out: FqPoly = (0..n)
            .map(|i| self.add(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_sub(&self, f: &FqPoly, g: &FqPoly) -> FqPoly {
        let n = f.len().max(g.len());
        let z = self.zero();
        let mut out: FqPoly = (0..n)
            .map(|i| self.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_mul(&self, f: &FqPoly, g: &FqPoly) -> FqPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if self.is_zero(a) {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                let t = self.mul(a, b);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_scale(&self, f: &FqPoly, c: &FqElt) -> FqPoly {
        let mut out: FqPoly = f.iter().map(|a| self.mul(a, c)).collect();
        self.poly_trim(&mut out);
        out
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn poly_divrem(&self, f: &FqPoly, g: &FqPoly) -> (FqPoly, FqPoly) {
        let mut g = g.clone();
        self.poly_trim(&mut g);
        assert!(!g.is_empty(), "division by the zero polynomial");
        let mut r = f.clone();
        self.poly_trim(&mut r);
        let dg = g.len() - 1;
        let lead_inv = self.inv(&g[dg]).expect("nonzero leading coefficient");
        if r.len() < g.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - dg];
        while r.len() >= g.len() {
            let k = r.len() - 1 - dg;
            let c = self.mul(&r[r.len() - 1], &lead_inv);
            for (i, gi) in g.iter().enumerate() {
                let t = self.mul(&c, gi);
                r[k + i] = self.sub(&r[k + i], &t);
            }
            q[k] = c;
            self.poly_trim(&mut r);
        }
        self.poly_trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(&self, f: &FqPoly, g: &FqPoly) -> FqPoly {
        self.poly_divrem(f, g).1
    }

    pub fn poly_monic(&self, f: &FqPoly) -> FqPoly {
        let mut g = f.clone();
        self.poly_trim(&mut g);
        if g.is_empty() {
            return g;
        }
        let inv = self.inv(g.last().unwrap()).unwrap();
        self.poly_scale(&g, &inv)
    }

    /// Monic greatest common divisor (the zero polynomial if both are zero).
    pub fn poly_gcd(&self, f: &FqPoly, g: &FqPoly) -> FqPoly {
        let mut a = f.clone();
        let mut b = g.clone();
        self.poly_trim(&mut a);
        self.poly_trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    /// Extended gcd: `(g, s, t)` with `s·f + t·h = g`, `g` monic.
    pub fn poly_xgcd(&self, f: &FqPoly, h: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
        let mut r0 = f.clone();
        let mut r1 = h.clone();
        self.poly_trim(&mut r0);
        self.poly_trim(&mut r1);
        let mut s0: FqPoly = vec![self.one()];
        let mut s1: FqPoly = Vec::new();
        let mut t0: FqPoly = Vec::new();
        let mut t1: FqPoly = vec![self.one()];
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let inv = self.inv(r0.last().unwrap()).unwrap();
        (self.poly_scale(&r0, &inv), self.poly_scale(&s0, &inv), self.poly_scale(&t0, &inv))
    }

    pub fn poly_eval(&self, f: &FqPoly, x: &FqElt) -> FqElt {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    pub fn poly_derivative(&self, f: &FqPoly) -> FqPoly {
        let mut out: FqPoly = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.mul(c, &self.from_int((i as u64 % self.p) as i64)))
            .collect();
        self.poly_trim(&mut out);
        out
    }

    /// `base^e mod m`.
    pub fn poly_powmod(&self, base: &FqPoly, e: &BigUint, m: &FqPoly) -> FqPoly {
        let mut result: FqPoly = vec![self.one()];
        let base = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.poly_rem(&self.poly_mul(&result, &result), m);
            if e.bit(i) {
                result = self.poly_rem(&self.poly_mul(&result, &base), m);
            }
        }
        result
    }

    fn x_poly(&self) -> FqPoly {
        vec![self.zero(), self.one()]
    }

    /// Tests irreducibility by checking that no factor of degree at most
    /// half the degree exists.
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let f = self.poly_monic(f);
        let n = match self.poly_deg(&f) {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        let q = self.size_big();
        let x = self.x_poly();
        let mut xp = self.poly_rem(&x, &f);
        for _ in 1..=n / 2 {
            xp = self.poly_powmod(&xp, &q, &f);
            let g = self.poly_gcd(&f, &self.poly_sub(&xp, &x));
            if self.poly_deg(&g) != Some(0) {
                return false;
            }
        }
        true
    }

    /// Roots in this field, each with its multiplicity.
    pub fn poly_roots(&self, f: &FqPoly) -> Vec<(FqElt, usize)> {
        self.factor(f)
            .into_iter()
            .filter(|(g, _)| g.len() == 2)
            .map(|(g, m)| (self.neg(&g[0]), m))
            .collect()
    }

    /// Multiplicity of the monic irreducible `g` in `f`, and the cofactor.
    fn strip_factor(&self, f: &FqPoly, g: &FqPoly) -> (usize, FqPoly) {
        let mut m = 0;
        let mut cur = f.clone();
        loop {
            let (q, r) = self.poly_divrem(&cur, g);
            if !r.is_empty() {
                return (m, cur);
            }
            cur = q;
            m += 1;
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// ordered by degree and then by coefficients. Linear factors are found
    /// by enumeration when the field has at most [`ENUMERATION_CAP`]
    /// elements, and by equal-degree splitting otherwise.
    pub fn factor(&self, f: &FqPoly) -> Vec<(FqPoly, usize)> {
        let mut rest = self.poly_monic(f);
        let mut out: Vec<(FqPoly, usize)> = Vec::new();
        if self.poly_deg(&rest).unwrap_or(0) == 0 {
            return out;
        }
        let mut linear: Vec<FqPoly> = Vec::new();
        if self.size().is_some_and(|q| q <= ENUMERATION_CAP) {
            for x in self.elements() {
                if self.is_zero(&self.poly_eval(&rest, &x)) {
                    linear.push(vec![self.neg(&x), self.one()]);
                }
            }
        } else {
            let x = self.x_poly();
            let xq = self.poly_powmod(&x, &self.size_big(), &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&xq, &x));
            linear = self.equal_degree_split(&g, 1);
        }
        for g in linear {
            let (m, r) = self.strip_factor(&rest, &g);
            rest = r;
            out.push((g, m));
        }
        let q = self.size_big();
        let x = self.x_poly();
        let mut m = 2;
        while self.poly_deg(&rest).unwrap_or(0) > 0 {
            let mut xp = self.poly_rem(&x, &rest);
            for _ in 0..m {
                xp = self.poly_powmod(&xp, &q, &rest);
            }
            let g = self.poly_gcd(&rest, &self.poly_sub(&xp, &x));
            if self.poly_deg(&g).unwrap_or(0) > 0 {
                for h in self.equal_degree_split(&g, m) {
                    let (mult, r) = self.strip_factor(&rest, &h);
                    rest = r;
                    out.push((h, mult));
                }
            }
            m += 1;
        }
        out.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
        out
    }

    /// Splits a squarefree product of distinct monic irreducibles of degree
    /// `m` (Cantor-Zassenhaus, with a fixed seed for reproducibility).
    fn equal_degree_split(&self, g: &FqPoly, m: usize) -> Vec<FqPoly> {
        let g = self.poly_monic(g);
        let n = match self.poly_deg(&g) {
            Some(n) => n,
            None => return Vec::new(),
        };
        if n == 0 {
            return Vec::new();
        }
        if n == m {
            return vec![g];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d696e726573 ^ n as u64);
        let qm = self.size_big().pow(m as u32);
        loop {
            let a: FqPoly = (0..n)
                .map(|_| (0..self.deg).map(|_| rng.gen_range(0..self.p)).collect())
                .collect();
            let mut a = a;
            self.poly_trim(&mut a);
            if a.is_empty() {
                continue;
            }
            let b = if self.p == 2 {
                // Absolute trace from F_{q^m} to F_2.
                let k = self.deg * m;
                let mut t = self.poly_rem(&a, &g);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = self.poly_rem(&self.poly_mul(&t, &t), &g);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                let e = (&qm - BigUint::one()) / BigUint::from(2u32);
                let t = self.poly_powmod(&a, &e, &g);
                self.poly_sub(&t, &vec![self.one()])
            };
            let d = self.poly_gcd(&g, &b);
            let dd = self.poly_deg(&d).unwrap_or(0);
            if dd > 0 && dd < n {
                let (other, _) = self.poly_divrem(&g, &d);
                let mut parts = self.equal_degree_split(&d, m);
                parts.extend(self.equal_degree_split(&other, m));
                return parts;
            }
        }
    }
}

/// Reads a small element as an integer index (used for deterministic
/// ordering and display).
pub fn fq_index(p: u64, a: &FqElt) -> u64 {
    let mut n: u64 = 0;
    for &c in a.iter().rev() {
        n = n.saturating_mul(p).saturating_add(c);
    }
    n
}

#[allow(dead_code)]
pub(crate) fn biguint_to_u64(n: &BigUint) -> Option<u64> {
    if n.is_zero() {
        Some(0)
    } else {
        n.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        let f = Fq::prime(7);
        let a = vec![f.from_int(1), f.from_int(2), f.one()];
        let b = vec![f.from_int(3), f.one()];
        let (g, s, t) = f.poly_xgcd(&a, &b);
        assert_eq!(g, vec![f.one()]);
        let lhs = f.poly_add(&f.poly_mul(&s, &a), &f.poly_mul(&t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Fq::prime(7);
        let a = f.from_int(3);
        let b = f.from_int(5);
        assert_eq!(f.mul(&a, &b), f.from_int(1));
        assert_eq!(f.inv(&a).unwrap(), b);
    }

    #[test]
    fn quadratic_extension_of_f2() {
        let f2 = Fq::prime(2);
        let poly = vec![f2.one(), f2.one(), f2.one()];
        assert!(f2.is_irreducible(&poly));
        let f4 = f2.extend(&poly);
        assert_eq!(f4.size(), Some(4));
        let w = f4.generator();
        let w2 = f4.mul(&w, &w);
        // w^2 = w + 1
        assert_eq!(w2, f4.add(&w, &f4.one()));
        let w3 = f4.mul(&w2, &w);
        assert_eq!(w3, f4.one());
    }

    #[test]
    fn factor_over_f5() {
        let f = Fq::prime(5);
        // (x - 1)^2 (x^2 + 2)
        let p1 = vec![f.from_int(-1), f.one()];
        let p2 = vec![f.from_int(2), f.zero(), f.one()];
        let poly = f.poly_mul(&f.poly_mul(&p1, &p1), &p2);
        let fac = f.factor(&poly);
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0], (p1, 2));
        assert_eq!(fac[1], (p2, 1));
    }

    #[test]
    fn equal_degree_split_pairs() {
        let f = Fq::prime(3);
        // (x^2 + 1)(x^2 + x + 2), both irreducible over F_3
        let a = vec![f.from_int(1), f.zero(), f.one()];
        let b = vec![f.from_int(2), f.one(), f.one()];
        assert!(f.is_irreducible(&a) && f.is_irreducible(&b));
        let fac = f.factor(&f.poly_mul(&a, &b));
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(g, m)| g.len() == 3 && *m == 1));
    }

    #[test]
    fn splitting_in_characteristic_two() {
        let f2 = Fq::prime(2);
        // (x^2+x+1)(x^3+x+1)(x^3+x^2+1)
        let a = vec![f2.one(), f2.one(), f2.one()];
        let b = vec![f2.one(), f2.one(), f2.zero(), f2.one()];
        let c = vec![f2.one(), f2.zero(), f2.one(), f2.one()];
        let poly = f2.poly_mul(&f2.poly_mul(&a, &b), &c);
        let fac = f2.factor(&poly);
        assert_eq!(fac.len(), 3);
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.len() - 1).collect();
        assert_eq!(degs, vec![2, 3, 3]);
    }
}
