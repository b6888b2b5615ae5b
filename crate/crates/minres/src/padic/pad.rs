use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::val::split_p;

/// Shared prime-level context: the prime and the absolute storage cap.
#[derive(Debug)]
pub struct PCtx {
    pub p: u64,
    pub pb: BigInt,
    /// Coordinates are stored modulo `p^cap`.
    pub cap: i64,
    pows: Vec<BigInt>,
}

impl PCtx {
    pub fn new(p: u64, cap: i64) -> PCtx {
        let pb = BigInt::from(p);
        let mut pows = Vec::new();
        let mut x = BigInt::one();
        let span = (4 * cap.max(1) + 8) as usize;
        for _ in 0..=span {
            pows.push(x.clone());
            x *= &pb;
        }
        PCtx { p, pb, cap, pows }
    }

    pub fn pow(&self, k: i64) -> BigInt {
        assert!(k >= 0);
        match self.pows.get(k as usize) {
            Some(x) => x.clone(),
            None => num_traits::pow(self.pb.clone(), k as usize),
        }
    }
}

/// A truncated `p`-adic number `u · p^v` with `p ∤ u` (or zero), reduced
/// modulo `p^cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pad {
    pub u: BigInt,
    pub v: i64,
}

impl Pad {
    pub fn zero() -> Pad {
        Pad { u: BigInt::zero(), v: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero()
    }

    /// Valuation, `None` for zero.
    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.v)
        }
    }

    /// Builds `u · p^v` with arbitrary `u`, normalizing and truncating.
    pub fn make(ctx: &PCtx, u: BigInt, v: i64) -> Pad {
        if u.is_zero() {
            return Pad::zero();
        }
        let (k, w) = split_p(&u, ctx.p);
        Pad::trunc(ctx, w, v + k)
    }

    fn trunc(ctx: &PCtx, u: BigInt, v: i64) -> Pad {
        if v >= ctx.cap {
            return Pad::zero();
        }
        let m = ctx.pow(ctx.cap - v);
        let mut w = u.mod_floor(&m);
        // Keep representatives balanced so signs of small integers survive.
        if &w * 2 > m {
            w -= &m;
        }
        Pad { u: w, v }
    }

    pub fn from_int(ctx: &PCtx, n: &BigInt) -> Pad {
        Pad::make(ctx, n.clone(), 0)
    }

    pub fn from_rational(ctx: &PCtx, r: &BigRational) -> Pad {
        if r.is_zero() {
            return Pad::zero();
        }
        let (kn, un) = split_p(r.numer(), ctx.p);
        let (kd, ud) = split_p(r.denom(), ctx.p);
        let v = kn - kd;
        if v >= ctx.cap {
            return Pad::zero();
        }
        let m = ctx.pow(ctx.cap - v);
        let inv = modinv(&ud, &m);
        Pad::trunc(ctx, un * inv, v)
    }

    pub fn to_rational(&self, ctx: &PCtx) -> BigRational {
        if self.v >= 0 {
            BigRational::from_integer(&self.u * ctx.pow(self.v))
        } else {
            BigRational::new(self.u.clone(), ctx.pow(-self.v))
        }
    }

    pub fn add(&self, other: &Pad, ctx: &PCtx) -> Pad {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let v = self.v.min(other.v);
        let a = &self.u * ctx.pow(self.v - v);
        let b = &other.u * ctx.pow(other.v - v);
        Pad::make(ctx, a + b, v)
    }

    pub fn neg(&self) -> Pad {
        Pad { u: -&self.u, v: self.v }
    }

    pub fn sub(&self, other: &Pad, ctx: &PCtx) -> Pad {
        self.add(&other.neg(), ctx)
    }

    pub fn mul(&self, other: &Pad, ctx: &PCtx) -> Pad {
        if self.is_zero() || other.is_zero() {
            return Pad::zero();
        }
        Pad::trunc(ctx, &self.u * &other.u, self.v + other.v)
    }

    /// Residue modulo `p` of an integral element, in `[0, p)`.
    pub fn residue(&self, ctx: &PCtx) -> u64 {
        if self.is_zero() || self.v > 0 {
            return 0;
        }
        assert!(self.v == 0, "residue of a non-integral coordinate");
        let r = self.u.mod_floor(&ctx.pb);
        r.try_into().unwrap()
    }
}

/// Inverse of `a` modulo `m` (assumed coprime).
pub fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    assert!(g.gcd.abs().is_one(), "modinv of a non-unit");
    let x = g.x * g.gcd.signum();
    x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_at_high_cap() {
        let ctx = PCtx::new(5, 40);
        let r = BigRational::new(BigInt::from(-7), BigInt::from(25));
        let x = Pad::from_rational(&ctx, &r);
        assert_eq!(x.v, -2);
        let y = x.mul(&Pad::from_int(&ctx, &BigInt::from(25)), &ctx);
        assert_eq!(y.to_rational(&ctx), BigRational::from_integer(BigInt::from(-7)));
    }

    #[test]
    fn truncation_at_cap() {
        let ctx = PCtx::new(3, 4);
        let x = Pad::from_int(&ctx, &BigInt::from(81));
        assert!(x.is_zero());
    }
}
