//! Parsing rational maps written as expressions in `z` or as explicit
//! coefficient lists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dynrep::HomogPair;
use crate::error::{MinresError, Result};
use crate::polyroots::QPoly;

/// A quotient of polynomials, kept without cancelling common factors.
#[derive(Clone, Debug)]
struct Frac {
    num: QPoly,
    den: QPoly,
}

impl Frac {
    fn poly(p: QPoly) -> Frac {
        Frac { num: p, den: QPoly::constant(BigRational::one()) }
    }

    fn add(self, o: Frac, sign: i64) -> Frac {
        let g = self.den.gcd(&o.den);
        let (c1, _) = o.den.divrem(&g);
        let (c2, _) = self.den.divrem(&g);
        let den = self.den.mul(&c1);
        let rhs = o.num.mul(&c2).scale(&BigRational::from_integer(sign.into()));
        Frac { num: self.num.mul(&c1).add(&rhs), den }
    }

    fn mul(self, o: Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    fn div(self, o: Frac) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(MinresError::Degenerate("zero denominator".into()));
        }
        Ok(Frac { num: self.num.mul(&o.den), den: self.den.mul(&o.num) })
    }

    fn pow(self, n: u32) -> Frac {
        let mut acc = Frac::poly(QPoly::constant(BigRational::one()));
        for _ in 0..n {
            acc = acc.mul(self.clone());
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = it.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    it.next();
                }
                out.push(Tok::Num(s.parse().unwrap()));
            }
            _ => {
                it.next();
                out.push(match c {
                    'z' | 'Z' => Tok::Z,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => return Err(MinresError::Parse(format!("unexpected character {c:?}"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(self.term()?, 1);
            } else if self.eat(&Tok::Minus) {
                acc = acc.add(self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(self.unary()?);
            } else if self.eat(&Tok::Slash) {
                acc = acc.div(self.unary()?)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Z | Tok::LParen)) {
                acc = acc.mul(self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.eat(&Tok::Minus) {
            let x = self.unary()?;
            return Ok(Frac { num: x.num.scale(&BigRational::from_integer((-1).into())), den: x.den });
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| MinresError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(MinresError::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Frac::poly(QPoly::constant(BigRational::from_integer(n))))
            }
            Some(Tok::Z) => {
                self.pos += 1;
                Ok(Frac::poly(QPoly::z()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(MinresError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(MinresError::Parse(format!("unexpected token {t:?}"))),
            None => Err(MinresError::Parse("unexpected end of input".into())),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || MinresError::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_list(s: &str) -> Result<Vec<BigRational>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| MinresError::Parse(format!("expected a bracketed list, got {s:?}")))?;
    inner.split(',').map(parse_rational).collect()
}

/// Parses `"(z^3-5)/z^2"` or `"F=[1,0,0,-5];G=[0,1,0,0]"` (coefficients
/// listed from `X^d` down to `Y^d`) into a primitive integral pair.
pub fn parse_map(src: &str) -> Result<HomogPair> {
    let src = src.trim();
    if src.starts_with('F') || src.starts_with('f') {
        let mut f = None;
        let mut g = None;
        for part in src.split(';').filter(|x| !x.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| MinresError::Parse(format!("missing '=' in {part:?}")))?;
            match k.trim() {
                "F" | "f" => f = Some(parse_list(v)?),
                "G" | "g" => g = Some(parse_list(v)?),
                other => return Err(MinresError::Parse(format!("unknown key {other:?}"))),
            }
        }
        let (f, g) = f.zip(g).ok_or_else(|| MinresError::Parse("need both F and G".into()))?;
        if f.len() != g.len() {
            return Err(MinresError::Parse("F and G must have the same number of coefficients".into()));
        }
        if f.len() < 2 {
            return Err(MinresError::Degenerate("constant map".into()));
        }
        let pair = HomogPair::from_desc(f, g)?;
        if pair.resultant().is_zero() {
            return Err(MinresError::Degenerate("F and G share a factor".into()));
        }
        return Ok(pair.primitive());
    }
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(MinresError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let fr = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(MinresError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(HomogPair::from_polys(&fr.num, &fr.den)?.primitive())
}
