//! Steepest descent of `ordRes_φ` over `Q_p`-rational type II points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dynrep::{ordres_at, ppow, Direction, HomogPair, MobiusMap, Scalar, Trend, TypeIIPoint};
use crate::error::{MinresError, Result};
use crate::minres_a::default_precision;
use crate::padic::{ceil_q, floor_q, fmt_big_q, ordp, Q64};
use crate::pwl::{q_serde, PWLFunc};

/// Largest prime whose residue field is enumerated.
pub const RESIDUE_CAP: u64 = 65536;

#[derive(Clone, Debug, Default)]
pub struct DescendConfig {
    /// Coefficients are reduced modulo `p^N`; `ceil(f(d)·R) + 2` when `None`.
    pub precision: Option<i64>,
}

/// How a step ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Moved to a rational point and continued.
    Step,
    /// The minimum lies strictly between two rational points.
    Bracket,
    /// The minimum is attained on an interval containing a rational point.
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// `"inf"` or the lift `β` of the residue direction.
    pub direction: String,
    pub t: i64,
    #[serde(with = "q_serde")]
    pub r: Q64,
    pub kind: StepKind,
    /// Number of residue directions that passed the decreasing test.
    pub decreasing_directions: usize,
}

#[derive(Clone, Debug)]
pub struct BReport {
    pub hv_min: Q64,
    /// `[[p^k, β], [0, 1]]`.
    pub gamma: MobiusMap<BigRational>,
    pub absolute: bool,
    pub trace: Vec<TraceStep>,
    pub precision: i64,
}

impl BReport {
    /// The point `γ(ζ_G)`.
    pub fn point(&self, p: u64) -> TypeIIPoint {
        let s = -ordp(&self.gamma.a, p).fin().expect("nonzero scaling");
        TypeIIPoint::rational(self.gamma.b.clone(), s)
    }
}

enum Outcome {
    Step(i64, Q64),
    Stop { k: i64, r: Q64, kind: StepKind },
}

fn decide(chi: &PWLFunc) -> Result<Outcome> {
    let am = chi.minimize()?;
    if am.is_point() && am.lo.is_integer() {
        return Ok(Outcome::Step(am.lo.to_integer(), am.value));
    }
    let (ci, fi) = (ceil_q(&am.lo), floor_q(&am.hi));
    if !am.is_point() && ci <= fi {
        let k = if ci > 0 {
            ci
        } else if fi < 0 {
            fi
        } else {
            0
        };
        return Ok(Outcome::Stop { k, r: am.value, kind: StepKind::Interval });
    }
    let (m, n) = (floor_q(&am.lo), ceil_q(&am.hi));
    let (vm, vn) = (chi.eval(Q64::from_integer(m)), chi.eval(Q64::from_integer(n)));
    let pick_m = vm < vn || (vm == vn && (m.abs() < n.abs() || (m.abs() == n.abs() && m < n)));
    let (k, r) = if pick_m { (m, vm) } else { (n, vn) };
    Ok(Outcome::Stop { k, r, kind: StepKind::Bracket })
}

fn reduce(pair: &HomogPair, p: u64, n: i64) -> HomogPair {
    let prim = pair.primitive();
    let m = num_traits::pow(BigInt::from(p), n as usize);
    let red = |v: &[BigRational]| -> Vec<BigRational> {
        v.iter()
            .map(|c| {
                let mut x = c.to_integer().mod_floor(&m);
                if &x * 2 > m {
                    x -= &m;
                }
                BigRational::from_integer(x)
            })
            .collect()
    };
    let out = HomogPair::from_low(red(prim.a_low()), red(prim.b_low())).expect("same shape");
    if out.resultant().is_zero() {
        prim
    } else {
        out
    }
}

fn residue_poly(c: &[BigRational], p: u64) -> Result<Vec<u64>> {
    c.iter().map(|x| Ok(x.residue(p)?[0])).collect()
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p as u128) as u64
}

/// Common roots in `F_p` of `G(z,1)` and `F(z,1) - z·G(z,1)`, ascending.
fn common_residue_roots(pair: &HomogPair, p: u64) -> Result<Vec<u64>> {
    if p > RESIDUE_CAP {
        return Err(MinresError::ResourceCap(format!("residue enumeration limited to p ≤ {RESIDUE_CAP}")));
    }
    let g = residue_poly(pair.b_low(), p)?;
    let f = residue_poly(pair.a_low(), p)?;
    let mut h = f.clone();
    h.push(0);
    for (i, gi) in g.iter().enumerate() {
        h[i + 1] = (h[i + 1] + p - gi) % p;
    }
    Ok((0..p).filter(|&x| eval_mod(&g, x, p) == 0 && eval_mod(&h, x, p) == 0).collect())
}

/// `γ·[[p^k, β], [0, 1]]` for upper-triangular `γ` with `γ_{22} = 1`.
fn compose_step(g: &MobiusMap<BigRational>, k: i64, beta: &BigRational, p: u64) -> MobiusMap<BigRational> {
    MobiusMap::affine(&g.a * ppow(p, k), &g.a * beta + &g.b)
}

/// Minimum of `ordRes_φ` over `Q_p`-rational type II points.
pub fn descend(pair: &HomogPair, p: u64, cfg: &DescendConfig) -> Result<BReport> {
    let d = pair.degree();
    if d < 2 {
        return Err(MinresError::Invalid("descent needs a map of degree at least 2".into()));
    }
    let r0 = pair.ordres(p)?;
    let prec = match cfg.precision {
        Some(n) if n >= 1 => n,
        Some(_) => return Err(MinresError::Invalid("precision must be at least 1".into())),
        None => default_precision(r0, d),
    };
    let guard = ceil_q(&(r0 * 2 / (d as i64 - 1))) as usize + 2;
    let mut cur = reduce(pair, p, prec);
    let mut r = r0;
    let mut gamma = MobiusMap::identity(&BigRational::from_integer(1.into()));
    let mut trace = Vec::new();
    let zero = BigRational::zero();
    let absolute;

    let up = cur.classify_direction(p, &Direction::AtInfinity)? == Trend::Decreasing;
    let mut finished = None;
    if up {
        let chi = cur.path_function(p, r);
        match decide(&chi)? {
            Outcome::Step(k, v) => {
                cur = reduce(&cur.scale(&ppow(p, k)), p, prec);
                r = v;
                gamma = compose_step(&gamma, k, &zero, p);
                trace.push(TraceStep { direction: "inf".into(), t: k, r, kind: StepKind::Step, decreasing_directions: 1 });
            }
            Outcome::Stop { k, r: v, kind } => {
                r = v;
                gamma = compose_step(&gamma, k, &zero, p);
                trace.push(TraceStep { direction: "inf".into(), t: k, r, kind, decreasing_directions: 1 });
                finished = Some(kind == StepKind::Interval);
            }
        }
    }

    if let Some(a) = finished {
        absolute = a;
    } else {
        loop {
            if trace.len() > guard {
                return Err(MinresError::Invalid(format!("descent exceeded {guard} steps")));
            }
            let candidates = common_residue_roots(&cur, p)?;
            let mut passing = Vec::new();
            for b in candidates {
                let beta = BigRational::from_integer(b.into());
                if cur.classify_direction(p, &Direction::Residue(beta.clone()))? == Trend::Decreasing {
                    passing.push(beta);
                }
            }
            let Some(beta) = passing.first().cloned() else {
                absolute = true;
                break;
            };
            let tp = cur.translate(&beta);
            let chi = tp.path_function(p, r);
            let label = fmt_big_q(&beta);
            match decide(&chi)? {
                Outcome::Step(k, v) => {
                    cur = reduce(&tp.scale(&ppow(p, k)), p, prec);
                    r = v;
                    gamma = compose_step(&gamma, k, &beta, p);
                    trace.push(TraceStep { direction: label, t: k, r, kind: StepKind::Step, decreasing_directions: passing.len() });
                }
                Outcome::Stop { k, r: v, kind } => {
                    r = v;
                    gamma = compose_step(&gamma, k, &beta, p);
                    trace.push(TraceStep { direction: label, t: k, r, kind, decreasing_directions: passing.len() });
                    absolute = kind == StepKind::Interval;
                    break;
                }
            }
        }
    }

    let report = BReport { hv_min: r, gamma, absolute, trace, precision: prec };
    let check = ordres_at(pair, &report.point(p), p)?;
    if check != r {
        return Err(MinresError::Precision(format!(
            "descent value {} disagrees with direct evaluation {}",
            r,
            check
        )));
    }
    Ok(report)
}
