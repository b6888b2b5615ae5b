//! Command-line front end: run configuration, report assembly, and the
//! JSON, text and CSV renderings.

mod parse;

pub use parse::parse_map;

use std::fmt::Write as _;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descent_b::{descend, DescendConfig, TraceStep};
use crate::dynrep::{Center, HomogPair, MobiusMap};
use crate::error::{MinresError, Result};
use crate::minres_a::{analyze, classify_mobius, AnalyzeConfig, Anchor, LocusKind, MinResReport, PathReport};
use crate::padic::{fmt_big_q, fmt_q, is_prime, FieldElt, Q64};
use crate::pwl::PWLFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Algorithm {
    A,
    B,
    Both,
    /// Degree one goes to the degree-one classifier, higher degrees run
    /// both algorithms.
    #[default]
    Auto,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub prime: u64,
    pub algorithm: Algorithm,
    pub precision: Option<i64>,
    pub max_ext_degree: Option<usize>,
}

impl RunConfig {
    pub fn new(prime: u64) -> RunConfig {
        RunConfig { prime, algorithm: Algorithm::Auto, precision: None, max_ext_degree: None }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) {
            return Err(MinresError::Invalid(format!("{} is not prime", self.prime)));
        }
        if matches!(self.precision, Some(n) if n < 1) {
            return Err(MinresError::Invalid("precision must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAnchor {
    pub center: String,
    pub s: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    /// The tower containing the center, when it is not `Q_p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLocus {
    pub kind: String,
    pub anchors: Vec<JsonAnchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codiameter_exponent: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub degree: usize,
    pub prime: u64,
    pub ordres_at_gauss: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locus: Option<JsonLocus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[[String; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential_good_reduction: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hv_min: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hv_gamma: Option<[[String; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hv_absolute: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

/// Everything a run produces.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: JsonReport,
    pub per_path: Vec<PathReport>,
}

fn center_json(c: &Center) -> (String, Option<String>) {
    match c {
        Center::Rational(r) => (fmt_big_q(r), None),
        Center::Algebraic { value, .. } => {
            let f = value.field();
            (value.to_string(), (f.degree() > 1).then(|| f.describe()))
        }
    }
}

fn anchor_json(a: &Anchor) -> JsonAnchor {
    match a {
        Anchor::Disc(q) => {
            let (center, field) = center_json(&q.center);
            JsonAnchor { center, s: fmt_q(&q.s), t: Some(fmt_q(&-q.s)), field }
        }
        Anchor::Point(c) => {
            let (center, field) = center_json(c);
            JsonAnchor { center, s: "-inf".into(), t: None, field }
        }
        Anchor::Infinity => JsonAnchor { center: "inf".into(), s: "-inf".into(), t: None, field: None },
    }
}

fn matrix_json<T: std::fmt::Display>(m: &MobiusMap<T>) -> [[String; 2]; 2] {
    [[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]]
}

fn fill_a(rep: &mut JsonReport, a: &MinResReport) {
    let kind = &a.locus.kind;
    rep.min_value = Some(fmt_q(&a.min_value));
    rep.locus = Some(JsonLocus {
        kind: kind.name().into(),
        anchors: a.locus.anchors.iter().map(anchor_json).collect(),
        radius: match kind {
            LocusKind::StrongTube { radius } => Some(fmt_q(radius)),
            _ => None,
        },
        codiameter_exponent: match kind {
            LocusKind::Horodisc { codiameter_exponent } => Some(fmt_q(codiameter_exponent)),
            _ => None,
        },
    });
    rep.gamma = Some(matrix_json::<FieldElt>(&a.gamma));
    rep.extension_degree = Some(a.extension_degree);
    rep.extension = (a.extension_degree > 1).then(|| a.gamma_field().describe());
    rep.potential_good_reduction = Some(a.pgr);
}

/// Parses the map and runs the configured algorithms.
pub fn run(config: &RunConfig, src: &str) -> Result<RunOutput> {
    config.validate()?;
    run_pair(config, &parse_map(src)?)
}

/// Runs the configured algorithms on an already parsed map.
pub fn run_pair(config: &RunConfig, pair: &HomogPair) -> Result<RunOutput> {
    config.validate()?;
    let p = config.prime;
    let d = pair.degree();
    let mut rep = JsonReport {
        degree: d,
        prime: p,
        ordres_at_gauss: fmt_q(&pair.ordres(p)?),
        min_value: None,
        locus: None,
        gamma: None,
        extension_degree: None,
        extension: None,
        potential_good_reduction: None,
        hv_min: None,
        hv_gamma: None,
        hv_absolute: None,
        trace: None,
    };
    let mut per_path = Vec::new();
    let run_a = matches!(config.algorithm, Algorithm::A | Algorithm::Both | Algorithm::Auto);
    let run_b = matches!(config.algorithm, Algorithm::B | Algorithm::Both) || (config.algorithm == Algorithm::Auto && d >= 2);
    if run_a {
        let a = if d == 1 {
            classify_mobius(pair, p)?
        } else {
            let cfg = AnalyzeConfig { precision: config.precision, max_ext_degree: config.max_ext_degree, ..Default::default() };
            analyze(pair, p, &cfg)?
        };
        fill_a(&mut rep, &a);
        per_path = a.per_path;
    }
    if run_b && (d >= 2 || config.algorithm == Algorithm::B) {
        let b = descend(pair, p, &DescendConfig { precision: config.precision })?;
        rep.hv_min = Some(fmt_q(&b.hv_min));
        rep.hv_gamma = Some(matrix_json::<BigRational>(&b.gamma));
        rep.hv_absolute = Some(b.absolute);
        rep.trace = Some(b.trace);
    }
    Ok(RunOutput { report: rep, per_path })
}

pub fn render_json(rep: &JsonReport) -> String {
    serde_json::to_string_pretty(rep).expect("report serializes")
}

/// Human-readable rendering using the same rational strings as the JSON.
pub fn render_text(rep: &JsonReport) -> String {
    let mut s = String::new();
    let mat = |m: &[[String; 2]; 2]| format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
    writeln!(s, "degree: {}", rep.degree).unwrap();
    writeln!(s, "prime: {}", rep.prime).unwrap();
    writeln!(s, "ordres at gauss point: {}", rep.ordres_at_gauss).unwrap();
    if let Some(m) = &rep.min_value {
        writeln!(s, "minimum of ordres: {m}").unwrap();
    }
    if let Some(l) = &rep.locus {
        writeln!(s, "locus: {}", l.kind).unwrap();
        if let Some(r) = &l.radius {
            writeln!(s, "  tube radius: {r}").unwrap();
        }
        if let Some(c) = &l.codiameter_exponent {
            writeln!(s, "  codiameter exponent: {c}").unwrap();
        }
        for a in &l.anchors {
            write!(s, "  anchor: center {} s {}", a.center, a.s).unwrap();
            if let Some(t) = &a.t {
                write!(s, " t {t}").unwrap();
            }
            if let Some(f) = &a.field {
                write!(s, " in {f}").unwrap();
            }
            s.push('\n');
        }
    }
    if let Some(g) = &rep.gamma {
        writeln!(s, "gamma: {}", mat(g)).unwrap();
    }
    if let Some(e) = rep.extension_degree {
        writeln!(s, "extension degree: {e}").unwrap();
    }
    if let Some(e) = &rep.extension {
        writeln!(s, "extension: {e}").unwrap();
    }
    if let Some(b) = rep.potential_good_reduction {
        writeln!(s, "potential good reduction: {b}").unwrap();
    }
    if let Some(h) = &rep.hv_min {
        writeln!(s, "rational minimum: {h}").unwrap();
    }
    if let Some(g) = &rep.hv_gamma {
        writeln!(s, "rational gamma: {}", mat(g)).unwrap();
    }
    if let Some(a) = rep.hv_absolute {
        writeln!(s, "rational minimum is absolute: {a}").unwrap();
    }
    if let Some(t) = &rep.trace {
        for st in t {
            writeln!(s, "  step: direction {} t {} ordres {} ({:?})", st.direction, st.t, fmt_q(&st.r), st.kind).unwrap();
        }
    }
    s
}

/// CSV rows `path_id, root_center, slope, intercept_num, intercept_den`.
pub fn pwl_csv(paths: &[PathReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path_id", "root_center", "slope", "intercept_num", "intercept_den"]).unwrap();
    for x in paths {
        for t in x.func.terms() {
            w.write_record([
                x.id.to_string(),
                x.center.to_string(),
                t.slope.to_string(),
                t.intercept.numer().to_string(),
                t.intercept.denom().to_string(),
            ])
            .unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Reads back the output of [`pwl_csv`].
pub fn parse_pwl_csv(src: &str) -> Result<Vec<(usize, String, PWLFunc)>> {
    let mut r = csv::Reader::from_reader(src.as_bytes());
    let mut out: Vec<(usize, String, Vec<(i64, Q64)>)> = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| MinresError::Parse(e.to_string()))?;
        let field = |i: usize| rec.get(i).ok_or_else(|| MinresError::Parse("short CSV row".into()));
        let num = |s: &str| s.parse::<i64>().map_err(|e| MinresError::Parse(e.to_string()));
        let id: usize = field(0)?.parse().map_err(|_| MinresError::Parse("bad path id".into()))?;
        let term = (num(field(2)?)?, Q64::new(num(field(3)?)?, num(field(4)?)?));
        match out.last_mut() {
            Some(last) if last.0 == id => last.2.push(term),
            _ => out.push((id, field(1)?.to_string(), vec![term])),
        }
    }
    Ok(out.into_iter().map(|(i, c, t)| (i, c, PWLFunc::new(t))).collect())
}

/// One line of batch output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BatchLine {
    pub line: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<JsonReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

/// Runs every `"<prime> <expr>"` line of the input; blank lines and lines
/// starting with `#` are skipped.
pub fn run_batch(src: &str, algorithm: Algorithm, precision: Option<i64>) -> Vec<BatchLine> {
    let jobs: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    jobs.par_iter()
        .map(|&(line, l)| {
            let res = l
                .split_once(char::is_whitespace)
                .ok_or_else(|| MinresError::Parse("expected '<prime> <map>'".into()))
                .and_then(|(p, e)| {
                    let prime: u64 = p.parse().map_err(|_| MinresError::Parse(format!("bad prime {p:?}")))?;
                    let cfg = RunConfig { prime, algorithm, precision, max_ext_degree: None };
                    run(&cfg, e.trim())
                });
            match res {
                Ok(out) => BatchLine { line, report: Some(out.report), error: None, exit_code: 0 },
                Err(e) => BatchLine { line, report: None, error: Some(e.to_string()), exit_code: e.exit_code() },
            }
        })
        .collect()
}
