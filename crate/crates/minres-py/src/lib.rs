use std::str::FromStr;

use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use minres::cli::{self, pwl_csv, run_pair, Algorithm, JsonReport, RunConfig};
use minres::descent_b::{descend, DescendConfig};
use minres::dynrep::{ordres_at, HomogPair, MobiusMap, TypeIIPoint};
use minres::padic::{fmt_big_q, fmt_q, parse_q, Q64};
use minres::pwl::PWLFunc;
use minres::MinresError;

create_exception!(pyminres, Error, PyValueError, "Base class for errors raised by pyminres.");
create_exception!(pyminres, ParseError, Error, "The map could not be parsed.");
create_exception!(pyminres, DegenerateMapError, Error, "The map has a common factor or a zero denominator.");
create_exception!(pyminres, ResourceCapError, Error, "A size or extension-degree cap was exceeded.");
create_exception!(pyminres, PrecisionError, Error, "The working precision was insufficient.");

fn to_py(e: MinresError) -> PyErr {
    let msg = e.to_string();
    match e {
        MinresError::Parse(_) => ParseError::new_err(msg),
        MinresError::Degenerate(_) => DegenerateMapError::new_err(msg),
        MinresError::ResourceCap(_) => ResourceCapError::new_err(msg),
        MinresError::Precision(_) => PrecisionError::new_err(msg),
        _ => Error::new_err(msg),
    }
}

fn q_arg(s: &str) -> PyResult<Q64> {
    parse_q(s).ok_or_else(|| ParseError::new_err(format!("bad rational {s:?}")))
}

fn big_q_arg(s: &str) -> PyResult<BigRational> {
    BigRational::from_str(s.trim())
        .ok()
        .filter(|_| !s.trim().ends_with("/0"))
        .ok_or_else(|| ParseError::new_err(format!("bad rational {s:?}")))
}

fn report_dict<'py>(py: Python<'py>, rep: &JsonReport) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(rep).expect("report serializes");
    py.import("json")?.call_method1("loads", (text,))
}

/// A rational map given by a coprime pair of homogeneous forms.
#[pyclass(name = "Map", frozen)]
struct PyMap {
    pair: HomogPair,
}

#[pymethods]
impl PyMap {
    /// Parses an expression in `z` such as `"(z^3-5)/z^2"`, or the list
    /// form `"F=[..];G=[..]"`.
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        Ok(PyMap { pair: cli::parse_map(src).map_err(to_py)? })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.pair.degree()
    }

    /// Coefficients of `F`, from `X^d` down to `Y^d`, as rational strings.
    #[getter]
    fn f(&self) -> Vec<String> {
        self.pair.a_low().iter().rev().map(fmt_big_q).collect()
    }

    /// Coefficients of `G`, from `X^d` down to `Y^d`, as rational strings.
    #[getter]
    fn g(&self) -> Vec<String> {
        self.pair.b_low().iter().rev().map(fmt_big_q).collect()
    }

    /// The valuation of the resultant of a normalized representation.
    fn ordres(&self, p: u64) -> PyResult<String> {
        Ok(fmt_q(&self.pair.ordres(p).map_err(to_py)?))
    }

    /// `ordRes` at the type II point with rational center and radius `p^s`.
    fn ordres_at(&self, p: u64, center: &str, s: &str) -> PyResult<String> {
        let q = TypeIIPoint::rational(big_q_arg(center)?, q_arg(s)?);
        Ok(fmt_q(&ordres_at(&self.pair, &q, p).map_err(to_py)?))
    }

    fn good_reduction(&self, p: u64) -> PyResult<bool> {
        let (n, _) = self.pair.normalize(p).map_err(to_py)?;
        n.good_reduction_check(p).map_err(to_py)
    }

    /// Conjugates by the matrix `[[a, b], [c, d]]` of rational strings.
    fn conjugate(&self, a: &str, b: &str, c: &str, d: &str) -> PyResult<PyMap> {
        let m = MobiusMap::new(big_q_arg(a)?, big_q_arg(b)?, big_q_arg(c)?, big_q_arg(d)?).map_err(to_py)?;
        Ok(PyMap { pair: self.pair.conjugate(&m).map_err(to_py)?.primitive() })
    }

    /// The function `t -> ordRes` along the path from `center` to infinity.
    fn path_function(&self, p: u64, center: &str) -> PyResult<PyPwl> {
        let r = self.pair.ordres(p).map_err(to_py)?;
        Ok(PyPwl { func: self.pair.translate(&big_q_arg(center)?).path_function(p, r) })
    }

    fn __str__(&self) -> String {
        self.pair.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Map({:?})", self.pair.to_string())
    }
}

/// A convex piecewise linear function `max(m t + b)` with exact rational
/// intercepts.
#[pyclass(name = "PWLFunc", frozen)]
struct PyPwl {
    func: PWLFunc,
}

#[pymethods]
impl PyPwl {
    /// Builds the function from `(slope, intercept)` pairs.
    #[new]
    fn new(terms: Vec<(i64, String)>) -> PyResult<Self> {
        let terms = terms.iter().map(|(m, b)| Ok((*m, q_arg(b)?))).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPwl { func: PWLFunc::new(terms) })
    }

    #[getter]
    fn terms(&self) -> Vec<(i64, String)> {
        self.func.terms().iter().map(|t| (t.slope, fmt_q(&t.intercept))).collect()
    }

    fn eval(&self, t: &str) -> PyResult<String> {
        Ok(fmt_q(&self.func.eval(q_arg(t)?)))
    }

    /// `(value, lo, hi)`: the minimum and the interval where it is attained.
    fn minimize(&self) -> PyResult<(String, String, String)> {
        let a = self.func.minimize().map_err(to_py)?;
        Ok((fmt_q(&a.value), fmt_q(&a.lo), fmt_q(&a.hi)))
    }

    fn breakpoints(&self) -> Vec<String> {
        self.func.breakpoints().iter().map(fmt_q).collect()
    }

    fn __repr__(&self) -> String {
        let t: Vec<String> = self.terms().iter().map(|(m, b)| format!("({m}, {b})")).collect();
        format!("PWLFunc([{}])", t.join(", "))
    }
}

fn as_map(obj: &Bound<'_, PyAny>) -> PyResult<HomogPair> {
    if let Ok(m) = obj.cast::<PyMap>() {
        return Ok(m.get().pair.clone());
    }
    let src: String = obj.extract()?;
    cli::parse_map(&src).map_err(to_py)
}

fn algorithm(name: &str) -> PyResult<Algorithm> {
    match name.to_ascii_lowercase().as_str() {
        "a" => Ok(Algorithm::A),
        "b" => Ok(Algorithm::B),
        "both" => Ok(Algorithm::Both),
        "auto" => Ok(Algorithm::Auto),
        _ => Err(Error::new_err(format!("unknown algorithm {name:?}"))),
    }
}

/// Runs the analysis and returns the same dictionary the CLI prints with
/// `--json`.
#[pyfunction]
#[pyo3(signature = (phi, p, algorithm = "auto", precision = None, max_ext_degree = None))]
fn analyze<'py>(
    py: Python<'py>,
    phi: &Bound<'py, PyAny>,
    p: u64,
    algorithm: &str,
    precision: Option<i64>,
    max_ext_degree: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let pair = as_map(phi)?;
    let cfg = RunConfig { prime: p, algorithm: self::algorithm(algorithm)?, precision, max_ext_degree };
    let out = py.detach(|| run_pair(&cfg, &pair)).map_err(to_py)?;
    report_dict(py, &out.report)
}

/// Steepest descent over rational type II points.
#[pyfunction]
#[pyo3(signature = (phi, p, precision = None))]
fn descend_rational<'py>(py: Python<'py>, phi: &Bound<'py, PyAny>, p: u64, precision: Option<i64>) -> PyResult<Bound<'py, PyDict>> {
    let pair = as_map(phi)?;
    let r = py.detach(|| descend(&pair, p, &DescendConfig { precision })).map_err(to_py)?;
    let point = r.point(p);
    let d = PyDict::new(py);
    d.set_item("hv_min", fmt_q(&r.hv_min))?;
    d.set_item("absolute", r.absolute)?;
    d.set_item("center", point.center.to_string())?;
    d.set_item("s", fmt_q(&point.s))?;
    d.set_item("gamma", [[fmt_big_q(&r.gamma.a), fmt_big_q(&r.gamma.b)], [fmt_big_q(&r.gamma.c), fmt_big_q(&r.gamma.d)]])?;
    d.set_item("steps", r.trace.len())?;
    Ok(d)
}

/// Per-path functions as `(path_id, center, PWLFunc)` triples.
#[pyfunction]
fn path_functions(py: Python<'_>, phi: &Bound<'_, PyAny>, p: u64) -> PyResult<Vec<(usize, String, PyPwl)>> {
    let pair = as_map(phi)?;
    let cfg = RunConfig { prime: p, algorithm: Algorithm::A, precision: None, max_ext_degree: None };
    let out = py.detach(|| run_pair(&cfg, &pair)).map_err(to_py)?;
    Ok(out.per_path.into_iter().map(|x| (x.id, x.center.to_string(), PyPwl { func: x.func })).collect())
}

/// The CSV written by `minres analyze --emit-pwl`.
#[pyfunction]
fn pwl_csv_text(py: Python<'_>, phi: &Bound<'_, PyAny>, p: u64) -> PyResult<String> {
    let pair = as_map(phi)?;
    let cfg = RunConfig { prime: p, algorithm: Algorithm::A, precision: None, max_ext_degree: None };
    let out = py.detach(|| run_pair(&cfg, &pair)).map_err(to_py)?;
    Ok(pwl_csv(&out.per_path))
}

/// The `p`-adic valuation of a rational, or `None` for zero.
#[pyfunction]
fn ordp(n: &str, p: u64) -> PyResult<Option<String>> {
    Ok(minres::padic::ordp(&big_q_arg(n)?, p).fin().map(|v| fmt_q(&v)))
}

#[pymodule]
fn pyminres(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyMap>()?;
    m.add_class::<PyPwl>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(descend_rational, m)?)?;
    m.add_function(wrap_pyfunction!(path_functions, m)?)?;
    m.add_function(wrap_pyfunction!(pwl_csv_text, m)?)?;
    m.add_function(wrap_pyfunction!(ordp, m)?)?;
    m.add("Error", py.get_type::<Error>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("DegenerateMapError", py.get_type::<DegenerateMapError>())?;
    m.add("ResourceCapError", py.get_type::<ResourceCapError>())?;
    m.add("PrecisionError", py.get_type::<PrecisionError>())?;
    Ok(())
}
