use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use xiform::cooperadic::{witt_dim as witt, Letter};
use xiform::exactlin::Rat;
use xiform::formality::harrison::harrison_window as window;
use xiform::formality::obstruction::{generic_instances, obstruction_solve as solve, Ansatz};
use xiform::formality::xi::{canonical, fmt_xi, xi_basis as basis, Xi, XiBudget, XiMono};
use xiform::hochschild::{hh_dims as dims, hkr, hkr_inverse, parse_cochain, Cochain};
use xiform::polyalg::{parse_poly, parse_polyvector, Poly, Polyvector};
use xiform::verify::{self, RunConfig, Suite};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn same_vars(a: usize, b: usize) -> PyResult<()> {
    if a == b {
        Ok(())
    } else {
        Err(err(format!("variable count mismatch: {a} vs {b}")))
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => PyString::new(py, s).into_any().unbind(),
        Value::Array(xs) => {
            let items = xs.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any().unbind()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any().unbind()
        }
    })
}

fn json_of(x: &impl serde::Serialize) -> PyResult<Value> {
    serde_json::to_value(x).map_err(err)
}

/// Polynomial with rational coefficients in `nvars` variables `x1..xn`.
#[pyclass(name = "Poly", module = "xiform", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: Poly,
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        Ok(PyPoly { inner: parse_poly(text, nvars).map_err(err)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn partial(&self, i: usize) -> PyResult<Self> {
        if i >= self.inner.nvars() {
            return Err(err(format!("no variable x{}", i + 1)));
        }
        Ok(PyPoly { inner: self.inner.partial(i) })
    }

    /// Value at a point given as strings or integers, e.g. `["1/2", 3]`.
    fn eval(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        same_vars(point.len(), self.inner.nvars())?;
        let pt = point.iter().map(|x| x.str()?.to_str()?.trim().parse::<Rat>().map_err(err)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.eval(&pt).to_string())
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        same_vars(self.inner.nvars(), other.inner.nvars())?;
        Ok(PyPoly { inner: &self.inner + &other.inner })
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        same_vars(self.inner.nvars(), other.inner.nvars())?;
        Ok(PyPoly { inner: &self.inner - &other.inner })
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        same_vars(self.inner.nvars(), other.inner.nvars())?;
        Ok(PyPoly { inner: &self.inner * &other.inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', {})", self.inner, self.inner.nvars())
    }
}

/// Polyvector field, written like `x1^2 d1^d2 + x2 d1`.
#[pyclass(name = "Polyvector", module = "xiform", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolyvector {
    inner: Polyvector,
}

#[pymethods]
impl PyPolyvector {
    #[new]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        Ok(PyPolyvector { inner: parse_polyvector(text, nvars).map_err(err)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    /// Polyvector degree, `None` when zero or inhomogeneous.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn wedge(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        same_vars(self.inner.nvars(), other.inner.nvars())?;
        Ok(PyPolyvector { inner: self.inner.wedge(&other.inner) })
    }

    fn schouten(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        same_vars(self.inner.nvars(), other.inner.nvars())?;
        Ok(PyPolyvector { inner: self.inner.schouten(&other.inner) })
    }

    /// Applies a vector field to a polynomial.
    fn apply(&self, f: PyRef<'_, PyPoly>) -> PyResult<PyPoly> {
        same_vars(self.inner.nvars(), f.inner.nvars())?;
        Ok(PyPoly { inner: self.inner.apply_derivation(&f.inner).map_err(err)? })
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        same_vars(self.inner.nvars(), other.inner.nvars())?;
        let mut out = self.inner.clone();
        out.add_scaled(&other.inner, &Rat::from_integer(1.into()));
        Ok(PyPolyvector { inner: out })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polyvector('{}', {})", self.inner, self.inner.nvars())
    }
}

/// Polydifferential Hochschild cochain, written like `[x2 ; 1,0 | 0,2]`.
#[pyclass(name = "Cochain", module = "xiform", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCochain {
    inner: Cochain,
}

impl PyCochain {
    fn check(&self, other: &Cochain) -> PyResult<()> {
        same_vars(self.inner.nvars(), other.nvars())
    }
}

#[pymethods]
impl PyCochain {
    #[new]
    fn new(text: &str, nvars: usize, arity: usize) -> PyResult<Self> {
        Ok(PyCochain { inner: parse_cochain(text, nvars, arity).map_err(err)? })
    }

    /// Antisymmetrized image of a polyvector.
    #[staticmethod]
    fn hkr(u: PyRef<'_, PyPolyvector>) -> Self {
        PyCochain { inner: hkr(&u.inner) }
    }

    /// Inverse of `hkr` on its image; raises if the cochain is not there.
    fn to_polyvector(&self) -> PyResult<PyPolyvector> {
        Ok(PyPolyvector { inner: hkr_inverse(&self.inner).map_err(err)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn evaluate(&self, args: Vec<PyRef<'_, PyPoly>>) -> PyResult<PyPoly> {
        let polys: Vec<Poly> = args.iter().map(|a| a.inner.clone()).collect();
        for p in &polys {
            same_vars(self.inner.nvars(), p.nvars())?;
        }
        Ok(PyPoly { inner: self.inner.evaluate(&polys).map_err(err)? })
    }

    fn d(&self) -> Self {
        PyCochain { inner: self.inner.hochschild_d() }
    }

    fn cup(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.check(&other.inner)?;
        Ok(PyCochain { inner: self.inner.cup(&other.inner) })
    }

    fn brace(&self, others: Vec<PyRef<'_, Self>>) -> PyResult<Self> {
        let qs: Vec<Cochain> = others.iter().map(|q| q.inner.clone()).collect();
        for q in &qs {
            self.check(q)?;
        }
        Ok(PyCochain { inner: self.inner.brace(&qs) })
    }

    fn gerst_bracket(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.check(&other.inner)?;
        Ok(PyCochain { inner: self.inner.gerst_bracket(&other.inner) })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cochain('{}', {}, {})", self.inner, self.inner.nvars(), self.inner.arity())
    }
}

/// Dimensions of the weight-`w` piece of Hochschild cohomology in arity `k`.
#[pyfunction]
fn hh_dims(py: Python<'_>, n: usize, k: usize, w: i64, budget: u32) -> PyResult<Py<PyAny>> {
    to_py(py, &json_of(&dims(n, k, w, budget))?)
}

#[pyfunction]
fn witt_dim(q: u64, length: u32) -> PyResult<u64> {
    if q == 0 || length == 0 {
        return Err(err("alphabet size and length must be positive"));
    }
    Ok(witt(q, length))
}

fn parse_mono(words: Vec<Vec<String>>, nvars: usize) -> PyResult<(Rat, XiMono)> {
    let m = words
        .iter()
        .map(|w| w.iter().map(|l| Letter::parse(l, nvars).map_err(err)).collect::<PyResult<Vec<_>>>())
        .collect::<PyResult<Vec<_>>>()?;
    canonical(m).ok_or_else(|| err("monomial vanishes: repeated odd factor"))
}

fn mono_to_lists(m: &XiMono) -> Vec<Vec<String>> {
    m.iter().map(|w| w.iter().map(Letter::to_string).collect()).collect()
}

/// Truncated monomial basis of Xi(A), each monomial a list of words of letters.
#[pyfunction]
#[pyo3(signature = (n, max_factors=3, max_word_len=3, max_coef_deg=2))]
fn xi_basis(n: usize, max_factors: usize, max_word_len: usize, max_coef_deg: u32) -> Vec<Vec<Vec<String>>> {
    basis(n, XiBudget { max_factors, max_word_len, max_coef_deg }).iter().map(mono_to_lists).collect()
}

/// Codifferential of one monomial as a list of `(coefficient, monomial)` pairs.
#[pyfunction]
fn xi_d(n: usize, monomial: Vec<Vec<String>>) -> PyResult<Vec<(String, Vec<Vec<String>>)>> {
    let (s, m) = parse_mono(monomial, n)?;
    let out = Xi::new(n).d_mono(&m).map_err(err)?;
    Ok(out.iter().map(|(k, c)| ((c * &s).to_string(), mono_to_lists(k))).collect())
}

#[pyfunction]
fn format_monomial(n: usize, monomial: Vec<Vec<String>>) -> PyResult<String> {
    let (s, m) = parse_mono(monomial, n)?;
    let body = fmt_xi(&m);
    Ok(if s < Rat::from_integer(0.into()) { format!("-{body}") } else { body })
}

/// Solves the linear system for the `vff` or `vfv` ansatz on seeded data.
#[pyfunction]
#[pyo3(signature = (which, nvars=3, seed=0, instances=6))]
fn obstruction_solve(py: Python<'_>, which: &str, nvars: usize, seed: u64, instances: usize) -> PyResult<Py<PyAny>> {
    let a = match which {
        "vff" => Ansatz::Vff,
        "vfv" => Ansatz::Vfv,
        _ => return Err(err(format!("unknown ansatz `{which}`, expected vff or vfv"))),
    };
    let rep = solve(a, &generic_instances(a, nvars, seed, instances)).map_err(err)?;
    to_py(py, &json_of(&rep)?)
}

#[pyfunction]
fn harrison_window(py: Python<'_>, n: usize, weight_cap: u32, length_cap: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &json_of(&window(n, weight_cap, length_cap).map_err(err)?)?)
}

/// Runs verification suites; returns `{"passed": bool, "reports": [...]}`.
#[pyfunction]
#[pyo3(signature = (suites=None, vars=2, max_weight=2, max_arity=3, max_factors=3, max_word_len=3, max_coef_deg=2, seed=0))]
#[allow(clippy::too_many_arguments)]
fn verify_suites(
    py: Python<'_>,
    suites: Option<Vec<String>>,
    vars: usize,
    max_weight: i64,
    max_arity: usize,
    max_factors: usize,
    max_word_len: usize,
    max_coef_deg: u32,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let suites = match suites {
        Some(names) => names.iter().map(|s| s.parse::<Suite>().map_err(err)).collect::<PyResult<Vec<_>>>()?,
        None => Suite::ALL.to_vec(),
    };
    let cfg = RunConfig { vars, max_weight, max_arity, max_factors, max_word_len, max_coef_deg, seed, suites };
    cfg.validate().map_err(err)?;
    let reports = py.detach(|| verify::run(&cfg)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("passed", reports.iter().all(|r| r.passed()))?;
    d.set_item("reports", to_py(py, &json_of(&reports)?)?)?;
    Ok(d.into_any().unbind())
}

#[pymodule]
#[pyo3(name = "xiform")]
pub fn xiform_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyPolyvector>()?;
    m.add_class::<PyCochain>()?;
    m.add_function(wrap_pyfunction!(hh_dims, m)?)?;
    m.add_function(wrap_pyfunction!(witt_dim, m)?)?;
    m.add_function(wrap_pyfunction!(xi_basis, m)?)?;
    m.add_function(wrap_pyfunction!(xi_d, m)?)?;
    m.add_function(wrap_pyfunction!(format_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction_solve, m)?)?;
    m.add_function(wrap_pyfunction!(harrison_window, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suites, m)?)?;
    Ok(())
}
