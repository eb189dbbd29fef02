//! Python bindings for `hoconv`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hoconv::divdiff;
use hoconv::expr::{self, derive_expr, parse_expr};
use hoconv::hadamard::{self, ChainReport, ErrorBoundResult, InequalityChain};
use hoconv::orthopoly::WeightFunction;
use hoconv::quadrature::{self, Family, FixedOperator};
use hoconv::support::{attach, AttachMethod, NodeSpec, SupportError, SupportResult};
use hoconv::{Interval, Polynomial, QuadratureRule, TestFunction};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn interval(iv: (f64, f64)) -> PyResult<Interval> {
    Interval::new(iv.0, iv.1).map_err(value_err)
}

fn function(src: &str, iv: Interval) -> PyResult<TestFunction> {
    let e = parse_expr(src).map_err(value_err)?;
    Ok(expr::test_function(&e, src.trim(), iv))
}

#[pyclass(name = "Polynomial", module = "hoconv_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPolynomial {
    inner: Polynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Coefficients in ascending powers.
    #[new]
    pub fn new(coeffs: Vec<f64>) -> Self {
        PyPolynomial { inner: Polynomial::new(coeffs) }
    }

    #[getter]
    pub fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    pub fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.inner.eval(x)
    }

    pub fn derivative(&self) -> Self {
        PyPolynomial { inner: self.inner.derivative() }
    }

    pub fn integrate(&self, a: f64, b: f64) -> PyResult<f64> {
        Ok(self.inner.integrate(interval((a, b))?))
    }

    pub fn roots(&self, a: f64, b: f64) -> PyResult<Vec<f64>> {
        self.inner.roots_in(interval((a, b))?).map_err(value_err)
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.eval(x)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.coeffs())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "QuadratureRule", module = "hoconv_py", frozen)]
pub struct PyRule {
    inner: QuadratureRule,
}

#[pymethods]
impl PyRule {
    #[getter]
    pub fn family(&self) -> &'static str {
        self.inner.family().name()
    }

    #[getter]
    pub fn label(&self) -> String {
        self.inner.label()
    }

    #[getter]
    pub fn nodes(&self) -> Vec<f64> {
        self.inner.nodes().to_vec()
    }

    #[getter]
    pub fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    #[getter]
    pub fn claimed_exactness(&self) -> usize {
        self.inner.claimed_exactness()
    }

    /// Apply the rule to a polynomial.
    pub fn apply(&self, p: &PyPolynomial) -> f64 {
        self.inner.apply_poly(&p.inner)
    }

    /// Apply the rule to an expression in `x`.
    pub fn apply_expr(&self, f: &str) -> PyResult<f64> {
        let e = parse_expr(f).map_err(value_err)?;
        Ok(self.inner.apply(|x| e.eval(x)))
    }

    /// Highest monomial degree integrated exactly against the rule's own weight.
    pub fn exactness_degree(&self) -> PyResult<Option<usize>> {
        quadrature::exactness_degree(&self.inner, self.inner.weight_fn()).map_err(value_err)
    }

    pub fn to_text(&self) -> String {
        self.inner.to_text_table()
    }

    pub fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("QuadratureRule({})", self.inner.label())
    }
}

/// `family` is gauss, lobatto, radau-l or radau-r; `weight` is `legendre` or `poly:c0,c1,...`.
#[pyfunction]
#[pyo3(signature = (family, points, weight = "legendre", interval = (-1.0, 1.0)))]
pub fn build_rule(family: &str, points: usize, weight: &str, interval: (f64, f64)) -> PyResult<PyRule> {
    let family: Family = family.parse().map_err(value_err)?;
    let w = WeightFunction::from_spec(weight, self::interval(interval)?).map_err(value_err)?;
    let inner = quadrature::build_rule(family, &w, points).map_err(value_err)?;
    Ok(PyRule { inner })
}

/// One of G2, Lob4, Cheb3, Simpson, Blend, Midpoint, Trapezoid on [-1, 1].
#[pyfunction]
pub fn fixed_rule(name: &str) -> PyResult<PyRule> {
    let op: FixedOperator = name.parse().map_err(value_err)?;
    let inner = quadrature::fixed_operator(op).map_err(value_err)?;
    Ok(PyRule { inner })
}

#[pyfunction]
pub fn divided_difference(points: Vec<f64>, values: Vec<f64>) -> PyResult<f64> {
    divdiff::divided_difference(&points, &values).map_err(value_err)
}

/// The same quantity from the determinant quotient.
#[pyfunction]
pub fn divided_difference_det(points: Vec<f64>, values: Vec<f64>) -> PyResult<f64> {
    divdiff::divided_difference_det(&points, &values)
        .map(|q| q.value)
        .map_err(value_err)
}

#[pyfunction]
pub fn interpolate(points: Vec<f64>, values: Vec<f64>) -> PyResult<PyPolynomial> {
    let inner = divdiff::newton_interpolant(&points, &values).map_err(value_err)?;
    Ok(PyPolynomial { inner })
}

#[pyclass(name = "Expr", module = "hoconv_py", frozen)]
pub struct PyExpr {
    inner: expr::Expr,
}

#[pymethods]
impl PyExpr {
    #[new]
    pub fn new(src: &str) -> PyResult<Self> {
        Ok(PyExpr { inner: parse_expr(src).map_err(value_err)? })
    }

    pub fn eval(&self, x: f64) -> PyResult<f64> {
        self.inner.try_eval(x).map_err(value_err)
    }

    pub fn derive(&self, order: usize) -> PyResult<PyExpr> {
        Ok(PyExpr { inner: derive_expr(&self.inner, order).map_err(value_err)? })
    }

    pub fn to_polynomial(&self) -> Option<PyPolynomial> {
        self.inner.to_polynomial().map(|inner| PyPolynomial { inner })
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.eval(x)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "ChainReport", module = "hoconv_py", frozen)]
pub struct PyChainReport {
    inner: ChainReport,
}

#[pymethods]
impl PyChainReport {
    #[getter]
    pub fn chain(&self) -> String {
        self.inner.chain.clone()
    }

    #[getter]
    pub fn operators(&self) -> Vec<String> {
        self.inner.operators.clone()
    }

    #[getter]
    pub fn values(&self) -> Vec<f64> {
        self.inner.values.clone()
    }

    #[getter]
    pub fn margins(&self) -> Vec<f64> {
        self.inner.margins()
    }

    #[getter]
    pub fn passed(&self) -> bool {
        self.inner.pass
    }

    pub fn to_text(&self) -> String {
        self.inner.to_text()
    }

    pub fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

/// Verify a chain (gauss-lobatto, radau, cheb, fiveconv, hh) for `f`. With
/// `checked`, `f` must first pass the n-convexity spot check.
#[pyfunction]
#[pyo3(signature = (chain, f, interval = (-1.0, 1.0), weight = "legendre", n = None, checked = true))]
pub fn verify_chain(
    chain: &str,
    f: &str,
    interval: (f64, f64),
    weight: &str,
    n: Option<usize>,
    checked: bool,
) -> PyResult<PyChainReport> {
    let iv = self::interval(interval)?;
    let w = WeightFunction::from_spec(weight, iv).map_err(value_err)?;
    let chain = InequalityChain::by_name(chain, &w, n).map_err(value_err)?;
    let f = function(f, iv)?;
    let inner = if checked {
        let f = f.declare_orders(&[chain.order()]).map_err(value_err)?;
        hadamard::verify_chain(&chain, &f, None)
    } else {
        hadamard::evaluate_chain(&chain, &f, None)
    }
    .map_err(value_err)?;
    Ok(PyChainReport { inner })
}

#[pyclass(name = "ErrorBound", module = "hoconv_py", frozen)]
pub struct PyErrorBound {
    inner: ErrorBoundResult,
}

#[pymethods]
impl PyErrorBound {
    #[getter]
    pub fn bound(&self) -> f64 {
        self.inner.bound
    }

    #[getter]
    pub fn empirical_error(&self) -> Option<f64> {
        self.inner.empirical_error
    }

    #[getter]
    pub fn operator(&self) -> String {
        self.inner.operator.clone()
    }

    pub fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

/// `|op(f) - ∫ f|` bound for a fixed operator given `|f^(k)| <= m`.
#[pyfunction]
#[pyo3(signature = (op, k, m, f = None))]
pub fn error_bound(op: &str, k: usize, m: f64, f: Option<&str>) -> PyResult<PyErrorBound> {
    let rule = quadrature::fixed_operator(op.parse().map_err(value_err)?).map_err(value_err)?;
    let f = f.map(|src| function(src, rule.interval())).transpose()?;
    let inner = hadamard::error_bound(&rule, k, m, f.as_ref()).map_err(value_err)?;
    Ok(PyErrorBound { inner })
}

#[pyclass(name = "Support", module = "hoconv_py", frozen)]
pub struct PySupport {
    inner: SupportResult,
}

#[pymethods]
impl PySupport {
    #[getter]
    pub fn polynomial(&self) -> PyPolynomial {
        PyPolynomial { inner: self.inner.polynomial.clone() }
    }

    #[getter]
    pub fn method(&self) -> &'static str {
        self.inner.method.name()
    }

    #[getter]
    pub fn certified(&self) -> bool {
        self.inner.certificate.pass
    }

    #[getter]
    pub fn worst_margin(&self) -> f64 {
        self.inner.certificate.worst_margin
    }

    #[getter]
    pub fn node_residual(&self) -> f64 {
        self.inner.node_residual
    }
}

/// Attach nodes with multiplicities to `f`; `method` is `eps` or `confluent`.
#[pyfunction]
#[pyo3(signature = (f, order, nodes, mults, interval = (-1.0, 1.0), method = None))]
pub fn support(
    f: &str,
    order: usize,
    nodes: Vec<f64>,
    mults: Vec<usize>,
    interval: (f64, f64),
    method: Option<&str>,
) -> PyResult<PySupport> {
    let iv = self::interval(interval)?;
    let spec = NodeSpec::new(iv, order, nodes, mults).map_err(value_err)?;
    let f = function(f, iv)?;
    let method = match method {
        None => AttachMethod::preferred(&f, &spec),
        Some("eps") => AttachMethod::EpsilonLimit,
        Some("confluent") => AttachMethod::Confluent,
        Some(other) => return Err(value_err(format!("unknown method {other:?}"))),
    };
    match attach(&f, &spec, method) {
        Ok(inner) => Ok(PySupport { inner }),
        Err(e @ SupportError::NonConvergence { .. }) => Err(PyRuntimeError::new_err(e.to_string())),
        Err(e) => Err(value_err(e)),
    }
}

/// `(convex, witness_tuple)` from the grid test on `grid` equispaced points.
#[pyfunction]
#[pyo3(signature = (f, order, grid = 64, interval = (-1.0, 1.0)))]
pub fn is_n_convex(f: &str, order: usize, grid: usize, interval: (f64, f64)) -> PyResult<(bool, Option<Vec<f64>>)> {
    let iv = self::interval(interval)?;
    let f = function(f, iv)?;
    let v = divdiff::is_n_convex_on_grid(&f, order, &iv.linspace(grid)).map_err(value_err)?;
    Ok((v.convex, v.witness.map(|w| w.tuple)))
}

#[pymodule]
fn hoconv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyRule>()?;
    m.add_class::<PyExpr>()?;
    m.add_class::<PyChainReport>()?;
    m.add_class::<PyErrorBound>()?;
    m.add_class::<PySupport>()?;
    m.add_function(wrap_pyfunction!(build_rule, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_rule, m)?)?;
    m.add_function(wrap_pyfunction!(divided_difference, m)?)?;
    m.add_function(wrap_pyfunction!(divided_difference_det, m)?)?;
    m.add_function(wrap_pyfunction!(interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_chain, m)?)?;
    m.add_function(wrap_pyfunction!(error_bound, m)?)?;
    m.add_function(wrap_pyfunction!(support, m)?)?;
    m.add_function(wrap_pyfunction!(is_n_convex, m)?)?;
    Ok(())
}
