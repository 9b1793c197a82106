//! Python bindings. Exact numbers cross the boundary as strings in the
//! report format (`p/q`, `p/q+r/s i`).

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use affine_curves::curve::Curve as CoreCurve;
use affine_curves::equivalence::{self, AffineEquivalence, EquivalenceReport, Options, Route};
use affine_curves::invariants::invariants as core_invariants;
use affine_curves::invgen::templates as core_templates;
use affine_curves::io::{format_report, parse_curve as core_parse, print_curve, read_curve as core_read};
use affine_curves::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyIOError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn options(route: &str, allow_improper: bool) -> PyResult<Options> {
    let route = match route {
        "auto" => Route::Auto,
        "specialized" => Route::Specialized,
        "materialized" => Route::Materialized,
        other => return Err(PyValueError::new_err(format!("unknown route '{other}'"))),
    };
    Ok(Options { route, allow_improper, ..Options::default() })
}

/// A parametric curve, rational in `z` or exp-type in `z` and `t = e^(mu z)`.
#[pyclass(frozen, skip_from_py_object, module = "affine_curves_py")]
#[derive(Clone)]
pub struct Curve {
    inner: CoreCurve,
}

#[pymethods]
impl Curve {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn is_rational(&self) -> bool {
        self.inner.is_rational()
    }

    #[getter]
    fn mu(&self) -> Option<String> {
        self.inner.mu().map(|m| m.to_string())
    }

    #[getter]
    fn components(&self) -> Vec<String> {
        self.inner.components().iter().map(|c| c.to_string()).collect()
    }

    /// Self-equivalences of the curve.
    #[pyo3(signature = (route = "auto", real_only = false, allow_improper = false))]
    fn symmetries(&self, py: Python<'_>, route: &str, real_only: bool, allow_improper: bool) -> PyResult<Report> {
        let opts = options(route, allow_improper)?;
        let inner = self.inner.clone();
        let r = py.detach(move || equivalence::symmetries(&inner, &opts)).map_err(py_err)?;
        Ok(Report::from(if real_only { r.real_only() } else { r }))
    }

    fn __str__(&self) -> String {
        print_curve(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Curve(dim={}, components={:?})", self.inner.dim(), self.components())
    }
}

/// One affine map `x -> A x + b` with its reparametrization.
#[pyclass(frozen, get_all, skip_from_py_object, module = "affine_curves_py")]
#[derive(Clone)]
pub struct Equivalence {
    /// `w = phi(z)` as text.
    phi: String,
    /// `(a, b, c, d)` of `w = (a z + b) / (c z + d)`.
    phi_coeffs: (String, String, String, String),
    a: Vec<Vec<String>>,
    b: Vec<String>,
    /// Coefficient of the free shift `beta` in each entry of `b`.
    b_beta: Vec<String>,
    t_exp: Option<i64>,
    shift: Option<String>,
    tags: Vec<String>,
}

impl From<&AffineEquivalence> for Equivalence {
    fn from(e: &AffineEquivalence) -> Self {
        let s = |v: &[affine_curves::exact::Gr]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        Equivalence {
            phi: e.phi.to_string(),
            phi_coeffs: (e.phi.a.to_string(), e.phi.b.to_string(), e.phi.c.to_string(), e.phi.d.to_string()),
            a: e.a.iter().map(|r| s(r)).collect(),
            b: s(&e.b),
            b_beta: s(&e.b_beta),
            t_exp: e.t_exp,
            shift: e.shift.as_ref().map(|x| x.to_string()),
            tags: e.tags.iter().map(|t| t.to_string()).collect(),
        }
    }
}

#[pymethods]
impl Equivalence {
    fn __repr__(&self) -> String {
        format!("Equivalence(phi='{}', tags={:?})", self.phi, self.tags)
    }
}

/// Result of an equivalence or symmetry query.
#[pyclass(frozen, module = "affine_curves_py")]
pub struct Report {
    inner: EquivalenceReport,
}

impl From<EquivalenceReport> for Report {
    fn from(inner: EquivalenceReport) -> Self {
        Report { inner }
    }
}

#[pymethods]
impl Report {
    /// `equivalences-found`, `not-equivalent` or `degenerate-invariants`.
    #[getter]
    fn status(&self) -> String {
        self.inner.status.to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn candidates(&self) -> usize {
        self.inner.diagnostics.candidates
    }

    #[getter]
    fn rejected(&self) -> usize {
        self.inner.diagnostics.rejected
    }

    #[getter]
    fn equivalences(&self) -> Vec<Equivalence> {
        self.inner.equivalences.iter().map(Equivalence::from).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.equivalences.len()
    }

    fn __str__(&self) -> String {
        format_report(&self.inner)
    }
}

/// Parses a curve file body (`dim n`, optional `exp mu ...`, one component per line).
#[pyfunction]
fn parse_curve(text: &str) -> PyResult<Curve> {
    core_parse(text).map(|inner| Curve { inner }).map_err(py_err)
}

#[pyfunction]
fn read_curve(path: std::path::PathBuf) -> PyResult<Curve> {
    core_read(&path).map(|inner| Curve { inner }).map_err(py_err)
}

/// Affine equivalences `A p + b = q ∘ phi`.
#[pyfunction]
#[pyo3(signature = (p, q, route = "auto", real_only = false, allow_improper = false))]
fn equivalences(py: Python<'_>, p: &Curve, q: &Curve, route: &str, real_only: bool, allow_improper: bool) -> PyResult<Report> {
    let opts = options(route, allow_improper)?;
    let (p, q) = (p.inner.clone(), q.inner.clone());
    let r = py.detach(move || equivalence::affine_equivalences(&p, &q, &opts)).map_err(py_err)?;
    Ok(Report::from(if real_only { r.real_only() } else { r }))
}

/// The Möbius-commuting invariants for dimension `n`, one line each.
#[pyfunction]
fn templates(n: usize) -> PyResult<Vec<String>> {
    Ok(core_templates(n).map_err(py_err)?.iter().map(|t| t.to_string()).collect())
}

/// `I_0, ..., I_n` of a curve.
#[pyfunction]
fn invariants(c: &Curve) -> PyResult<Vec<String>> {
    Ok(core_invariants(&c.inner).map_err(py_err)?.values().iter().map(|v| v.to_string()).collect())
}

#[pymodule]
fn affine_curves_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_class::<Equivalence>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(parse_curve, m)?)?;
    m.add_function(wrap_pyfunction!(read_curve, m)?)?;
    m.add_function(wrap_pyfunction!(equivalences, m)?)?;
    m.add_function(wrap_pyfunction!(templates, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    Ok(())
}
