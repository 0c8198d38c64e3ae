//! Python bindings for `superhc`.
//!
//! Exact scalars cross the boundary as strings (`"3/4"`, `"1/2+1/3*i"`);
//! structured reports come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use superhc::borel;
use superhc::interp;
use superhc::kacrep;
use superhc::partitions::{self, lambda_natural};
use superhc::shimura;
use superhc::superlie::{self, gl22};
use superhc::susyring::DeformedParams;
use superhc::verify;
use superhc::{ExactPoly, Partition, Profile, Scalar};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

fn scalar(s: &str) -> PyResult<Scalar> {
    s.parse().map_err(err)
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Exact polynomial with Gaussian rational coefficients.
#[pyclass(name = "Poly", module = "superhc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPoly {
    inner: ExactPoly,
}

#[pymethods]
impl PyPoly {
    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    /// Evaluate at a point given as ints or scalar strings.
    fn eval(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        let pt = point
            .iter()
            .map(|x| match x.extract::<i64>() {
                Ok(n) => Ok(Scalar::from(n)),
                Err(_) => scalar(&x.extract::<String>()?),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.eval(&pt).map_err(err)?.to_string())
    }

    /// Scalar `c` with `self == c * other`, if one exists.
    fn ratio_to(&self, other: &PyPoly) -> Option<String> {
        self.inner.ratio_to(&other.inner).map(|c| c.to_string())
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }
}

impl From<ExactPoly> for PyPoly {
    fn from(inner: ExactPoly) -> Self {
        PyPoly { inner }
    }
}

/// Hook partitions of size at most `d` for `(p, q)`.
#[pyfunction]
fn hooks(p: usize, q: usize, d: u32) -> Vec<Vec<u32>> {
    partitions::enumerate_hooks(Profile::new(p, q), d).into_iter().map(|m| m.parts().to_vec()).collect()
}

/// Natural coordinates of a hook partition, bosonic then fermionic.
#[pyfunction]
fn natural_coords(mu: Vec<u32>, p: usize, q: usize) -> PyResult<Vec<i64>> {
    Ok(lambda_natural(&partition(mu)?, Profile::new(p, q)).map_err(err)?.concat())
}

#[pyfunction]
fn eval_point(mu: Vec<u32>, p: usize, q: usize) -> PyResult<Vec<i64>> {
    interp::eval_point(&partition(mu)?, Profile::new(p, q)).map_err(err)
}

/// Interpolation polynomial for `mu`; pass `k` and `h` for the deformed family.
#[pyfunction]
#[pyo3(signature = (mu, p, q, k=None, h=None))]
fn interpolation(mu: Vec<u32>, p: usize, q: usize, k: Option<&str>, h: Option<&str>) -> PyResult<PyPoly> {
    let mu = partition(mu)?;
    let prof = Profile::new(p, q);
    let res = match (k, h) {
        (None, None) => interp::solve_interpolation(&mu, prof),
        (Some(k), Some(h)) => interp::solve_general(&mu, prof, &DeformedParams::new(scalar(k)?, scalar(h)?)),
        _ => return Err(PyValueError::new_err("k and h must be given together")),
    };
    Ok(res.map_err(err)?.poly.into())
}

/// Hook partitions `lambda` with `|lambda| <= |mu| + slack`, `lambda` not containing `mu`,
/// at which `f` does not vanish.
#[pyfunction]
#[pyo3(signature = (f, mu, p, q, slack=1))]
fn vanishing_failures(f: &PyPoly, mu: Vec<u32>, p: usize, q: usize, slack: u32) -> PyResult<Vec<Vec<u32>>> {
    let bad = interp::extra_vanishing_failures(&f.inner, &partition(mu)?, Profile::new(p, q), slack).map_err(err)?;
    Ok(bad.into_iter().map(|m| m.parts().to_vec()).collect())
}

/// Evaluation table `[f_mu(point of lambda)]` over hooks of size at most `d`.
#[pyfunction]
fn evaluation_table(py: Python<'_>, p: usize, q: usize, d: u32) -> PyResult<(Vec<Vec<u32>>, Py<PyAny>)> {
    let (rows, m) = interp::evaluation_table(Profile::new(p, q), d).map_err(err)?;
    Ok((rows.into_iter().map(|m| m.parts().to_vec()).collect(), to_py(py, &m)?))
}

/// Push the fermionic marker left and check the resulting weight is dominant.
#[pyfunction]
fn verify_fd(py: Python<'_>, mu: Vec<u32>, p: usize, q: usize) -> PyResult<Py<PyAny>> {
    let report = borel::verify_fd(&partition(mu)?, Profile::new(p, q)).map_err(err)?;
    to_py(py, &serde_json::json!({ "passed": report.passed(), "report": report }))
}

/// Highest weight for the distinguished Borel, with the reflection trace.
#[pyfunction]
fn kac_weight(py: Python<'_>, mu: Vec<u32>, p: usize, q: usize) -> PyResult<Py<PyAny>> {
    let kw = borel::kac_weight(&partition(mu)?, Profile::new(p, q)).map_err(err)?;
    let trace: Vec<String> = kw.trace.iter().map(|w| w.to_string()).collect();
    to_py(py, &serde_json::json!({ "standard": kw.standard(), "trace": trace }))
}

#[pyfunction]
fn is_typical(weight: [i64; 4]) -> bool {
    kacrep::typicality(weight)
}

/// Kac module over `gl(2|2)` induced from a `gl(1|1) ⊕ gl(1|1)` weight.
#[pyclass(name = "KacModule", module = "superhc_py", unsendable)]
pub struct PyKacModule {
    inner: kacrep::KacModule,
}

#[pymethods]
impl PyKacModule {
    #[new]
    fn new(weight: [i64; 4]) -> PyResult<Self> {
        Ok(PyKacModule { inner: kacrep::KacModule::new(weight).map_err(err)? })
    }

    #[staticmethod]
    fn for_hook(a: u32, b: u32) -> PyResult<Self> {
        Ok(PyKacModule { inner: kacrep::KacModule::for_hook(a, b).map_err(err)? })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn zero_weight_dim(&self) -> usize {
        self.inner.zero_weight_basis().len()
    }

    /// Basis of the k-invariants, each rendered as a string.
    fn spherical_vectors(&mut self) -> PyResult<Vec<String>> {
        let vs = self.inner.spherical_vectors().map_err(err)?;
        Ok(vs.iter().map(|v| self.inner.fmt_vector(v)).collect())
    }

    #[pyo3(signature = (g0_word_bound=2))]
    fn quasi_spherical_check(&mut self, py: Python<'_>, g0_word_bound: usize) -> PyResult<Py<PyAny>> {
        let report = self.inner.quasi_spherical_check(g0_word_bound).map_err(err)?;
        to_py(py, &report)
    }
}

/// Shimura operators for `(gl(2|2), gl(1|1) ⊕ gl(1|1))`.
#[pyclass(name = "Shimura", module = "superhc_py", unsendable)]
pub struct PyShimura {
    inner: shimura::Shimura,
}

#[pymethods]
impl PyShimura {
    #[new]
    fn new() -> PyResult<Self> {
        Ok(PyShimura { inner: shimura::Shimura::new().map_err(err)? })
    }

    #[classattr]
    fn max_degree() -> u32 {
        shimura::MAX_DEGREE
    }

    fn gamma(&mut self, mu: Vec<u32>) -> PyResult<PyPoly> {
        Ok(self.inner.gamma_of_shimura(&partition(mu)?).map_err(err)?.into())
    }

    #[pyo3(signature = (mu, check_invariance=true))]
    fn report(&mut self, py: Python<'_>, mu: Vec<u32>, check_invariance: bool) -> PyResult<Py<PyAny>> {
        let r = self.inner.report(&partition(mu)?, check_invariance).map_err(err)?;
        to_py(py, &r)
    }
}

/// Super bracket `[a, b]` in `gl(2|2)` as `(label, coefficient)` pairs.
#[pyfunction]
fn bracket(a: &str, b: &str) -> PyResult<Vec<(String, String)>> {
    let alg = gl22::gl22();
    let l = superlie::bracket(&alg, a, b).map_err(err)?;
    Ok(l.into_iter().map(|(i, c)| (alg.label(i).to_string(), c.to_string())).collect())
}

/// Mismatches between computed brackets and the reference table.
#[pyfunction]
fn check_bracket_table(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &gl22::check_bracket_table().map_err(err)?)
}

#[pyfunction]
fn restricted_roots(py: Python<'_>, p: usize, q: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &superlie::restricted_roots(Profile::new(p, q)).map_err(err)?)
}

/// Run one acceptance criterion (1 to 9).
#[pyfunction]
fn run_criterion(py: Python<'_>, number: u8) -> PyResult<Py<PyAny>> {
    if !(1..=9).contains(&number) {
        return Err(PyValueError::new_err("criterion number must be in 1..=9"));
    }
    to_py(py, &verify::run_criterion(number))
}

#[pyfunction]
fn verify_all(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &verify::run_all())
}

#[pymodule]
pub fn superhc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyKacModule>()?;
    m.add_class::<PyShimura>()?;
    m.add_function(wrap_pyfunction!(hooks, m)?)?;
    m.add_function(wrap_pyfunction!(natural_coords, m)?)?;
    m.add_function(wrap_pyfunction!(eval_point, m)?)?;
    m.add_function(wrap_pyfunction!(interpolation, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_failures, m)?)?;
    m.add_function(wrap_pyfunction!(evaluation_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fd, m)?)?;
    m.add_function(wrap_pyfunction!(kac_weight, m)?)?;
    m.add_function(wrap_pyfunction!(is_typical, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(check_bracket_table, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_roots, m)?)?;
    m.add_function(wrap_pyfunction!(run_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
