//! Python access to the modres computations.

use modres_core::fusion;
use modres_core::report::{self, RunOptions};
use modres_core::resolution;
use modres_core::specht::Diagram2;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: modres_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Runs one job given as a dict (same fields as a job-file entry) and returns the report.
#[pyfunction]
fn run<'py>(py: Python<'py>, job: &Bound<'py, PyDict>) -> PyResult<Bound<'py, PyAny>> {
    let text: String = py.import("json")?.call_method1("dumps", (job,))?.extract()?;
    let job: report::Job = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = py.detach(|| report::run(&job, RunOptions::default())).map_err(err)?;
    to_python(py, &out.to_json())
}

/// Runs a JSON job list on `workers` threads; reports come back in list order.
#[pyfunction]
#[pyo3(signature = (jobs, workers = 1))]
fn run_batch<'py>(py: Python<'py>, jobs: &str, workers: usize) -> PyResult<Bound<'py, PyAny>> {
    let jobs = report::parse_jobs(jobs).map_err(err)?;
    let reports = py
        .detach(|| report::with_workers(workers, || report::run_batch(&jobs, RunOptions::default())))
        .map_err(err)?
        .map_err(err)?;
    to_python(py, &report::Aggregate::new(reports).to_json())
}

#[pyfunction]
#[pyo3(signature = (quick = true, seed = 0))]
fn selftest(py: Python<'_>, quick: bool, seed: u64) -> Vec<(usize, String, bool, String)> {
    let cfg = report::SelftestConfig { seed, quick };
    py.detach(|| {
        (1..=report::CRITERIA.len())
            .map(|id| {
                let r = report::run_criterion(id, &cfg);
                (r.id, r.name.to_string(), r.passed(), r.details)
            })
            .collect()
    })
}

/// `dim D_p^k` on `L^n`.
#[pyfunction]
fn d_dim(p: u32, n: u32, k: u32) -> PyResult<i64> {
    fusion::d_dim(p, n, k).map_err(err)
}

#[pyfunction]
fn catalan(n: i64, j: i64) -> i64 {
    fusion::catalan(n, j)
}

#[pyfunction]
fn verlinde_dim(p: u32, k: u32, g: u32) -> PyResult<i64> {
    fusion::verlinde_dim(p, k, g).map_err(err)
}

#[pyfunction]
fn r_polynomial(p: u32) -> PyResult<String> {
    fusion::tschebycheff_r(p).map(|r| r.to_string()).map_err(err)
}

/// Gram-radical quotient dimension of `S^{[a, b]}` over `F_p`.
#[pyfunction]
fn simple_dim(p: u32, a: usize, b: usize) -> PyResult<usize> {
    let tau = Diagram2::new(a, b).map_err(err)?;
    resolution::simple_quotient(p, tau).map(|q| q.dim()).map_err(err)
}

/// The complex `C_{p,k}` on `L^n`, top term first.
#[pyclass(frozen)]
struct Complex {
    #[pyo3(get)]
    weights: Vec<usize>,
    #[pyo3(get)]
    dims: Vec<usize>,
    #[pyo3(get)]
    homology: Vec<usize>,
    #[pyo3(get)]
    exact: bool,
    #[pyo3(get)]
    simple_dim: usize,
}

#[pymethods]
impl Complex {
    #[new]
    fn new(py: Python<'_>, p: u32, n: usize, k: usize) -> PyResult<Self> {
        py.detach(|| {
            let cx = resolution::build_complex(p, n, k)?;
            let r = resolution::verify_exactness(&cx);
            Ok(Self {
                weights: cx.terms.iter().rev().map(|t| t.weight).collect(),
                dims: cx.terms.iter().rev().map(|t| t.dim).collect(),
                homology: r.nodes.iter().rev().map(|x| x.homology).collect(),
                exact: r.exact,
                simple_dim: r.d_dim,
            })
        })
        .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Complex(weights={:?}, dims={:?}, exact={})", self.weights, self.dims, self.exact)
    }
}

#[pymodule]
fn modres(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(run_batch, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add_function(wrap_pyfunction!(d_dim, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(verlinde_dim, m)?)?;
    m.add_function(wrap_pyfunction!(r_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(simple_dim, m)?)?;
    m.add_class::<Complex>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
