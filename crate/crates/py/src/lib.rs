//! Python bindings. Structured results come back as plain dicts and lists.

use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use hyperspan_core::format::{parse_hg, write_hg};
use hyperspan_core::lab::threshold::{exact_threshold as core_threshold, ThresholdConfig};
use hyperspan_core::lab::tightness::{tightness_report as core_tightness, TheoremId, TightnessConfig};
use hyperspan_core::procedures;
use hyperspan_core::solvers::{self, SolveOptions, Structure};
use hyperspan_core::{constructions, Edge};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn structure(name: &str) -> PyResult<Structure> {
    name.parse().map_err(err)
}

#[pyclass(name = "Hypergraph", module = "hyperspan", frozen)]
struct PyHypergraph {
    inner: hyperspan_core::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(r: usize, n: usize, edges: Vec<Edge>) -> PyResult<Self> {
        hyperspan_core::Hypergraph::new(r, n, edges).map(|inner| Self { inner }).map_err(err)
    }

    /// Parses the `.hg` text format.
    #[staticmethod]
    fn from_hg(text: &str) -> PyResult<Self> {
        parse_hg(text).map(|inner| Self { inner }).map_err(err)
    }

    fn to_hg(&self) -> String {
        write_hg(&self.inner)
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<Edge> {
        self.inner.edges().to_vec()
    }

    fn codegree(&self, set: Vec<usize>) -> PyResult<usize> {
        self.inner.codegree(&set).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(r={}, n={}, edges={})", self.inner.r(), self.inner.n(), self.inner.edge_count())
    }
}

fn wrap(inner: hyperspan_core::Hypergraph) -> PyHypergraph {
    PyHypergraph { inner }
}

#[pyfunction]
fn degree_profile<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &hyperspan_core::degree_profile(&h.inner))
}

/// Returns the hypergraph and its construction sheet.
#[pyfunction]
fn make_huv<'py>(py: Python<'py>, r: usize, n: usize, v: usize) -> PyResult<(PyHypergraph, Bound<'py, PyAny>)> {
    let (h, sheet) = constructions::make_huv(r, n, v).map_err(err)?;
    Ok((wrap(h), to_py(py, &sheet)?))
}

#[pyfunction]
fn complete(r: usize, n: usize) -> PyResult<PyHypergraph> {
    constructions::complete(r, n).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (r, n, t, p, seed = 0))]
fn sample_with_floor(r: usize, n: usize, t: usize, p: f64, seed: u64) -> PyResult<PyHypergraph> {
    constructions::sample_with_floor(r, n, t, p, seed).map(wrap).map_err(err)
}

/// Perfect matching as a list of edges, or None.
#[pyfunction]
fn has_perfect_matching(py: Python<'_>, h: &PyHypergraph) -> Option<Vec<Edge>> {
    py.detach(|| solvers::has_perfect_matching(&h.inner)).map(|m| m.edges)
}

/// Exact solver; returns `{"answer", "certificate", "stats"}`.
#[pyfunction]
#[pyo3(signature = (h, structure, deadline_ms = None, force = false))]
fn solve<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    structure: &str,
    deadline_ms: Option<u64>,
    force: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let s = self::structure(structure)?;
    let opts = SolveOptions {
        deadline: deadline_ms.map(Duration::from_millis),
        force,
    };
    let solved = py.detach(|| solvers::solve_structure(&h.inner, s, &opts)).map_err(err)?;
    let verdict = serde_json::to_value(&solved.verdict).map_err(err)?;
    let out = serde_json::json!({
        "answer": solved.verdict.label(),
        "certificate": verdict["certificate"],
        "stats": solved.stats,
    });
    to_py(py, &out)
}

#[pyfunction]
fn berge_lift<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
    let out = py.detach(|| procedures::berge_lift(&h.inner)).map_err(err)?;
    to_py(py, &out)
}

#[pyfunction]
fn perfect_matching_via_extenders<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
    let out = py.detach(|| procedures::perfect_matching_via_extenders(&h.inner)).map_err(err)?;
    to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (h, epsilon = 0.1, seed = 0))]
fn assemble_loose_hc<'py>(py: Python<'py>, h: &PyHypergraph, epsilon: f64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let cfg = procedures::AssemblyConfig::new(epsilon, seed);
    let out = py.detach(|| procedures::assemble_loose_hc_with(&h.inner, &cfg)).map_err(err)?;
    to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (r, n, structure, seed = 0, samples_per_floor = 50, force_sampling = false, deadline_ms = None))]
#[allow(clippy::too_many_arguments)]
fn exact_threshold<'py>(
    py: Python<'py>,
    r: usize,
    n: usize,
    structure: &str,
    seed: u64,
    samples_per_floor: usize,
    force_sampling: bool,
    deadline_ms: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = self::structure(structure)?;
    let cfg = ThresholdConfig {
        seed,
        samples_per_floor,
        force_sampling,
        deadline: deadline_ms.map(Duration::from_millis),
    };
    let rep = py.detach(|| core_threshold(r, n, s, &cfg)).map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (theorem, ns, r = None, seed = 0, samples = 40))]
fn tightness_report<'py>(
    py: Python<'py>,
    theorem: &str,
    ns: Vec<usize>,
    r: Option<usize>,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let id: TheoremId = theorem.parse().map_err(err)?;
    let cfg = TightnessConfig {
        r,
        seed,
        samples,
        ..Default::default()
    };
    let rep = py.detach(|| core_tightness(id, &ns, &cfg)).map_err(err)?;
    to_py(py, &rep)
}

#[pymodule]
fn hyperspan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(degree_profile, m)?)?;
    m.add_function(wrap_pyfunction!(make_huv, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(sample_with_floor, m)?)?;
    m.add_function(wrap_pyfunction!(has_perfect_matching, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(berge_lift, m)?)?;
    m.add_function(wrap_pyfunction!(perfect_matching_via_extenders, m)?)?;
    m.add_function(wrap_pyfunction!(assemble_loose_hc, m)?)?;
    m.add_function(wrap_pyfunction!(exact_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(tightness_report, m)?)?;
    Ok(())
}
