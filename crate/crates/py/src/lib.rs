//! Python bindings. Exact rationals are returned as `fractions.Fraction`,
//! structured results as plain dicts and lists.

use std::sync::Arc;

use eucseq::io::{parse_compact, parse_cycle};
use eucseq::{ExactRational, SequencingProblem};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: eucseq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A multiset of symbols to be arranged on a circle.
#[pyclass(name = "Problem", module = "eucseq", frozen, from_py_object)]
#[derive(Clone)]
struct PyProblem {
    inner: Arc<SequencingProblem>,
}

#[pymethods]
impl PyProblem {
    #[new]
    fn new(symbols: Vec<String>, multiplicities: Vec<usize>) -> PyResult<Self> {
        let inner = SequencingProblem::new(symbols, multiplicities).map_err(err)?;
        Ok(Self { inner: Arc::new(inner) })
    }

    #[staticmethod]
    #[pyo3(signature = (m1, m2, labels = ("a".to_owned(), "b".to_owned())))]
    fn binary(m1: usize, m2: usize, labels: (String, String)) -> PyResult<Self> {
        let inner = SequencingProblem::binary(&labels.0, &labels.1, m1, m2).map_err(err)?;
        Ok(Self { inner: Arc::new(inner) })
    }

    #[getter]
    fn symbols(&self) -> Vec<String> {
        self.inner.symbols().to_vec()
    }

    #[getter]
    fn multiplicities(&self) -> Vec<usize> {
        self.inner.multiplicities().to_vec()
    }

    #[getter]
    fn total(&self) -> usize {
        self.inner.total()
    }

    #[getter]
    fn alphabet_size(&self) -> usize {
        self.inner.alphabet_size()
    }

    fn distance_spec<'py>(&self, py: Python<'py>, label: &str) -> PyResult<Bound<'py, PyAny>> {
        let k = symbol_index(&self.inner, label)?;
        to_python(py, &eucseq::distance_spec(&self.inner, k).map_err(err)?)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Problem({:?}, {:?})", self.inner.symbols(), self.inner.multiplicities())
    }
}

fn symbol_index(problem: &SequencingProblem, label: &str) -> PyResult<usize> {
    problem
        .index_of(label)
        .ok_or_else(|| err(eucseq::Error::UnknownSymbol(label.to_owned())))
}

/// An admissible circular arrangement.
#[pyclass(name = "Cycle", module = "eucseq", frozen, from_py_object)]
#[derive(Clone)]
struct PyCycle {
    inner: eucseq::Cycle,
}

#[pymethods]
impl PyCycle {
    #[new]
    fn new(problem: &PyProblem, labels: Vec<String>) -> PyResult<Self> {
        let inner = eucseq::Cycle::from_labels(problem.inner.clone(), &labels).map_err(err)?;
        Ok(Self { inner })
    }

    /// Compact string such as `"01101101"`, or cycle JSON.
    #[staticmethod]
    #[pyo3(signature = (text, labels = None))]
    fn parse(text: &str, labels: Option<Vec<String>>) -> PyResult<Self> {
        let inner = parse_cycle(text, labels.as_deref()).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn problem(&self) -> PyProblem {
        PyProblem { inner: self.inner.problem_arc().clone() }
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().into_iter().map(str::to_owned).collect()
    }

    #[getter]
    fn positions(&self) -> Vec<usize> {
        self.inner.positions().to_vec()
    }

    #[getter]
    fn distances(&self) -> Vec<usize> {
        self.inner.distances().deltas
    }

    fn mean<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &eucseq::mean(&self.inner))
    }

    fn variance<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &eucseq::variance(&self.inner))
    }

    fn raw_moment<'py>(&self, py: Python<'py>, p: u32) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &eucseq::raw_moment(&self.inner, p).map_err(err)?)
    }

    fn central_moment<'py>(&self, py: Python<'py>, p: u32) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &eucseq::central_moment(&self.inner, p).map_err(err)?)
    }

    fn pulse_variance<'py>(&self, py: Python<'py>, label: &str) -> PyResult<Bound<'py, PyAny>> {
        let k = symbol_index(self.inner.problem(), label)?;
        fraction(py, &eucseq::pulse_variance(&self.inner, k).map_err(err)?)
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &eucseq::verify_optimal(&self.inner).map_err(err)?)
    }

    fn canonical(&self) -> Self {
        Self { inner: self.inner.canonical() }
    }

    fn rotate(&self, r: usize) -> Self {
        Self { inner: self.inner.rotate(r) }
    }

    fn rotation_eq(&self, other: &Self) -> bool {
        self.inner.rotation_eq(&other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.display_string()
    }

    fn __repr__(&self) -> String {
        format!("Cycle({:?})", self.inner.display_string())
    }
}

/// Iteration record of the Euclidean construction.
#[pyclass(name = "EsaTrace", module = "eucseq", frozen)]
struct PyEsaTrace {
    inner: eucseq::EsaTrace,
}

#[pymethods]
impl PyEsaTrace {
    #[getter]
    fn cycle(&self) -> PyCycle {
        PyCycle { inner: self.inner.result.clone() }
    }

    #[getter]
    fn final_power(&self) -> u64 {
        self.inner.final_power
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations()
    }

    fn steps<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &self.inner.to_json().steps)
    }

    fn table(&self) -> String {
        self.inner.render_table()
    }

    fn closing(&self) -> String {
        self.inner.closing_formula()
    }
}

#[pyfunction]
fn esa_solve(problem: &PyProblem) -> PyResult<PyEsaTrace> {
    Ok(PyEsaTrace { inner: eucseq::esa_solve(problem.inner.clone()).map_err(err)? })
}

#[pyfunction]
fn uniform_cycle(problem: &PyProblem) -> PyResult<PyCycle> {
    Ok(PyCycle { inner: eucseq::uniform_cycle(problem.inner.clone()).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (text, labels = None))]
fn parse_compact_cycle(text: &str, labels: Option<Vec<String>>) -> PyResult<PyCycle> {
    Ok(PyCycle { inner: parse_compact(text, labels.as_deref()).map_err(err)? })
}

#[pyfunction]
fn variance<'py>(py: Python<'py>, cycle: &PyCycle) -> PyResult<Bound<'py, PyAny>> {
    cycle.variance(py)
}

#[pyfunction]
fn pulse_variance<'py>(py: Python<'py>, cycle: &PyCycle, label: &str) -> PyResult<Bound<'py, PyAny>> {
    cycle.pulse_variance(py, label)
}

#[pyfunction]
fn verify_optimal<'py>(py: Python<'py>, cycle: &PyCycle) -> PyResult<Bound<'py, PyAny>> {
    cycle.verify(py)
}

/// Lower bound on the sum of squared distances.
#[pyfunction]
fn lower_bound<'py>(py: Python<'py>, problem: &PyProblem) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &eucseq::lower_bound(&problem.inner))
}

#[pyfunction]
#[pyo3(signature = (problem, cap = eucseq::DEFAULT_CAP, workers = 1))]
fn exact_min<'py>(py: Python<'py>, problem: &PyProblem, cap: usize, workers: usize) -> PyResult<Bound<'py, PyAny>> {
    let inner = problem.inner.clone();
    let result = py
        .detach(move || eucseq::exact_min_parallel(inner, cap, workers))
        .map_err(err)?;
    let dict = to_python(py, &result)?;
    dict.set_item("min_variance", fraction(py, &result.min_variance)?)?;
    Ok(dict)
}

/// The integer program in LP format.
#[pyfunction]
fn export_miqp(problem: &PyProblem) -> PyResult<String> {
    Ok(eucseq::build_model(&problem.inner).map_err(err)?.to_lp())
}

#[pymodule]
#[pyo3(name = "eucseq")]
fn eucseq_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProblem>()?;
    m.add_class::<PyCycle>()?;
    m.add_class::<PyEsaTrace>()?;
    m.add_function(wrap_pyfunction!(esa_solve, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(parse_compact_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(variance, m)?)?;
    m.add_function(wrap_pyfunction!(pulse_variance, m)?)?;
    m.add_function(wrap_pyfunction!(verify_optimal, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(exact_min, m)?)?;
    m.add_function(wrap_pyfunction!(export_miqp, m)?)?;
    Ok(())
}
