// SPDX-License-Identifier: Apache-2.0

//! Python bindings for the `leafsynth` synthesizer.

use std::time::Duration;

use leafsynth::analysis::{expressiveness as lib_expressiveness, standard_cost_functions, two_input_function_name};
use leafsynth::rewrite::to_less_form;
use leafsynth::{
    builtin_library, parse_formula as core_parse, synthesize_formula, synthesize_table, Bounds, Circuit, CostModel,
    Error, GateLibrary, BUILTIN_LIBRARIES,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pyleafsynth, NotFoundError, PyException);
create_exception!(pyleafsynth, CapacityError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotFound { .. } => NotFoundError::new_err(e.to_string()),
        Error::Timeout(_) => PyTimeoutError::new_err(e.to_string()),
        Error::Capacity(_) => CapacityError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn table_text(t: leafsynth::TruthTable) -> String {
    format!("n={}:{}", t.num_vars(), t.to_binary_string())
}

#[pyclass(frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct TruthTable(leafsynth::TruthTable);

#[pymethods]
impl TruthTable {
    #[new]
    fn new(num_vars: usize, bits: u64) -> PyResult<Self> {
        leafsynth::TruthTable::new(num_vars, bits).map(TruthTable).map_err(to_py)
    }

    /// Parses `n=K:0x..`, `n=K:0b..` or a bare `0b..` string.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(TruthTable).map_err(to_py)
    }

    #[staticmethod]
    fn var(num_vars: usize, k: usize) -> PyResult<Self> {
        leafsynth::var_table(num_vars, k).map(TruthTable).map_err(to_py)
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    #[getter]
    fn bits(&self) -> u64 {
        self.0.bits()
    }

    fn binary(&self) -> String {
        table_text(self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TruthTable({}, {:#x})", self.0.num_vars(), self.0.bits())
    }
}

/// Canonical printed form of a formula.
#[pyfunction]
fn parse_formula(text: &str) -> PyResult<String> {
    core_parse(text).map(|f| f.to_string()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (text, num_vars=None))]
fn eval_formula(text: &str, num_vars: Option<usize>) -> PyResult<TruthTable> {
    let f = core_parse(text).map_err(to_py)?;
    f.truth_table(num_vars.unwrap_or_else(|| f.num_inputs())).map(TruthTable).map_err(to_py)
}

#[pyfunction]
fn libraries() -> Vec<&'static str> {
    BUILTIN_LIBRARIES.to_vec()
}

fn library(name: &str) -> PyResult<GateLibrary> {
    builtin_library(name).map_err(to_py)
}

fn circuit_dict<'py>(py: Python<'py>, c: &Circuit) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("formula", c.formula.to_string())?;
    d.set_item("gates", c.gate_count)?;
    d.set_item("cost", c.cost)?;
    d.set_item("depth", c.depth)?;
    d.set_item("exact", c.exact)?;
    d.set_item("truth", table_text(c.truth))?;
    Ok(d)
}

/// Minimal circuit for a formula (text) or a `TruthTable`.
#[pyfunction]
#[pyo3(signature = (target, library="less,1", cost="gates", max_gates=10, max_depth=None, timeout=None, threads=1))]
#[allow(clippy::too_many_arguments)]
fn synthesize<'py>(
    py: Python<'py>,
    target: &Bound<'py, PyAny>,
    library: &str,
    cost: &str,
    max_gates: usize,
    max_depth: Option<usize>,
    timeout: Option<f64>,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let lib = self::library(library)?;
    let cost_model: CostModel = cost.parse().map_err(to_py)?;
    let timeout = match timeout {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(PyValueError::new_err("timeout must be non-negative")),
        s => s.map(Duration::from_secs_f64),
    };
    let bounds = Bounds { max_gates, max_depth, timeout, threads: threads.max(1) };
    let circuit = if let Ok(table) = target.extract::<TruthTable>() {
        py.detach(|| synthesize_table(table.0, &lib, cost_model, &bounds))
    } else {
        let text: String = target.extract()?;
        py.detach(|| synthesize_formula(&text, &lib, cost_model, &bounds))
    }
    .map_err(to_py)?;
    circuit_dict(py, &circuit)
}

/// `(<, 1)` form of a formula.
#[pyfunction]
fn rewrite(text: &str) -> PyResult<String> {
    let f = core_parse(text).map_err(to_py)?;
    to_less_form(&f).map(|t| t.output.to_string()).map_err(to_py)
}

#[pyfunction]
fn expressiveness<'py>(py: Python<'py>, library: &str) -> PyResult<Bound<'py, PyDict>> {
    let lib = self::library(library)?;
    let report = py.detach(|| lib_expressiveness(&lib)).map_err(to_py)?;
    let counts = PyDict::new(py);
    for code in 0..16u8 {
        counts.set_item(two_input_function_name(code), report.counts[code as usize])?;
    }
    let d = PyDict::new(py);
    d.set_item("library", &report.library)?;
    d.set_item("counts", counts)?;
    d.set_item("total", report.total)?;
    d.set_item("non_redundant", report.non_redundant)?;
    let unreachable: Vec<&str> = report.unreachable.iter().map(|&c| two_input_function_name(c)).collect();
    d.set_item("unreachable", unreachable)?;
    Ok(d)
}

/// Rows of `(name, less_cost, nand_cost)`.
#[pyfunction]
fn transistor_table(py: Python<'_>) -> PyResult<Vec<(String, u64, u64)>> {
    let report = py.detach(|| leafsynth::analysis::transistor_table(&standard_cost_functions())).map_err(to_py)?;
    Ok(report.rows.into_iter().map(|r| (r.name, r.less_cost, r.nand_cost)).collect())
}

#[pymodule]
fn pyleafsynth(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TruthTable>()?;
    m.add_function(wrap_pyfunction!(parse_formula, m)?)?;
    m.add_function(wrap_pyfunction!(eval_formula, m)?)?;
    m.add_function(wrap_pyfunction!(libraries, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(rewrite, m)?)?;
    m.add_function(wrap_pyfunction!(expressiveness, m)?)?;
    m.add_function(wrap_pyfunction!(transistor_table, m)?)?;
    m.add("NotFoundError", m.py().get_type::<NotFoundError>())?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    Ok(())
}
