//! Python bindings. Ideals cross the boundary in the text grammar
//! (`"n=2; x1^2, x1*x2"`) or as JSON strings; structured results come back
//! as JSON strings for `json.loads`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use resolver_lab::cli::{exit_code, EXIT_INPUT};
use resolver_lab::{
    format::ideal_from_json, gin::GinConfig, hilbert, Error, Limits, MonomialIdeal, Statement, SuiteConfig,
    VerdictContext,
};

fn to_py(e: Error) -> PyErr {
    if exit_code(&e) == EXIT_INPUT {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn ideal(text: &str) -> PyResult<MonomialIdeal> {
    let t = text.trim();
    if t.starts_with('{') {
        ideal_from_json(t)
    } else {
        resolver_lab::parse_ideal(t)
    }
    .map_err(to_py)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Canonical text form of an ideal.
#[pyfunction]
fn normalize(text: &str) -> PyResult<String> {
    Ok(resolver_lab::render_ideal(&ideal(text)?))
}

/// Total Betti numbers `β_0, β_1, ...` of the ideal.
#[pyfunction]
#[pyo3(signature = (text, field = 0))]
fn total_betti(text: &str, field: u64) -> PyResult<Vec<u64>> {
    let field = resolver_lab::Field::from_characteristic(field).map_err(to_py)?;
    let t = resolver_lab::multigraded_betti(&ideal(text)?, field, &Limits::default()).map_err(to_py)?;
    Ok(t.total)
}

/// Full Betti table JSON.
#[pyfunction]
#[pyo3(signature = (text, field = 0))]
fn betti_json(text: &str, field: u64) -> PyResult<String> {
    let field = resolver_lab::Field::from_characteristic(field).map_err(to_py)?;
    let t = resolver_lab::multigraded_betti(&ideal(text)?, field, &Limits::default()).map_err(to_py)?;
    Ok(json(&t.to_json()))
}

#[pyfunction]
fn ek_total_betti(text: &str) -> PyResult<Vec<u64>> {
    resolver_lab::ek_total_betti(&ideal(text)?).map_err(to_py)
}

/// `dim_K I_d`.
#[pyfunction]
fn hilbert_function(text: &str, d: u32) -> PyResult<u128> {
    let i = ideal(text)?;
    Ok(hilbert::HilbertData::new(&i, &Limits::default()).map_err(to_py)?.ideal_dim(d))
}

#[pyfunction]
fn lexify(text: &str) -> PyResult<String> {
    let l = resolver_lab::lexify(&ideal(text)?, &Limits::default()).map_err(to_py)?;
    Ok(resolver_lab::render_ideal(&l))
}

#[pyfunction]
fn is_gotzmann(text: &str) -> PyResult<bool> {
    resolver_lab::is_gotzmann(&ideal(text)?, &Limits::default()).map_err(to_py)
}

/// `"none"`, `"stable"` or `"strongly_stable"`.
#[pyfunction]
fn stability(text: &str) -> PyResult<String> {
    Ok(ideal(text)?.stability_class().to_string())
}

#[pyfunction]
fn lexsegment_class(text: &str) -> PyResult<String> {
    Ok(resolver_lab::lexsegment_class(&ideal(text)?).to_string())
}

/// Gin result JSON.
#[pyfunction]
#[pyo3(signature = (text, trials = 3, seed = 0))]
fn gin(text: &str, trials: usize, seed: u64) -> PyResult<String> {
    let config = GinConfig {
        trials,
        seed,
        ..GinConfig::default()
    };
    let g = resolver_lab::gin_revlex(&ideal(text)?, &config, &Limits::default()).map_err(to_py)?;
    Ok(json(&g.to_json()))
}

/// Verdict JSON for one statement id, or a JSON list for `"all"`.
#[pyfunction]
#[pyo3(signature = (text, statement = "all", seed = 0))]
fn verdict(text: &str, statement: &str, seed: u64) -> PyResult<String> {
    let i = ideal(text)?;
    let ctx = VerdictContext {
        gin: GinConfig::with_seed(seed),
        ..VerdictContext::default()
    };
    if statement == "all" {
        let vs = resolver_lab::verdicts(&i, &Statement::ALL, ctx).map_err(to_py)?;
        return Ok(json(&vs));
    }
    let s: Statement = statement.parse().map_err(to_py)?;
    Ok(json(&resolver_lab::verdict(&i, s, ctx).map_err(to_py)?))
}

/// Run the suite; `config` is a JSON object of SuiteConfig fields.
#[pyfunction]
#[pyo3(signature = (config = None))]
fn run_suite(py: Python<'_>, config: Option<&str>) -> PyResult<String> {
    let config: SuiteConfig = match config {
        Some(c) => serde_json::from_str(c).map_err(|e| PyValueError::new_err(e.to_string()))?,
        None => SuiteConfig::default(),
    };
    let report = py.detach(|| resolver_lab::run_suite(&config)).map_err(to_py)?;
    Ok(report.to_json())
}

#[pymodule]
fn resolver_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(total_betti, m)?)?;
    m.add_function(wrap_pyfunction!(betti_json, m)?)?;
    m.add_function(wrap_pyfunction!(ek_total_betti, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_function, m)?)?;
    m.add_function(wrap_pyfunction!(lexify, m)?)?;
    m.add_function(wrap_pyfunction!(is_gotzmann, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add_function(wrap_pyfunction!(lexsegment_class, m)?)?;
    m.add_function(wrap_pyfunction!(gin, m)?)?;
    m.add_function(wrap_pyfunction!(verdict, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
