//! Python bindings for `kstab`.
//!
//! Classes cross the boundary as JSON-shaped dictionaries in the same format as
//! the command-line tool, so files written by either side are interchangeable.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use kstab::alcove::locate;
use kstab::fixtures::golden_fixture_table;
use kstab::hecke::Composite;
use kstab::kclass::KClass;
use kstab::rootdata::CartanType;
use kstab::stable::{Polarization, StableEngine, StableSpec};
use kstab::text::{parse_alcove, parse_weight};
use kstab::verify::run_suite;
use kstab::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::UnknownSuite(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_py(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_py(py),
        },
        Value::String(s) => s.into_py(py),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new_bound(py, items).into_py(py)
        }
        Value::Object(m) => {
            let d = PyDict::new_bound(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_py(py)
        }
    })
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let json = obj.py().import_bound("json")?;
    let text: String = json.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn cartan(t: &str) -> PyResult<CartanType> {
    t.parse().map_err(err)
}

fn spec(engine: &StableEngine, chamber: &str, pol: &str, alcove: &str) -> PyResult<StableSpec> {
    let rs = engine.root_system();
    let c = rs.weyl.parse(chamber).map_err(err)?;
    let p = match pol {
        "TB" => Polarization::TB,
        "TStarB" | "T*B" => Polarization::TStarB,
        other => return Err(PyValueError::new_err(format!("unknown polarization `{other}`"))),
    };
    let a = parse_alcove(alcove, rs).map_err(err)?;
    Ok(StableSpec::new(c, p, a))
}

/// Stable basis class as a dictionary `{"type", "restrictions"}`.
#[pyfunction]
#[pyo3(signature = (cartan_type, alcove, element, chamber="e", pol="TB"))]
fn stable_class(
    py: Python<'_>,
    cartan_type: &str,
    alcove: &str,
    element: &str,
    chamber: &str,
    pol: &str,
) -> PyResult<PyObject> {
    let engine = StableEngine::for_type(cartan(cartan_type)?);
    let s = spec(&engine, chamber, pol, alcove)?;
    let y = engine.root_system().weyl.parse(element).map_err(err)?;
    let k = py.allow_threads(|| engine.basis(&s)[y].clone());
    to_py(py, &k.to_json())
}

/// Restrictions of a stable basis class as display strings keyed by fixed point.
#[pyfunction]
#[pyo3(signature = (cartan_type, alcove, element, chamber="e", pol="TB"))]
fn restrictions(
    cartan_type: &str,
    alcove: &str,
    element: &str,
    chamber: &str,
    pol: &str,
) -> PyResult<std::collections::BTreeMap<String, String>> {
    let engine = StableEngine::for_type(cartan(cartan_type)?);
    let s = spec(&engine, chamber, pol, alcove)?;
    let y = engine.root_system().weyl.parse(element).map_err(err)?;
    Ok(engine.basis(&s)[y].labelled())
}

/// Wall-crossing coefficient between adjacent alcoves, as a display string.
#[pyfunction]
#[pyo3(signature = (cartan_type, source, target, element, chamber="e", pol="TB"))]
fn wall_crossing(
    cartan_type: &str,
    source: &str,
    target: &str,
    element: &str,
    chamber: &str,
    pol: &str,
) -> PyResult<String> {
    let engine = StableEngine::for_type(cartan(cartan_type)?);
    let s = spec(&engine, chamber, pol, source)?;
    let rs = engine.root_system();
    let a2 = parse_alcove(target, rs).map_err(err)?;
    let y = rs.weyl.parse(element).map_err(err)?;
    let wc = engine
        .wall_cross_coefficient(&s, &s.alcove, &a2, y)
        .map_err(err)?;
    Ok(wc.coefficient.display(rs.rank))
}

/// Canonical label of the alcove containing a point.
#[pyfunction]
fn locate_alcove(cartan_type: &str, point: &str) -> PyResult<String> {
    let rs = cartan(cartan_type)?.root_system();
    let p = parse_weight(point, &rs).map_err(err)?;
    Ok(locate(&rs, &p).map_err(err)?.label(&rs))
}

/// Applies comma-separated operators, right to left, to a class dictionary.
#[pyfunction]
fn apply(py: Python<'_>, op: &str, class: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    let f = KClass::from_json(&from_py(class)?).map_err(err)?;
    let c = Composite::parse(op, f.root_system()).map_err(err)?;
    to_py(py, &c.apply(&f).to_json())
}

/// Pairing of two class dictionaries, as a display string.
#[pyfunction]
fn pair(left: &Bound<'_, PyAny>, right: &Bound<'_, PyAny>) -> PyResult<String> {
    let l = KClass::from_json(&from_py(left)?).map_err(err)?;
    let r = KClass::from_json(&from_py(right)?).map_err(err)?;
    if l.cartan_type() != r.cartan_type() {
        return Err(PyValueError::new_err("classes have different types"));
    }
    Ok(l.pair(&r).display(l.root_system().rank))
}

/// Runs a verification suite and returns its report.
#[pyfunction]
#[pyo3(signature = (name, cartan_type, seed=0, window=None))]
fn verify(py: Python<'_>, name: &str, cartan_type: &str, seed: u64, window: Option<i32>) -> PyResult<PyObject> {
    let t = cartan(cartan_type)?;
    let report = py
        .allow_threads(|| run_suite(name, t, seed, window))
        .map_err(err)?;
    to_py(py, &report.to_json())
}

/// Hard-coded fixtures with their computed values.
#[pyfunction]
fn golden_fixtures(py: Python<'_>) -> PyResult<PyObject> {
    let out = PyList::empty_bound(py);
    for fx in golden_fixture_table() {
        let (c, e) = fx.evaluate().map_err(err)?;
        let rank = fx.cartan.root_system().rank;
        let d = PyDict::new_bound(py);
        d.set_item("key", fx.key)?;
        d.set_item("type", fx.cartan.label())?;
        d.set_item("expected", e.display(rank))?;
        d.set_item("computed", c.display(rank))?;
        d.set_item("passed", c.equals(&e))?;
        d.set_item("corrected", fx.corrected)?;
        out.append(d)?;
    }
    Ok(out.into_py(py))
}

#[pymodule]
fn pykstab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(stable_class, m)?)?;
    m.add_function(wrap_pyfunction!(restrictions, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(locate_alcove, m)?)?;
    m.add_function(wrap_pyfunction!(apply, m)?)?;
    m.add_function(wrap_pyfunction!(pair, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(golden_fixtures, m)?)?;
    m.add("SUITES", kstab::verify::SUITES.to_vec())?;
    Ok(())
}
