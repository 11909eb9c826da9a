//! Python bindings for `hookdist`.

use std::collections::BTreeMap;

use hookdist::engine;
use hookdist::identities::{han_yz_check, nekrasov_okounkov_check};
use hookdist::stats::{exact_moments, params_for, table_row as core_table_row};
use hookdist::{special, Error, Flavor, Partition};
use num_bigint::BigUint;
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(m) => PyValueError::new_err(m),
        Error::ResourceGuard(m) => PyMemoryError::new_err(m),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn flavor(s: &str) -> PyResult<Flavor> {
    s.parse().map_err(to_py)
}

/// All partitions of `n` as lists of parts, reverse-lexicographic.
#[pyfunction]
fn partitions(n: usize) -> Vec<Vec<usize>> {
    hookdist::enumerate_partitions(n).map(|l| l.parts().to_vec()).collect()
}

/// Hook lengths of the partition with the given parts, largest first.
#[pyfunction]
fn hook_lengths(parts: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(Partition::new(parts).map_err(to_py)?.hook_lengths().sorted())
}

/// Exact distribution as a dict with `n`, `t`, `flavor`, `total` and `counts` (m -> count).
#[pyfunction]
#[pyo3(signature = (n, t, flavor = "multiple"))]
fn distribution<'py>(py: Python<'py>, n: usize, t: usize, flavor: &str) -> PyResult<Bound<'py, PyDict>> {
    let f = self::flavor(flavor)?;
    let d = py.detach(|| hookdist::exact_distribution(n, t, f)).map_err(to_py)?;
    let counts: BTreeMap<usize, BigUint> = d.counts().clone();
    let out = PyDict::new(py);
    out.set_item("n", n)?;
    out.set_item("t", t)?;
    out.set_item("flavor", f.as_str())?;
    out.set_item("total", d.total().clone())?;
    out.set_item("counts", counts)?;
    Ok(out)
}

/// Probabilities `(m, P(m))` from the floating-point ring.
#[pyfunction]
#[pyo3(signature = (n, t, flavor = "multiple"))]
fn float_distribution(py: Python<'_>, n: usize, t: usize, flavor: &str) -> PyResult<Vec<(usize, f64)>> {
    let f = self::flavor(flavor)?;
    let d = py.detach(|| hookdist::float_distribution(n, t, f)).map_err(to_py)?;
    Ok(d.probabilities)
}

/// `(sign, ln |P(n; x)|)` for the marker polynomial at `x`.
#[pyfunction]
#[pyo3(signature = (n, t, x, flavor = "equal"))]
fn evaluate_p(py: Python<'_>, n: usize, t: usize, x: f64, flavor: &str) -> PyResult<(f64, f64)> {
    let f = self::flavor(flavor)?;
    let v = py.detach(|| engine::evaluate_p(n, t, f, x)).map_err(to_py)?;
    Ok((v.sign, v.ln_abs))
}

/// Exact `(mean, variance, mode)` of the statistic.
#[pyfunction]
#[pyo3(signature = (n, t, flavor = "multiple"))]
fn moments(py: Python<'_>, n: usize, t: usize, flavor: &str) -> PyResult<(f64, f64, usize)> {
    let f = self::flavor(flavor)?;
    let d = py.detach(|| hookdist::exact_distribution(n, t, f)).map_err(to_py)?;
    let m = exact_moments(&d);
    Ok((m.mean_f64(), m.variance_f64(), m.mode))
}

/// Asymptotic mean, variance and mode (`None` for hooks equal to t).
#[pyfunction]
#[pyo3(signature = (n, t, flavor = "multiple"))]
fn theorem_params<'py>(py: Python<'py>, n: usize, t: usize, flavor: &str) -> PyResult<Bound<'py, PyDict>> {
    let p = params_for(n, t, self::flavor(flavor)?).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("mean", p.mean)?;
    out.set_item("variance", p.variance)?;
    out.set_item("mode", p.mode)?;
    Ok(out)
}

/// One comparison row `(k, D, limit, ratio)` at standardized point `x`.
#[pyfunction]
#[pyo3(signature = (n, t, x, flavor = "multiple"))]
fn table_row(py: Python<'_>, n: usize, t: usize, x: f64, flavor: &str) -> PyResult<(i64, f64, f64, f64)> {
    let f = self::flavor(flavor)?;
    let p = params_for(n, t, f).map_err(to_py)?;
    let d = py.detach(|| hookdist::exact_distribution(n, t, f)).map_err(to_py)?;
    let r = core_table_row(&d, &p, x);
    Ok((r.k, r.d, r.limit, r.ratio))
}

/// Whether the two q-series identities hold through the given order.
#[pyfunction]
fn check_identities(order: usize) -> PyResult<(bool, bool)> {
    let no = nekrasov_okounkov_check(order).map_err(to_py)?.holds();
    let han = [2usize, 3]
        .iter()
        .map(|&t| han_yz_check(order, t).map(|r| r.holds()))
        .collect::<hookdist::Result<Vec<_>>>()
        .map_err(to_py)?;
    Ok((no, han.iter().all(|&h| h)))
}

#[pyfunction]
fn normal_cdf(x: f64) -> f64 {
    special::normal_cdf(x)
}

#[pyfunction]
fn dilog(x: f64) -> PyResult<f64> {
    special::dilog(x).map_err(to_py)
}

#[pyfunction]
fn lower_incomplete_gamma(s: f64, x: f64) -> PyResult<f64> {
    special::lower_incomplete_gamma(s, x).map_err(to_py)
}

/// Limit CDF of the standardized statistic at `x`.
#[pyfunction]
#[pyo3(signature = (n, t, x, flavor = "multiple"))]
fn limit_cdf(n: usize, t: usize, x: f64, flavor: &str) -> PyResult<f64> {
    let p = params_for(n, t, self::flavor(flavor)?).map_err(to_py)?;
    Ok(p.limit_model().cdf(x))
}

#[pymodule]
fn hookdist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(hook_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(float_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_p, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_params, m)?)?;
    m.add_function(wrap_pyfunction!(table_row, m)?)?;
    m.add_function(wrap_pyfunction!(check_identities, m)?)?;
    m.add_function(wrap_pyfunction!(normal_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(dilog, m)?)?;
    m.add_function(wrap_pyfunction!(lower_incomplete_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(limit_cdf, m)?)?;
    Ok(())
}
