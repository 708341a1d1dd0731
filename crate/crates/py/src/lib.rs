//! Python bindings: the key grammar, the evaluator and the oracles.
//!
//! Values are returned as strings (`"2875"` or `"4876875/8"`) or as
//! `(numerator, denominator)` string pairs so Python callers can build
//! `fractions.Fraction` objects without precision loss.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use relgw::engine::instanton_table;
use relgw::{CacheStore, InvariantKey};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Memoizing evaluator. Construct with an optional cache-file path; the
/// cache is loaded eagerly and written back by `save_cache`.
#[pyclass]
struct Engine {
    inner: relgw::Engine,
}

#[pymethods]
impl Engine {
    #[new]
    #[pyo3(signature = (cache=None))]
    fn new(cache: Option<String>) -> PyResult<Self> {
        let inner = match cache {
            Some(path) if std::path::Path::new(&path).exists() => {
                let store = CacheStore::load(std::path::Path::new(&path)).map_err(runtime_err)?;
                relgw::Engine::with_cache(store)
            }
            _ => relgw::Engine::new(),
        };
        Ok(Engine { inner })
    }

    /// Evaluates a key string, returning the exact value as a string.
    fn evaluate(&mut self, key: &str) -> PyResult<String> {
        let key = InvariantKey::parse(key).map_err(value_err)?;
        let v = self.inner.evaluate(&key).map_err(runtime_err)?;
        Ok(v.to_string())
    }

    /// Evaluates a key string, returning `(numerator, denominator)`.
    fn evaluate_parts(&mut self, key: &str) -> PyResult<(String, String)> {
        let key = InvariantKey::parse(key).map_err(value_err)?;
        let v = self.inner.evaluate(&key).map_err(runtime_err)?;
        Ok((v.numer().to_string(), v.denom().to_string()))
    }

    /// Canonical form of a key string.
    fn canonicalize(&self, key: &str) -> PyResult<String> {
        let key = InvariantKey::parse(key).map_err(value_err)?;
        Ok(key.canonicalize().serialize())
    }

    /// Virtual dimension of the moduli space behind a key.
    fn vdim(&self, key: &str) -> PyResult<i64> {
        let key = InvariantKey::parse(key).map_err(value_err)?;
        Ok(key.vdim())
    }

    /// Instanton table of a Calabi-Yau hypersurface: rows `(d, I_d, n_d)`.
    fn instanton_table(
        &mut self,
        ambient_dim: u32,
        hyp_degree: u32,
        max_degree: u32,
    ) -> PyResult<Vec<(u32, String, String)>> {
        let rows = instanton_table(&mut self.inner, ambient_dim, hyp_degree, max_degree)
            .map_err(runtime_err)?;
        Ok(rows
            .into_iter()
            .map(|(d, i_d, n_d)| (d, i_d.to_string(), n_d.to_string()))
            .collect())
    }

    fn cache_len(&self) -> usize {
        self.inner.cache().len()
    }

    fn cache_hits(&self) -> u64 {
        self.inner.cache_hits()
    }

    /// Writes the memo table to a cache file (sorted, plain text).
    fn save_cache(&self, path: &str) -> PyResult<()> {
        self.inner
            .cache()
            .save(std::path::Path::new(path))
            .map_err(runtime_err)
    }
}

/// Lines on a generic degree-`l` hypersurface in projective `N`-space,
/// by Schubert calculus.
#[pyfunction]
fn schubert_lines(ambient_dim: u32, hyp_degree: u32) -> PyResult<String> {
    relgw::oracles::schubert_lines(ambient_dim, hyp_degree)
        .map(|n| n.to_string())
        .map_err(value_err)
}

/// Degrees `1..=dmax` of rational plane curves through `3d-1` points.
#[pyfunction]
fn kontsevich_p2(dmax: u32) -> Vec<String> {
    relgw::oracles::kontsevich_p2(dmax)
        .into_iter()
        .map(|n| n.to_string())
        .collect()
}

/// Quintic mirror data: `(invariants I_d, instanton numbers n_d)` for
/// `d = 1..=dmax`, as strings.
#[pyfunction]
fn quintic_mirror(dmax: u32) -> PyResult<(Vec<String>, Vec<String>)> {
    let q = relgw::oracles::quintic_mirror(dmax).map_err(value_err)?;
    Ok((
        q.invariants.iter().map(|r| r.to_string()).collect(),
        q.instantons.iter().map(|n| n.to_string()).collect(),
    ))
}

/// Runs the fast self-verification suite; returns
/// `(passed, [(name, passed, millis, detail), ...])`.
#[pyfunction]
fn verify_fast() -> (bool, Vec<(String, bool, u64, String)>) {
    let report = relgw::verify::run(relgw::verify::Level::Fast);
    let checks = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), c.passed, c.millis as u64, c.detail.clone()))
        .collect();
    (report.passed(), checks)
}

#[pymodule]
fn relgw_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Engine>()?;
    m.add_function(wrap_pyfunction!(schubert_lines, m)?)?;
    m.add_function(wrap_pyfunction!(kontsevich_p2, m)?)?;
    m.add_function(wrap_pyfunction!(quintic_mirror, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fast, m)?)?;
    Ok(())
}
