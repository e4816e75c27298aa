//! Python bindings. Surfaces are passed as a built-in name, a path to a
//! skeleton file, or skeleton JSON text; words and expressions use the same
//! text grammars as the command line; structured results come back as JSON
//! strings. Engine errors surface as `ValueError`.
//!
//! The plain functions in [`api`] carry the logic so they can be tested
//! without an interpreter; the `#[pyfunction]`s only convert.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

pub mod api {
    use gtbv::cli::{display_loop_sum, load_surface, parse_function, parse_loop_sum, parse_wedge_sum};
    use gtbv::harness::{run_suite, Suite, SuiteConfig};
    use gtbv::loops::formal::display_wedges;
    use gtbv::loops::{LoopAlgebra, WedgeSum};
    use gtbv::modulispace::{eval, quasi_bv_delta, GroupSpec, ModuliPoint};
    use gtbv::superalgebra::Rational;
    use gtbv::surface::{parse_skeleton, Skeleton};
    use gtbv::{Error, Result};
    use serde_json::json;

    pub fn surface(spec: &str) -> Result<Skeleton> {
        if spec.trim_start().starts_with('{') {
            parse_skeleton(spec)
        } else {
            load_surface(Some(spec))
        }
    }

    pub fn group(name: &str, n: usize) -> Result<GroupSpec> {
        match name.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupSpec::Gl(n)),
            "q" => Ok(GroupSpec::Q(n)),
            "aff" => Ok(GroupSpec::Aff1Double),
            other => Err(Error::InvalidConfig(format!("unknown group family `{other}` (gl, q, aff)"))),
        }
    }

    pub fn surface_json(spec: &str) -> Result<String> {
        Ok(surface(spec)?.to_json())
    }

    pub fn surface_info(spec: &str) -> Result<String> {
        let sk = surface(spec)?;
        let cycles: Vec<Vec<&str>> =
            sk.boundary_cycles().iter().map(|c| c.iter().map(|h| sk.halfedge_name(*h)).collect()).collect();
        Ok(json!({ "info": sk.info()?, "boundary_cycles": cycles }).to_string())
    }

    pub fn bracket(spec: &str, x: &str, y: &str, seed: u64, keep_trivial: bool) -> Result<String> {
        let sk = surface(spec)?;
        let alg = LoopAlgebra::new(&sk, seed, keep_trivial)?;
        Ok(display_loop_sum(&sk, &alg.bracket(&parse_loop_sum(&sk, x)?, &parse_loop_sum(&sk, y)?)?))
    }

    pub fn cobracket(spec: &str, x: &str, seed: u64) -> Result<String> {
        let sk = surface(spec)?;
        let alg = LoopAlgebra::new(&sk, seed, false)?;
        let mut d = WedgeSum::zero();
        for (g, c) in parse_loop_sum(&sk, x)?.iter() {
            d.add_scaled(&alg.cobracket_gen(g)?, c);
        }
        Ok(display_wedges(&sk, &d))
    }

    pub fn bv_delta_wedge(spec: &str, x: &str, cobracket_scale: &str, seed: u64) -> Result<String> {
        let sk = surface(spec)?;
        let scale: Rational = cobracket_scale.parse().map_err(|e: gtbv::superalgebra::rational::ParseRationalError| Error::parse(0, e.to_string()))?;
        let alg = LoopAlgebra::new(&sk, seed, false)?;
        Ok(display_wedges(&sk, &alg.bv_delta_wedge(&parse_wedge_sum(&sk, x)?, &scale)?))
    }

    /// Value of a function expression at the seeded random point.
    pub fn evaluate(spec: &str, expr: &str, g: GroupSpec, seed: u64) -> Result<String> {
        let sk = surface(spec)?;
        let f = parse_function(&sk, expr)?;
        Ok(eval(&f.into(), &ModuliPoint::random(&sk, g, seed)?)?.to_string())
    }

    /// Quasi-BV operator applied to an expression, at the seeded random point.
    pub fn quasi_bv(spec: &str, expr: &str, g: GroupSpec, seed: u64) -> Result<String> {
        let sk = surface(spec)?;
        let lie = g.odd_data().ok_or_else(|| Error::UnsupportedFunction(format!("quasi-BV operator on {}", g.name())))?;
        let f = parse_function(&sk, expr)?;
        Ok(eval(&quasi_bv_delta(&sk, g, &lie, &f.into()), &ModuliPoint::random(&sk, g, seed)?)?.to_string())
    }

    pub fn random_point(spec: &str, g: GroupSpec, seed: u64) -> Result<String> {
        Ok(ModuliPoint::random(&surface(spec)?, g, seed)?.to_json().to_string())
    }

    /// Report JSON with `elapsed_ms` zeroed unless `timing`.
    pub fn verify(
        suite: &str,
        trials: Option<usize>,
        seed: u64,
        surfaces: &[String],
        groups: &[GroupSpec],
        timing: bool,
    ) -> Result<(bool, String)> {
        let suite: Suite = suite.parse()?;
        let mut cfg = SuiteConfig::new(suite).seed(seed);
        if let Some(t) = trials {
            cfg = cfg.trials(t);
        }
        for s in surfaces {
            cfg = cfg.surface(s, surface(s)?);
        }
        for &g in groups {
            cfg = cfg.group(g);
        }
        let r = run_suite(&cfg)?;
        Ok((r.passed(), r.to_json_value(timing).to_string()))
    }

    pub fn suites() -> Vec<&'static str> {
        Suite::ALL.iter().map(|s| s.name()).collect()
    }
}

fn py_err(e: gtbv::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn group_arg(group: &str, n: usize) -> PyResult<gtbv::modulispace::GroupSpec> {
    api::group(group, n).map_err(py_err)
}

/// Skeleton JSON of a surface (built-in name, file path or JSON text).
#[pyfunction]
fn surface_json(surface: &str) -> PyResult<String> {
    api::surface_json(surface).map_err(py_err)
}

/// Topological summary as JSON.
#[pyfunction]
fn surface_info(surface: &str) -> PyResult<String> {
    api::surface_info(surface).map_err(py_err)
}

/// Goldman bracket of two loop combinations; ◯ kept unless `keep_trivial=False`.
#[pyfunction]
#[pyo3(signature = (surface, x, y, seed = gtbv::harness::DEFAULT_SEED, keep_trivial = true))]
fn bracket(surface: &str, x: &str, y: &str, seed: u64, keep_trivial: bool) -> PyResult<String> {
    api::bracket(surface, x, y, seed, keep_trivial).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (surface, x, seed = gtbv::harness::DEFAULT_SEED))]
fn cobracket(surface: &str, x: &str, seed: u64) -> PyResult<String> {
    api::cobracket(surface, x, seed).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (surface, x, cobracket_scale = "2", seed = gtbv::harness::DEFAULT_SEED))]
fn bv_delta_wedge(surface: &str, x: &str, cobracket_scale: &str, seed: u64) -> PyResult<String> {
    api::bv_delta_wedge(surface, x, cobracket_scale, seed).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (surface, expr, group = "gl", n = 2, seed = gtbv::harness::DEFAULT_SEED))]
fn evaluate(surface: &str, expr: &str, group: &str, n: usize, seed: u64) -> PyResult<String> {
    api::evaluate(surface, expr, group_arg(group, n)?, seed).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (surface, expr, group = "q", n = 2, seed = gtbv::harness::DEFAULT_SEED))]
fn quasi_bv(surface: &str, expr: &str, group: &str, n: usize, seed: u64) -> PyResult<String> {
    api::quasi_bv(surface, expr, group_arg(group, n)?, seed).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (surface, group = "gl", n = 2, seed = gtbv::harness::DEFAULT_SEED))]
fn random_point(surface: &str, group: &str, n: usize, seed: u64) -> PyResult<String> {
    api::random_point(surface, group_arg(group, n)?, seed).map_err(py_err)
}

/// Runs a suite with the GIL released; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, trials = None, seed = gtbv::harness::DEFAULT_SEED, surfaces = Vec::new(), groups = Vec::new(), timing = false))]
fn verify(
    py: Python<'_>,
    suite: &str,
    trials: Option<usize>,
    seed: u64,
    surfaces: Vec<String>,
    groups: Vec<(String, usize)>,
    timing: bool,
) -> PyResult<(bool, String)> {
    let groups = groups.iter().map(|(g, n)| group_arg(g, *n)).collect::<PyResult<Vec<_>>>()?;
    py.detach(|| api::verify(suite, trials, seed, &surfaces, &groups, timing)).map_err(py_err)
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    api::suites()
}

#[pymodule]
fn gtbv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", gtbv::harness::DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(surface_json, m)?)?;
    m.add_function(wrap_pyfunction!(surface_info, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(cobracket, m)?)?;
    m.add_function(wrap_pyfunction!(bv_delta_wedge, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_bv, m)?)?;
    m.add_function(wrap_pyfunction!(random_point, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    Ok(())
}
