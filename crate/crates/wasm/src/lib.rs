//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function has a plain Rust twin returning `Result<_, String>`
//! so the numerics can be tested natively; the wrappers only convert errors.

use fraccore::grid::make_uniform_grid;
use fraccore::operators::{self as ops, Side};
use fraccore::pde::{self, DiffusionForm, DiffusionProblem};
use fraccore::specfun::{mittag_leffler, MLParams, SeriesConfig};
use fraccore_cli::commands::sample_expression;
use wasm_bindgen::prelude::*;

/// E_{α,β} at n+1 equally spaced points of [x0, x1].
pub fn ml_curve_values(alpha: f64, beta: f64, x0: f64, x1: f64, n: usize) -> Result<Vec<f64>, String> {
    let p = MLParams::new(alpha, beta).map_err(|e| e.to_string())?;
    let grid = make_uniform_grid(x0, x1, n).map_err(|e| e.to_string())?;
    let cfg = SeriesConfig::default();
    grid.nodes()
        .into_iter()
        .map(|x| mittag_leffler(&p, x, &cfg).map_err(|e| e.to_string()))
        .collect()
}

/// Sampled expression followed by its derivative, 2(n+1) values.
/// `op` is one of rl, caputo, gl, riesz, caputo-fabrizio, conformable.
pub fn derivative_values(
    expr: &str,
    op: &str,
    alpha: f64,
    a: f64,
    b: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let grid = make_uniform_grid(a, b, n).map_err(|e| e.to_string())?;
    let f = sample_expression(expr, &grid).map_err(|e| e.to_string())?;
    let d = match op {
        "rl" => ops::rl_derivative(&f, alpha, Side::Left),
        "caputo" => ops::caputo_derivative(&f, alpha),
        "gl" => ops::gl_derivative(&f, alpha, Side::Left, None),
        "riesz" if alpha == 1.0 => return Err("riesz derivative undefined at alpha=1".into()),
        "riesz" => ops::riesz_apply(&f, alpha, ops::RieszMode::Derivative),
        "caputo-fabrizio" => ops::caputo_fabrizio(&f, alpha, &ops::KernelSpec::caputo_fabrizio()),
        "conformable" => ops::conformable_derivative(&f, alpha, ops::ConformableVariant::Khalil),
        other => return Err(format!("unknown operator {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let mut out = f.values;
    out.extend(d.values);
    Ok(out)
}

/// Diffusion of a unit point mass on [-width, width] up to `t_end`: the
/// numerical profile followed by the fundamental solution at the same
/// nodes, 2(nx+1) values.
pub fn diffusion_values(beta: f64, width: f64, nx: usize, t_end: f64, nt: usize) -> Result<Vec<f64>, String> {
    let err = |e: fraccore::FracError| e.to_string();
    let x = make_uniform_grid(-width, width, nx).map_err(err)?;
    let t = make_uniform_grid(0.0, t_end, nt).map_err(err)?;
    let u0 = pde::delta_initial(&x).map_err(err)?;
    let p = DiffusionProblem::new(beta, t, u0, DiffusionForm::Caputo).map_err(err)?;
    let sol = pde::solve_time_fractional_diffusion(&p).map_err(err)?;
    let mut out = sol.u[nt].clone();
    for xi in x.nodes() {
        out.push(pde::fundamental_solution(beta, xi, t_end).map_err(err)?);
    }
    Ok(out)
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ml_curve(alpha: f64, beta: f64, x0: f64, x1: f64, n: usize) -> Result<Vec<f64>, JsError> {
    js(ml_curve_values(alpha, beta, x0, x1, n))
}

#[wasm_bindgen]
pub fn derivative(expr: &str, op: &str, alpha: f64, a: f64, b: f64, n: usize) -> Result<Vec<f64>, JsError> {
    js(derivative_values(expr, op, alpha, a, b, n))
}

#[wasm_bindgen]
pub fn diffusion(beta: f64, width: f64, nx: usize, t_end: f64, nt: usize) -> Result<Vec<f64>, JsError> {
    js(diffusion_values(beta, width, nx, t_end, nt))
}
