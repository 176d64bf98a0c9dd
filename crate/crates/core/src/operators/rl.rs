//! Riemann-Liouville and Caputo operators.

use std::f64::consts::PI;

use super::{check_order, finished, with_side, Admissible, Side};
use crate::error::{FracError, Result};
use crate::grid::{finite_diff, Grid1D, SampledFunction, SingularWeights};
use crate::specfun::{gamma, recip_gamma};

/// Relative cut-off used to truncate the diffusive-representation integral.
const DIFFUSIVE_TOL: f64 = 1e-8;

/// J^α of raw samples on `grid`, with the kernel optionally tempered by
/// e^{-λ(x-u)}. Orders ≥ 1 are built as J^{α-1} ∘ J^1. λ = 0 skips the
/// damping factors entirely.
pub(crate) fn integral_values(values: &[f64], grid: &Grid1D, alpha: f64, lambda: f64) -> Result<Vec<f64>> {
    if alpha == 0.0 {
        return Ok(values.to_vec());
    }
    let damping: Option<Vec<f64>> = (lambda != 0.0).then(|| {
        (0..=grid.n)
            .map(|m| (-lambda * m as f64 * grid.h).exp())
            .collect()
    });
    if alpha < 1.0 {
        let w = SingularWeights::build(alpha, grid);
        let rg = recip_gamma(alpha);
        let mut out = w.apply_damped(values, damping.as_deref())?;
        out.iter_mut().for_each(|v| *v *= rg);
        return Ok(out);
    }
    let once = SingularWeights::build(1.0, grid).apply_damped(values, damping.as_deref())?;
    integral_values(&once, grid, alpha - 1.0, lambda)
}

/// Riemann-Liouville integral J^α, α ≥ 0, by product-trapezoid quadrature
/// (exact for piecewise-linear data; O(h²)).
pub fn rl_integral(f: &SampledFunction, alpha: f64, side: Side) -> Result<SampledFunction> {
    let alpha = check_order("rl_integral", alpha, Admissible::NonNegative)?;
    with_side(f, side, |g| {
        finished(g, integral_values(&g.values, &g.grid, alpha, 0.0)?)
    })
}

/// Riemann-Liouville derivative d/dx J^{1-α} f for α ∈ (0, 1]; the right-sided
/// form is -d/dx J_-^{1-α} f.
pub fn rl_derivative(f: &SampledFunction, alpha: f64, side: Side) -> Result<SampledFunction> {
    let alpha = check_order("rl_derivative", alpha, Admissible::Half01)?;
    with_side(f, side, |g| {
        if alpha == 1.0 {
            return finite_diff(g, 1);
        }
        let j = finished(g, integral_values(&g.values, &g.grid, 1.0 - alpha, 0.0)?)?;
        finite_diff(&j, 1)
    })
}

/// Increments (k+1)^β - k^β, k = 0..n, without cancellation for large k.
fn power_increments(beta: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                let kf = k as f64;
                kf.powf(beta) * (beta * (1.0 / kf).ln_1p()).exp_m1()
            }
        })
        .collect()
}

/// Caputo derivative, α ∈ (0, 1], by the L1 scheme
/// h^{-α}/Γ(2-α) Σ_j [(i-j+1)^{1-α} - (i-j)^{1-α}] (f_j - f_{j-1}),
/// i.e. J^{1-α} of the piecewise-constant derivative. Order 2 - α.
pub fn caputo_derivative(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    let alpha = check_order("caputo_derivative", alpha, Admissible::Half01)?;
    if alpha == 1.0 {
        return finite_diff(f, 1);
    }
    let n = f.grid.n;
    let v = &f.values;
    let b = power_increments(1.0 - alpha, n);
    let scale = f.grid.h.powf(-alpha) / gamma(2.0 - alpha);
    let diffs: Vec<f64> = (1..=n).map(|j| v[j] - v[j - 1]).collect();
    let mut out = vec![0.0; n + 1];
    for (i, o) in out.iter_mut().enumerate().skip(1) {
        let mut acc = 0.0;
        for j in 1..=i {
            acc += b[i - j] * diffs[j - 1];
        }
        *o = scale * acc;
    }
    finished(f, out)
}

/// Caputo derivative through the diffusive representation
/// D^α f(t) = (sin πα / π) ∫_0^∞ v^{α-1} g(v, t) dv, ∂_t g = -v g + f'(t), g(v, a) = 0.
///
/// g is advanced exactly for piecewise-constant f', so the result tends to
/// the L1 value as `quad_nodes` grows. The v-integral uses v = e^s and a
/// trapezoid rule on the s-range where the integrand exceeds ~1e-8 of its scale.
pub fn caputo_diffusive(f: &SampledFunction, alpha: f64, quad_nodes: usize) -> Result<SampledFunction> {
    let alpha = check_order("caputo_diffusive", alpha, Admissible::Open01)?;
    if quad_nodes < 4 {
        return Err(FracError::InvalidParameter(format!(
            "caputo_diffusive needs at least 4 quadrature nodes, got {quad_nodes}"
        )));
    }
    let g = f.grid;
    let n = g.n;
    let h = g.h;
    let lt = DIFFUSIVE_TOL.ln();
    let s_lo = -(g.b - g.a).ln() + lt / alpha;
    let s_hi = -h.ln() + lt / (alpha - 1.0);
    let ds = (s_hi - s_lo) / (quad_nodes - 1) as f64;
    let diffs: Vec<f64> = (1..=n).map(|j| (f.values[j] - f.values[j - 1]) / h).collect();
    let mut out = vec![0.0; n + 1];
    for q in 0..quad_nodes {
        let v = (s_lo + q as f64 * ds).exp();
        let w = if q == 0 || q == quad_nodes - 1 { 0.5 } else { 1.0 };
        let decay = (-h * v).exp();
        let gain = -(-h * v).exp_m1() / v;
        let weight = w * ds * v.powf(alpha);
        let mut state = 0.0;
        for i in 1..=n {
            state = decay * state + diffs[i - 1] * gain;
            out[i] += weight * state;
        }
    }
    let c = (PI * alpha).sin() / PI;
    out.iter_mut().for_each(|x| *x *= c);
    finished(f, out)
}

/// Jumarie's modification: the RL derivative of f - f(a); zero on constants.
pub fn jumarie_derivative(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    let alpha = check_order("jumarie_derivative", alpha, Admissible::Open01)?;
    let f0 = f.values[0];
    let shifted = f.map(|_, v| v - f0)?;
    rl_derivative(&shifted, alpha, Side::Left)
}
