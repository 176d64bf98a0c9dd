//! Riesz, Riesz-Feller and Weyl operators.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{check_order, finished, gl_derivative, power_cell_weights, rl_integral, Admissible, Side};
use crate::error::{FracError, Result};
use crate::grid::{finite_diff, SampledFunction};
use crate::specfun::gamma;

/// Potential (integral) or derivative form of the Riesz operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RieszMode {
    Potential,
    Derivative,
}

/// Symmetric Riesz operator on the zero-extended sample.
///
/// Derivative (α ∈ (0,2), α ≠ 1): -(D_+^α f + D_-^α f) / (2 cos(απ/2)) with
/// Grünwald-Letnikov sums on both sides; Fourier symbol -|k|^α.
/// Potential (α ∈ (0,1)): (J_+^α f + J_-^α f) / (2 cos(απ/2)); symbol |k|^{-α}.
pub fn riesz_apply(f: &SampledFunction, alpha: f64, mode: RieszMode) -> Result<SampledFunction> {
    match mode {
        RieszMode::Derivative => {
            let alpha = check_order("riesz derivative", alpha, Admissible::Open02Not1)?;
            let c = -1.0 / (2.0 * (alpha * PI / 2.0).cos());
            let l = gl_derivative(f, alpha, Side::Left, None)?;
            let r = gl_derivative(f, alpha, Side::Right, None)?;
            let v = l.values.iter().zip(&r.values).map(|(a, b)| c * (a + b)).collect();
            finished(f, v)
        }
        RieszMode::Potential => {
            let alpha = check_order("riesz potential", alpha, Admissible::Open01)?;
            let c = 1.0 / (2.0 * (alpha * PI / 2.0).cos());
            let l = rl_integral(f, alpha, Side::Left)?;
            let r = rl_integral(f, alpha, Side::Right)?;
            let v = l.values.iter().zip(&r.values).map(|(a, b)| c * (a + b)).collect();
            finished(f, v)
        }
    }
}

/// Skewed Riesz-Feller operator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FellerParams {
    pub alpha: f64,
    pub theta: f64,
}

impl FellerParams {
    /// Validates α ∈ (0, 2], α ≠ 1 and the Feller-Takayasu diamond
    /// |θ| ≤ min(α, 2 - α).
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        let alpha = check_order("riesz_feller", alpha, Admissible::Feller)?;
        if alpha == 1.0 {
            return Err(FracError::InvalidOrder {
                op: "riesz_feller",
                alpha,
                range: "(0, 1) U (1, 2]",
            });
        }
        let bound = alpha.min(2.0 - alpha);
        if !theta.is_finite() || theta.abs() > bound {
            return Err(FracError::DiamondViolation { alpha, theta, bound });
        }
        Ok(FellerParams { alpha, theta })
    }
}

/// Riesz-Feller derivative
/// Γ(1+α)/π [sin((α+θ)π/2) ∫_0^∞ (f(x+ξ) - f(x)) ξ^{-1-α} dξ
///           + sin((α-θ)π/2) ∫_0^∞ (f(x-ξ) - f(x)) ξ^{-1-α} dξ],
/// with ∓ξ f'(x) subtracted inside the lobes when α > 1. α = 2 (θ = 0) is
/// the second derivative.
///
/// The sample is extended by zero. Each lobe uses a local model on the
/// singular cell [0, ε] (G ∝ ξ for α < 1, ∝ ξ² for α > 1), product
/// integration against ξ^{-1-α} on [ε, R] with G piecewise linear, and the
/// exact tail beyond the grid. `eps_cells` sets ε in cells (default 1).
pub fn riesz_feller_derivative(
    f: &SampledFunction,
    p: FellerParams,
    eps_cells: Option<usize>,
) -> Result<SampledFunction> {
    let FellerParams { alpha, theta } = FellerParams::new(p.alpha, p.theta)?;
    if alpha == 2.0 {
        return finite_diff(f, 2);
    }
    let c = eps_cells.unwrap_or(1);
    if c == 0 {
        return Err(FracError::InvalidParameter("eps_cells must be >= 1".into()));
    }
    let n = f.grid.n;
    let h = f.grid.h;
    let v = &f.values;
    let high = alpha > 1.0;
    let deriv = if high {
        Some(finite_diff(f, 1)?.values)
    } else {
        None
    };
    let core_power = if high { 2.0 } else { 1.0 };
    let cells: Vec<(f64, f64)> = (0..=n)
        .map(|m| {
            if m < 2 {
                (0.0, 0.0)
            } else {
                power_cell_weights(alpha, m)
            }
        })
        .collect();
    let hs = h.powf(-alpha);

    // one lobe at node i in direction dir (+1 right, -1 left), reach m_max cells
    let lobe = |i: usize, dir: isize, m_max: usize| -> f64 {
        let fx = v[i];
        let fp = deriv.as_ref().map_or(0.0, |d| d[i]);
        let g = |m: usize| {
            let j = (i as isize + dir * m as isize) as usize;
            let xi = m as f64 * h;
            v[j] - fx - if high { dir as f64 * xi * fp } else { 0.0 }
        };
        let mut acc = 0.0;
        let r = if m_max == 0 {
            // boundary node: the zero extension starts half a cell away
            0.5 * h
        } else {
            let e = c.min(m_max);
            acc += g(e) * (e as f64 * h).powf(-alpha) / (core_power - alpha);
            for m in (e + 1)..=m_max {
                let (wl, wr) = cells[m];
                acc += hs * (wl * g(m - 1) + wr * g(m));
            }
            m_max as f64 * h
        };
        // tail: f = 0 beyond the grid
        acc -= fx * r.powf(-alpha) / alpha;
        if high {
            acc -= dir as f64 * fp * r.powf(1.0 - alpha) / (alpha - 1.0);
        }
        acc
    };

    let pre = gamma(1.0 + alpha) / PI;
    let s_plus = ((alpha + theta) * PI / 2.0).sin();
    let s_minus = ((alpha - theta) * PI / 2.0).sin();
    let out = (0..=n)
        .map(|i| pre * (s_plus * lobe(i, 1, n - i) + s_minus * lobe(i, -1, i)))
        .collect();
    finished(f, out)
}

fn check_periodic(f: &SampledFunction) -> Result<()> {
    let n = f.grid.n;
    let scale = f.max_abs().max(1.0);
    let gap = (f.values[n] - f.values[0]).abs();
    if gap > 1e-8 * scale {
        return Err(FracError::NonPeriodic(gap));
    }
    if n < 2 {
        return Err(FracError::GridTooSmall {
            op: "fourier multiplier",
            needed: 2,
            got: n,
        });
    }
    Ok(())
}

/// Apply a Fourier multiplier m(k) to a periodic sample whose period is the
/// grid length. The zero mode is dropped; the Nyquist mode keeps only the
/// real part of the multiplier so the output stays real.
fn fourier_multiplier(f: &SampledFunction, mult: impl Fn(f64) -> Complex64) -> Result<SampledFunction> {
    check_periodic(f)?;
    let n = f.grid.n;
    let period = f.grid.b - f.grid.a;
    let mut buf: Vec<Complex64> = f.values[..n].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (j, c) in buf.iter_mut().enumerate() {
        if j == 0 {
            *c = Complex64::new(0.0, 0.0);
            continue;
        }
        let signed = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let k = 2.0 * PI * signed / period;
        let m = mult(k);
        *c *= if 2 * j == n { Complex64::new(m.re, 0.0) } else { m };
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let mut out: Vec<f64> = buf.iter().map(|c| c.re / n as f64).collect();
    out.push(out[0]);
    finished(f, out)
}

/// Riesz derivative of a periodic sample through its Fourier symbol -|k|^α.
pub fn riesz_fourier(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    let alpha = check_order("riesz_fourier", alpha, Admissible::Positive)?;
    fourier_multiplier(f, |k| Complex64::new(-k.abs().powf(alpha), 0.0))
}

/// Weyl derivative of a periodic sample: Fourier multiplier (ik)^α (left) or
/// (-ik)^α (right), principal branch. The last node must repeat the first.
pub fn weyl_derivative(f: &SampledFunction, alpha: f64, side: Side) -> Result<SampledFunction> {
    let alpha = check_order("weyl_derivative", alpha, Admissible::Positive)?;
    let sign = match side {
        Side::Left => 1.0,
        Side::Right => -1.0,
    };
    fourier_multiplier(f, |k| {
        let arg = if sign * k > 0.0 { PI / 2.0 } else { -PI / 2.0 };
        Complex64::from_polar(k.abs().powf(alpha), alpha * arg)
    })
}
