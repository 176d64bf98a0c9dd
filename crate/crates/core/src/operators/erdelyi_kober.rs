//! Erdélyi-Kober fractional integral and derivative.
//!
//! After s = (τ/t)^η the integral becomes
//! I_η^{γ,μ} φ(t) = 1/Γ(μ) ∫_0^1 s^γ (1-s)^{μ-1} φ(t s^{1/η}) ds,
//! a Jacobi-weighted integral on a fixed interval. For φ ≡ 1 it equals
//! Γ(γ+1)/Γ(γ+1+μ).

use crate::error::{FracError, Result};
use crate::grid::{finite_diff, SampledFunction};
use crate::specfun::quadrature::{gauss_jacobi, QuadRule};
use crate::specfun::recip_gamma;

const EK_NODES: usize = 64;

/// γ real, μ ≥ 0, η > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EKParams {
    pub gamma: f64,
    pub mu: f64,
    pub eta: f64,
}

impl EKParams {
    pub fn new(gamma: f64, mu: f64, eta: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(FracError::InvalidParameter(format!(
                "EK gamma must be finite, got {gamma}"
            )));
        }
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(FracError::InvalidParameter(format!(
                "EK mu must be >= 0, got {mu}"
            )));
        }
        if !(eta.is_finite() && eta > 0.0) {
            return Err(FracError::InvalidParameter(format!(
                "EK eta must be > 0, got {eta}"
            )));
        }
        Ok(EKParams { gamma, mu, eta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EKMode {
    Integral,
    /// (γ + 1 + (1/η) t d/dt) I_η^{γ+μ, 1-μ}, μ ∈ (0, 1); μ = 0 is the identity.
    Derivative,
}

/// Piecewise-linear interpolant of the samples, extended linearly to the
/// left of the first node.
fn interpolate(f: &SampledFunction, x: f64) -> f64 {
    let g = &f.grid;
    let n = g.n;
    let u = (x - g.a) / g.h;
    let k = if u <= 0.0 {
        0
    } else {
        (u.floor() as usize).min(n - 1)
    };
    let t = u - k as f64;
    f.values[k] + t * (f.values[k + 1] - f.values[k])
}

fn integral_values(f: &SampledFunction, gamma: f64, mu: f64, eta: f64) -> Result<Vec<f64>> {
    if gamma <= -1.0 {
        return Err(FracError::Domain(format!(
            "EK integral needs gamma > -1 for convergence at the origin, got {gamma}"
        )));
    }
    let rule: QuadRule = gauss_jacobi(EK_NODES, mu - 1.0, gamma);
    let scale = 2f64.powf(-(gamma + mu)) * recip_gamma(mu);
    let pts: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| (((1.0 + x) / 2.0).powf(1.0 / eta), w))
        .collect();
    Ok(f.grid
        .nodes()
        .into_iter()
        .map(|t| scale * pts.iter().map(|&(r, w)| w * interpolate(f, t * r)).sum::<f64>())
        .collect())
}

/// Erdélyi-Kober operator on a grid with a > 0. φ between 0 and the first
/// node is extrapolated linearly.
pub fn erdelyi_kober(f: &SampledFunction, p: EKParams, mode: EKMode) -> Result<SampledFunction> {
    let EKParams { gamma, mu, eta } = EKParams::new(p.gamma, p.mu, p.eta)?;
    if f.grid.a <= 0.0 {
        return Err(FracError::InvalidGrid(format!(
            "Erdélyi-Kober operators need a grid starting above 0, got a = {}",
            f.grid.a
        )));
    }
    if f.grid.n < 1 {
        return Err(FracError::GridTooSmall {
            op: "erdelyi_kober",
            needed: 1,
            got: f.grid.n,
        });
    }
    match mode {
        EKMode::Integral => {
            if mu == 0.0 {
                return Ok(f.clone());
            }
            SampledFunction::new(f.grid, integral_values(f, gamma, mu, eta)?)
        }
        EKMode::Derivative => {
            if mu == 0.0 {
                return Ok(f.clone());
            }
            if mu >= 1.0 {
                return Err(FracError::InvalidOrder {
                    op: "erdelyi_kober derivative",
                    alpha: mu,
                    range: "[0, 1)",
                });
            }
            let inner = SampledFunction::new(f.grid, integral_values(f, gamma + mu, 1.0 - mu, eta)?)?;
            let slope = finite_diff(&inner, 1)?;
            let out = inner
                .values
                .iter()
                .zip(&slope.values)
                .zip(f.grid.nodes())
                .map(|((i, d), t)| (gamma + 1.0) * i + t * d / eta)
                .collect();
            SampledFunction::new(f.grid, out)
        }
    }
}
