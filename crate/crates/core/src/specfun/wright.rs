//! Wright function and the Mainardi auxiliary functions F_ν, M_ν.

use std::f64::consts::PI;

use super::gamma::{ln_abs_recip_gamma, ln_gamma, power_over_gamma, recip_gamma};
use super::{sum_series, sum_series_tracked, SeriesConfig};
use crate::error::{FracError, Result};

/// Peak series term above which the M_ν series for z > 0 is replaced by its
/// saddle-point asymptotic. M_ν is then of order 1/peak, so both the series
/// cancellation error and the asymptotic truncation error stay below ~1e-8.
const M_SERIES_PEAK: f64 = 1e7;

/// Which auxiliary function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Auxiliary {
    F,
    M,
}

fn wright_term(lambda: f64, mu: f64, z: f64, n: usize) -> f64 {
    let arg = lambda * n as f64 + mu;
    let rg = recip_gamma(arg);
    if rg == 0.0 {
        return 0.0;
    }
    let direct = power_over_gamma(z, n as u32, n as f64 + 1.0) * rg;
    if direct.is_finite() && direct != 0.0 {
        return direct;
    }
    if z == 0.0 {
        return 0.0;
    }
    let (lr, sr) = ln_abs_recip_gamma(arg);
    let sz = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    sz * sr * (n as f64 * z.abs().ln() - ln_gamma(n as f64 + 1.0) + lr).exp()
}

/// W_{λ,μ}(z) = Σ z^n / (n! Γ(λn + μ)), λ > -1.
pub fn wright(lambda: f64, mu: f64, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(lambda > -1.0) || !lambda.is_finite() {
        return Err(FracError::InvalidOrder {
            op: "wright",
            alpha: lambda,
            range: "(-1, inf)",
        });
    }
    if !mu.is_finite() || !z.is_finite() {
        return Err(FracError::Domain(format!(
            "wright needs finite mu and z, got mu={mu}, z={z}"
        )));
    }
    sum_series(cfg, |n| wright_term(lambda, mu, z, n))
}

/// Leading saddle-point term of M_ν(z) for z → +∞.
fn m_asymptotic(nu: f64, z: f64) -> f64 {
    let y = (1.0 - nu) * (nu.powf(nu) * z).powf(1.0 / (1.0 - nu));
    let a = 1.0 / (2.0 * PI * (1.0 - nu)).sqrt();
    a * y.powf(nu - 0.5) * (-y).exp()
}

/// F_ν(z) = W_{-ν,0}(-z) or M_ν(z) = W_{-ν,1-ν}(-z), 0 < ν < 1.
///
/// F is returned as ν z M_ν(z). Both series cancel heavily once ν > 1/2, and
/// evaluating them independently would break F = ν z M by the rounding error
/// of the largest term.
pub fn wright_auxiliary(nu: f64, z: f64, which: Auxiliary, cfg: &SeriesConfig) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(FracError::Domain(format!(
            "auxiliary Wright functions need 0 < nu < 1, got {nu}"
        )));
    }
    if !z.is_finite() {
        return Err(FracError::Domain(format!("argument must be finite, got {z}")));
    }
    let series = sum_series_tracked(cfg, |n| wright_term(-nu, 1.0 - nu, -z, n));
    let use_asymptotic = z > 0.0
        && match &series {
            Ok((_, peak)) => *peak > M_SERIES_PEAK,
            Err(_) => true,
        };
    let m = if use_asymptotic {
        m_asymptotic(nu, z)
    } else {
        series?.0
    };
    Ok(match which {
        Auxiliary::M => m,
        Auxiliary::F => nu * z * m,
    })
}
