//! Special functions and coefficient generators.

mod gamma;
mod incgamma;
mod mittag_leffler;
pub mod quadrature;
mod wright;

pub use gamma::{gamma, gamma_sign, ln_abs_recip_gamma, ln_gamma, recip_gamma, sin_pi};
pub use incgamma::upper_incomplete_gamma;
pub use mittag_leffler::{mittag_leffler, multi_index_ml, prabhakar_ml, rabotnov, MLParams, MultiIndexML};
pub use wright::{wright, wright_auxiliary, Auxiliary};

use crate::error::{FracError, Result};

/// Convergence control shared by every series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Absolute term-magnitude cutoff.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

impl SeriesConfig {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(FracError::InvalidParameter(format!(
                "series tolerance must be positive, got {tol}"
            )));
        }
        if max_terms == 0 {
            return Err(FracError::InvalidParameter("max_terms must be >= 1".into()));
        }
        Ok(SeriesConfig { tol, max_terms })
    }
}

/// Number of consecutive sub-tolerance terms required before stopping.
/// Several series here have isolated zero terms (poles of Γ in the
/// denominator), so a single small term is not evidence of convergence.
const QUIET_RUN: usize = 3;

/// Neumaier-compensated summation of `term(k)`, k = 0, 1, …
pub(crate) fn sum_series(cfg: &SeriesConfig, term: impl FnMut(usize) -> f64) -> Result<f64> {
    sum_series_tracked(cfg, term).map(|(s, _)| s)
}

/// As [`sum_series`], also returning the largest term magnitude seen, which
/// bounds the cancellation error of an alternating sum.
pub(crate) fn sum_series_tracked(
    cfg: &SeriesConfig,
    mut term: impl FnMut(usize) -> f64,
) -> Result<(f64, f64)> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut quiet = 0usize;
    let mut peak = 0.0f64;
    for k in 0..cfg.max_terms {
        let t = term(k);
        if !t.is_finite() {
            return Err(FracError::Precision {
                partial: sum + comp,
                terms: k,
            });
        }
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
        peak = peak.max(t.abs());
        if t.abs() < cfg.tol {
            quiet += 1;
            if quiet >= QUIET_RUN {
                return Ok((sum + comp, peak));
            }
        } else {
            quiet = 0;
        }
    }
    Err(FracError::Precision {
        partial: sum + comp,
        terms: cfg.max_terms,
    })
}

/// Grünwald-Letnikov coefficients ω_k = (-1)^k C(α, k), k = 0..=n.
pub fn gl_weights(alpha: f64, n: usize) -> Result<Vec<f64>> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(FracError::InvalidOrder {
            op: "gl_weights",
            alpha,
            range: "(0, inf)",
        });
    }
    let mut w = Vec::with_capacity(n + 1);
    w.push(1.0);
    for k in 1..=n {
        let prev = w[k - 1];
        w.push(prev * (1.0 - (alpha + 1.0) / k as f64));
    }
    Ok(w)
}

/// Coefficients Γ(k+α)/(Γ(α) k!) of the Grünwald-Letnikov integral of order α.
pub fn gl_integral_weights(alpha: f64, n: usize) -> Result<Vec<f64>> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(FracError::InvalidOrder {
            op: "gl_integral_weights",
            alpha,
            range: "(0, inf)",
        });
    }
    let mut w = Vec::with_capacity(n + 1);
    w.push(1.0);
    for k in 1..=n {
        let prev = w[k - 1];
        w.push(prev * (1.0 + (alpha - 1.0) / k as f64));
    }
    Ok(w)
}

/// Pochhammer symbol (g)_n = g (g+1) … (g+n-1).
pub fn pochhammer(g: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (g + i as f64))
}
