//! Triangular strip (Toeplitz) matrices of Grünwald-Letnikov weights and a
//! linear fractional ODE solver built on them.

use nalgebra::DMatrix;

use crate::error::{FracError, Result};
use crate::grid::SampledFunction;
use crate::specfun::gl_weights;

/// Upper strips discretize left-sided operators, lower strips right-sided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripSide {
    Upper,
    Lower,
}

/// B_n^{(α)} stored through its generator row ω_k^{(α)} / τ^α, k = 0..=n.
///
/// In the classical layout the unknowns are ordered from the last node to the
/// first (v_n, v_{n-1}, …, v_0); [`apply_strip`] hides that ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct StripMatrix {
    pub alpha: f64,
    pub tau: f64,
    pub n: usize,
    pub side: StripSide,
    generator: Vec<f64>,
}

impl StripMatrix {
    pub fn generator(&self) -> &[f64] {
        &self.generator
    }

    /// Dense (n+1)×(n+1) matrix in the classical node-reversed layout.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let g = &self.generator;
        DMatrix::from_fn(self.n + 1, self.n + 1, |r, c| match self.side {
            StripSide::Upper if c >= r => g[c - r],
            StripSide::Lower if r >= c => g[r - c],
            _ => 0.0,
        })
    }
}

pub fn build_strip_matrix(alpha: f64, n: usize, tau: f64, side: StripSide) -> Result<StripMatrix> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(FracError::InvalidOrder {
            op: "build_strip_matrix",
            alpha,
            range: "(0, inf)",
        });
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(FracError::InvalidParameter(format!(
            "strip step tau must be > 0, got {tau}"
        )));
    }
    if n == 0 {
        return Err(FracError::GridTooSmall {
            op: "build_strip_matrix",
            needed: 1,
            got: 0,
        });
    }
    let scale = tau.powf(-alpha);
    let generator: Vec<f64> = gl_weights(alpha, n)?.into_iter().map(|w| w * scale).collect();
    if generator.iter().any(|g| !g.is_finite()) {
        return Err(FracError::InvalidParameter(format!(
            "strip generator overflows for alpha = {alpha}, tau = {tau}"
        )));
    }
    Ok(StripMatrix {
        alpha,
        tau,
        n,
        side,
        generator,
    })
}

/// B v with v in natural node order: Σ_k g_k v_{i-k} for an upper strip,
/// Σ_k g_k v_{i+k} for a lower one.
pub fn apply_strip(b: &StripMatrix, v: &[f64]) -> Result<Vec<f64>> {
    let n = b.n;
    if v.len() != n + 1 {
        return Err(FracError::LengthMismatch {
            expected: n + 1,
            got: v.len(),
        });
    }
    let g = &b.generator;
    Ok((0..=n)
        .map(|i| match b.side {
            StripSide::Upper => (0..=i).map(|k| g[k] * v[i - k]).sum(),
            StripSide::Lower => (0..=n - i).map(|k| g[k] * v[i + k]).sum(),
        })
        .collect())
}

/// Solve the Caputo problem D^α y = λ y + F(t), y(a) = y0, α ∈ (0, 1], on
/// the grid of `forcing`.
///
/// With z = y - y0 (zero initial value, so GL and Caputo coincide) the
/// implicit GL step is z_i (g_0 - λ) = λ y0 + F_i - Σ_{k≥1} g_k z_{i-k}.
pub fn solve_linear_fde(alpha: f64, lam: f64, forcing: &SampledFunction, y0: f64) -> Result<SampledFunction> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FracError::InvalidOrder {
            op: "solve_linear_fde",
            alpha,
            range: "(0, 1]",
        });
    }
    if !lam.is_finite() || !y0.is_finite() {
        return Err(FracError::InvalidParameter("lam and y0 must be finite".into()));
    }
    let grid = forcing.grid;
    let n = grid.n;
    let b = build_strip_matrix(alpha, n.max(1), grid.h, StripSide::Upper)?;
    let g = &b.generator;
    let pivot = g[0] - lam;
    if pivot.abs() < 1e-14 {
        return Err(FracError::SingularStep(pivot));
    }
    let f = &forcing.values;
    let mut z = vec![0.0; n + 1];
    for i in 1..=n {
        let history: f64 = (1..=i).map(|k| g[k] * z[i - k]).sum();
        z[i] = (lam * y0 + f[i] - history) / pivot;
    }
    SampledFunction::new(grid, z.into_iter().map(|z| z + y0).collect())
}
