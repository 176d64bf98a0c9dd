//! Fractional integrals and derivatives acting on sampled functions.
//!
//! Right-sided operators are computed by reflecting the sample, applying the
//! left-sided scheme and reflecting back. This carries the (-d/dx)^n sign of
//! the right-sided definitions automatically.

mod erdelyi_kober;
mod gl;
mod kernel;
mod local;
mod riesz;
mod rl;
mod tempered;

pub use erdelyi_kober::{erdelyi_kober, EKMode, EKParams};
pub use gl::{gl_derivative, gl_integral, marchaud_derivative};
pub use kernel::{caputo_fabrizio, general_kernel_derivative, KernelKind, KernelMode, KernelSpec};
pub use local::{conformable_derivative, hausdorff_fractal_derivative, ConformableVariant};
pub use riesz::{
    riesz_apply, riesz_feller_derivative, riesz_fourier, weyl_derivative, FellerParams, RieszMode,
};
pub use rl::{caputo_derivative, caputo_diffusive, jumarie_derivative, rl_derivative, rl_integral};
pub use tempered::{tempered_apply, TemperedMode, TemperedParams};

use crate::error::{FracError, Result};
use crate::grid::SampledFunction;

/// Which end of the interval carries the memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    /// Lower terminal a: ∫_a^x.
    #[default]
    Left,
    /// Upper terminal b: ∫_x^b.
    Right,
}

/// Admissible interval for an operator's order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissible {
    /// [0, ∞); order 0 is the identity.
    NonNegative,
    /// (0, ∞)
    Positive,
    /// (0, 1)
    Open01,
    /// (0, 1]
    Half01,
    /// (0, 2) without 1
    Open02Not1,
    /// (0, 1) ∪ (1, 2)
    Tempered,
    /// (0, 2]
    Feller,
}

impl Admissible {
    pub fn contains(self, a: f64) -> bool {
        if !a.is_finite() {
            return false;
        }
        match self {
            Admissible::NonNegative => a >= 0.0,
            Admissible::Positive => a > 0.0,
            Admissible::Open01 => a > 0.0 && a < 1.0,
            Admissible::Half01 => a > 0.0 && a <= 1.0,
            Admissible::Open02Not1 | Admissible::Tempered => a > 0.0 && a < 2.0 && a != 1.0,
            Admissible::Feller => a > 0.0 && a <= 2.0,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Admissible::NonNegative => "[0, inf)",
            Admissible::Positive => "(0, inf)",
            Admissible::Open01 => "(0, 1)",
            Admissible::Half01 => "(0, 1]",
            Admissible::Open02Not1 | Admissible::Tempered => "(0, 1) U (1, 2)",
            Admissible::Feller => "(0, 2]",
        }
    }
}

/// An order validated against an operator's admissible interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
    range: Admissible,
}

impl FracOrder {
    pub fn new(alpha: f64, range: Admissible) -> Result<Self> {
        Self::for_op("FracOrder", alpha, range)
    }

    pub(crate) fn for_op(op: &'static str, alpha: f64, range: Admissible) -> Result<Self> {
        if range.contains(alpha) {
            Ok(FracOrder { alpha, range })
        } else {
            Err(FracError::InvalidOrder {
                op,
                alpha,
                range: range.describe(),
            })
        }
    }

    pub fn value(self) -> f64 {
        self.alpha
    }

    pub fn range(self) -> Admissible {
        self.range
    }
}

pub(crate) fn check_order(op: &'static str, alpha: f64, range: Admissible) -> Result<f64> {
    FracOrder::for_op(op, alpha, range).map(FracOrder::value)
}

fn reversed(v: &[f64]) -> Vec<f64> {
    v.iter().rev().copied().collect()
}

/// Apply a left-sided scheme to the mirror image when `side` is Right.
pub(crate) fn with_side(
    f: &SampledFunction,
    side: Side,
    left: impl FnOnce(&SampledFunction) -> Result<SampledFunction>,
) -> Result<SampledFunction> {
    match side {
        Side::Left => left(f),
        Side::Right => {
            let mirrored = SampledFunction {
                grid: f.grid,
                values: reversed(&f.values),
            };
            let out = left(&mirrored)?;
            Ok(SampledFunction {
                grid: f.grid,
                values: reversed(&out.values),
            })
        }
    }
}

/// Product weights of ∫_{m-1}^{m} G(u) u^{-1-α} du for G linear on the cell,
/// returned as (coefficient of G(m-1), coefficient of G(m)); m ≥ 2, α ≠ 1.
pub(crate) fn power_cell_weights(alpha: f64, m: usize) -> (f64, f64) {
    let mf = m as f64;
    let lo = mf - 1.0;
    let i0 = (lo.powf(-alpha) - mf.powf(-alpha)) / alpha;
    let i1 = (mf.powf(1.0 - alpha) - lo.powf(1.0 - alpha)) / (1.0 - alpha);
    (mf * i0 - i1, i1 - lo * i0)
}

pub(crate) fn finished(f: &SampledFunction, values: Vec<f64>) -> Result<SampledFunction> {
    SampledFunction::new(f.grid, values)
}
