//! Fractional calculus numerics.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Gamma, Mittag-Leffler, Wright and related series, plus the
//!   Grünwald-Letnikov coefficient generator.
//! * [`grid`]: uniform grids, sampled functions, product-integration weights
//!   for weakly singular kernels and classical finite differences.
//! * [`operators`]: the catalogue of fractional integrals and derivatives
//!   acting on sampled functions.
//! * [`matrixop`]: triangular strip (Toeplitz) matrices and a linear
//!   fractional ODE solver built on them.
//! * [`pde`]: time-fractional and distributed-order diffusion solvers with
//!   Green-function and moment diagnostics.

// NaN must fail parameter checks, hence the `!(x > 0.0)` style; the
// numeric kernels index several arrays per loop variable.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod grid;
pub mod matrixop;
pub mod operators;
pub mod pde;
pub mod specfun;

pub use error::{FracError, Result};
pub use grid::{Grid1D, SampledFunction};
