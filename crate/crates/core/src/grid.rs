//! Uniform grids, sampled functions and product-integration weights.

use crate::error::{FracError, Result};

/// Uniform grid on [a, b] with n intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub h: f64,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        make_uniform_grid(a, b, n)
    }

    /// x_i = a + i h.
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.a + i as f64 * self.h
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }
}

pub fn make_uniform_grid(a: f64, b: f64, n: usize) -> Result<Grid1D> {
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(FracError::InvalidGrid(format!(
            "need finite a < b, got [{a}, {b}]"
        )));
    }
    if n == 0 {
        return Err(FracError::InvalidGrid("need at least one interval".into()));
    }
    let h = (b - a) / n as f64;
    if !(h > 0.0) {
        return Err(FracError::InvalidGrid(format!("step underflows for n={n}")));
    }
    Ok(Grid1D { a, b, n, h })
}

/// Function values on the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub grid: Grid1D,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FracError::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(FracError::Sampling {
                index: i,
                x: grid.node(i),
                value: *v,
            });
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| f(self.grid.node(i), v))
            .collect();
        SampledFunction::new(self.grid, values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Evaluate `f` at every node.
pub fn sample(f: impl Fn(f64) -> f64, grid: &Grid1D) -> Result<SampledFunction> {
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..=grid.n {
        let x = grid.node(i);
        let v = f(x);
        if !v.is_finite() {
            return Err(FracError::Sampling {
                index: i,
                x,
                value: v,
            });
        }
        values.push(v);
    }
    Ok(SampledFunction { grid: *grid, values })
}

/// Binomial coefficient C(p, k) for real p.
fn binom(p: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (p - j as f64) / (j as f64 + 1.0))
}

// Below this distance the closed forms lose at most a few digits; above it
// the binomial expansions converge at least as fast as 4^{-k}.
const SERIES_FROM: usize = 5;
const SERIES_TERMS: usize = 40;

/// Interior generator b_m = (m+1)^p - 2m^p + (m-1)^p, p = α + 1, m ≥ 1.
pub(crate) fn pt_interior(alpha: f64, m: usize) -> f64 {
    let p = alpha + 1.0;
    let mf = m as f64;
    if m < SERIES_FROM {
        return (mf + 1.0).powf(p) - 2.0 * mf.powf(p) + (mf - 1.0).powf(p);
    }
    // 2 m^p Σ_{k≥1} C(p, 2k) m^{-2k}
    let inv2 = 1.0 / (mf * mf);
    let mut s = 0.0;
    let mut pw = inv2;
    for k in 1..SERIES_TERMS {
        let t = binom(p, 2 * k) * pw;
        s += t;
        if t.abs() < 1e-17 * s.abs() {
            break;
        }
        pw *= inv2;
    }
    2.0 * mf.powf(p) * s
}

/// First-node generator c_i = (i-1)^p - (i-1-α) i^α, p = α + 1, i ≥ 1.
pub(crate) fn pt_first(alpha: f64, i: usize) -> f64 {
    let p = alpha + 1.0;
    let f = i as f64;
    if i < SERIES_FROM {
        return (f - 1.0).powf(p) - (f - 1.0 - alpha) * f.powf(alpha);
    }
    // i^p Σ_{k≥2} C(p, k) (-1/i)^k
    let x = -1.0 / f;
    let mut s = 0.0;
    let mut pw = x * x;
    for k in 2..2 * SERIES_TERMS {
        let t = binom(p, k) * pw;
        s += t;
        if t.abs() < 1e-17 * s.abs() {
            break;
        }
        pw *= x;
    }
    f.powf(p) * s
}

/// Product-trapezoid weights for ∫_a^{x_i} (x_i - t)^{α-1} p(t) dt with p the
/// piecewise-linear interpolant of the samples.
///
/// Row i is scale · [c_i, b_{i-1}, …, b_1, 1], scale = h^α / (α (α+1)); only
/// the generator sequences are stored.
#[derive(Debug, Clone)]
pub struct SingularWeights {
    pub alpha: f64,
    pub grid: Grid1D,
    scale: f64,
    /// b_m, index m (entry 0 unused)
    interior: Vec<f64>,
    /// c_i, index i (entry 0 unused)
    first: Vec<f64>,
}

pub fn singular_weights(alpha: f64, grid: &Grid1D) -> Result<SingularWeights> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FracError::InvalidOrder {
            op: "singular_weights",
            alpha,
            range: "(0, 1)",
        });
    }
    Ok(SingularWeights::build(alpha, grid))
}

impl SingularWeights {
    /// Same construction for any α > 0; the formula stays exact on
    /// piecewise-linear data. Callers validate α.
    pub(crate) fn build(alpha: f64, grid: &Grid1D) -> Self {
        let n = grid.n;
        let mut interior = vec![0.0; n.max(1)];
        for (m, b) in interior.iter_mut().enumerate().skip(1) {
            *b = pt_interior(alpha, m);
        }
        let mut first = vec![0.0; n + 1];
        for (i, c) in first.iter_mut().enumerate().skip(1) {
            *c = pt_first(alpha, i);
        }
        SingularWeights {
            alpha,
            grid: *grid,
            scale: grid.h.powf(alpha) / (alpha * (alpha + 1.0)),
            interior,
            first,
        }
    }

    /// Weights of row i, ordered by source node j = 0..=i.
    pub fn row(&self, i: usize) -> Vec<f64> {
        if i == 0 {
            return vec![0.0];
        }
        let mut w = Vec::with_capacity(i + 1);
        w.push(self.scale * self.first[i]);
        for j in 1..i {
            w.push(self.scale * self.interior[i - j]);
        }
        w.push(self.scale);
        w
    }

    /// ∫_a^{x_i} (x_i - t)^{α-1} p(t) dt for every node.
    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>> {
        self.apply_damped(values, None)
    }

    /// As [`apply`](Self::apply) with the weight at distance m = i - j
    /// multiplied by `damping[m]`.
    pub(crate) fn apply_damped(&self, values: &[f64], damping: Option<&[f64]>) -> Result<Vec<f64>> {
        let n = self.grid.n;
        if values.len() != n + 1 {
            return Err(FracError::LengthMismatch {
                expected: n + 1,
                got: values.len(),
            });
        }
        let d = |m: usize| damping.map_or(1.0, |g| g[m]);
        let mut out = vec![0.0; n + 1];
        for i in 1..=n {
            let mut acc = self.first[i] * d(i) * values[0];
            for j in 1..i {
                acc += self.interior[i - j] * d(i - j) * values[j];
            }
            acc += values[i];
            out[i] = self.scale * acc;
        }
        Ok(out)
    }
}

/// Classical derivative of order 1 or 2: central differences inside,
/// second-order one-sided stencils at the ends when the grid allows.
pub fn finite_diff(f: &SampledFunction, order: u8) -> Result<SampledFunction> {
    let g = f.grid;
    let n = g.n;
    let v = &f.values;
    let h = g.h;
    let out = match order {
        1 => {
            if n < 1 {
                return Err(FracError::GridTooSmall {
                    op: "finite_diff",
                    needed: 1,
                    got: n,
                });
            }
            let mut d = vec![0.0; n + 1];
            for i in 1..n {
                d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
            }
            if n >= 2 {
                d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
                d[n] = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h);
            } else {
                d[0] = (v[1] - v[0]) / h;
                d[1] = d[0];
            }
            d
        }
        2 => {
            if n < 2 {
                return Err(FracError::GridTooSmall {
                    op: "finite_diff",
                    needed: 2,
                    got: n,
                });
            }
            let h2 = h * h;
            let mut d = vec![0.0; n + 1];
            for i in 1..n {
                d[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / h2;
            }
            if n >= 3 {
                d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
                d[n] = (2.0 * v[n] - 5.0 * v[n - 1] + 4.0 * v[n - 2] - v[n - 3]) / h2;
            } else {
                d[0] = d[1];
                d[n] = d[n - 1];
            }
            d
        }
        _ => {
            return Err(FracError::InvalidParameter(format!(
                "finite_diff order must be 1 or 2, got {order}"
            )))
        }
    };
    SampledFunction::new(g, out)
}
