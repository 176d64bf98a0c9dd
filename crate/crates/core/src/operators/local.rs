//! Local fractional-type derivatives: conformable and Hausdorff (fractal).

use super::{check_order, finished, Admissible};
use crate::error::{FracError, Result};
use crate::grid::{finite_diff, SampledFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConformableVariant {
    /// lim (f(t + ε t^{1-α}) - f(t)) / ε
    Khalil,
    /// lim (f(t e^{ε t^{-α}}) - f(t)) / ε
    Katugampola,
}

/// Conformable derivative t^{1-α} f'(t), α ∈ (0, 1), on a grid with a > 0.
/// Both limit definitions reduce to this for differentiable f.
pub fn conformable_derivative(
    f: &SampledFunction,
    alpha: f64,
    _variant: ConformableVariant,
) -> Result<SampledFunction> {
    let alpha = check_order("conformable_derivative", alpha, Admissible::Open01)?;
    if f.grid.a <= 0.0 {
        return Err(FracError::InvalidGrid(format!(
            "conformable derivative needs t > 0 at every node, got a = {}",
            f.grid.a
        )));
    }
    let d = finite_diff(f, 1)?;
    let out = d
        .values
        .iter()
        .zip(f.grid.nodes())
        .map(|(d, t)| t.powf(1.0 - alpha) * d)
        .collect();
    finished(f, out)
}

/// Hausdorff derivative df/d(t^σ), σ > 0, on a grid with a ≥ 0.
///
/// Interior nodes use (f_{i+1} - f_{i-1}) / (t_{i+1}^σ - t_{i-1}^σ); the end
/// nodes differentiate the three-point Lagrange interpolant in s = t^σ.
pub fn hausdorff_fractal_derivative(f: &SampledFunction, sigma: f64) -> Result<SampledFunction> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(FracError::InvalidParameter(format!(
            "hausdorff sigma must be > 0, got {sigma}"
        )));
    }
    if f.grid.a < 0.0 {
        return Err(FracError::InvalidGrid(format!(
            "hausdorff derivative needs t >= 0, got a = {}",
            f.grid.a
        )));
    }
    let n = f.grid.n;
    if n < 2 {
        return Err(FracError::GridTooSmall {
            op: "hausdorff_fractal_derivative",
            needed: 2,
            got: n,
        });
    }
    let s: Vec<f64> = f.grid.nodes().into_iter().map(|t| t.powf(sigma)).collect();
    let v = &f.values;
    // derivative at s[at] of the quadratic through (s[j], v[j]), j in idx
    let lagrange = |idx: [usize; 3], at: usize| -> f64 {
        let x = s[at];
        let mut acc = 0.0;
        for (p, &j) in idx.iter().enumerate() {
            let others: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != p)
                .map(|(_, &k)| k)
                .collect();
            let (k, l) = (others[0], others[1]);
            let denom = (s[j] - s[k]) * (s[j] - s[l]);
            acc += v[j] * ((x - s[k]) + (x - s[l])) / denom;
        }
        acc
    };
    let mut out = vec![0.0; n + 1];
    out[0] = lagrange([0, 1, 2], 0);
    for i in 1..n {
        out[i] = (v[i + 1] - v[i - 1]) / (s[i + 1] - s[i - 1]);
    }
    out[n] = lagrange([n - 2, n - 1, n], n);
    finished(f, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_uniform_grid, sample};

    #[test]
    fn conformable_examples() {
        let g = make_uniform_grid(0.5, 2.0, 300).unwrap();
        let c = sample(|_| 7.0, &g).unwrap();
        let v = ConformableVariant::Khalil;
        assert!(conformable_derivative(&c, 0.5, v)
            .unwrap()
            .values
            .iter()
            .all(|x| x.abs() < 1e-12));
        let sq = sample(|t| t * t, &g).unwrap();
        let d = conformable_derivative(&sq, 0.5, ConformableVariant::Katugampola).unwrap();
        for (i, t) in g.nodes().into_iter().enumerate() {
            assert!((d.values[i] - 2.0 * t.powf(1.5)).abs() < 1e-10);
        }
        let g0 = make_uniform_grid(0.0, 1.0, 10).unwrap();
        let z = sample(|t| t, &g0).unwrap();
        assert!(conformable_derivative(&z, 0.5, v).is_err());
    }

    #[test]
    fn conformable_product_rule() {
        let g = make_uniform_grid(0.5, 3.0, 400).unwrap();
        let f = sample(|t| t, &g).unwrap();
        let s = sample(f64::sin, &g).unwrap();
        let fg = sample(|t| t * t.sin(), &g).unwrap();
        let v = ConformableVariant::Khalil;
        let lhs = conformable_derivative(&fg, 0.4, v).unwrap();
        let df = conformable_derivative(&f, 0.4, v).unwrap();
        let ds = conformable_derivative(&s, 0.4, v).unwrap();
        for i in 0..=400 {
            let rhs = f.values[i] * ds.values[i] + s.values[i] * df.values[i];
            assert!((lhs.values[i] - rhs).abs() < 1e-3);
        }
    }

    #[test]
    fn hausdorff_examples() {
        let g = make_uniform_grid(0.0, 1.0, 200).unwrap();
        // f = t^σ has derivative 1 in s = t^σ
        let f = sample(|t| t.powf(0.6), &g).unwrap();
        let d = hausdorff_fractal_derivative(&f, 0.6).unwrap();
        assert!(d.values.iter().all(|x| (x - 1.0).abs() < 1e-10));
        let sq = sample(|t| t * t, &g).unwrap();
        let one = hausdorff_fractal_derivative(&sq, 1.0).unwrap();
        for (i, t) in g.nodes().into_iter().enumerate() {
            assert!((one.values[i] - 2.0 * t).abs() < 1e-10);
        }
        assert!(hausdorff_fractal_derivative(&sq, 0.0).is_err());
    }
}
