//! Grünwald-Letnikov sums and the Marchaud derivative.

use super::{check_order, finished, with_side, Admissible, Side};
use crate::error::{FracError, Result};
use crate::grid::SampledFunction;
use crate::specfun::{gl_integral_weights, gl_weights, recip_gamma};

fn check_memory(memory: Option<usize>, n: usize) -> Result<usize> {
    match memory {
        None => Ok(n),
        Some(0) => Err(FracError::InvalidParameter("memory length must be >= 1".into())),
        Some(l) if l > n => Err(FracError::InvalidParameter(format!(
            "memory length {l} exceeds the {n} grid intervals"
        ))),
        Some(l) => Ok(l),
    }
}

fn convolve(values: &[f64], weights: &[f64], memory: usize, scale: f64) -> Vec<f64> {
    (0..values.len())
        .map(|i| {
            let kmax = i.min(memory);
            let acc: f64 = (0..=kmax).map(|k| weights[k] * values[i - k]).sum();
            scale * acc
        })
        .collect()
}

/// Grünwald-Letnikov derivative h^{-α} Σ_{k=0}^{min(i, L)} ω_k f(x_{i∓k}),
/// the sample extended by zero beyond the grid. `memory` = L enables the
/// short-memory truncation.
pub fn gl_derivative(
    f: &SampledFunction,
    alpha: f64,
    side: Side,
    memory: Option<usize>,
) -> Result<SampledFunction> {
    let alpha = check_order("gl_derivative", alpha, Admissible::Positive)?;
    let n = f.grid.n;
    let memory = check_memory(memory, n)?;
    let w = gl_weights(alpha, memory)?;
    let scale = f.grid.h.powf(-alpha);
    with_side(f, side, |g| finished(g, convolve(&g.values, &w, memory, scale)))
}

/// Grünwald-Letnikov integral h^α Σ_k Γ(k+α)/(Γ(α) k!) f(x_{i∓k}).
pub fn gl_integral(
    f: &SampledFunction,
    alpha: f64,
    side: Side,
    memory: Option<usize>,
) -> Result<SampledFunction> {
    let alpha = check_order("gl_integral", alpha, Admissible::NonNegative)?;
    if alpha == 0.0 {
        return Ok(f.clone());
    }
    let n = f.grid.n;
    let memory = check_memory(memory, n)?;
    let w = gl_integral_weights(alpha, memory)?;
    let scale = f.grid.h.powf(alpha);
    with_side(f, side, |g| finished(g, convolve(&g.values, &w, memory, scale)))
}

/// Marchaud derivative with finite lower terminal, 0 < α < 1:
/// f(x)/(Γ(1-α)(x-a)^α) + α/Γ(1-α) ∫_a^{x-ε} (f(x) - f(y))/(x-y)^{α+1} dy.
///
/// The integral is a trapezoid sum over the nodes with x - y ≥ ε; ε ≥ h is
/// rounded down to a whole number of cells. At x = a the distance in the
/// boundary term is clamped to ε.
pub fn marchaud_derivative(f: &SampledFunction, alpha: f64, side: Side, eps: f64) -> Result<SampledFunction> {
    let alpha = check_order("marchaud_derivative", alpha, Admissible::Open01)?;
    let h = f.grid.h;
    if !(eps >= h * (1.0 - 1e-12)) || !eps.is_finite() {
        return Err(FracError::InvalidParameter(format!(
            "marchaud eps must be >= h = {h}, got {eps}"
        )));
    }
    let cells = ((eps / h) * (1.0 + 1e-12)).floor().max(1.0) as usize;
    let rg = recip_gamma(1.0 - alpha);
    // kernel (m h)^{-α-1} for m ≥ 1
    let n = f.grid.n;
    let kern: Vec<f64> = (0..=n)
        .map(|m| {
            if m == 0 {
                0.0
            } else {
                (m as f64 * h).powf(-alpha - 1.0)
            }
        })
        .collect();
    with_side(f, side, |g| {
        let v = &g.values;
        let mut out = vec![0.0; n + 1];
        for (i, o) in out.iter_mut().enumerate() {
            let dist = (i as f64 * h).max(cells as f64 * h);
            let boundary = v[i] * rg * dist.powf(-alpha);
            let mut integral = 0.0;
            if i > cells {
                // nodes j = 0..=i-cells, trapezoid with half weights at the ends
                let last = i - cells;
                for j in 0..=last {
                    let w = if j == 0 || j == last { 0.5 } else { 1.0 };
                    integral += w * (v[i] - v[j]) * kern[i - j];
                }
                integral *= h;
            }
            *o = boundary + alpha * rg * integral;
        }
        finished(g, out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_uniform_grid, sample};
    use crate::operators::rl_derivative;

    #[test]
    fn order_one_is_backward_difference() {
        let g = make_uniform_grid(0.0, 1.0, 10).unwrap();
        let f = sample(|x| x * x, &g).unwrap();
        let d = gl_derivative(&f, 1.0, Side::Left, None).unwrap();
        for i in 1..=10 {
            let bd = (f.values[i] - f.values[i - 1]) / g.h;
            assert!((d.values[i] - bd).abs() < 1e-12);
        }
    }

    #[test]
    fn power_rule_at_first_order() {
        let g = make_uniform_grid(0.0, 1.0, 1024).unwrap();
        let f = sample(|x| x, &g).unwrap();
        let d = gl_derivative(&f, 0.5, Side::Left, None).unwrap();
        assert!((d.values[1024] - std::f64::consts::FRAC_2_SQRT_PI).abs() < 5e-3);
    }

    #[test]
    fn memory_truncation_error_decreases() {
        let g = make_uniform_grid(0.0, 10.0, 1000).unwrap();
        let f = sample(f64::cos, &g).unwrap();
        let full = gl_derivative(&f, 0.5, Side::Left, None).unwrap();
        let mut last = f64::INFINITY;
        for l in [50, 100, 200, 400] {
            let t = gl_derivative(&f, 0.5, Side::Left, Some(l)).unwrap();
            let err = t
                .values
                .iter()
                .zip(&full.values)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(err < last);
            assert!(err <= 2.0 * (l as f64 * g.h).powf(-0.5));
            last = err;
        }
        assert!(gl_derivative(&f, 0.5, Side::Left, Some(0)).is_err());
        assert!(gl_derivative(&f, 0.5, Side::Left, Some(1001)).is_err());
    }

    #[test]
    fn gl_integral_of_constant() {
        // J^α 1 = x^α / Γ(α+1)
        let g = make_uniform_grid(0.0, 1.0, 2000).unwrap();
        let one = sample(|_| 1.0, &g).unwrap();
        let j = gl_integral(&one, 0.5, Side::Left, None).unwrap();
        assert!((j.values[2000] - 1.0 / crate::specfun::gamma(1.5)).abs() < 1e-3);
        assert_eq!(gl_integral(&one, 0.0, Side::Left, None).unwrap(), one);
    }

    #[test]
    fn marchaud_examples() {
        let g = make_uniform_grid(0.0, 1.0, 400).unwrap();
        let c = sample(|_| 2.0, &g).unwrap();
        let m = marchaud_derivative(&c, 0.5, Side::Left, g.h).unwrap();
        for i in 1..=400 {
            let want = 2.0 * recip_gamma(0.5) * g.node(i).powf(-0.5);
            assert!((m.values[i] - want).abs() < 1e-12);
        }
        let z = sample(|_| 0.0, &g).unwrap();
        assert!(marchaud_derivative(&z, 0.5, Side::Left, g.h)
            .unwrap()
            .values
            .iter()
            .all(|&v| v == 0.0));
        let t = sample(|x| x, &g).unwrap();
        let m = marchaud_derivative(&t, 0.5, Side::Left, g.h).unwrap();
        let r = rl_derivative(&t, 0.5, Side::Left).unwrap();
        // O(h^{1/2}) agreement at interior nodes
        for i in [100, 200, 400] {
            assert!((m.values[i] - r.values[i]).abs() < 3.0 * g.h.sqrt(), "i={i}");
        }
        assert!(marchaud_derivative(&t, 0.5, Side::Left, g.h / 2.0).is_err());
    }

    #[test]
    fn right_gl_of_reflected_linear() {
        let g = make_uniform_grid(0.0, 1.0, 1024).unwrap();
        let f = sample(|x| 1.0 - x, &g).unwrap();
        let d = gl_derivative(&f, 0.5, Side::Right, None).unwrap();
        assert!((d.values[0] - std::f64::consts::FRAC_2_SQRT_PI).abs() < 5e-3);
    }
}
