//! Derivatives with non-singular memory kernels: Caputo-Fabrizio and the
//! general Caputo (GC) / Riemann-Liouville (GRL) kernel operators.

use std::fmt;
use std::sync::Arc;

use super::{check_order, finished, Admissible};
use crate::error::{FracError, Result};
use crate::grid::{finite_diff, SampledFunction};
use crate::specfun::quadrature::gauss_legendre;
use crate::specfun::{gamma, mittag_leffler, MLParams, SeriesConfig};

/// Points per grid cell for kernel cell integrals.
const CELL_NODES: usize = 8;

pub type KernelFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type NormalizerFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Memory kernel k(x, α), x ≥ 0. With c = α/(1-α):
#[derive(Clone)]
pub enum KernelKind {
    /// exp(-c x)
    CaputoFabrizio,
    /// E_α(-c x)
    AtanganaBaleanu,
    /// exp(-c x²)
    AtanganaGomez,
    /// exp(-c x^β), β > 0, β ≠ 1
    StretchedExp(f64),
    Custom(KernelFn),
}

impl fmt::Debug for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::CaputoFabrizio => write!(f, "CaputoFabrizio"),
            KernelKind::AtanganaBaleanu => write!(f, "AtanganaBaleanu"),
            KernelKind::AtanganaGomez => write!(f, "AtanganaGomez"),
            KernelKind::StretchedExp(b) => write!(f, "StretchedExp({b})"),
            KernelKind::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// A kernel with its normalizer N(α).
///
/// Default normalizers: 1/(1-α) for the exponential (M(α) = 1),
/// Mittag-Leffler and custom kernels; 2√(c/π) for the Gaussian and
/// c^{1/β}/Γ(1+1/β) for the stretched exponential, which give the kernel
/// unit mass.
#[derive(Clone)]
pub struct KernelSpec {
    pub kind: KernelKind,
    normalizer: Option<NormalizerFn>,
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelSpec")
            .field("kind", &self.kind)
            .field("custom_normalizer", &self.normalizer.is_some())
            .finish()
    }
}

impl KernelSpec {
    pub fn new(kind: KernelKind) -> Result<Self> {
        if let KernelKind::StretchedExp(b) = kind {
            if !(b.is_finite() && b > 0.0 && b != 1.0) {
                return Err(FracError::Kernel(format!(
                    "stretched exponent must be > 0 and != 1, got {b}"
                )));
            }
        }
        Ok(KernelSpec {
            kind,
            normalizer: None,
        })
    }

    pub fn caputo_fabrizio() -> Self {
        KernelSpec {
            kind: KernelKind::CaputoFabrizio,
            normalizer: None,
        }
    }

    pub fn with_normalizer(mut self, n: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.normalizer = Some(Arc::new(n));
        self
    }

    pub fn normalizer(&self, alpha: f64) -> f64 {
        if let Some(n) = &self.normalizer {
            return n(alpha);
        }
        let c = alpha / (1.0 - alpha);
        match self.kind {
            KernelKind::AtanganaGomez => 2.0 * (c / std::f64::consts::PI).sqrt(),
            KernelKind::StretchedExp(b) => c.powf(1.0 / b) / gamma(1.0 + 1.0 / b),
            _ => 1.0 / (1.0 - alpha),
        }
    }

    pub fn eval(&self, x: f64, alpha: f64) -> Result<f64> {
        let c = alpha / (1.0 - alpha);
        Ok(match &self.kind {
            KernelKind::CaputoFabrizio => (-c * x).exp(),
            KernelKind::AtanganaBaleanu => {
                mittag_leffler(&MLParams::new(alpha, 1.0)?, -c * x, &SeriesConfig::default())?
            }
            KernelKind::AtanganaGomez => (-c * x * x).exp(),
            KernelKind::StretchedExp(b) => (-c * x.powf(*b)).exp(),
            KernelKind::Custom(k) => k(x, alpha),
        })
    }

    /// Fading memory on the grid distances: finite and non-increasing.
    fn validate(&self, alpha: f64, h: f64, n: usize) -> Result<f64> {
        let norm = self.normalizer(alpha);
        if !norm.is_finite() {
            return Err(FracError::Kernel(format!(
                "normalizer is not finite at alpha = {alpha}"
            )));
        }
        let mut prev = f64::INFINITY;
        for m in 0..=n {
            let x = m as f64 * h;
            let k = self.eval(x, alpha)?;
            if !k.is_finite() {
                return Err(FracError::Kernel(format!("kernel is not finite at x = {x}")));
            }
            if k > prev + 1e-12 * prev.abs().max(1e-300) {
                return Err(FracError::Kernel(format!(
                    "kernel increases at x = {x}; memory must fade"
                )));
            }
            prev = k;
        }
        Ok(norm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    /// N(α) ∫_a^x k(x-τ) f'(τ) dτ
    GC,
    /// d/dx N(α) ∫_a^x k(x-τ) f(τ) dτ
    GRL,
}

/// Cell slopes d_j = (f_j - f_{j-1})/h, j = 1..n (d_0 unused).
fn slopes(f: &SampledFunction) -> Vec<f64> {
    let h = f.grid.h;
    let mut d = vec![0.0; f.grid.n + 1];
    for j in 1..=f.grid.n {
        d[j] = (f.values[j] - f.values[j - 1]) / h;
    }
    d
}

/// GC form with the exponential kernel: Σ_j d_j ∫_cell e^{-λ(x_i-τ)} dτ by
/// the exact recursion S_i = e^{-λh} S_{i-1} + d_i (1 - e^{-λh})/λ.
fn exp_gc(f: &SampledFunction, alpha: f64, norm: f64) -> Result<SampledFunction> {
    let lambda = alpha / (1.0 - alpha);
    let h = f.grid.h;
    let decay = (-lambda * h).exp();
    let gain = -(-lambda * h).exp_m1() / lambda;
    let d = slopes(f);
    let mut s = 0.0;
    let mut out = vec![0.0; f.grid.n + 1];
    for i in 1..=f.grid.n {
        s = decay * s + d[i] * gain;
        out[i] = norm * s;
    }
    finished(f, out)
}

/// Caputo-Fabrizio derivative M(α)/(1-α) ∫_a^x exp(-α(x-τ)/(1-α)) f'(τ) dτ,
/// f piecewise linear between nodes and constant before a. `k` must be the
/// exponential kernel; its normalizer supplies M(α)/(1-α).
pub fn caputo_fabrizio(f: &SampledFunction, alpha: f64, k: &KernelSpec) -> Result<SampledFunction> {
    let alpha = check_order("caputo_fabrizio", alpha, Admissible::Open01)?;
    if !matches!(k.kind, KernelKind::CaputoFabrizio) {
        return Err(FracError::Kernel(format!(
            "caputo_fabrizio needs the exponential kernel, got {:?}",
            k.kind
        )));
    }
    let norm = k.validate(alpha, f.grid.h, f.grid.n)?;
    exp_gc(f, alpha, norm)
}

/// General-kernel derivative. GC integrates the piecewise-constant
/// derivative against per-cell kernel integrals (Gauss-Legendre); GRL
/// differentiates the trapezoid convolution of f with k.
pub fn general_kernel_derivative(
    f: &SampledFunction,
    alpha: f64,
    k: &KernelSpec,
    mode: KernelMode,
) -> Result<SampledFunction> {
    let alpha = check_order("general_kernel_derivative", alpha, Admissible::Open01)?;
    let n = f.grid.n;
    let h = f.grid.h;
    let norm = k.validate(alpha, h, n)?;
    match mode {
        KernelMode::GC => {
            if matches!(k.kind, KernelKind::CaputoFabrizio) {
                return exp_gc(f, alpha, norm);
            }
            let rule = gauss_legendre(CELL_NODES);
            // K_m = ∫_{mh}^{(m+1)h} k(y) dy
            let mut cells = Vec::with_capacity(n);
            for m in 0..n {
                let r = rule.mapped(m as f64 * h, (m + 1) as f64 * h);
                let mut acc = 0.0;
                for (x, w) in r.nodes.iter().zip(&r.weights) {
                    acc += w * k.eval(*x, alpha)?;
                }
                cells.push(acc);
            }
            let d = slopes(f);
            let out = (0..=n)
                .map(|i| norm * (1..=i).map(|j| d[j] * cells[i - j]).sum::<f64>())
                .collect();
            finished(f, out)
        }
        KernelMode::GRL => {
            let kv = (0..=n)
                .map(|m| k.eval(m as f64 * h, alpha))
                .collect::<Result<Vec<f64>>>()?;
            let v = &f.values;
            let conv = (0..=n)
                .map(|i| {
                    if i == 0 {
                        return 0.0;
                    }
                    let inner: f64 = (1..i).map(|j| kv[i - j] * v[j]).sum();
                    norm * h * (0.5 * kv[i] * v[0] + inner + 0.5 * kv[0] * v[i])
                })
                .collect();
            finite_diff(&finished(f, conv)?, 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_uniform_grid, sample};

    #[test]
    fn cf_examples() {
        let g = make_uniform_grid(0.0, 1.0, 2000).unwrap();
        let k = KernelSpec::caputo_fabrizio();
        let c = sample(|_| 4.0, &g).unwrap();
        assert!(caputo_fabrizio(&c, 0.5, &k)
            .unwrap()
            .values
            .iter()
            .all(|&v| v == 0.0));
        let f = sample(|t| t * t / 2.0, &g).unwrap();
        let d = caputo_fabrizio(&f, 0.999, &k).unwrap();
        for i in [1000, 2000] {
            let t = g.node(i);
            assert!((d.values[i] - t).abs() < 0.05 * t);
        }
    }

    #[test]
    fn cf_linear_closed_form() {
        // f = t: (1/(1-α)) ∫_0^t e^{-λ y} dy = (1 - e^{-λ t}) / α
        let g = make_uniform_grid(0.0, 2.0, 50).unwrap();
        let f = sample(|t| t, &g).unwrap();
        let d = caputo_fabrizio(&f, 0.4, &KernelSpec::caputo_fabrizio()).unwrap();
        let lam = 0.4 / 0.6;
        for (i, t) in g.nodes().into_iter().enumerate() {
            assert!((d.values[i] - (1.0 - (-lam * t).exp()) / 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn gc_exp_matches_cf_exactly() {
        let g = make_uniform_grid(0.0, 3.0, 120).unwrap();
        let f = sample(|t| (2.0 * t).sin(), &g).unwrap();
        let k = KernelSpec::caputo_fabrizio().with_normalizer(|a| 2.0 / (1.0 - a));
        let a = caputo_fabrizio(&f, 0.3, &k).unwrap();
        let b = general_kernel_derivative(&f, 0.3, &k, KernelMode::GC).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ab_kernel_on_linear() {
        // f = t: N ∫_0^t E_α(-c y) dy = N t Σ (-c t)^k / ((k+1) Γ(αk+1))
        let alpha = 0.5;
        let k = KernelSpec::new(KernelKind::AtanganaBaleanu).unwrap();
        let oracle = |t: f64| {
            let c = alpha / (1.0 - alpha);
            let s: f64 = (0..80)
                .map(|j| (-c * t).powi(j) / ((j + 1) as f64 * gamma(alpha * j as f64 + 1.0)))
                .sum();
            k.normalizer(alpha) * t * s
        };
        let mut errs = Vec::new();
        for n in [20, 40] {
            let g = make_uniform_grid(0.0, 1.0, n).unwrap();
            let f = sample(|t| t, &g).unwrap();
            let d = general_kernel_derivative(&f, alpha, &k, KernelMode::GC).unwrap();
            errs.push((d.values[n] - oracle(1.0)).abs());
        }
        assert!(errs[1] < 1e-10, "{errs:?}");
        // GRL is second order in h; Richardson extrapolation tightens it
        let grl = |n: usize| {
            let g = make_uniform_grid(0.0, 1.0, n).unwrap();
            let f = sample(|t| t, &g).unwrap();
            general_kernel_derivative(&f, alpha, &k, KernelMode::GRL)
                .unwrap()
                .values[n / 2]
        };
        let (c1, c2) = (grl(200), grl(400));
        let rich = (4.0 * c2 - c1) / 3.0;
        assert!((rich - oracle(0.5)).abs() < 1e-6, "{rich} {}", oracle(0.5));
    }

    #[test]
    fn constants_and_kernels() {
        let g = make_uniform_grid(0.0, 2.0, 40).unwrap();
        let c = sample(|_| 1.5, &g).unwrap();
        for kind in [
            KernelKind::AtanganaBaleanu,
            KernelKind::AtanganaGomez,
            KernelKind::StretchedExp(0.5),
            KernelKind::Custom(Arc::new(|x, _| 1.0 / (1.0 + x))),
        ] {
            let k = KernelSpec::new(kind).unwrap();
            let d = general_kernel_derivative(&c, 0.6, &k, KernelMode::GC).unwrap();
            assert!(d.values.iter().all(|&v| v == 0.0));
        }
        assert!(KernelSpec::new(KernelKind::StretchedExp(1.0)).is_err());
        let growing = KernelSpec::new(KernelKind::Custom(Arc::new(|x, _| x))).unwrap();
        assert!(matches!(
            general_kernel_derivative(&c, 0.5, &growing, KernelMode::GC),
            Err(FracError::Kernel(_))
        ));
        let ab = KernelSpec::new(KernelKind::AtanganaBaleanu).unwrap();
        assert!(caputo_fabrizio(&c, 0.5, &ab).is_err());
    }

    #[test]
    fn unit_mass_normalizers() {
        for kind in [KernelKind::AtanganaGomez, KernelKind::StretchedExp(0.7)] {
            let k = KernelSpec::new(kind).unwrap();
            let rule = gauss_legendre(64);
            // ∫_0^∞ k via x = u/(1-u)
            let mass: f64 = rule
                .mapped(0.0, 1.0)
                .integrate(|u| k.eval(u / (1.0 - u), 0.4).unwrap() / ((1.0 - u) * (1.0 - u)));
            assert!((k.normalizer(0.4) * mass - 1.0).abs() < 1e-4, "{mass}");
        }
    }
}
