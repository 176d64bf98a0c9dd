//! Time-fractional and distributed-order diffusion on a bounded interval,
//! with Green-function, moment and similarity-variable diagnostics.
//!
//! Space is discretized by the centred second difference with u = 0 at both
//! ends; each time step solves one tridiagonal system plus a history sum.
//! The Caputo form uses the implicit L1 scheme, which telescopes so that the
//! discrete mass Σ u_i h only changes through the boundary fluxes.

use std::f64::consts::PI;

use crate::error::{FracError, Result};
use crate::grid::{Grid1D, SampledFunction, SingularWeights};
use crate::specfun::quadrature::gauss_legendre;
use crate::specfun::{gamma, recip_gamma, wright_auxiliary, Auxiliary, SeriesConfig};

/// Boundary values of u0 above this are rejected.
const BOUNDARY_TOL: f64 = 1e-12;

/// Which time derivative the equation carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiffusionForm {
    /// D_*^β u = u_xx
    #[default]
    Caputo,
    /// u_t = D_RL^{1-β} u_xx, solved as u = u0 + J^β u_xx
    RiemannLiouville,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionProblem {
    pub beta: f64,
    pub x_grid: Grid1D,
    pub t_grid: Grid1D,
    pub u0: SampledFunction,
    pub form: DiffusionForm,
}

impl DiffusionProblem {
    pub fn new(beta: f64, t_grid: Grid1D, u0: SampledFunction, form: DiffusionForm) -> Result<Self> {
        check_beta(beta)?;
        let p = DiffusionProblem {
            beta,
            x_grid: u0.grid,
            t_grid,
            u0,
            form,
        };
        p.validate_grids()?;
        Ok(p)
    }

    fn validate_grids(&self) -> Result<()> {
        if self.t_grid.a != 0.0 {
            return Err(FracError::InvalidGrid(format!(
                "time grid must start at 0, got {}",
                self.t_grid.a
            )));
        }
        if self.u0.grid != self.x_grid {
            return Err(FracError::InvalidGrid("u0 is not sampled on x_grid".into()));
        }
        if self.x_grid.n < 2 {
            return Err(FracError::GridTooSmall {
                op: "diffusion",
                needed: 2,
                got: self.x_grid.n,
            });
        }
        let v = &self.u0.values;
        let edge = v[0].abs().max(v[v.len() - 1].abs());
        if edge > BOUNDARY_TOL {
            return Err(FracError::NonzeroBoundary(edge));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(FracError::InvalidParameter("u0 must be finite".into()));
        }
        Ok(())
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(FracError::InvalidOrder {
            op: "diffusion",
            alpha: beta,
            range: "(0, 1]",
        })
    }
}

/// Unit-mass discrete delta: 1/h at the interior node nearest x = 0.
pub fn delta_initial(x_grid: &Grid1D) -> Result<SampledFunction> {
    let n = x_grid.n;
    if n < 2 {
        return Err(FracError::GridTooSmall {
            op: "delta_initial",
            needed: 2,
            got: n,
        });
    }
    let at = (-x_grid.a / x_grid.h).round().clamp(1.0, (n - 1) as f64) as usize;
    let mut v = vec![0.0; n + 1];
    v[at] = 1.0 / x_grid.h;
    SampledFunction::new(*x_grid, v)
}

/// Discretized order density b(β): Σ_j b_j D^{β_j}.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributedOrderSpec {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl DistributedOrderSpec {
    /// Nodes strictly increasing in (0, 1], weights ≥ 0 summing to 1.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(FracError::InvalidParameter(format!(
                "order density needs matching non-empty nodes and weights, got {} and {}",
                nodes.len(),
                weights.len()
            )));
        }
        for &b in &nodes {
            check_beta(b)?;
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FracError::InvalidParameter(
                "order nodes must be strictly increasing".into(),
            ));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(FracError::InvalidParameter("order weights must be >= 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(FracError::InvalidParameter(format!(
                "order weights must sum to 1, got {total}"
            )));
        }
        Ok(DistributedOrderSpec { nodes, weights })
    }

    /// b(β) = 1 on (0, 1) by an m-point Gauss-Legendre rule.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(FracError::InvalidParameter(
                "uniform order density needs m >= 1".into(),
            ));
        }
        let rule = gauss_legendre(m).mapped(0.0, 1.0);
        let mut pairs: Vec<(f64, f64)> = rule.nodes.into_iter().zip(rule.weights).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        let (nodes, weights) = pairs.into_iter().map(|(x, w)| (x, w / total)).unzip();
        Self::new(nodes, weights)
    }
}

/// u at every (time, space) node, rows indexed by time.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionSolution {
    pub x_grid: Grid1D,
    pub t_grid: Grid1D,
    pub u: Vec<Vec<f64>>,
}

impl DiffusionSolution {
    pub fn row(&self, j: usize) -> Result<SampledFunction> {
        SampledFunction::new(self.x_grid, self.u[j].clone())
    }

    pub fn mass(&self, j: usize) -> f64 {
        self.u[j].iter().sum::<f64>() * self.x_grid.h
    }
}

/// Solve (d I - Δ_h) x = rhs on the interior nodes (Thomas algorithm);
/// boundary entries of the result are 0.
fn solve_shifted_laplacian(d: f64, h: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len() - 1;
    let m = n - 1;
    let off = -1.0 / (h * h);
    let diag = d + 2.0 / (h * h);
    let mut c = vec![0.0; m];
    let mut y = vec![0.0; m];
    for k in 0..m {
        let denom = if k == 0 { diag } else { diag - off * c[k - 1] };
        c[k] = off / denom;
        let prev = if k == 0 { 0.0 } else { y[k - 1] };
        y[k] = (rhs[k + 1] - off * prev) / denom;
    }
    let mut out = vec![0.0; n + 1];
    for k in (0..m).rev() {
        let next = if k + 1 < m { out[k + 2] } else { 0.0 };
        out[k + 1] = y[k] - c[k] * next;
    }
    out
}

fn laplacian(u: &[f64], h: f64) -> Vec<f64> {
    let n = u.len() - 1;
    let mut out = vec![0.0; n + 1];
    for i in 1..n {
        out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    }
    out
}

/// Multi-term L1 stepping for Σ_j b_j D_*^{β_j} u = u_xx.
///
/// The L1 history weights of all terms are merged into one sequence
/// H_m = Σ_j b_j τ^{-β_j}/Γ(2-β_j) [(m+1)^{1-β_j} - m^{1-β_j}], so the cost
/// does not grow with the number of terms.
fn l1_march(betas: &[f64], weights: &[f64], p: &DiffusionProblem) -> DiffusionSolution {
    let nt = p.t_grid.n;
    let tau = p.t_grid.h;
    let h = p.x_grid.h;
    let nx = p.x_grid.n;
    let mut hist = vec![0.0; nt + 1];
    for (&beta, &w) in betas.iter().zip(weights) {
        let c = w * tau.powf(-beta) * recip_gamma(2.0 - beta);
        let e = 1.0 - beta;
        for (m, hm) in hist.iter_mut().enumerate() {
            let mf = m as f64;
            let lower = if m == 0 { 0.0 } else { mf.powf(e) };
            *hm += c * ((mf + 1.0).powf(e) - lower);
        }
    }
    let mut u: Vec<Vec<f64>> = Vec::with_capacity(nt + 1);
    u.push(p.u0.values.clone());
    let mut rhs = vec![0.0; nx + 1];
    for j in 1..=nt {
        // H_0 u^j - Δu^j = H_0 u^{j-1} - Σ_{k=1}^{j-1} H_{j-k} (u^k - u^{k-1})
        for (i, r) in rhs.iter_mut().enumerate() {
            let mut acc = hist[0] * u[j - 1][i];
            for k in 1..j {
                acc -= hist[j - k] * (u[k][i] - u[k - 1][i]);
            }
            *r = acc;
        }
        u.push(solve_shifted_laplacian(hist[0], h, &rhs));
    }
    DiffusionSolution {
        x_grid: p.x_grid,
        t_grid: p.t_grid,
        u,
    }
}

/// u^j = u^0 + J^β[Δu]^j with product-trapezoid weights in time.
fn integral_march(p: &DiffusionProblem) -> DiffusionSolution {
    let nt = p.t_grid.n;
    let h = p.x_grid.h;
    let nx = p.x_grid.n;
    let w = SingularWeights::build(p.beta, &p.t_grid);
    let rg = recip_gamma(p.beta);
    let mut u: Vec<Vec<f64>> = vec![p.u0.values.clone()];
    let mut lap: Vec<Vec<f64>> = vec![laplacian(&p.u0.values, h)];
    let mut rhs = vec![0.0; nx + 1];
    for j in 1..=nt {
        let row = w.row(j);
        let diag = rg * row[j];
        for (i, r) in rhs.iter_mut().enumerate() {
            let mut acc = p.u0.values[i];
            for (k, lk) in lap.iter().enumerate() {
                acc += rg * row[k] * lk[i];
            }
            *r = acc / diag;
        }
        let next = solve_shifted_laplacian(1.0 / diag, h, &rhs);
        lap.push(laplacian(&next, h));
        u.push(next);
    }
    DiffusionSolution {
        x_grid: p.x_grid,
        t_grid: p.t_grid,
        u,
    }
}

/// Time-fractional diffusion with zero boundary values.
pub fn solve_time_fractional_diffusion(p: &DiffusionProblem) -> Result<DiffusionSolution> {
    check_beta(p.beta)?;
    p.validate_grids()?;
    Ok(match p.form {
        DiffusionForm::Caputo => l1_march(&[p.beta], &[1.0], p),
        DiffusionForm::RiemannLiouville => integral_march(p),
    })
}

/// Distributed-order diffusion Σ_j b_j D_*^{β_j} u = u_xx; `p.beta` is
/// ignored. Only the Caputo form is supported.
pub fn solve_distributed_order_diffusion(
    spec: &DistributedOrderSpec,
    p: &DiffusionProblem,
) -> Result<DiffusionSolution> {
    let spec = DistributedOrderSpec::new(spec.nodes.clone(), spec.weights.clone())?;
    if p.form != DiffusionForm::Caputo {
        return Err(FracError::InvalidParameter(
            "distributed-order diffusion supports the Caputo form only".into(),
        ));
    }
    p.validate_grids()?;
    Ok(l1_march(&spec.nodes, &spec.weights, p))
}

/// Green function of D_*^β u = u_xx on the line:
/// ½ t^{-β/2} M_{β/2}(|x| t^{-β/2}); the Gaussian at β = 1.
pub fn fundamental_solution(beta: f64, x: f64, t: f64) -> Result<f64> {
    check_beta(beta)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(FracError::Domain(format!(
            "fundamental solution needs t > 0, got {t}"
        )));
    }
    if !x.is_finite() {
        return Err(FracError::Domain(format!("x must be finite, got {x}")));
    }
    if beta == 1.0 {
        return Ok((-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt());
    }
    let nu = beta / 2.0;
    let s = t.powf(-nu);
    Ok(0.5 * s * wright_auxiliary(nu, x.abs() * s, Auxiliary::M, &SeriesConfig::default())?)
}

/// Point (k, s) of the Fourier-Laplace domain for order β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenFLQuery {
    pub k: f64,
    pub s: f64,
    pub beta: f64,
}

impl GreenFLQuery {
    pub fn new(k: f64, s: f64, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        if !(s > 0.0 && s.is_finite()) || !k.is_finite() {
            return Err(FracError::Domain(format!(
                "need finite k and s > 0, got k = {k}, s = {s}"
            )));
        }
        Ok(GreenFLQuery { k, s, beta })
    }
}

/// s^{β-1} / (s^β + k²).
pub fn green_function_fl(q: GreenFLQuery) -> f64 {
    let sb = q.s.powf(q.beta);
    sb / q.s / (sb + q.k * q.k)
}

/// Mass, mean and raw second moment of a sampled density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mass: f64,
    pub mean: f64,
    pub second: f64,
}

pub fn moments(u: &SampledFunction) -> Result<Moments> {
    let h = u.grid.h;
    let xs = u.grid.nodes();
    let mass: f64 = u.values.iter().sum::<f64>() * h;
    if mass == 0.0 || !mass.is_finite() {
        return Err(FracError::ZeroMass);
    }
    let first: f64 = xs.iter().zip(&u.values).map(|(x, v)| x * v).sum::<f64>() * h;
    let second: f64 = xs.iter().zip(&u.values).map(|(x, v)| x * x * v).sum::<f64>() * h;
    Ok(Moments {
        mass,
        mean: first / mass,
        second: second / mass,
    })
}

/// Σ x_i² u_i h / Σ u_i h.
pub fn second_moment(u: &SampledFunction) -> Result<f64> {
    moments(u).map(|m| m.second)
}

/// s_i = x_i^α / Γ(1+α) for a grid on [0, b].
pub fn fractional_complex_transform(grid: &Grid1D, alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FracError::InvalidOrder {
            op: "fractional_complex_transform",
            alpha,
            range: "(0, 1]",
        });
    }
    if grid.a < 0.0 {
        return Err(FracError::InvalidGrid(format!(
            "complex transform needs x >= 0, got a = {}",
            grid.a
        )));
    }
    let g = gamma(1.0 + alpha);
    Ok(grid.nodes().into_iter().map(|x| x.powf(alpha) / g).collect())
}

/// Boltzmann similarity variable χ = s / √t.
pub fn boltzmann_variable(s: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(FracError::Domain(format!(
            "Boltzmann variable needs t > 0, got {t}"
        )));
    }
    Ok(s / t.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_uniform_grid, sample};

    fn delta_problem(beta: f64, l: f64, nx: usize, t: f64, nt: usize) -> DiffusionProblem {
        let xg = make_uniform_grid(-l, l, nx).unwrap();
        let tg = make_uniform_grid(0.0, t, nt).unwrap();
        DiffusionProblem::new(beta, tg, delta_initial(&xg).unwrap(), DiffusionForm::Caputo).unwrap()
    }

    #[test]
    fn classical_limit() {
        let p = delta_problem(1.0, 10.0, 256, 0.5, 200);
        let sol = solve_time_fractional_diffusion(&p).unwrap();
        let last = sol.row(200).unwrap();
        let peak = fundamental_solution(1.0, 0.0, 0.5).unwrap();
        for (i, x) in p.x_grid.nodes().into_iter().enumerate() {
            let want = fundamental_solution(1.0, x, 0.5).unwrap();
            assert!((last.values[i] - want).abs() < 0.05 * peak);
        }
        assert!((sol.mass(200) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mass_and_positivity() {
        for beta in [0.4, 0.7] {
            let p = delta_problem(beta, 20.0, 200, 1.0, 100);
            let sol = solve_time_fractional_diffusion(&p).unwrap();
            for j in 0..=100 {
                assert!((sol.mass(j) - 1.0).abs() < 1e-10);
                assert!(sol.u[j].iter().all(|&v| v >= -1e-10));
            }
        }
    }

    #[test]
    fn single_node_density_is_single_order() {
        let p = delta_problem(0.6, 10.0, 100, 1.0, 50);
        let a = solve_time_fractional_diffusion(&p).unwrap();
        let spec = DistributedOrderSpec::new(vec![0.6], vec![1.0]).unwrap();
        let b = solve_distributed_order_diffusion(&spec, &p).unwrap();
        for (ra, rb) in a.u.iter().zip(&b.u) {
            for (x, y) in ra.iter().zip(rb) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn integral_form_tracks_caputo_form() {
        let mut p = delta_problem(0.5, 30.0, 300, 1.0, 200);
        let c = solve_time_fractional_diffusion(&p).unwrap();
        p.form = DiffusionForm::RiemannLiouville;
        let r = solve_time_fractional_diffusion(&p).unwrap();
        let mc = second_moment(&c.row(200).unwrap()).unwrap();
        let mr = second_moment(&r.row(200).unwrap()).unwrap();
        let exact = 2.0 / gamma(1.5);
        assert!((mc - exact).abs() < 0.05 * exact, "{mc}");
        assert!((mr - exact).abs() < 0.05 * exact, "{mr}");
        assert!((r.mass(200) - 1.0).abs() < 1e-10);
        let spec = DistributedOrderSpec::new(vec![0.5], vec![1.0]).unwrap();
        assert!(solve_distributed_order_diffusion(&spec, &p).is_err());
    }

    #[test]
    fn rejects_bad_problems() {
        let xg = make_uniform_grid(-1.0, 1.0, 10).unwrap();
        let tg = make_uniform_grid(0.0, 1.0, 10).unwrap();
        let bump = sample(|x| 1.0 + x, &xg).unwrap();
        assert!(matches!(
            DiffusionProblem::new(0.5, tg, bump, DiffusionForm::Caputo),
            Err(FracError::NonzeroBoundary(_))
        ));
        let d = delta_initial(&xg).unwrap();
        assert!(DiffusionProblem::new(1.2, tg, d.clone(), DiffusionForm::Caputo).is_err());
        let late = make_uniform_grid(1.0, 2.0, 10).unwrap();
        assert!(DiffusionProblem::new(0.5, late, d, DiffusionForm::Caputo).is_err());
        assert!(DistributedOrderSpec::new(vec![0.5, 0.3], vec![0.5, 0.5]).is_err());
        assert!(DistributedOrderSpec::new(vec![0.3, 0.5], vec![0.5, 0.6]).is_err());
        let u = DistributedOrderSpec::uniform(16).unwrap();
        assert!((u.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn green_and_fundamental() {
        assert!((fundamental_solution(1.0, 0.0, 1.0).unwrap() - 0.282_094_791_773_878_1).abs() < 1e-15);
        for (x, t) in [(0.5, 0.3), (1.0, 2.0), (2.0, 5.0)] {
            let u = fundamental_solution(1.0, x, t).unwrap();
            let scaled = t.powf(-0.5) * fundamental_solution(1.0, x / t.sqrt(), 1.0).unwrap();
            assert!((u - scaled).abs() < 1e-14);
        }
        assert!(fundamental_solution(0.5, 1.0, 0.0).is_err());
        let q = GreenFLQuery::new(1.0, 1.0, 0.5).unwrap();
        assert!((green_function_fl(q) - 0.5).abs() < 1e-15);
        let q = GreenFLQuery::new(0.0, 3.0, 0.3).unwrap();
        assert!((green_function_fl(q) - 1.0 / 3.0).abs() < 1e-15);
        assert!(GreenFLQuery::new(0.0, 0.0, 0.3).is_err());
    }

    #[test]
    fn moments_examples() {
        let g = make_uniform_grid(-20.0, 20.0, 256).unwrap();
        let d = delta_initial(&g).unwrap();
        assert_eq!(second_moment(&d).unwrap(), 0.0);
        let t = 1.5;
        let gauss = sample(|x| fundamental_solution(1.0, x, t).unwrap(), &g).unwrap();
        let m = moments(&gauss).unwrap();
        assert!((m.second - 2.0 * t).abs() < 0.02 * 2.0 * t);
        assert!(m.mean.abs() < 1e-10);
        let zero = sample(|_| 0.0, &g).unwrap();
        assert!(matches!(second_moment(&zero), Err(FracError::ZeroMass)));
    }

    #[test]
    fn complex_transform() {
        let g = make_uniform_grid(0.0, 2.0, 8).unwrap();
        let s = fractional_complex_transform(&g, 1.0).unwrap();
        assert!(s.iter().zip(g.nodes()).all(|(a, b)| (a - b).abs() < 1e-15));
        let s = fractional_complex_transform(&g, 0.5).unwrap();
        assert!((s[4] - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-12);
        assert!(s.windows(2).all(|w| w[1] > w[0]));
        let neg = make_uniform_grid(-1.0, 1.0, 4).unwrap();
        assert!(fractional_complex_transform(&neg, 0.5).is_err());
        assert!((boltzmann_variable(2.0, 4.0).unwrap() - 1.0).abs() < 1e-15);
    }
}
