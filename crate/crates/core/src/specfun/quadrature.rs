//! Gaussian quadrature rules used by the operators and solvers.

use nalgebra::{DMatrix, SymmetricEigen};

use super::gamma::{gamma, ln_gamma};

/// Nodes and weights of an n-point rule.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    /// Affinely map a rule on [-1, 1] to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> QuadRule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        QuadRule {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| w * half).collect(),
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
pub fn gauss_legendre(n: usize) -> QuadRule {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadRule { nodes, weights }
}

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1,
/// via the Golub-Welsch eigenvalue problem.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> QuadRule {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let ab = a + b;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let diag = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        jac[(k, k)] = diag;
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + ab;
            let num = 4.0 * m * (m + a) * (m + b) * (m + ab);
            let den = s * s * (s + 1.0) * (s - 1.0);
            let off = (num / den).sqrt();
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(ab + 2.0))
    .exp();
    // ln_gamma is |Γ|; the arguments above are all positive so no sign fix is needed
    debug_assert!(gamma(a + 1.0) > 0.0 && gamma(b + 1.0) > 0.0);
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    QuadRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(8);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // ∫_{-1}^{1} x^14 = 2/15
        assert!((r.integrate(|x| x.powi(14)) - 2.0 / 15.0).abs() < 1e-14);
        let m = r.mapped(0.0, 3.0);
        assert!((m.integrate(|x| x * x) - 9.0).abs() < 1e-13);
    }

    #[test]
    fn jacobi_moments() {
        // weight (1-x)^-0.5 (1+x)^0.3; compare Σw with the Beta-function mass
        let (a, b) = (-0.5, 0.3);
        let r = gauss_jacobi(20, a, b);
        let mass = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
        assert!((r.weights.iter().sum::<f64>() - mass).abs() < 1e-12);
        // first moment ∫ x w(x) dx = mass (b - a)/(a + b + 2)
        let m1 = r.integrate(|x| x);
        assert!((m1 - mass * (b - a) / (a + b + 2.0)).abs() < 1e-12);
    }
}
