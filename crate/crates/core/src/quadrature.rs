//! Gaussian quadrature rules.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::{laguerre_all, log_gamma};

/// Default node count for the bounded and half-line rules.
pub const DEFAULT_NODES: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Affine map of a rule on `[-1, 1]` onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Rule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Rule {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| half * w).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Legendre `P_n(x)` and its derivative.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `n`-point Gauss-Legendre rule on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> Result<Rule> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "Gauss-Legendre needs n ≥ 2, got {n}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(Rule { nodes, weights })
}

/// `n`-point generalised Gauss-Laguerre rule for the weight `x^α e^{-x}` on `(0, ∞)`.
///
/// Nodes come from the Golub-Welsch eigenproblem and are polished by Newton
/// steps on `L_n^α`. Large weights come from the eigenvectors, small ones from
/// `w_i = Γ(n+α+1) x_i / (n! (n+1)² L_{n+1}^α(x_i)²)` in log space.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Rule> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "Gauss-Laguerre needs n ≥ 2, got {n}"
        )));
    }
    if !(alpha > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "Gauss-Laguerre needs α > -1, got {alpha}"
        )));
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * i as f64 + alpha + 1.0
        } else if i + 1 == j || j + 1 == i {
            let k = i.max(j) as f64;
            (k * (k + alpha)).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mu0 = log_gamma(alpha + 1.0)?.exp();
    let mut pairs: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let nf = n as f64;
    let log_lead = log_gamma(nf + alpha + 1.0)? - log_gamma(nf + 1.0)? - 2.0 * (nf + 1.0).ln();
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (mut x, w_eig) in pairs {
        for _ in 0..8 {
            let l = laguerre_all(n, alpha, x);
            let deriv = (nf * l[n] - (nf + alpha) * l[n - 1]) / x;
            let dx = l[n] / deriv;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs() {
                break;
            }
        }
        // The eigenvector weight has absolute accuracy, the closed form has
        // relative accuracy degraded by ~n/x near the origin; keep the better one.
        let w = if w_eig * nf > x {
            w_eig
        } else {
            let l_next = laguerre_all(n + 1, alpha, x)[n + 1];
            (log_lead + x.ln() - 2.0 * l_next.abs().ln()).exp()
        };
        nodes.push(x);
        weights.push(w);
    }
    Ok(Rule { nodes, weights })
}

/// Composite Gauss-Legendre integral of `f` over `[a, b]` with `panels` equal panels.
pub fn integrate_composite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    base: &Rule,
) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let lo = a + p as f64 * h;
            base.mapped(lo, lo + h).integrate(&mut f)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn legendre_rule_integrates_monomials() {
        let rule = gauss_legendre(DEFAULT_NODES).unwrap();
        assert_eq!(rule.len(), 128);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        for k in 0..60 {
            let got = rule.integrate(|x| x.powi(k));
            let want = if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            assert!((got - want).abs() < 1e-14, "k={k}: {got}");
        }
    }

    #[test]
    fn legendre_rule_small_n_exact() {
        let r = gauss_legendre(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        assert!(gauss_legendre(1).is_err());
    }

    #[test]
    fn mapped_rule_integrates_transcendental() {
        let r = gauss_legendre(40)
            .unwrap()
            .mapped(0.0, std::f64::consts::PI);
        assert!((r.integrate(f64::sin) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_rule_moments() {
        for &alpha in &[0.0, 0.5, 3.0, 7.3] {
            let rule = gauss_laguerre(DEFAULT_NODES, alpha).unwrap();
            for k in 0..40 {
                let got = rule.integrate(|x| x.powi(k));
                let want = gamma(alpha + k as f64 + 1.0).unwrap();
                assert!(
                    (got - want).abs() < 1e-12 * want,
                    "α={alpha} k={k}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn laguerre_rule_rejects_bad_alpha() {
        assert!(gauss_laguerre(10, -1.0).is_err());
    }

    #[test]
    fn composite_rule() {
        let base = gauss_legendre(20).unwrap();
        let v = integrate_composite(f64::exp, 0.0, 3.0, 4, &base);
        assert!((v - (3f64.exp() - 1.0)).abs() < 1e-13);
    }
}
