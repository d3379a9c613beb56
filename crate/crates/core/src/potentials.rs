//! Orthonormal eigenbases of the Morse, symmetric Pöschl-Teller (SPT) and
//! Pöschl-Teller (PT) problems in natural units `ħ = 2m = 1`.
//!
//! Each family has a *display coordinate* used by the evaluators:
//!
//! | family | display coordinate | measure       |
//! |--------|--------------------|---------------|
//! | Morse  | `x ∈ (0, ∞)`       | `dx`          |
//! | SPT    | `x = sin(αy) ∈ (−1, 1)` | `dy`     |
//! | PT     | `y ∈ (0, π/(2α))`  | `dy`          |
//!
//! The Schrödinger operator is `−d²/dy² + V(y)` for SPT and PT. The Morse
//! basis keeps `λ` fixed across `n` and carries no energy spectrum.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{gauss_laguerre, gauss_legendre, Rule, DEFAULT_NODES};
use crate::specfun::{gegenbauer_all, jacobi_all, laguerre_all, log_gamma};

/// Coarsest grid spacing accepted by [`schrodinger_residual`].
pub const MAX_GRID_STEP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PotentialSpec {
    Morse { lam: f64 },
    Spt { rho: f64, alpha: f64 },
    Pt { kappa: f64, rho: f64, alpha: f64 },
}

impl PotentialSpec {
    pub fn morse(lam: f64) -> Result<Self> {
        let s = PotentialSpec::Morse { lam };
        s.validate()?;
        Ok(s)
    }

    pub fn spt(rho: f64) -> Result<Self> {
        let s = PotentialSpec::Spt { rho, alpha: 1.0 };
        s.validate()?;
        Ok(s)
    }

    pub fn pt(kappa: f64, rho: f64) -> Result<Self> {
        let s = PotentialSpec::Pt {
            kappa,
            rho,
            alpha: 1.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match *self {
            PotentialSpec::Morse { lam } if !(lam > 0.0 && lam.is_finite()) => {
                bad(format!("Morse needs λ > 0, got {lam}"))
            }
            PotentialSpec::Spt { rho, .. } if !(rho > 1.0 && rho.is_finite()) => {
                bad(format!("SPT needs ρ > 1, got {rho}"))
            }
            PotentialSpec::Pt { kappa, rho, .. }
                if !(kappa > 1.0 && rho > 1.0 && kappa.is_finite() && rho.is_finite()) =>
            {
                bad(format!("PT needs κ, ρ > 1, got κ = {kappa}, ρ = {rho}"))
            }
            PotentialSpec::Spt { alpha, .. } | PotentialSpec::Pt { alpha, .. }
                if !(alpha > 0.0 && alpha.is_finite()) =>
            {
                bad(format!("α must be positive, got {alpha}"))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PotentialSpec::Morse { .. } => "morse",
            PotentialSpec::Spt { .. } => "spt",
            PotentialSpec::Pt { .. } => "pt",
        }
    }

    /// `E_n`; Morse has no spectrum here.
    pub fn energy(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        match *self {
            PotentialSpec::Morse { .. } => Err(Error::Unsupported(
                "the fixed-λ Morse basis has no energy spectrum".into(),
            )),
            PotentialSpec::Spt { rho, alpha } => Ok(alpha * alpha * (nf + rho).powi(2)),
            PotentialSpec::Pt { kappa, rho, alpha } => {
                Ok(alpha * alpha * (kappa + rho + 2.0 * nf).powi(2))
            }
        }
    }

    /// Open interval of the display coordinate.
    pub fn domain(&self) -> (f64, f64) {
        match *self {
            PotentialSpec::Morse { .. } => (0.0, f64::INFINITY),
            PotentialSpec::Spt { .. } => (-1.0, 1.0),
            PotentialSpec::Pt { alpha, .. } => (0.0, FRAC_PI_2 / alpha),
        }
    }

    /// Open interval of the Schrödinger coordinate `y`.
    pub fn y_domain(&self) -> Result<(f64, f64)> {
        match *self {
            PotentialSpec::Morse { .. } => Err(Error::Unsupported(
                "Morse has no Schrödinger coordinate in this basis".into(),
            )),
            PotentialSpec::Spt { alpha, .. } => Ok((-FRAC_PI_2 / alpha, FRAC_PI_2 / alpha)),
            PotentialSpec::Pt { alpha, .. } => Ok((0.0, FRAC_PI_2 / alpha)),
        }
    }

    /// Display coordinate of the Schrödinger coordinate `y`.
    pub fn display_from_y(&self, y: f64) -> f64 {
        match *self {
            PotentialSpec::Spt { alpha, .. } => (alpha * y).sin(),
            _ => y,
        }
    }

    /// `V(y)` in natural units.
    pub fn potential(&self, y: f64) -> Result<f64> {
        match *self {
            PotentialSpec::Morse { .. } => Err(Error::Unsupported(
                "Morse potential is not tabulated in the fixed-λ basis".into(),
            )),
            PotentialSpec::Spt { rho, alpha } => {
                Ok(alpha * alpha * rho * (rho - 1.0) / (alpha * y).cos().powi(2))
            }
            PotentialSpec::Pt { kappa, rho, alpha } => {
                let (s, c) = (alpha * y).sin_cos();
                Ok(alpha * alpha * (kappa * (kappa - 1.0) / (s * s) + rho * (rho - 1.0) / (c * c)))
            }
        }
    }

    fn in_domain(&self, x: f64) -> bool {
        let (a, b) = self.domain();
        x > a && x < b
    }

    /// Logarithm of the normalization constant of `ψ_n`.
    fn log_norm(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        match *self {
            PotentialSpec::Morse { lam } => {
                Ok(0.5 * (log_gamma(nf + 1.0)? - log_gamma(lam + nf + 1.0)?))
            }
            PotentialSpec::Spt { rho, alpha } => Ok(0.5
                * (alpha.ln()
                    + log_gamma(nf + 1.0)?
                    + (nf + rho).ln()
                    + log_gamma(rho)?
                    + log_gamma(2.0 * rho)?
                    - 0.5 * PI.ln()
                    - log_gamma(rho + 0.5)?
                    - log_gamma(nf + 2.0 * rho)?)),
            PotentialSpec::Pt { kappa, rho, alpha } => Ok(0.5
                * ((2.0 * alpha * (kappa + rho + 2.0 * nf)).ln()
                    + log_gamma(nf + 1.0)?
                    + log_gamma(kappa + rho + nf)?
                    - log_gamma(kappa + nf + 0.5)?
                    - log_gamma(rho + nf + 0.5)?)),
        }
    }
}

/// A single normalized eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenState {
    pub n: usize,
    pub spec: PotentialSpec,
    /// `None` for Morse.
    pub energy: Option<f64>,
    pub norm_const: f64,
}

impl EigenState {
    /// `ψ_n` at the display coordinate.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.spec.in_domain(x) {
            let (a, b) = self.spec.domain();
            return Err(Error::domain(
                "eigenfunction",
                format!("{x} outside ({a}, {b})"),
            ));
        }
        Ok(self.norm_const * shape(&self.spec, self.n, x)[self.n])
    }

    /// `ψ_n` at the Schrödinger coordinate `y`.
    pub fn eval_y(&self, y: f64) -> Result<f64> {
        let (a, b) = self.spec.y_domain()?;
        if !(y > a && y < b) {
            return Err(Error::domain(
                "eigenfunction",
                format!("y = {y} outside ({a}, {b})"),
            ));
        }
        Ok(self.norm_const * shape(&self.spec, self.n, self.spec.display_from_y(y))[self.n])
    }
}

/// Unnormalized `ψ_0 .. ψ_n` at a display coordinate assumed in the domain.
fn shape(spec: &PotentialSpec, n_max: usize, x: f64) -> Vec<f64> {
    match *spec {
        PotentialSpec::Morse { lam } => {
            let w = (0.5 * lam * x.ln() - 0.5 * x).exp();
            let mut l = laguerre_all(n_max, lam, x);
            l.iter_mut().for_each(|v| *v *= w);
            l
        }
        PotentialSpec::Spt { rho, .. } => {
            let w = (1.0 - x * x).powf(0.5 * rho);
            let mut c = gegenbauer_all(n_max, rho, x);
            c.iter_mut().for_each(|v| *v *= w);
            c
        }
        PotentialSpec::Pt { kappa, rho, alpha } => {
            let (s, c) = (alpha * x).sin_cos();
            let w = c.powf(rho) * s.powf(kappa);
            let mut p = jacobi_all(n_max, kappa - 0.5, rho - 0.5, (2.0 * alpha * x).cos());
            p.iter_mut().for_each(|v| *v *= w);
            p
        }
    }
}

pub fn eigenstate(spec: &PotentialSpec, n: usize) -> Result<EigenState> {
    spec.validate()?;
    Ok(EigenState {
        n,
        spec: *spec,
        energy: spec.energy(n).ok(),
        norm_const: spec.log_norm(n)?.exp(),
    })
}

/// `√(n!/Γ(λ+n+1)) e^{−x/2} x^{λ/2} L_n^λ(x)`.
pub fn morse_eigenfunction(n: usize, lam: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "morse_eigenfunction",
            format!("x must be positive, got {x}"),
        ));
    }
    eigenstate(&PotentialSpec::morse(lam)?, n)?.eval(x)
}

pub fn spt_eigenstate(n: usize, rho: f64) -> Result<EigenState> {
    eigenstate(&PotentialSpec::spt(rho)?, n)
}

pub fn pt_eigenstate(n: usize, kappa: f64, rho: f64) -> Result<EigenState> {
    eigenstate(&PotentialSpec::pt(kappa, rho)?, n)
}

/// `ψ_0 .. ψ_N` with precomputed normalizations, for batch evaluation.
#[derive(Debug, Clone)]
pub struct Basis {
    spec: PotentialSpec,
    norms: Vec<f64>,
}

impl Basis {
    pub fn new(spec: &PotentialSpec, n_max: usize) -> Result<Self> {
        spec.validate()?;
        let norms = (0..=n_max)
            .map(|n| spec.log_norm(n).map(f64::exp))
            .collect::<Result<Vec<_>>>()?;
        Ok(Basis { spec: *spec, norms })
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn n_max(&self) -> usize {
        self.norms.len() - 1
    }

    /// All basis functions at a display coordinate.
    pub fn values(&self, x: f64) -> Result<Vec<f64>> {
        if !self.spec.in_domain(x) {
            let (a, b) = self.spec.domain();
            return Err(Error::domain("basis", format!("{x} outside ({a}, {b})")));
        }
        Ok(self.values_unchecked(x))
    }

    /// As [`Basis::values`], but a point on the closed boundary yields the
    /// boundary limit (zero for SPT and PT).
    pub fn values_closed(&self, x: f64) -> Result<Vec<f64>> {
        let (a, b) = self.spec.domain();
        if matches!(self.spec, PotentialSpec::Morse { .. }) || x < a || x > b || x.is_nan() {
            return self.values(x);
        }
        if x == a || x == b {
            return Ok(vec![0.0; self.norms.len()]);
        }
        Ok(self.values_unchecked(x))
    }

    fn values_unchecked(&self, x: f64) -> Vec<f64> {
        let mut v = shape(&self.spec, self.n_max(), x);
        v.iter_mut().zip(&self.norms).for_each(|(v, c)| *v *= c);
        v
    }

    pub fn energies(&self) -> Result<Vec<f64>> {
        (0..self.norms.len()).map(|n| self.spec.energy(n)).collect()
    }
}

/// Quadrature rule for the family's inner-product measure: nodes are display
/// coordinates, weights integrate against `dx` (Morse) or `dy` (SPT, PT).
///
/// For Morse the rule is exact on `x^λ e^{−x}` times polynomials of degree
/// below `2·nodes`, which covers every product `ψ_m ψ_n` with `m + n < 2·nodes`.
pub fn measure_rule(spec: &PotentialSpec, nodes: usize) -> Result<Rule> {
    spec.validate()?;
    match *spec {
        PotentialSpec::Morse { lam } => {
            let r = gauss_laguerre(nodes, lam)?;
            let weights = r
                .nodes
                .iter()
                .zip(&r.weights)
                .map(|(&x, &w)| (w.ln() + x - lam * x.ln()).exp())
                .collect();
            Ok(Rule {
                nodes: r.nodes,
                weights,
            })
        }
        _ => {
            let (a, b) = spec.y_domain()?;
            let r = gauss_legendre(nodes)?.mapped(a, b);
            Ok(Rule {
                nodes: r.nodes.iter().map(|&y| spec.display_from_y(y)).collect(),
                weights: r.weights,
            })
        }
    }
}

/// `⟨ψ_m|ψ_n⟩` for `m, n ≤ n_max` by quadrature with [`DEFAULT_NODES`] nodes.
pub fn gram_matrix(spec: &PotentialSpec, n_max: usize) -> Result<Vec<Vec<f64>>> {
    let rule = measure_rule(spec, DEFAULT_NODES)?;
    let basis = Basis::new(spec, n_max)?;
    let mut g = vec![vec![0.0; n_max + 1]; n_max + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = basis.values(x)?;
        for m in 0..=n_max {
            for n in 0..=n_max {
                g[m][n] += w * v[m] * v[n];
            }
        }
    }
    Ok(g)
}

/// Largest entry of `|G − I|`.
pub fn gram_deviation(g: &[Vec<f64>]) -> f64 {
    g.iter()
        .enumerate()
        .flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .map(move |(n, &v)| (v - if m == n { 1.0 } else { 0.0 }).abs())
        })
        .fold(0.0, f64::max)
}

/// `max |−ψ'' + Vψ − Eψ| / max |Eψ|` over the interior of a uniform grid in
/// the Schrödinger coordinate `y`, using the fourth-order five-point stencil
/// for `ψ''`. The two outermost points on each side only feed the stencil.
pub fn schrodinger_residual(state: &EigenState, grid: &[f64]) -> Result<f64> {
    let energy = state.energy.ok_or_else(|| {
        Error::Unsupported("Schrödinger residual needs an energy spectrum (not Morse)".into())
    })?;
    let h = uniform_step(grid)?;
    let psi = grid
        .iter()
        .map(|&y| state.eval_y(y))
        .collect::<Result<Vec<_>>>()?;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 2..grid.len() - 2 {
        let d2 = second_difference(&psi, i, h);
        let v = state.spec.potential(grid[i])?;
        worst = worst.max((-d2 + (v - energy) * psi[i]).abs());
        scale = scale.max((energy * psi[i]).abs());
    }
    Ok(worst / scale)
}

/// Residual of the fixed-λ Morse equation
/// `ψ'' + ψ'/x + (−1/4 + (n + (λ+1)/2)/x − λ²/(4x²)) ψ = 0`
/// on a uniform grid in `x`, relative to `max |ψ/4|`. Derivatives use
/// fourth-order five-point stencils.
pub fn morse_equation_residual(state: &EigenState, grid: &[f64]) -> Result<f64> {
    let PotentialSpec::Morse { lam } = state.spec else {
        return Err(Error::BasisMismatch("expected a Morse eigenstate".into()));
    };
    let h = uniform_step(grid)?;
    let psi = grid
        .iter()
        .map(|&x| state.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let depth = state.n as f64 + 0.5 * (lam + 1.0);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 2..grid.len() - 2 {
        let x = grid[i];
        let d1 = (-psi[i + 2] + 8.0 * psi[i + 1] - 8.0 * psi[i - 1] + psi[i - 2]) / (12.0 * h);
        let d2 = second_difference(&psi, i, h);
        let q = -0.25 + depth / x - 0.25 * lam * lam / (x * x);
        worst = worst.max((d2 + d1 / x + q * psi[i]).abs());
        scale = scale.max(0.25 * psi[i].abs());
    }
    Ok(worst / scale)
}

fn second_difference(psi: &[f64], i: usize, h: f64) -> f64 {
    (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] - psi[i + 2])
        / (12.0 * h * h)
}

fn uniform_step(grid: &[f64]) -> Result<f64> {
    if grid.len() < 5 {
        return Err(Error::InvalidParameter(
            "grid needs at least 5 points".into(),
        ));
    }
    let h = grid[1] - grid[0];
    if !(h > 0.0) {
        return Err(Error::InvalidParameter("grid must be increasing".into()));
    }
    if h > MAX_GRID_STEP {
        return Err(Error::InvalidParameter(format!(
            "grid step {h} is coarser than {MAX_GRID_STEP}"
        )));
    }
    if grid
        .windows(2)
        .any(|w| ((w[1] - w[0]) - h).abs() > 1e-6 * h)
    {
        return Err(Error::InvalidParameter("grid must be uniform".into()));
    }
    Ok(h)
}

/// `n` uniformly spaced points strictly inside `(a, b)`, excluding both ends.
pub fn interior_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / (n + 1) as f64;
    (1..=n).map(|i| a + i as f64 * h).collect()
}
