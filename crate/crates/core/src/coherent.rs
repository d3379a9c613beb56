//! Coherent-state coefficient sequences and their evaluators.
//!
//! A [`CoeffSeq`] holds `c_0 .. c_N` over either an abstract polynomial basis
//! (`Φ(−n; b; x)` or `₂F₁(−n, b; c; x)`) or the orthonormal eigenbasis of a
//! potential. Series evaluation sums the truncated expansion; closed forms are
//! the `N → ∞` limits scaled by the same normalization factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opalgebra::{self, LinOp, Poly};
use crate::potentials::{Basis, PotentialSpec};
use crate::quadrature::{gauss_laguerre, gauss_legendre, integrate_composite, DEFAULT_NODES};
use crate::specfun::{
    bessel_i, bessel_j, hyp1f1, hyp2f1_poly, hyp_pfq, log_gamma, pochhammer, BESSEL_X_MAX,
};

/// Default truncation order.
pub const DEFAULT_N_MAX: usize = 80;

/// Largest accepted `|c_N|² / max_n |c_n|²`.
pub const TRUNCATION_TOL: f64 = 1e-12;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Basis over which a coefficient sequence is expanded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CsBasis {
    /// `Φ(−n; b; x)`.
    Confluent {
        b: f64,
    },
    /// `₂F₁(−n, b; c; x)`.
    Gauss {
        b: f64,
        c: f64,
    },
    Potential(PotentialSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// Normalization from the closed-form (`N → ∞`) norm.
    Analytic,
    /// Normalization by the truncated sum itself.
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsOptions {
    pub norm: NormMode,
    /// Reject sequences whose last coefficient is not negligible.
    pub enforce_truncation: bool,
}

impl Default for CsOptions {
    fn default() -> Self {
        CsOptions {
            norm: NormMode::Analytic,
            enforce_truncation: true,
        }
    }
}

impl CsOptions {
    pub fn numeric() -> Self {
        CsOptions {
            norm: NormMode::Numeric,
            enforce_truncation: true,
        }
    }

    pub fn unchecked(self) -> Self {
        CsOptions {
            enforce_truncation: false,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    pub coeffs: Vec<Complex64>,
    /// The coherent-state label `β` or `γ`.
    pub param: Complex64,
    pub basis: CsBasis,
    pub norm_mode: NormMode,
    /// Factor applied to the raw coefficients.
    pub norm_factor: f64,
    /// `|c_N|² / max_n |c_n|²`.
    pub truncation_ratio: f64,
}

impl CoeffSeq {
    /// Builds a sequence from raw (unnormalized) coefficients given as
    /// `(log modulus, phase)` pairs, avoiding overflow for large `N`.
    fn from_log_parts(
        parts: Vec<(f64, f64)>,
        param: Complex64,
        basis: CsBasis,
        analytic_log_norm_sq: Option<f64>,
        opts: CsOptions,
    ) -> Result<Self> {
        let log_norm_sq = match (opts.norm, analytic_log_norm_sq) {
            (NormMode::Analytic, Some(v)) => v,
            (NormMode::Analytic, None) => {
                return Err(Error::Unsupported(
                    "no analytic normalization for this family; use numeric".into(),
                ))
            }
            (NormMode::Numeric, _) => {
                let m = parts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
                let s: f64 = parts.iter().map(|p| (2.0 * (p.0 - m)).exp()).sum();
                2.0 * m + s.ln()
            }
        };
        let coeffs: Vec<Complex64> = parts
            .iter()
            .map(|&(lm, ph)| Complex64::from_polar((lm - 0.5 * log_norm_sq).exp(), ph))
            .collect();
        let truncation_ratio = truncation_ratio(&parts);
        let n_max = coeffs.len() - 1;
        if opts.enforce_truncation && truncation_ratio > TRUNCATION_TOL {
            return Err(Error::Truncation {
                n_max,
                ratio: truncation_ratio,
            });
        }
        Ok(CoeffSeq {
            coeffs,
            param,
            basis,
            norm_mode: opts.norm,
            norm_factor: (-0.5 * log_norm_sq).exp(),
            truncation_ratio,
        })
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ |c_n|²`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `|c_n|²` for every `n`.
    pub fn weights(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Truncated series `Σ c_n φ_n(x)`.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let values: Vec<f64> = match self.basis {
            CsBasis::Confluent { b } => (0..=self.n_max())
                .map(|n| hyp1f1(n, b, x))
                .collect::<Result<_>>()?,
            CsBasis::Gauss { b, c } => (0..=self.n_max())
                .map(|n| hyp2f1_poly(n, b, c, x))
                .collect::<Result<_>>()?,
            CsBasis::Potential(spec) => Basis::new(&spec, self.n_max())?.values(x)?,
        };
        Ok(self.coeffs.iter().zip(&values).map(|(c, v)| c * v).sum())
    }

    /// `N → ∞` closed form, scaled by [`CoeffSeq::norm_factor`].
    pub fn closed_form(&self, x: f64) -> Result<Complex64> {
        let nf = self.norm_factor;
        let p = self.param;
        match self.basis {
            CsBasis::Confluent { b } => Ok(nf * p.exp() * hyp_pfq(&[], &[b], -p * x)?),
            CsBasis::Gauss { b, c } => Ok(nf * p.exp() * hyp_pfq(&[b], &[c], -p * x)?),
            CsBasis::Potential(PotentialSpec::Morse { lam }) => {
                let beta = real_nonnegative(p, "Morse closed form")?;
                morse_closed_raw(beta, lam, x).map(|v| Complex64::new(nf * v, 0.0))
            }
            CsBasis::Potential(PotentialSpec::Spt { rho, .. }) => {
                let gamma = real_nonnegative(p, "SPT closed form")?;
                // raw coefficients omit the constant [√π Γ(2ρ)Γ(ρ+½)/Γ(ρ)]^{1/2}
                let k = (-0.5 * spt_log_constant(rho)?).exp();
                spt_closed_raw(gamma, rho, x).map(|v| Complex64::new(nf * k * v, 0.0))
            }
            CsBasis::Potential(PotentialSpec::Pt { .. }) => Err(Error::Unsupported(
                "no closed form for the PT coherent state".into(),
            )),
        }
    }

    /// `Σ c_n φ_n` as a polynomial, for the abstract bases.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (n, &c) in self.coeffs.iter().enumerate() {
            let basis_poly = match self.basis {
                CsBasis::Confluent { b } => opalgebra::hyp1f1_poly(n, b),
                CsBasis::Gauss { b, c } => opalgebra::hyp2f1_poly_coeffs(n, b, c),
                CsBasis::Potential(_) => {
                    return Err(Error::BasisMismatch(
                        "polynomial form exists only for the abstract bases".into(),
                    ))
                }
            };
            acc = &acc + &basis_poly.scaled(c);
        }
        Ok(acc)
    }

    /// The lowering operator whose eigenstate this sequence approximates.
    pub fn lowering_operator(&self) -> Result<LinOp> {
        match self.basis {
            CsBasis::Confluent { b } => Ok(opalgebra::k_minus(b)),
            CsBasis::Gauss { b, c } => Ok(opalgebra::k_hat_minus(b, c)),
            CsBasis::Potential(_) => Err(Error::BasisMismatch(
                "lowering operator acts on the abstract bases only".into(),
            )),
        }
    }

    /// `‖K φ_N + param φ_N‖∞ / ‖φ_N‖∞` on monomial coefficients, with `K` the
    /// matching lowering operator.
    pub fn eigen_residual(&self) -> Result<f64> {
        let phi = self.to_poly()?;
        let lowered = self.lowering_operator()?.apply(&phi)?;
        let target = phi.scaled(-self.param);
        Ok(lowered.max_abs_diff(&target, None) / phi.max_abs())
    }
}

fn truncation_ratio(parts: &[(f64, f64)]) -> f64 {
    let last = parts.last().map_or(f64::NEG_INFINITY, |p| p.0);
    let m = parts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if parts.len() == 1 {
        return 0.0;
    }
    (2.0 * (last - m)).exp()
}

fn real_nonnegative(p: Complex64, what: &str) -> Result<f64> {
    if p.im != 0.0 || p.re < 0.0 {
        return Err(Error::Unsupported(format!(
            "{what} is restricted to real non-negative parameters, got {p}"
        )));
    }
    Ok(p.re)
}

/// `(ln |p^n|, arg p^n)` with `0^0 = 1`.
fn log_power(p: Complex64, n: usize) -> (f64, f64) {
    if n == 0 {
        (0.0, 0.0)
    } else if p == Complex64::new(0.0, 0.0) {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (n as f64 * p.norm().ln(), n as f64 * p.arg())
    }
}

fn non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// `c_n ∝ βⁿ/n!` over `Φ(−n; b; x)`; the analytic norm is `I_0(2|β|)`.
pub fn chg_cs(beta: Complex64, b: f64, n_max: usize) -> Result<CoeffSeq> {
    chg_cs_with(beta, b, n_max, CsOptions::default())
}

pub fn chg_cs_with(beta: Complex64, b: f64, n_max: usize, opts: CsOptions) -> Result<CoeffSeq> {
    if non_positive_integer(b) || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "b must not be a non-positive integer, got {b}"
        )));
    }
    factorial_cs(beta, CsBasis::Confluent { b }, n_max, opts)
}

/// `c_n ∝ γⁿ/n!` over `₂F₁(−n, b; c; x)`.
pub fn hg_cs(gamma: Complex64, b: f64, c: f64, n_max: usize) -> Result<CoeffSeq> {
    hg_cs_with(gamma, b, c, n_max, CsOptions::default())
}

pub fn hg_cs_with(
    gamma: Complex64,
    b: f64,
    c: f64,
    n_max: usize,
    opts: CsOptions,
) -> Result<CoeffSeq> {
    if non_positive_integer(c) || !c.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "c must not be a non-positive integer, got {c}"
        )));
    }
    factorial_cs(gamma, CsBasis::Gauss { b, c }, n_max, opts)
}

fn factorial_cs(p: Complex64, basis: CsBasis, n_max: usize, opts: CsOptions) -> Result<CoeffSeq> {
    let parts = (0..=n_max)
        .map(|n| {
            let (lm, ph) = log_power(p, n);
            Ok((lm - log_gamma(n as f64 + 1.0)?, ph))
        })
        .collect::<Result<Vec<_>>>()?;
    // Σ |p|^{2n}/(n!)² = I_0(2|p|)
    let analytic = bessel_i(0.0, 2.0 * p.norm()).map(f64::ln).ok();
    CoeffSeq::from_log_parts(parts, p, basis, analytic, opts)
}

/// Morse coherent state over the fixed-λ orthonormal basis:
/// `c_n = N⁻¹ βⁿ/√(n! Γ(λ+n+1))` with `N⁻² = |β|^λ / I_λ(2|β|)`.
pub fn morse_cs(beta: Complex64, lam: f64, n_max: usize) -> Result<CoeffSeq> {
    morse_cs_with(beta, lam, n_max, CsOptions::default())
}

pub fn morse_cs_with(beta: Complex64, lam: f64, n_max: usize, opts: CsOptions) -> Result<CoeffSeq> {
    let spec = PotentialSpec::morse(lam)?;
    let parts = (0..=n_max)
        .map(|n| {
            let (lm, ph) = log_power(beta, n);
            let nf = n as f64;
            Ok((
                lm - 0.5 * (log_gamma(nf + 1.0)? + log_gamma(lam + nf + 1.0)?),
                ph,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = beta.norm();
    let analytic = if r == 0.0 {
        Some(-log_gamma(lam + 1.0)?)
    } else {
        bessel_i(lam, 2.0 * r).ok().map(|i| i.ln() - lam * r.ln())
    };
    CoeffSeq::from_log_parts(parts, beta, CsBasis::Potential(spec), analytic, opts)
}

/// `β^{−λ/2} e^β e^{−x/2} J_λ(2√(xβ))`, continued to `β = 0`.
fn morse_closed_raw(beta: f64, lam: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "morse closed form",
            format!("x must be positive, got {x}"),
        ));
    }
    if beta == 0.0 {
        return Ok((0.5 * lam * x.ln() - 0.5 * x - log_gamma(lam + 1.0)?).exp());
    }
    let j = bessel_j(lam, 2.0 * (x * beta).sqrt())?;
    Ok((beta - 0.5 * x - 0.5 * lam * beta.ln()).exp() * j)
}

/// SPT coherent state over the orthonormal basis:
/// `|c_n|² ∝ |γ|^{2n} / (n! (n+ρ) Γ(2ρ+n))`, normalized by the full sum `S(|γ|)`.
pub fn spt_cs(gamma: Complex64, rho: f64, n_max: usize) -> Result<CoeffSeq> {
    spt_cs_with(gamma, rho, n_max, CsOptions::default())
}

pub fn spt_cs_with(gamma: Complex64, rho: f64, n_max: usize, opts: CsOptions) -> Result<CoeffSeq> {
    let spec = PotentialSpec::spt(rho)?;
    let parts = (0..=n_max)
        .map(|n| {
            let (lm, ph) = log_power(gamma, n);
            Ok((lm - 0.5 * spt_log_denominator(n, rho)?, ph))
        })
        .collect::<Result<Vec<_>>>()?;
    let analytic = spt_norm_sum(gamma.norm(), rho).map(f64::ln).ok();
    CoeffSeq::from_log_parts(parts, gamma, CsBasis::Potential(spec), analytic, opts)
}

fn spt_log_denominator(n: usize, rho: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(log_gamma(nf + 1.0)? + (nf + rho).ln() + log_gamma(2.0 * rho + nf)?)
}

/// `ln[√π Γ(2ρ) Γ(ρ+½) / Γ(ρ)]`.
fn spt_log_constant(rho: f64) -> Result<f64> {
    Ok(
        0.5 * std::f64::consts::PI.ln() + log_gamma(2.0 * rho)? + log_gamma(rho + 0.5)?
            - log_gamma(rho)?,
    )
}

/// `S(g) = Σ_n g^{2n} / (n! (n+ρ) Γ(2ρ+n))`, summed until the terms are negligible.
pub fn spt_norm_sum(g: f64, rho: f64) -> Result<f64> {
    if !(g >= 0.0) || !(rho > 0.0) {
        return Err(Error::domain(
            "spt_norm_sum",
            format!("need g ≥ 0, ρ > 0; got {g}, {rho}"),
        ));
    }
    let mut sum = 0.0;
    for n in 0..crate::specfun::MAX_SERIES_TERMS {
        let (lm, _) = log_power(Complex64::new(g, 0.0), 2 * n);
        let term = (lm - spt_log_denominator(n, rho)?).exp();
        sum += term;
        let nf = n as f64;
        if term <= 1e-17 * sum && g * g < (nf + 1.0) * (nf + 2.0 * rho) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        func: "spt_norm_sum",
        terms: crate::specfun::MAX_SERIES_TERMS,
    })
}

/// `g^{−2ρ} ∫₀^{2g} I_{2ρ−1}(t) dt` by composite Gauss-Legendre quadrature.
pub fn spt_norm_integral(g: f64, rho: f64) -> Result<f64> {
    if !(g > 0.0) || 2.0 * g > BESSEL_X_MAX {
        return Err(Error::domain(
            "spt_norm_integral",
            format!("need 0 < 2g ≤ 60, got g = {g}"),
        ));
    }
    let base = gauss_legendre(32)?;
    let mut err = None;
    let v = integrate_composite(
        |t| {
            bessel_i(2.0 * rho - 1.0, t).unwrap_or_else(|e| {
                err = Some(e);
                0.0
            })
        },
        0.0,
        2.0 * g,
        8,
        &base,
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v * g.powf(-2.0 * rho))
}

/// `Γ(ρ+½) e^{γx} (γ/2)^{½−ρ} (1−x²)^{1/4} J_{ρ−½}(γ√(1−x²))`, continued to `γ = 0`.
fn spt_closed_raw(gamma: f64, rho: f64, x: f64) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::domain(
            "spt closed form",
            format!("x must lie in (−1, 1), got {x}"),
        ));
    }
    let s2 = 1.0 - x * x;
    if gamma == 0.0 {
        return Ok(s2.powf(0.5 * rho));
    }
    let j = bessel_j(rho - 0.5, gamma * s2.sqrt())?;
    let log_pref =
        log_gamma(rho + 0.5)? + gamma * x + (0.5 - rho) * (0.5 * gamma).ln() + 0.25 * s2.ln();
    Ok(log_pref.exp() * j)
}

/// PT coherent state with the Pochhammer parameter `ρ + ½`, numerically normalized.
pub fn pt_cs(gamma: Complex64, kappa: f64, rho: f64, n_max: usize) -> Result<CoeffSeq> {
    pt_cs_with(gamma, kappa, rho, n_max, rho + 0.5, CsOptions::numeric())
}

/// PT coherent state:
/// `|c_n|² ∝ |γ|^{2n} Γ(κ+½)(p)_n / ((κ+½)_n (κ+ρ+2n) n! Γ(κ+ρ+n))`.
pub fn pt_cs_with(
    gamma: Complex64,
    kappa: f64,
    rho: f64,
    n_max: usize,
    pochhammer_param: f64,
    opts: CsOptions,
) -> Result<CoeffSeq> {
    let spec = PotentialSpec::pt(kappa, rho)?;
    if !(pochhammer_param > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Pochhammer parameter must be positive, got {pochhammer_param}"
        )));
    }
    let parts = (0..=n_max)
        .map(|n| {
            let (lm, ph) = log_power(gamma, n);
            let nf = n as f64;
            let log_sq = log_gamma(kappa + 0.5)? + log_gamma(pochhammer_param + nf)?
                - log_gamma(pochhammer_param)?
                - (log_gamma(kappa + 0.5 + nf)? - log_gamma(kappa + 0.5)?)
                - (2.0 * (kappa + rho + 2.0 * nf)).ln()
                - log_gamma(nf + 1.0)?
                - log_gamma(kappa + rho + nf)?;
            Ok((lm + 0.5 * log_sq, ph))
        })
        .collect::<Result<Vec<_>>>()?;
    CoeffSeq::from_log_parts(parts, gamma, CsBasis::Potential(spec), None, opts)
}

/// Closed form `e^α ₚFₚ(a; b; −xα)` of the generalised nonlinear coherent state.
pub fn nonlinear_cs(a: &[f64], b: &[f64], alpha: Complex64, x: f64) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "need equally many upper and lower parameters, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(alpha.exp() * hyp_pfq(a, b, -alpha * x)?)
}

/// Truncated double sum `Σ_{n≤N} αⁿ/n! ₚ₊₁Fₚ(a, −n; b; x)`.
pub fn nonlinear_cs_series(
    a: &[f64],
    b: &[f64],
    alpha: Complex64,
    x: f64,
    n_max: usize,
) -> Result<Complex64> {
    let mut upper = a.to_vec();
    upper.push(0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pref = ONE;
    for n in 0..=n_max {
        if n > 0 {
            pref *= alpha / n as f64;
        }
        *upper.last_mut().unwrap() = -(n as f64);
        sum += pref * hyp_pfq(&upper, b, Complex64::new(x, 0.0))?;
    }
    Ok(sum)
}

/// `Σ_{n≤N} αⁿ/n! ₚ₊₁Fₚ(a, −n; b; x)` as a polynomial in `x`.
pub fn nonlinear_cs_poly(a: &[f64], b: &[f64], alpha: Complex64, n_max: usize) -> Poly {
    let mut acc = Poly::zero();
    let mut pref = ONE;
    for n in 0..=n_max {
        if n > 0 {
            pref *= alpha / n as f64;
        }
        let nf = n as f64;
        let mut c = Vec::with_capacity(n + 1);
        let mut t = 1.0;
        c.push(t);
        for k in 0..n {
            let kf = k as f64;
            let num: f64 = a.iter().map(|ai| ai + kf).product::<f64>() * (kf - nf);
            let den: f64 = b.iter().map(|bi| bi + kf).product::<f64>() * (kf + 1.0);
            t *= num / den;
            c.push(t);
        }
        acc = &acc + &Poly::from_real(&c).scaled(pref);
    }
    acc
}

/// Morse Perelomov coherent state, `|β| < 1`:
///
/// `(1−|β|²)^{(λ+1)/2} / √Γ(λ+1) · (1−β)^{−(λ+1)} x^{λ/2} exp(−x(1+β)/(2(1−β)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerelomovState {
    pub beta: Complex64,
    pub lam: f64,
}

pub fn morse_perelomov_cs(beta: Complex64, lam: f64) -> Result<PerelomovState> {
    PotentialSpec::morse(lam)?;
    if !(beta.norm() < 1.0) {
        return Err(Error::domain(
            "morse_perelomov_cs",
            format!("need |β| < 1, got {beta}"),
        ));
    }
    Ok(PerelomovState { beta, lam })
}

impl PerelomovState {
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(x > 0.0) {
            return Err(Error::domain(
                "perelomov",
                format!("x must be positive, got {x}"),
            ));
        }
        let lam = self.lam;
        let b = self.beta;
        let log_real = 0.5 * (lam + 1.0) * (1.0 - b.norm_sqr()).ln() - 0.5 * log_gamma(lam + 1.0)?
            + 0.5 * lam * x.ln();
        let one = ONE;
        let expo = -x * (one + b) / (2.0 * (one - b)) - (lam + 1.0) * (one - b).ln();
        Ok((expo + log_real).exp())
    }

    /// `∫₀^∞ |φ|² dx` by Gauss-Laguerre quadrature.
    pub fn norm_sq(&self) -> Result<f64> {
        let rule = gauss_laguerre(DEFAULT_NODES, 0.0)?;
        let mut acc = 0.0;
        // Rescale so the integrand decays like e^{−x} against the rule's weight.
        let b = self.beta;
        let rate = ((ONE + b) / (ONE - b)).re;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let x = t / rate;
            acc += w * self.eval(x)?.norm_sqr() * t.exp() / rate;
        }
        Ok(acc)
    }

    /// Coefficients over the orthonormal fixed-λ Morse basis,
    /// `(1−|β|²)^{(λ+1)/2} βⁿ √((λ+1)_n / n!)`.
    pub fn coefficients(&self, n_max: usize) -> Vec<Complex64> {
        let scale = (1.0 - self.beta.norm_sqr()).powf(0.5 * (self.lam + 1.0));
        let mut out = Vec::with_capacity(n_max + 1);
        let mut bn = ONE;
        for n in 0..=n_max {
            let mut fact = 1.0;
            for k in 1..=n {
                fact *= k as f64;
            }
            out.push(bn * scale * (pochhammer(self.lam + 1.0, n) / fact).sqrt());
            bn *= self.beta;
        }
        out
    }
}
