//! Operator algebra on the space of monomials.
//!
//! Polynomials are dense coefficient vectors over `Complex64`. Operators are
//! small expression trees over `x`, `d/dx`, the Euler operator `D = x d/dx`
//! and rational functions of `D`. A rational function of `D` acts diagonally:
//! on `x^k` it multiplies by its value at `D = k`, so no operator inversion is
//! ever needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum polynomial length (degree + 1) accepted by operator application.
pub const DEFAULT_CAP: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense single-variable polynomial; index `k` holds the coefficient of `x^k`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients at all.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![ONE] }
    }

    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    /// Drops every coefficient above `max_degree`.
    pub fn truncated(&self, max_degree: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().take(max_degree + 1).copied().collect())
    }

    pub fn scaled(&self, s: Complex64) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient-wise difference over degrees `0..=up_to`
    /// (all degrees when `up_to` is `None`).
    pub fn max_abs_diff(&self, other: &Poly, up_to: Option<usize>) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        let end = up_to.map_or(len, |d| (d + 1).min(len));
        (0..end)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    fn combine(&self, other: &Poly, sign: f64) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|k| self.coeff(k) + other.coeff(k) * sign)
                .collect(),
        )
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scaled(-ONE)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({c})")?;
            }
            match k {
                0 => {}
                1 => write!(f, "·x")?,
                _ => write!(f, "·x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational function of the Euler operator,
/// `scale · Π_i (D + num_i) / Π_j (D + den_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalD {
    pub scale: f64,
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

impl RationalD {
    pub fn new(scale: f64, num: Vec<f64>, den: Vec<f64>) -> Self {
        RationalD { scale, num, den }
    }

    /// The product `Π (D + s)` of the given shifts.
    pub fn product(shifts: Vec<f64>) -> Self {
        RationalD::new(1.0, shifts, Vec::new())
    }

    pub fn inverse(&self) -> Self {
        RationalD::new(1.0 / self.scale, self.den.clone(), self.num.clone())
    }

    /// Value on `x^k`; `None` at a pole.
    pub fn eigenvalue(&self, k: usize) -> Option<f64> {
        let kf = k as f64;
        let den: f64 = self.den.iter().map(|s| kf + s).product();
        if den == 0.0 {
            return None;
        }
        Some(self.scale * self.num.iter().map(|s| kf + s).product::<f64>() / den)
    }
}

/// Linear operator on polynomials.
///
/// `Product` applies its factors right to left, so `a * b` means "apply `b`,
/// then `a`", matching operator notation.
#[derive(Debug, Clone, PartialEq)]
pub enum LinOp {
    Identity,
    Scalar(Complex64),
    /// Multiplication by `x`.
    MulX,
    /// `d/dx`.
    Deriv,
    /// `D = x d/dx`.
    Euler,
    Rational(RationalD),
    Sum(Vec<LinOp>),
    Product(Vec<LinOp>),
}

impl LinOp {
    pub fn x() -> Self {
        LinOp::MulX
    }

    pub fn d() -> Self {
        LinOp::Deriv
    }

    pub fn euler() -> Self {
        LinOp::Euler
    }

    pub fn scalar(c: f64) -> Self {
        LinOp::Scalar(Complex64::new(c, 0.0))
    }

    pub fn rational(r: RationalD) -> Self {
        LinOp::Rational(r)
    }

    /// Minimum and maximum change of degree produced on a monomial.
    pub fn degree_shift(&self) -> (i64, i64) {
        match self {
            LinOp::Identity | LinOp::Scalar(_) | LinOp::Euler | LinOp::Rational(_) => (0, 0),
            LinOp::MulX => (1, 1),
            LinOp::Deriv => (-1, -1),
            LinOp::Sum(terms) => terms
                .iter()
                .map(LinOp::degree_shift)
                .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
                .unwrap_or((0, 0)),
            LinOp::Product(factors) => factors
                .iter()
                .map(LinOp::degree_shift)
                .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1)),
        }
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.apply_capped(p, DEFAULT_CAP)
    }

    pub fn apply_capped(&self, p: &Poly, cap: usize) -> Result<Poly> {
        let out = match self {
            LinOp::Identity => p.clone(),
            LinOp::Scalar(s) => p.scaled(*s),
            LinOp::MulX => {
                if p.is_zero() {
                    Poly::zero()
                } else {
                    let mut c = Vec::with_capacity(p.coeffs.len() + 1);
                    c.push(ZERO);
                    c.extend_from_slice(&p.coeffs);
                    Poly::from_coeffs(c)
                }
            }
            LinOp::Deriv => Poly::from_coeffs(
                p.coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, &c)| c * k as f64)
                    .collect(),
            ),
            LinOp::Euler => Poly::from_coeffs(
                p.coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c * k as f64)
                    .collect(),
            ),
            LinOp::Rational(r) => {
                let mut c = Vec::with_capacity(p.coeffs.len());
                for (k, &ck) in p.coeffs.iter().enumerate() {
                    if ck == ZERO {
                        c.push(ZERO);
                        continue;
                    }
                    let ev = r
                        .eigenvalue(k)
                        .ok_or(Error::SingularRational { degree: k })?;
                    c.push(ck * ev);
                }
                Poly::from_coeffs(c)
            }
            LinOp::Sum(terms) => {
                let mut acc = Poly::zero();
                for t in terms {
                    acc = &acc + &t.apply_capped(p, cap)?;
                }
                acc
            }
            LinOp::Product(factors) => {
                let mut acc = p.clone();
                for f in factors.iter().rev() {
                    acc = f.apply_capped(&acc, cap)?;
                }
                acc
            }
        };
        if out.coeffs.len() > cap {
            return Err(Error::CapExceeded {
                degree: out.coeffs.len() - 1,
                cap,
            });
        }
        Ok(out)
    }

    /// `(self ∘ other − other ∘ self) p`.
    pub fn commutator_action(&self, other: &LinOp, p: &Poly) -> Result<Poly> {
        let ab = self.apply(&other.apply(p)?)?;
        let ba = other.apply(&self.apply(p)?)?;
        Ok(&ab - &ba)
    }
}

impl Add for LinOp {
    type Output = LinOp;
    fn add(self, rhs: LinOp) -> LinOp {
        match self {
            LinOp::Sum(mut terms) => {
                terms.push(rhs);
                LinOp::Sum(terms)
            }
            lhs => LinOp::Sum(vec![lhs, rhs]),
        }
    }
}

impl Sub for LinOp {
    type Output = LinOp;
    fn sub(self, rhs: LinOp) -> LinOp {
        self + (-rhs)
    }
}

impl Neg for LinOp {
    type Output = LinOp;
    fn neg(self) -> LinOp {
        LinOp::scalar(-1.0) * self
    }
}

impl Mul for LinOp {
    type Output = LinOp;
    fn mul(self, rhs: LinOp) -> LinOp {
        match self {
            LinOp::Product(mut factors) => {
                factors.push(rhs);
                LinOp::Product(factors)
            }
            lhs => LinOp::Product(vec![lhs, rhs]),
        }
    }
}

impl Mul<LinOp> for f64 {
    type Output = LinOp;
    fn mul(self, rhs: LinOp) -> LinOp {
        LinOp::Scalar(Complex64::new(self, 0.0)) * rhs
    }
}

impl Mul<LinOp> for Complex64 {
    type Output = LinOp;
    fn mul(self, rhs: LinOp) -> LinOp {
        LinOp::Scalar(self) * rhs
    }
}

/// `(self ∘ other − other ∘ self) p`; free-function form of [`LinOp::commutator_action`].
pub fn commutator_action(a: &LinOp, b: &LinOp, p: &Poly) -> Result<Poly> {
    a.commutator_action(b, p)
}

// Named operators.

/// `K+ = x`.
pub fn k_plus() -> LinOp {
    LinOp::x()
}

/// `K− = x d² + b d`.
pub fn k_minus(b: f64) -> LinOp {
    LinOp::x() * LinOp::d() * LinOp::d() + b * LinOp::d()
}

/// `K3 = D + b/2`.
pub fn k_three(b: f64) -> LinOp {
    LinOp::euler() + LinOp::scalar(0.5 * b)
}

/// Heisenberg-Weyl partner of `K−`: `K̃+ = (D + b − 1)^{-1} x`.
pub fn k_tilde_plus(b: f64) -> LinOp {
    LinOp::rational(RationalD::new(1.0, vec![], vec![b - 1.0])) * LinOp::x()
}

/// Gauss-class lowering operator `K̂− = (D + b)^{-1} (x d² + c d)`.
pub fn k_hat_minus(b: f64, c: f64) -> LinOp {
    LinOp::rational(RationalD::new(1.0, vec![], vec![b])) * k_minus(c)
}

/// Heisenberg-Weyl partner of `K̂−`: `K̄+ = (D + b − 1)/(D + c − 1) x`.
pub fn k_bar_plus(b: f64, c: f64) -> LinOp {
    LinOp::rational(RationalD::new(1.0, vec![b - 1.0], vec![c - 1.0])) * LinOp::x()
}

/// Generalised lowering operator `T̃− = Π(D + b_i) / Π(D + a_i) d/dx`.
pub fn t_tilde_minus(a: &[f64], b: &[f64]) -> LinOp {
    LinOp::rational(RationalD::new(1.0, b.to_vec(), a.to_vec())) * LinOp::d()
}

/// `L+ = x² d + (λ+1) x`, the raising generator of the Laguerre-class realisation.
pub fn l_plus(lam: f64) -> LinOp {
    LinOp::x() * LinOp::x() * LinOp::d() + (lam + 1.0) * LinOp::x()
}

/// `L− = d/dx`.
pub fn l_minus() -> LinOp {
    LinOp::d()
}

/// `L3 = D + (λ+1)/2`.
pub fn l_three(lam: f64) -> LinOp {
    LinOp::euler() + LinOp::scalar(0.5 * (lam + 1.0))
}

/// Ladder direction for the n-dependent supersymmetric pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// The n-dependent monomial-level images of the supersymmetric ladder
/// operators: `K+ + D − n` and `K− + D − n` with `b = λ + 1`.
pub fn susy_operator(n: usize, lam: f64, dir: Ladder) -> LinOp {
    let shift = LinOp::euler() - LinOp::scalar(n as f64);
    match dir {
        Ladder::Raise => k_plus() + shift,
        Ladder::Lower => k_minus(lam + 1.0) + shift,
    }
}

/// `(D − n) p`; vanishes exactly when `p` is a multiple of `x^n`.
pub fn euler_shift(n: usize, p: &Poly) -> Result<Poly> {
    (LinOp::euler() - LinOp::scalar(n as f64)).apply(p)
}

/// Applies the n-dependent ladder operator to `p`, which must be a multiple of `x^n`.
///
/// Raising maps `x^n ↦ x^{n+1}`, lowering maps `x^n ↦ n(n+λ) x^{n−1}`.
pub fn susy_ladder_action(p: &Poly, n: usize, lam: f64, dir: Ladder) -> Result<Poly> {
    if p.is_zero() || !euler_shift(n, p)?.is_zero() {
        return Err(Error::NotMonomial { expected: n });
    }
    susy_operator(n, lam, dir).apply(p)
}

/// Formal series solution `Σ_{n=0}^{N} (−1)^n [F(D)^{-1} P]^n x^α` of
/// `[F(D) + P] y = 0`.
pub fn series_solve(f: &RationalD, p: &LinOp, alpha: usize, n_terms: usize) -> Result<Poly> {
    let indicial = match f.eigenvalue(alpha) {
        Some(v) => v,
        None => return Err(Error::SingularRational { degree: alpha }),
    };
    if indicial.abs() > 1e-12 {
        return Err(Error::Indicial {
            alpha,
            residual: indicial.abs(),
        });
    }
    let mut term = Poly::monomial(alpha, ONE);
    let mut sum = term.clone();
    for _ in 0..n_terms {
        let raised = p.apply(&term)?;
        let mut c = Vec::with_capacity(raised.coeffs.len());
        for (k, &ck) in raised.coeffs.iter().enumerate() {
            if ck == ZERO {
                c.push(ZERO);
                continue;
            }
            match f.eigenvalue(k) {
                Some(v) if v.abs() > 1e-12 => c.push(-ck / v),
                _ => return Err(Error::SingularRational { degree: k }),
            }
        }
        term = Poly::from_coeffs(c);
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    Ok(sum)
}

/// `Σ_{k=0}^{terms} op^k p / k!` for a degree-lowering (nilpotent) operator.
pub fn exp_op(op: &LinOp, p: &Poly, terms: usize) -> Result<Poly> {
    if op.degree_shift().1 >= 0 {
        return Err(Error::NonTerminating);
    }
    if let Some(deg) = p.degree() {
        if terms < deg {
            return Err(Error::InvalidParameter(format!(
                "exp_op needs at least {deg} terms for a degree-{deg} polynomial, got {terms}"
            )));
        }
    }
    let mut term = p.clone();
    let mut sum = p.clone();
    for k in 1..=terms {
        term = op.apply(&term)?.scaled(Complex64::new(1.0 / k as f64, 0.0));
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    Ok(sum)
}

/// Coefficients of `Φ(−n; b; x)`.
pub fn hyp1f1_poly(n: usize, b: f64) -> Poly {
    let nf = n as f64;
    let mut c = Vec::with_capacity(n + 1);
    let mut t = 1.0;
    c.push(t);
    for k in 0..n {
        let kf = k as f64;
        t *= (kf - nf) / ((b + kf) * (kf + 1.0));
        c.push(t);
    }
    Poly::from_real(&c)
}

/// Coefficients of `₂F₁(−n, b; c; x)`.
pub fn hyp2f1_poly_coeffs(n: usize, b: f64, c: f64) -> Poly {
    let nf = n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut t = 1.0;
    out.push(t);
    for k in 0..n {
        let kf = k as f64;
        t *= (kf - nf) * (b + kf) / ((c + kf) * (kf + 1.0));
        out.push(t);
    }
    Poly::from_real(&out)
}

/// Coefficients of the Laguerre polynomials `L_0^λ .. L_n^λ`, built with the
/// three-term recurrence at the level of coefficient vectors.
pub fn laguerre_polys(n_max: usize, lam: f64) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    if n_max == 0 {
        return out;
    }
    out.push(Poly::from_real(&[1.0 + lam, -1.0]));
    let x = Poly::from_real(&[0.0, 1.0]);
    for k in 1..n_max {
        let kf = k as f64;
        let a = out[k].scaled(Complex64::new(2.0 * kf + 1.0 + lam, 0.0));
        let xl = poly_mul(&x, &out[k]);
        let b = out[k - 1].scaled(Complex64::new(kf + lam, 0.0));
        let next = (&(&a - &xl) - &b).scaled(Complex64::new(1.0 / (kf + 1.0), 0.0));
        out.push(next);
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut c = vec![ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        for (j, &bj) in b.coeffs.iter().enumerate() {
            c[i + j] += ai * bj;
        }
    }
    Poly::from_coeffs(c)
}

/// Taylor polynomial of `e^{s x}` to degree `max_deg`.
pub fn exp_taylor(s: Complex64, max_deg: usize) -> Poly {
    let mut c = Vec::with_capacity(max_deg + 1);
    let mut t = ONE;
    c.push(t);
    for k in 1..=max_deg {
        t = t * s / k as f64;
        c.push(t);
    }
    Poly::from_coeffs(c)
}

// Algebra checks.

/// A triple `(J+, J−, J3)` expected to close into su(1,1):
/// `[J3, J±] = ±J±`, `[J+, J−] = −2 J3`.
#[derive(Debug, Clone)]
pub struct Su11 {
    pub plus: LinOp,
    pub minus: LinOp,
    pub three: LinOp,
}

impl Su11 {
    /// `K+ = x`, `K− = x d² + b d`, `K3 = D + b/2`.
    pub fn confluent(b: f64) -> Self {
        Su11 {
            plus: k_plus(),
            minus: k_minus(b),
            three: k_three(b),
        }
    }

    /// `L+ = x² d + (λ+1) x`, `L− = d`, `L3 = D + (λ+1)/2`.
    pub fn perelomov(lam: f64) -> Self {
        Su11 {
            plus: l_plus(lam),
            minus: l_minus(),
            three: l_three(lam),
        }
    }

    /// Largest relative residual of the three defining commutators on
    /// `x^0 .. x^max_n`. Residuals are scaled by `max(‖rhs‖∞, 1)`.
    pub fn closure_residual(&self, max_n: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for n in 0..=max_n {
            let p = Poly::monomial(n, ONE);
            let checks = [
                (
                    self.three.commutator_action(&self.plus, &p)?,
                    self.plus.apply(&p)?,
                ),
                (
                    self.three.commutator_action(&self.minus, &p)?,
                    -&self.minus.apply(&p)?,
                ),
                (
                    self.plus.commutator_action(&self.minus, &p)?,
                    self.three.apply(&p)?.scaled(Complex64::new(-2.0, 0.0)),
                ),
            ];
            for (lhs, rhs) in checks {
                worst = worst.max(lhs.max_abs_diff(&rhs, None) / rhs.max_abs().max(1.0));
            }
        }
        Ok(worst)
    }
}

/// Largest residual of `[minus, plus] x^n = x^n` for `n ≤ max_n`.
pub fn heisenberg_weyl_residual(minus: &LinOp, plus: &LinOp, max_n: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=max_n {
        let p = Poly::monomial(n, ONE);
        let lhs = minus.commutator_action(plus, &p)?;
        worst = worst.max(lhs.max_abs_diff(&p, None));
    }
    Ok(worst)
}

/// How badly the n-dependent supersymmetric pair fails to close, measured on
/// `x^m` for `m ≠ n` (with the operators' `n` held fixed) using the
/// diagonal `K3 = D + (λ+1)/2`. Returns the largest residual over all
/// three su(1,1) relations, `0 ≤ n, m ≤ max_n`.
pub fn susy_nonclosure_residual(lam: f64, max_n: usize) -> Result<f64> {
    let three = k_three(lam + 1.0);
    let mut worst: f64 = 0.0;
    for n in 0..=max_n {
        let plus = susy_operator(n, lam, Ladder::Raise);
        let minus = susy_operator(n, lam, Ladder::Lower);
        let triple = Su11 {
            plus,
            minus,
            three: three.clone(),
        };
        for m in (0..=max_n).filter(|&m| m != n) {
            let p = Poly::monomial(m, ONE);
            let checks = [
                (
                    triple.three.commutator_action(&triple.plus, &p)?,
                    triple.plus.apply(&p)?,
                ),
                (
                    triple.three.commutator_action(&triple.minus, &p)?,
                    -&triple.minus.apply(&p)?,
                ),
                (
                    triple.plus.commutator_action(&triple.minus, &p)?,
                    triple.three.apply(&p)?.scaled(Complex64::new(-2.0, 0.0)),
                ),
            ];
            for (lhs, rhs) in checks {
                worst = worst.max(lhs.max_abs_diff(&rhs, None) / rhs.max_abs().max(1.0));
            }
        }
    }
    Ok(worst)
}

/// Residuals of the Laguerre-class intertwining identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerelomovReport {
    /// `e^{M_{λ+2}} d = d e^{M_{λ+1}}` on the truncated exponential,
    /// with `M_c = −x d² − c d`.
    pub intertwining: f64,
    /// `e^{M_{λ+1}} e^{−βx} = Σ β^n L_n^λ(x)`, coefficientwise.
    pub laguerre_generating: f64,
    /// `L− e^{−βx} = −β e^{−βx}` below the truncation band.
    pub eigenvalue: f64,
}

impl PerelomovReport {
    pub fn max(&self) -> f64 {
        self.intertwining
            .max(self.laguerre_generating)
            .max(self.eigenvalue)
    }
}

fn m_op(c: f64) -> LinOp {
    -(LinOp::x() * LinOp::d() * LinOp::d()) - c * LinOp::d()
}

/// Verifies the Laguerre-class operator identities on the Taylor polynomial of
/// `e^{−βx}` truncated at `max_deg`. Residuals are relative to the largest
/// coefficient of the compared right-hand side.
pub fn perelomov_identity_check(
    lam: f64,
    beta: Complex64,
    max_deg: usize,
) -> Result<PerelomovReport> {
    if max_deg + 1 > DEFAULT_CAP {
        return Err(Error::CapExceeded {
            degree: max_deg,
            cap: DEFAULT_CAP,
        });
    }
    let state = exp_taylor(-beta, max_deg);

    let lhs = exp_op(&m_op(lam + 2.0), &LinOp::d().apply(&state)?, max_deg)?;
    let rhs = LinOp::d().apply(&exp_op(&m_op(lam + 1.0), &state, max_deg)?)?;
    let intertwining = lhs.max_abs_diff(&rhs, None) / rhs.max_abs().max(f64::MIN_POSITIVE);

    let transformed = exp_op(&m_op(lam + 1.0), &state, max_deg)?;
    let mut series = Poly::zero();
    let mut bn = ONE;
    for l in laguerre_polys(max_deg, lam) {
        series = &series + &l.scaled(bn);
        bn *= beta;
    }
    let laguerre_generating =
        transformed.max_abs_diff(&series, None) / series.max_abs().max(f64::MIN_POSITIVE);

    let lowered = l_minus().apply(&state)?;
    let expected = state.scaled(-beta);
    let band = max_deg.saturating_sub(1);
    let eigenvalue =
        lowered.max_abs_diff(&expected, Some(band)) / expected.max_abs().max(f64::MIN_POSITIVE);

    Ok(PerelomovReport {
        intertwining: if rhs.is_zero() && lhs.is_zero() {
            0.0
        } else {
            intertwining
        },
        laguerre_generating,
        eigenvalue: if expected.is_zero() && lowered.is_zero() {
            0.0
        } else {
            eigenvalue
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, pochhammer};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn poly_trims_and_reports_degree() {
        let p = Poly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_real(&[0.0]).degree(), None);
        assert!(Poly::zero().is_zero());
        assert_eq!(p.eval(c(2.0)), c(5.0));
        assert_eq!(format!("{p}"), "1 + 2·x");
    }

    #[test]
    fn primitive_actions() {
        let x3 = Poly::monomial(3, ONE);
        assert_eq!(
            LinOp::euler().apply(&x3).unwrap(),
            Poly::monomial(3, c(3.0))
        );
        assert_eq!(
            k_minus(2.5).apply(&Poly::monomial(1, ONE)).unwrap(),
            Poly::from_real(&[2.5])
        );
        assert_eq!(
            k_plus().apply(&Poly::monomial(2, ONE)).unwrap(),
            Poly::monomial(3, ONE)
        );
        assert!(LinOp::d().apply(&Poly::one()).unwrap().is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let p = Poly::monomial(DEFAULT_CAP - 1, ONE);
        assert!(matches!(
            LinOp::x().apply(&p),
            Err(Error::CapExceeded {
                degree: 256,
                cap: 256
            })
        ));
        assert!(LinOp::x().apply_capped(&Poly::monomial(3, ONE), 5).is_ok());
        assert!(LinOp::x().apply_capped(&Poly::monomial(3, ONE), 4).is_err());
    }

    #[test]
    fn rational_pole_is_reported() {
        let op = LinOp::rational(RationalD::new(1.0, vec![], vec![-2.0]));
        assert!(op.apply(&Poly::monomial(1, ONE)).is_ok());
        assert_eq!(
            op.apply(&Poly::monomial(2, ONE)),
            Err(Error::SingularRational { degree: 2 })
        );
    }

    #[test]
    fn commutator_examples() {
        let b = 4.0;
        for n in 0..8 {
            let p = Poly::monomial(n, ONE);
            let up = commutator_action(&k_three(b), &k_plus(), &p).unwrap();
            assert_eq!(up, Poly::monomial(n + 1, ONE));
            let down = commutator_action(&k_three(b), &k_minus(b), &p).unwrap();
            let want = -&k_minus(b).apply(&p).unwrap();
            assert!(down.max_abs_diff(&want, None) < 1e-12);
            let hw = commutator_action(&k_minus(b), &k_tilde_plus(b), &p).unwrap();
            assert!(hw.max_abs_diff(&p, None) < 1e-12);
        }
    }

    #[test]
    fn su11_closure_both_realisations() {
        for &b in &[1.5, 4.0, 7.2] {
            assert!(Su11::confluent(b).closure_residual(30).unwrap() <= 1e-12);
        }
        for &lam in &[0.5, 2.0, 3.0] {
            assert!(Su11::perelomov(lam).closure_residual(30).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn raising_generator_with_doubled_weight_does_not_close() {
        let lam = 2.0;
        let literal = Su11 {
            plus: LinOp::x() * LinOp::x() * LinOp::d() + 2.0 * (lam + 1.0) * LinOp::x(),
            minus: l_minus(),
            three: l_three(lam),
        };
        assert!(literal.closure_residual(5).unwrap() > 0.1);
    }

    #[test]
    fn heisenberg_weyl_pairs() {
        assert!(heisenberg_weyl_residual(&k_minus(4.0), &k_tilde_plus(4.0), 30).unwrap() <= 1e-12);
        let (b, cc) = (8.0, 2.5);
        assert!(
            heisenberg_weyl_residual(&k_hat_minus(b, cc), &k_bar_plus(b, cc), 30).unwrap() <= 1e-12
        );
    }

    #[test]
    fn susy_pair_actions_and_nonclosure() {
        let lam = 1.7;
        let zero = susy_ladder_action(&Poly::one(), 0, lam, Ladder::Lower).unwrap();
        assert!(zero.is_zero());
        let up = susy_ladder_action(&Poly::monomial(2, ONE), 2, lam, Ladder::Raise).unwrap();
        assert_eq!(up, Poly::monomial(3, ONE));
        let down = susy_ladder_action(&Poly::monomial(3, ONE), 3, lam, Ladder::Lower).unwrap();
        assert!(down.max_abs_diff(&Poly::monomial(2, c(3.0 * (3.0 + lam))), None) < 1e-13);
        assert!(euler_shift(4, &Poly::monomial(4, c(2.0)))
            .unwrap()
            .is_zero());
        assert_eq!(
            susy_ladder_action(&Poly::from_real(&[1.0, 1.0]), 1, lam, Ladder::Raise),
            Err(Error::NotMonomial { expected: 1 })
        );
        assert!(susy_nonclosure_residual(lam, 10).unwrap() > 0.5);
    }

    #[test]
    fn series_solve_examples() {
        let (beta, b) = (0.7, 4.0);
        let f = RationalD::product(vec![b - 1.0, 0.0]);
        let p = beta * LinOp::x();
        let one_term = series_solve(&f, &p, 0, 1).unwrap();
        assert!(one_term.max_abs_diff(&Poly::from_real(&[1.0, -beta / b]), None) < 1e-16);

        let five = series_solve(&f, &p, 0, 5).unwrap();
        let mut fact = 1.0;
        for n in 0..=5usize {
            if n > 0 {
                fact *= n as f64;
            }
            let want = (-beta).powi(n as i32) / (fact * pochhammer(b, n));
            assert!((five.coeff(n).re - want).abs() <= 1e-15 * want.abs());
        }

        let empty = LinOp::Sum(vec![]);
        let free = series_solve(&RationalD::product(vec![-3.0]), &empty, 3, 4).unwrap();
        assert_eq!(free, Poly::monomial(3, ONE));
    }

    #[test]
    fn series_solve_rejects_bad_index() {
        let f = RationalD::product(vec![3.0, 0.0]);
        assert!(matches!(
            series_solve(&f, &LinOp::x(), 2, 3),
            Err(Error::Indicial { alpha: 2, .. })
        ));
        // F(D) = D² vanishes on x^0; d·x maps x^0 back onto it, d·x·d annihilates it.
        let f = RationalD::product(vec![0.0, 0.0]);
        assert!(series_solve(&f, &(LinOp::d() * LinOp::x() * LinOp::d()), 0, 3).is_ok());
        assert!(series_solve(&f, &(LinOp::d() * LinOp::x()), 0, 3).is_err());
    }

    #[test]
    fn exponential_of_lowering_operator() {
        let b = 3.3;
        let down = -k_minus(b);
        let x = Poly::monomial(1, ONE);
        assert_eq!(exp_op(&down, &x, 3).unwrap(), Poly::from_real(&[-b, 1.0]));
        assert_eq!(exp_op(&down, &Poly::one(), 3).unwrap(), Poly::one());
        assert_eq!(exp_op(&LinOp::x(), &x, 3), Err(Error::NonTerminating));
        assert_eq!(exp_op(&LinOp::euler(), &x, 3), Err(Error::NonTerminating));
        assert!(exp_op(&down, &Poly::monomial(5, ONE), 3).is_err());

        for n in 0..=10usize {
            let pref = if n % 2 == 0 { 1.0 } else { -1.0 } * gamma(b).unwrap()
                / gamma(b + n as f64).unwrap();
            let got = exp_op(&down, &Poly::monomial(n, c(pref)), n).unwrap();
            let want = hyp1f1_poly(n, b);
            let scale = want.max_abs();
            assert!(got.max_abs_diff(&want, None) <= 1e-12 * scale, "n={n}");
        }
    }

    #[test]
    fn perelomov_identities() {
        let trivial = perelomov_identity_check(2.0, ZERO, 6).unwrap();
        assert_eq!(trivial.laguerre_generating, 0.0);
        assert_eq!(trivial.max(), 0.0);
        let r = perelomov_identity_check(2.0, c(0.5), 12).unwrap();
        assert!(r.max() <= 1e-10, "{r:?}");
        let z = perelomov_identity_check(3.5, Complex64::new(0.3, -0.4), 20).unwrap();
        assert!(z.max() <= 1e-10, "{z:?}");
        assert!(perelomov_identity_check(1.0, c(0.1), 300).is_err());
    }

    #[test]
    fn laguerre_coefficients_match_recurrence_values() {
        let lam = 2.5;
        let polys = laguerre_polys(12, lam);
        for (n, p) in polys.iter().enumerate() {
            for &x in &[0.3, 1.7, 6.0] {
                let want = crate::specfun::laguerre(n, lam, x);
                assert!((p.eval(c(x)).re - want).abs() < 1e-10 * want.abs().max(1.0));
            }
        }
    }
}
