use cohstate_core::coherent::{chg_cs, hg_cs, spt_norm_integral, spt_norm_sum};
use cohstate_core::opalgebra::{
    exp_op, heisenberg_weyl_residual, hyp1f1_poly, k_bar_plus, k_hat_minus, k_minus, k_tilde_plus,
    perelomov_identity_check, series_solve, susy_nonclosure_residual, LinOp, Poly, RationalD, Su11,
    DEFAULT_CAP,
};
use cohstate_core::potentials::{
    eigenstate, gram_deviation, gram_matrix, interior_grid, morse_equation_residual,
    schrodinger_residual, PotentialSpec,
};
use cohstate_core::specfun::{hyp1f1, laguerre_all, log_gamma, pochhammer};
use cohstate_core::{Complex64, Result};
use serde_json::{json, Value};

use crate::output::{write_json_outputs, Format};
use crate::{CliResult, Failure, Run};

/// Highest eigenfunction index checked on the finite-difference grid.
const EIGEN_N_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Bound {
    AtMost,
    Above,
}

struct Check {
    name: &'static str,
    scope: String,
    value: f64,
    tol: f64,
    bound: Bound,
}

impl Check {
    fn new(name: &'static str, scope: String, value: f64, tol: f64) -> Self {
        Check {
            name,
            scope,
            value,
            tol,
            bound: Bound::AtMost,
        }
    }

    fn pass(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.tol,
            Bound::Above => self.value > self.tol,
        }
    }

    fn line(&self) -> String {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::Above => ">",
        };
        format!(
            "{} {} [{}]: {:.3e} (required {op} {:.0e})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            self.scope,
            self.value,
            self.tol
        )
    }

    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "scope": self.scope,
            "value": self.value,
            "tolerance": self.tol,
            "bound": match self.bound { Bound::AtMost => "at_most", Bound::Above => "above" },
            "pass": self.pass(),
        })
    }
}

fn rel(got: Complex64, want: Complex64, scale: f64) -> f64 {
    let d = (got - want).norm();
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

fn algebra_checks(run: &Run, md: usize) -> Result<Vec<Check>> {
    let (b, c, lam) = (run.b, run.c, run.lambda);
    let scope = |s: String| format!("{s}, n <= {md}");
    let mut susy = Check::new(
        "n-dependent ladder pair fails to close",
        scope(format!("lambda = {lam}")),
        susy_nonclosure_residual(lam, md)?,
        1e-3,
    );
    susy.bound = Bound::Above;
    Ok(vec![
        Check::new(
            "su(1,1) closure, confluent realization",
            scope(format!("b = {b}")),
            Su11::confluent(b).closure_residual(md)?,
            1e-12,
        ),
        Check::new(
            "su(1,1) closure, Laguerre realization",
            scope(format!("lambda = {lam}")),
            Su11::perelomov(lam).closure_residual(md)?,
            1e-12,
        ),
        Check::new(
            "Heisenberg-Weyl pair K-, K~+",
            scope(format!("b = {b}")),
            heisenberg_weyl_residual(&k_minus(b), &k_tilde_plus(b), md)?,
            1e-12,
        ),
        Check::new(
            "Heisenberg-Weyl pair K^-, K-bar+",
            scope(format!("b = {b}, c = {c}")),
            heisenberg_weyl_residual(&k_hat_minus(b, c), &k_bar_plus(b, c), md)?,
            1e-12,
        ),
        susy,
    ])
}

fn series_checks(run: &Run, md: usize) -> Result<Vec<Check>> {
    let (b, beta) = (run.b, run.beta);
    let scope = format!("b = {b}, beta = {beta}, n <= {md}");

    let f = RationalD::product(vec![b - 1.0, 0.0]);
    let y = series_solve(&f, &(beta * LinOp::x()), 0, md)?;
    let mut solver: f64 = 0.0;
    for n in 0..=md {
        let log_den = log_gamma(n as f64 + 1.0)?;
        let want = (-beta).powu(n as u32) / (log_den.exp() * pochhammer(b, n));
        solver = solver.max(rel(y.coeff(n), want, want.norm()));
    }

    let mut similarity: f64 = 0.0;
    for n in 0..=md {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let start = Poly::monomial(n, Complex64::new(sign / pochhammer(b, n), 0.0));
        let got = exp_op(&(-k_minus(b)), &start, n)?;
        let want = hyp1f1_poly(n, b);
        similarity = similarity.max(got.max_abs_diff(&want, None) / want.max_abs());
    }

    // L_n^λ(x) = (λ+1)_n / n! Φ(−n; λ+1; x), compared at x = |β|
    let lam = run.lambda;
    let x = beta.norm();
    let rec = laguerre_all(md, lam, x);
    let mut laguerre: f64 = 0.0;
    for (n, &v) in rec.iter().enumerate() {
        let pref = pochhammer(lam + 1.0, n) / log_gamma(n as f64 + 1.0)?.exp();
        let want = pref * hyp1f1(n, lam + 1.0, x)?;
        let scale = pref * hyp1f1(n, lam + 1.0, -x)?;
        laguerre = laguerre.max((v - want).abs() / scale.max(want.abs()));
    }

    let perelomov = perelomov_identity_check(lam, beta, md)?.max();

    Ok(vec![
        Check::new("series solver coefficients", scope.clone(), solver, 1e-13),
        Check::new(
            "exp(-K-) maps monomials to confluent polynomials",
            format!("b = {b}, n <= {md}"),
            similarity,
            1e-12,
        ),
        Check::new(
            "Laguerre recurrence against the terminating series",
            format!("lambda = {lam}, x = {x}, n <= {md}"),
            laguerre,
            1e-12,
        ),
        Check::new(
            "Laguerre-class intertwining and eigenvalue identities",
            format!("lambda = {lam}, beta = {beta}, degree <= {md}"),
            perelomov,
            1e-10,
        ),
    ])
}

fn state_checks(run: &Run) -> Result<Vec<Check>> {
    let (b, c, beta, nmax) = (run.b, run.c, run.beta, run.nmax);
    let chg = chg_cs(beta, b, nmax)?.eigen_residual()?;
    let hg = hg_cs(beta, b, c, nmax)?.eigen_residual()?;
    let g = run.gamma.norm();
    let s = spt_norm_sum(g, run.rho)?;
    let i = spt_norm_integral(g, run.rho)?;
    Ok(vec![
        Check::new(
            "lowering-operator eigenstate, confluent basis",
            format!("beta = {beta}, b = {b}, N = {nmax}"),
            chg,
            1e-10,
        ),
        Check::new(
            "lowering-operator eigenstate, Gauss basis",
            format!("beta = {beta}, b = {b}, c = {c}, N = {nmax}"),
            hg,
            1e-10,
        ),
        Check::new(
            "S(gamma) series against its integral representation",
            format!("gamma = {g}, rho = {}", run.rho),
            (s - i).abs() / s,
            1e-8,
        ),
    ])
}

fn eigenfunction_checks(run: &Run, md: usize) -> Result<Vec<Check>> {
    let spec = run
        .spec()
        .map_err(|f| cohstate_core::Error::InvalidParameter(f.msg))?;
    let n_max = md.min(EIGEN_N_MAX);
    let mut residual: f64 = 0.0;
    let name = match spec {
        PotentialSpec::Morse { .. } => {
            let grid = interior_grid(0.5, 20.5, 2000);
            for n in 0..=n_max {
                residual = residual.max(morse_equation_residual(&eigenstate(&spec, n)?, &grid)?);
            }
            "Morse eigenfunctions solve the radial equation"
        }
        _ => {
            let (a, b) = spec.y_domain()?;
            let grid = interior_grid(a, b, 2000);
            for n in 0..=n_max {
                residual = residual.max(schrodinger_residual(&eigenstate(&spec, n)?, &grid)?);
            }
            "eigenfunctions solve the Schrodinger equation"
        }
    };
    let gram = gram_deviation(&gram_matrix(&spec, n_max)?);
    let scope = format!("{}, n <= {n_max}", spec.name());
    Ok(vec![
        Check::new(name, scope.clone(), residual, 5e-6),
        Check::new("eigenfunctions are orthonormal", scope, gram, 1e-8),
    ])
}

pub fn cmd_verify(run: &Run) -> CliResult<()> {
    let md = run.max_degree;
    if md + 2 > DEFAULT_CAP {
        return Err(Failure::config(format!(
            "--max-degree must be below {}",
            DEFAULT_CAP - 1
        )));
    }
    for (name, v) in [("b", run.b), ("c", run.c)] {
        if !v.is_finite() || (v <= 0.0 && v.fract() == 0.0) {
            return Err(Failure::config(format!(
                "--{name} must not be a non-positive integer, got {v}"
            )));
        }
    }
    let mut checks = Vec::new();
    checks.extend(algebra_checks(run, md)?);
    checks.extend(series_checks(run, md)?);
    checks.extend(state_checks(run)?);
    checks.extend(eigenfunction_checks(run, md)?);
    let failed = checks.iter().filter(|c| !c.pass()).count();

    let report = json!({
        "max_degree": md,
        "checks": checks.iter().map(Check::json).collect::<Vec<_>>(),
        "failed": failed,
    });
    match (run.format, &run.output) {
        (_, Some(_)) => {
            let mut sidecar = run.sidecar();
            sidecar["parameters"]["b"] = json!(run.b);
            sidecar["parameters"]["c"] = json!(run.c);
            sidecar["parameters"]["max_degree"] = json!(md);
            write_json_outputs(run, &report, sidecar)?;
        }
        (Format::Json, None) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        (Format::Csv, None) => {
            println!("checks restricted to degree n <= {md}");
            for c in &checks {
                println!("{}", c.line());
            }
            println!(
                "{} of {} checks passed",
                checks.len() - failed,
                checks.len()
            );
        }
    }
    if failed > 0 {
        return Err(Failure::invariant(format!("{failed} checks failed")));
    }
    Ok(())
}
