//! `cohstate`: builds coherent states, checks the operator algebra and exports
//! dynamics data as CSV or JSON with a JSON metadata sidecar.

mod config;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cohstate_core::coherent::{
    morse_cs_with, morse_perelomov_cs, pt_cs_with, spt_cs_with, CoeffSeq, CsOptions,
};
use cohstate_core::dynamics::{autocorrelation, evolve, linspace, revival_scan};
use cohstate_core::potentials::{interior_grid, Basis, PotentialSpec};
use cohstate_core::{Complex64, Error};
use serde_json::{json, Value};

use config::{Family, Opts, Run};
use output::{write_outputs, Cell, Format, Table};

#[derive(Parser, Debug)]
#[command(
    name = "cohstate",
    version,
    about = "Coherent states of exactly solvable potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Run the operator-algebra and special-function checks.
    Verify,
    /// Tabulate a coherent state as a series and in closed form.
    CsEval,
    /// Weighting distribution |c_n|².
    Weights,
    /// Autocorrelation A(t) with revival markers.
    Autocorr,
    /// Density |ψ(x, t)|² on an (x, t) grid.
    Carpet,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::CsEval => "cs-eval",
            Command::Weights => "weights",
            Command::Autocorr => "autocorr",
            Command::Carpet => "carpet",
        }
    }
}

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NormDrift { .. }
            | Error::NonConvergence { .. }
            | Error::Indicial { .. }
            | Error::NonTerminating
            | Error::NotMonomial { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::config(format!("i/o error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cohstate: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let run = Run::resolve(cli.opts, cli.command.name())?;
    match cli.command {
        Command::Verify => verify::cmd_verify(&run),
        Command::CsEval => cmd_cs_eval(&run),
        Command::Weights => cmd_weights(&run),
        Command::Autocorr => cmd_autocorr(&run),
        Command::Carpet => cmd_carpet(&run),
    }
}

/// Figure-style construction: normalization by the truncated sum, with the
/// truncation ratio recorded rather than enforced.
fn cs_options() -> CsOptions {
    CsOptions::numeric().unchecked()
}

fn build_cs(run: &Run) -> CliResult<CoeffSeq> {
    let spec = run.spec()?;
    let p = run.param();
    let cs = match spec {
        PotentialSpec::Morse { lam } => morse_cs_with(p, lam, run.nmax, cs_options())?,
        PotentialSpec::Spt { rho, .. } => spt_cs_with(p, rho, run.nmax, cs_options())?,
        PotentialSpec::Pt { kappa, rho, .. } => {
            pt_cs_with(p, kappa, rho, run.nmax, rho + 0.5, cs_options())?
        }
    };
    Ok(cs)
}

fn cs_meta(cs: &CoeffSeq) -> Value {
    json!({
        "norm_mode": format!("{:?}", cs.norm_mode).to_lowercase(),
        "norm_factor": cs.norm_factor,
        "norm_sq": cs.norm_sq(),
        "truncation_ratio": cs.truncation_ratio,
    })
}

fn dynamic_spec(run: &Run) -> CliResult<PotentialSpec> {
    let spec = run.spec()?;
    if let PotentialSpec::Morse { .. } = spec {
        return Err(Failure::config(
            "time evolution is not available for the Morse potential",
        ));
    }
    Ok(spec)
}

fn time_grid(run: &Run) -> CliResult<Vec<f64>> {
    if run.tpoints == 0 {
        return Err(Failure::config("--tpoints must be at least 1"));
    }
    if !run.tmax.is_finite() || run.tmax < 0.0 {
        return Err(Failure::config("--tmax must be finite and non-negative"));
    }
    Ok(linspace(0.0, run.tmax, run.tpoints))
}

fn cmd_weights(run: &Run) -> CliResult<()> {
    let (weights, meta) = if run.family == Family::Perelomov {
        let spec = run.spec()?;
        let PotentialSpec::Morse { lam } = spec else {
            return Err(Failure::config(
                "--family perelomov requires --potential morse",
            ));
        };
        let state = morse_perelomov_cs(run.param(), lam)?;
        let w: Vec<f64> = state
            .coefficients(run.nmax)
            .iter()
            .map(|c| c.norm_sqr())
            .collect();
        let sum: f64 = w.iter().sum();
        (w, json!({ "norm_sq": sum }))
    } else {
        let cs = build_cs(run)?;
        (cs.weights(), cs_meta(&cs))
    };
    let mut table = Table::new(&["n", "weight"]);
    for (n, w) in weights.iter().enumerate() {
        table.push(vec![Cell::Int(n), Cell::Float(*w)]);
    }
    let mut sidecar = run.sidecar();
    sidecar["coherent_state"] = meta;
    write_outputs(run, &table, sidecar)
}

fn cmd_cs_eval(run: &Run) -> CliResult<()> {
    let spec = run.spec()?;
    let p = run.param();
    let (lo, hi) = spec.domain();
    let xmin = run.xmin.unwrap_or(lo);
    let xmax = run.xmax.unwrap_or(match spec {
        PotentialSpec::Morse { .. } => 30.0,
        _ => hi,
    });
    if xmin.is_nan() || xmax.is_nan() || xmin >= xmax {
        return Err(Failure::config(format!("empty x range [{xmin}, {xmax}]")));
    }
    let x = match (run.xmin, run.xmax) {
        (Some(_), Some(_)) => linspace(xmin, xmax, run.xpoints),
        _ => interior_grid(xmin, xmax, run.xpoints),
    };
    if let Some(bad) = x.iter().find(|&&v| !(v > lo && v < hi)) {
        return Err(Failure::config(format!(
            "x = {bad} lies outside the {} domain ({lo}, {hi})",
            spec.name()
        )));
    }
    let has_closed = !run.series_only && !matches!(spec, PotentialSpec::Pt { .. });
    if has_closed && run.family != Family::Perelomov && (p.im != 0.0 || p.re < 0.0) {
        return Err(Failure::config(format!(
            "closed forms need a real non-negative parameter, got {p}; pass --series-only"
        )));
    }

    let (series, closed, meta): (Vec<Complex64>, Option<Vec<Complex64>>, Value) =
        if run.family == Family::Perelomov {
            let PotentialSpec::Morse { lam } = spec else {
                return Err(Failure::config(
                    "--family perelomov requires --potential morse",
                ));
            };
            let state = morse_perelomov_cs(p, lam)?;
            let coeffs = state.coefficients(run.nmax);
            let basis = Basis::new(&spec, run.nmax)?;
            let series = x
                .iter()
                .map(|&v| {
                    let phi = basis.values(v)?;
                    Ok(coeffs.iter().zip(&phi).map(|(c, f)| c * f).sum())
                })
                .collect::<Result<Vec<Complex64>, Error>>()?;
            let closed = if run.series_only {
                None
            } else {
                Some(
                    x.iter()
                        .map(|&v| state.eval(v))
                        .collect::<Result<Vec<_>, Error>>()?,
                )
            };
            let w: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
            (series, closed, json!({ "norm_sq": w }))
        } else {
            let cs = build_cs(run)?;
            let series = x
                .iter()
                .map(|&v| cs.eval(v))
                .collect::<Result<Vec<_>, Error>>()?;
            let closed = if has_closed {
                Some(
                    x.iter()
                        .map(|&v| cs.closed_form(v))
                        .collect::<Result<Vec<_>, Error>>()?,
                )
            } else {
                None
            };
            (series, closed, cs_meta(&cs))
        };

    let complex = p.im != 0.0 || run.family == Family::Perelomov;
    let mut cols = vec!["x"];
    if complex {
        cols.extend(["series_re", "series_im"]);
    } else {
        cols.push("series");
    }
    if closed.is_some() {
        if complex {
            cols.extend(["closed_re", "closed_im"]);
        } else {
            cols.push("closed");
        }
        cols.push("abs_diff");
    }
    let mut table = Table::new(&cols);
    let mut max_diff: f64 = 0.0;
    for (j, &xv) in x.iter().enumerate() {
        let mut row = vec![xv];
        let s = series[j];
        if complex {
            row.extend([s.re, s.im]);
        } else {
            row.push(s.re);
        }
        if let Some(c) = &closed {
            let c = c[j];
            if complex {
                row.extend([c.re, c.im]);
            } else {
                row.push(c.re);
            }
            let d = (s - c).norm();
            max_diff = max_diff.max(d);
            row.push(d);
        }
        table.push(row);
    }
    let mut sidecar = run.sidecar();
    sidecar["coherent_state"] = meta;
    sidecar["x_grid"] = json!({ "min": x[0], "max": x[x.len() - 1], "points": x.len() });
    sidecar["closed_form"] = match (&closed, spec) {
        (Some(_), _) => json!({ "available": true, "max_abs_diff": max_diff }),
        (None, PotentialSpec::Pt { .. }) => json!({
            "available": false,
            "reason": "no closed form exists for the PT coherent state",
        }),
        (None, _) => json!({ "available": false, "reason": "--series-only" }),
    };
    write_outputs(run, &table, sidecar)
}

fn cmd_autocorr(run: &Run) -> CliResult<()> {
    let spec = dynamic_spec(run)?;
    let cs = build_cs(run)?;
    let t = time_grid(run)?;
    let mut series = autocorrelation(&cs, &spec, &t)?;
    series.markers = revival_scan(&series, run.threshold);
    let mut table = Table::new(&["t", "re", "im", "abs_sq"]);
    for (tv, a) in series.t.iter().zip(&series.a) {
        table.push(vec![*tv, a.re, a.im, a.norm_sqr()]);
    }
    let mut sidecar = run.sidecar();
    sidecar["coherent_state"] = cs_meta(&cs);
    sidecar["t_grid"] = grid_meta(&t);
    sidecar["markers"] = series
        .markers
        .iter()
        .map(|m| json!({ "t": m.t, "abs_sq": m.value, "kind": m.kind.label() }))
        .collect();
    write_outputs(run, &table, sidecar)
}

fn cmd_carpet(run: &Run) -> CliResult<()> {
    let spec = dynamic_spec(run)?;
    let cs = build_cs(run)?;
    let t = time_grid(run)?;
    let (lo, hi) = spec.domain();
    let xmin = run.xmin.unwrap_or(lo);
    let xmax = run.xmax.unwrap_or(hi);
    if !(lo <= xmin && xmin < xmax && xmax <= hi) {
        return Err(Failure::config(format!(
            "x range [{xmin}, {xmax}] is not inside the {} domain [{lo}, {hi}]",
            spec.name()
        )));
    }
    let x = linspace(xmin, xmax, run.xpoints);
    let grid = evolve(&cs, &spec, &x, &t)?;
    let mut header = vec!["x".to_string()];
    header.extend(t.iter().map(|v| output::fmt_f64(*v)));
    let mut table = Table::with_header(header);
    for (j, &xv) in x.iter().enumerate() {
        let mut row = vec![xv];
        row.extend_from_slice(grid.row(j));
        table.push(row);
    }
    let drift = grid
        .slice_norms
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);
    let mut sidecar = run.sidecar();
    sidecar["coherent_state"] = cs_meta(&cs);
    sidecar["t_grid"] = grid_meta(&t);
    sidecar["x_grid"] = json!({ "min": xmin, "max": xmax, "points": x.len() });
    sidecar["max_norm_drift"] = json!(drift);
    if run.format == Format::Json {
        let rows: Vec<&[f64]> = (0..x.len()).map(|j| grid.row(j)).collect();
        let data = json!({ "x": x, "t": t, "density": rows });
        return output::write_json_outputs(run, &data, sidecar);
    }
    write_outputs(run, &table, sidecar)
}

fn grid_meta(t: &[f64]) -> Value {
    json!({
        "min": t[0],
        "max": t[t.len() - 1],
        "points": t.len(),
    })
}
