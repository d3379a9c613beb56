use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use cohstate_core::potentials::PotentialSpec;
use cohstate_core::Complex64;
use serde_json::{json, Value};

use crate::output::Format;
use crate::{CliResult, Failure};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Potential {
    Morse,
    Spt,
    Pt,
}

/// Morse coherent-state family.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Eigenstates of the lowering operator.
    Ao,
    /// su(1,1) group states, `|β| < 1`.
    Perelomov,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    let v = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected re[,im], got '{s}'")),
    };
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(format!("non-finite value '{s}'"));
    }
    Ok(v)
}

/// Command-line options; every field may also come from `--config`.
#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    #[arg(long, global = true, value_enum)]
    pub potential: Option<Potential>,
    /// Morse λ [default: 3].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// [default: 2 for spt, 6 for pt].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// PT κ [default: 2].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    /// Morse and confluent parameter, "re[,im]" [default: 1.5].
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub beta: Option<Complex64>,
    /// SPT and PT parameter, "re[,im]" [default: 10].
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub gamma: Option<Complex64>,
    /// Truncation N of the coherent-state sum [default: 80].
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// [default: 512].
    #[arg(long, global = true)]
    pub xpoints: Option<usize>,
    /// [default: 2048].
    #[arg(long, global = true)]
    pub tpoints: Option<usize>,
    /// [default: 2π].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    /// Revival-marker threshold on |A|² [default: 0.3].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub threshold: Option<f64>,
    /// Data file [default: <command>.<format>].
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key=value file merged under the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Skip the closed form in cs-eval.
    #[arg(long, global = true)]
    pub series_only: bool,
    /// Confluent parameter b for verify [default: 4].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Gauss parameter c for verify [default: 2.5].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Largest monomial degree used by verify [default: 30].
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Morse family [default: ao].
    #[arg(long, global = true, value_enum)]
    pub family: Option<Family>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    v.parse()
        .map_err(|e| Failure::config(format!("config key {key}: '{v}': {e}")))
}

fn parse_enum<T: ValueEnum>(key: &str, v: &str) -> CliResult<T> {
    T::from_str(v, true).map_err(|e| Failure::config(format!("config key {key}: {e}")))
}

fn parse_bool(key: &str, v: &str) -> CliResult<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Failure::config(format!(
            "config key {key}: '{v}' is not a boolean"
        ))),
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Failure::config(format!(
                "config line {}: expected key=value",
                i + 1
            )));
        };
        let key = k.trim().replace('_', "-");
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(Failure::config(format!("config key {key} given twice")));
        }
    }
    Ok(map)
}

impl Opts {
    /// Fills options not given on the command line from `map`.
    pub fn merge(&mut self, map: &BTreeMap<String, String>) -> CliResult<()> {
        fn fill<T>(slot: &mut Option<T>, v: CliResult<T>) -> CliResult<()> {
            let v = v?;
            if slot.is_none() {
                *slot = Some(v);
            }
            Ok(())
        }
        for (k, v) in map {
            let k = k.as_str();
            match k {
                "potential" => fill(&mut self.potential, parse_enum(k, v))?,
                "lambda" => fill(&mut self.lambda, parse_value(k, v))?,
                "rho" => fill(&mut self.rho, parse_value(k, v))?,
                "kappa" => fill(&mut self.kappa, parse_value(k, v))?,
                "beta" => fill(&mut self.beta, parse_complex(v).map_err(Failure::config))?,
                "gamma" => fill(&mut self.gamma, parse_complex(v).map_err(Failure::config))?,
                "nmax" => fill(&mut self.nmax, parse_value(k, v))?,
                "xpoints" => fill(&mut self.xpoints, parse_value(k, v))?,
                "tpoints" => fill(&mut self.tpoints, parse_value(k, v))?,
                "tmax" => fill(&mut self.tmax, parse_value(k, v))?,
                "threshold" => fill(&mut self.threshold, parse_value(k, v))?,
                "output" => fill(&mut self.output, parse_value(k, v))?,
                "format" => fill(&mut self.format, parse_enum(k, v))?,
                "series-only" => self.series_only |= parse_bool(k, v)?,
                "b" => fill(&mut self.b, parse_value(k, v))?,
                "c" => fill(&mut self.c, parse_value(k, v))?,
                "max-degree" => fill(&mut self.max_degree, parse_value(k, v))?,
                "family" => fill(&mut self.family, parse_enum(k, v))?,
                "xmin" => fill(&mut self.xmin, parse_value(k, v))?,
                "xmax" => fill(&mut self.xmax, parse_value(k, v))?,
                _ => return Err(Failure::config(format!("unknown config key '{k}'"))),
            }
        }
        Ok(())
    }
}

/// Fully resolved configuration of one invocation.
#[derive(Debug, Clone)]
pub struct Run {
    pub command: &'static str,
    pub potential: Potential,
    pub lambda: f64,
    pub rho: f64,
    pub kappa: f64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub nmax: usize,
    pub xpoints: usize,
    pub tpoints: usize,
    pub tmax: f64,
    pub threshold: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub series_only: bool,
    pub b: f64,
    pub c: f64,
    pub max_degree: usize,
    pub family: Family,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
}

impl Run {
    pub fn resolve(mut opts: Opts, command: &'static str) -> CliResult<Self> {
        if let Some(path) = opts.config.clone() {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Failure::config(format!("cannot read config {}: {e}", path.display()))
            })?;
            opts.merge(&parse_config(&text)?)?;
        }
        let potential = opts.potential.unwrap_or(Potential::Spt);
        let family = opts.family.unwrap_or(Family::Ao);
        if command != "verify" {
            match potential {
                Potential::Morse if opts.gamma.is_some() => {
                    return Err(Failure::config("the Morse state takes --beta, not --gamma"))
                }
                Potential::Spt | Potential::Pt if opts.beta.is_some() => {
                    return Err(Failure::config(
                        "SPT and PT states take --gamma, not --beta",
                    ))
                }
                _ => {}
            }
            if family == Family::Perelomov && potential != Potential::Morse {
                return Err(Failure::config(
                    "--family perelomov requires --potential morse",
                ));
            }
        }
        let run = Run {
            command,
            potential,
            lambda: opts.lambda.unwrap_or(3.0),
            rho: opts.rho.unwrap_or(match potential {
                Potential::Pt => 6.0,
                _ => 2.0,
            }),
            kappa: opts.kappa.unwrap_or(2.0),
            beta: opts.beta.unwrap_or(Complex64::new(1.5, 0.0)),
            gamma: opts.gamma.unwrap_or(Complex64::new(10.0, 0.0)),
            nmax: opts.nmax.unwrap_or(80),
            xpoints: opts.xpoints.unwrap_or(512),
            tpoints: opts.tpoints.unwrap_or(2048),
            tmax: opts.tmax.unwrap_or(2.0 * std::f64::consts::PI),
            threshold: opts.threshold.unwrap_or(0.3),
            output: opts.output,
            format: opts.format.unwrap_or(Format::Csv),
            series_only: opts.series_only,
            b: opts.b.unwrap_or(4.0),
            c: opts.c.unwrap_or(2.5),
            max_degree: opts.max_degree.unwrap_or(30),
            family,
            xmin: opts.xmin,
            xmax: opts.xmax,
        };
        if run.xpoints == 0 {
            return Err(Failure::config("--xpoints must be at least 1"));
        }
        if !run.threshold.is_finite() {
            return Err(Failure::config("--threshold must be finite"));
        }
        Ok(run)
    }

    pub fn spec(&self) -> CliResult<PotentialSpec> {
        let spec = match self.potential {
            Potential::Morse => PotentialSpec::morse(self.lambda)?,
            Potential::Spt => PotentialSpec::spt(self.rho)?,
            Potential::Pt => PotentialSpec::pt(self.kappa, self.rho)?,
        };
        Ok(spec)
    }

    /// The coherent-state label of the selected potential.
    pub fn param(&self) -> Complex64 {
        match self.potential {
            Potential::Morse => self.beta,
            _ => self.gamma,
        }
    }

    pub fn output_path(&self) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.{}", self.command, self.format.ext())))
    }

    /// Parameters relevant to this command, for the metadata sidecar.
    pub fn sidecar(&self) -> Value {
        let mut params = json!({
            "potential": format!("{:?}", self.potential).to_lowercase(),
            "nmax": self.nmax,
            "format": self.format.ext(),
        });
        let p = self.param();
        params["param"] = json!([p.re, p.im]);
        match self.potential {
            Potential::Morse => {
                params["lambda"] = json!(self.lambda);
                params["family"] = json!(format!("{:?}", self.family).to_lowercase());
            }
            Potential::Spt => params["rho"] = json!(self.rho),
            Potential::Pt => {
                params["rho"] = json!(self.rho);
                params["kappa"] = json!(self.kappa);
                params["pochhammer"] = json!(self.rho + 0.5);
            }
        }
        match self.command {
            "autocorr" => {
                params["tpoints"] = json!(self.tpoints);
                params["tmax"] = json!(self.tmax);
                params["threshold"] = json!(self.threshold);
            }
            "carpet" => {
                params["tpoints"] = json!(self.tpoints);
                params["tmax"] = json!(self.tmax);
                params["xpoints"] = json!(self.xpoints);
            }
            "cs-eval" => {
                params["xpoints"] = json!(self.xpoints);
                params["series_only"] = json!(self.series_only);
            }
            _ => {}
        }
        if let Some(v) = self.xmin {
            params["xmin"] = json!(v);
        }
        if let Some(v) = self.xmax {
            params["xmax"] = json!(v);
        }
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "parameters": params,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(
            parse_complex("-1.5, 0.5").unwrap(),
            Complex64::new(-1.5, 0.5)
        );
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn config_lines() {
        let map = parse_config("# comment\nrho = 3 # inline\n\nseries_only=true\n").unwrap();
        assert_eq!(map["rho"], "3");
        assert_eq!(map["series-only"], "true");
        assert!(parse_config("rho 3").is_err());
        assert!(parse_config("rho=1\nrho=2").is_err());
    }

    #[test]
    fn flags_win_over_config() {
        let mut opts = Opts {
            rho: Some(5.0),
            ..Opts::default()
        };
        let map = parse_config("rho=3\nkappa=4").unwrap();
        opts.merge(&map).unwrap();
        assert_eq!(opts.rho, Some(5.0));
        assert_eq!(opts.kappa, Some(4.0));
        let bad = parse_config("colour=red").unwrap();
        assert_eq!(opts.merge(&bad).unwrap_err().code, 2);
    }
}
