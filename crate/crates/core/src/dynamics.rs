//! Time evolution over the discrete SPT and PT spectra.
//!
//! A state `Σ c_n ψ_n` evolves as `Σ c_n e^{−iE_n t} ψ_n`. Everything here is
//! direct summation over the truncated expansion.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coherent::{CoeffSeq, CsBasis};
use crate::error::{Error, Result};
use crate::potentials::{measure_rule, Basis, PotentialSpec};
use crate::quadrature::DEFAULT_NODES;

/// Allowed deviation of a time slice's position-space norm from 1.
pub const NORM_TOL: f64 = 1e-6;

/// `|A|²` at or above which a peak counts as a full revival.
pub const FULL_REVIVAL: f64 = 0.99;

/// Default threshold for [`revival_scan`].
pub const DEFAULT_THRESHOLD: f64 = 0.3;

/// Differences of `|A|²` below this are ties in [`revival_scan`].
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionMeta {
    pub spec: PotentialSpec,
    pub param: Complex64,
    pub n_max: usize,
}

/// `|ψ(x_j, t_k)|²` on a tensor grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionGrid {
    pub x: Vec<f64>,
    pub t: Vec<f64>,
    /// Row-major, one row per `x` sample: entry `j * t.len() + k`.
    pub density: Vec<f64>,
    /// Quadrature norm of each time slice.
    pub slice_norms: Vec<f64>,
    pub meta: EvolutionMeta,
}

impl EvolutionGrid {
    pub fn at(&self, j: usize, k: usize) -> f64 {
        self.density[j * self.t.len() + k]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        let nt = self.t.len();
        &self.density[j * nt..(j + 1) * nt]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevivalKind {
    Full,
    Fractional,
}

impl RevivalKind {
    pub fn label(&self) -> &'static str {
        match self {
            RevivalKind::Full => "full",
            RevivalKind::Fractional => "fractional",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Marker {
    pub t: f64,
    /// `|A(t)|²`.
    pub value: f64,
    pub kind: RevivalKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrSeries {
    pub t: Vec<f64>,
    pub a: Vec<Complex64>,
    pub markers: Vec<Marker>,
}

impl AutocorrSeries {
    /// `|A(t)|²` at every sample.
    pub fn modulus_sq(&self) -> Vec<f64> {
        self.a.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Checks that `cs` lives on `spec` and that `spec` has a spectrum.
fn dynamic_spec(cs: &CoeffSeq, spec: &PotentialSpec) -> Result<PotentialSpec> {
    match cs.basis {
        CsBasis::Potential(s) if s == *spec => {}
        other => {
            return Err(Error::BasisMismatch(format!(
                "coefficients over {other:?} cannot evolve under {spec:?}"
            )))
        }
    }
    if let PotentialSpec::Morse { .. } = spec {
        return Err(Error::Unsupported(
            "Morse dynamics are not available".into(),
        ));
    }
    Ok(*spec)
}

fn check_times(t: &[f64]) -> Result<()> {
    if t.is_empty() {
        return Err(Error::InvalidParameter("time grid is empty".into()));
    }
    if t.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "times must be finite and non-negative".into(),
        ));
    }
    Ok(())
}

fn phases(energies: &[f64], t: f64) -> Vec<Complex64> {
    energies
        .iter()
        .map(|&e| Complex64::from_polar(1.0, -e * t))
        .collect()
}

/// Density `|Σ c_n e^{−iE_n t} ψ_n(x)|²` on the tensor grid. Points on the
/// closed boundary of the display domain are allowed (the density vanishes
/// there). Time slices are evaluated in parallel.
pub fn evolve(
    cs: &CoeffSeq,
    spec: &PotentialSpec,
    x_grid: &[f64],
    t_grid: &[f64],
) -> Result<EvolutionGrid> {
    let spec = dynamic_spec(cs, spec)?;
    if x_grid.is_empty() {
        return Err(Error::InvalidParameter("position grid is empty".into()));
    }
    check_times(t_grid)?;
    let basis = Basis::new(&spec, cs.n_max())?;
    let energies = basis.energies()?;
    let at_x = x_grid
        .iter()
        .map(|&x| basis.values_closed(x))
        .collect::<Result<Vec<_>>>()?;
    let rule = measure_rule(&spec, DEFAULT_NODES)?;
    let at_nodes = rule
        .nodes
        .iter()
        .map(|&x| basis.values(x))
        .collect::<Result<Vec<_>>>()?;

    let amplitude = |row: &[f64], amp: &[Complex64]| -> Complex64 {
        row.iter().zip(amp).map(|(v, a)| a * v).sum()
    };
    let slices: Vec<(Vec<f64>, f64)> = t_grid
        .par_iter()
        .map(|&t| {
            let amp: Vec<Complex64> = phases(&energies, t)
                .iter()
                .zip(&cs.coeffs)
                .map(|(p, c)| p * c)
                .collect();
            let column = at_x
                .iter()
                .map(|row| amplitude(row, &amp).norm_sqr())
                .collect();
            let norm = at_nodes
                .iter()
                .zip(&rule.weights)
                .map(|(row, w)| w * amplitude(row, &amp).norm_sqr())
                .sum();
            (column, norm)
        })
        .collect();

    let nt = t_grid.len();
    let mut density = vec![0.0; x_grid.len() * nt];
    let mut slice_norms = Vec::with_capacity(nt);
    for (k, (column, norm)) in slices.into_iter().enumerate() {
        let drift = (norm - 1.0).abs();
        if drift > NORM_TOL {
            return Err(Error::NormDrift { index: k, drift });
        }
        for (j, v) in column.into_iter().enumerate() {
            density[j * nt + k] = v;
        }
        slice_norms.push(norm);
    }
    Ok(EvolutionGrid {
        x: x_grid.to_vec(),
        t: t_grid.to_vec(),
        density,
        slice_norms,
        meta: EvolutionMeta {
            spec,
            param: cs.param,
            n_max: cs.n_max(),
        },
    })
}

/// `A(t) = Σ |c_n|² e^{−iE_n t}`; markers are left empty.
pub fn autocorrelation(
    cs: &CoeffSeq,
    spec: &PotentialSpec,
    t_grid: &[f64],
) -> Result<AutocorrSeries> {
    let spec = dynamic_spec(cs, spec)?;
    let energies = (0..=cs.n_max())
        .map(|n| spec.energy(n))
        .collect::<Result<Vec<_>>>()?;
    autocorrelation_from_spectrum(&cs.weights(), &energies, t_grid)
}

/// `A(t) = Σ w_n e^{−iE_n t}` for explicit weights and energies.
pub fn autocorrelation_from_spectrum(
    weights: &[f64],
    energies: &[f64],
    t_grid: &[f64],
) -> Result<AutocorrSeries> {
    if weights.len() != energies.len() {
        return Err(Error::InvalidParameter(format!(
            "{} weights but {} energies",
            weights.len(),
            energies.len()
        )));
    }
    check_times(t_grid)?;
    let a = t_grid
        .par_iter()
        .map(|&t| {
            phases(energies, t)
                .iter()
                .zip(weights)
                .map(|(p, w)| p * w)
                .sum()
        })
        .collect();
    Ok(AutocorrSeries {
        t: t_grid.to_vec(),
        a,
        markers: Vec::new(),
    })
}

/// Local maxima of `|A|²` strictly above `threshold`.
///
/// A sample is a maximum when it rises strictly from its left neighbour and
/// does not fall below its right one, so plateaus report their first point and
/// a constant series reports nothing. Differences below [`TIE_TOL`] are ties.
/// The last sample counts if it rises strictly; the first sample is the
/// initial state and never counts.
pub fn revival_scan(series: &AutocorrSeries, threshold: f64) -> Vec<Marker> {
    let v = series.modulus_sq();
    if v.len() < 3 {
        return Vec::new();
    }
    let last = v.len() - 1;
    (1..=last)
        .filter(|&i| {
            v[i] - v[i - 1] > TIE_TOL
                && (i == last || v[i] >= v[i + 1] - TIE_TOL)
                && v[i] > threshold
        })
        .map(|i| Marker {
            t: series.t[i],
            value: v[i],
            kind: if v[i] >= FULL_REVIVAL {
                RevivalKind::Full
            } else {
                RevivalKind::Fractional
            },
        })
        .collect()
}

/// `(n, |c_n|²)` for every `n`.
pub fn weight_distribution(cs: &CoeffSeq) -> Vec<(usize, f64)> {
    cs.weights().into_iter().enumerate().collect()
}

/// `n` evenly spaced samples on the closed interval `[a, b]`; a single sample
/// sits at `a`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + i as f64 * h })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{morse_cs, pt_cs, spt_cs, spt_cs_with, CsOptions};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn fig_spt() -> (CoeffSeq, PotentialSpec) {
        let cs = spt_cs_with(c(10.0), 2.0, 20, CsOptions::numeric().unchecked()).unwrap();
        (cs, PotentialSpec::spt(2.0).unwrap())
    }

    #[test]
    fn static_slice_matches_series_evaluator() {
        let (cs, spec) = fig_spt();
        let x = linspace(-0.95, 0.95, 41);
        let g = evolve(&cs, &spec, &x, &[0.0]).unwrap();
        for (j, &xj) in x.iter().enumerate() {
            let want = cs.eval(xj).unwrap().norm_sqr();
            assert!((g.at(j, 0) - want).abs() <= 1e-12 * want.max(1.0));
        }
    }

    #[test]
    fn spt_density_returns_after_two_pi() {
        let (cs, spec) = fig_spt();
        let x = linspace(-1.0, 1.0, 101);
        let g = evolve(&cs, &spec, &x, &[0.0, 2.0 * PI]).unwrap();
        for j in 0..x.len() {
            assert!((g.at(j, 0) - g.at(j, 1)).abs() <= 1e-10, "j={j}");
        }
        assert_eq!(g.at(0, 0), 0.0);
    }

    #[test]
    fn stationary_state_is_time_independent() {
        let spec = PotentialSpec::pt(2.0, 6.0).unwrap();
        let mut cs = pt_cs(c(0.0), 2.0, 6.0, 6).unwrap();
        cs.coeffs = vec![c(0.0), c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)];
        let x = linspace(0.0, FRAC_PI_2, 33);
        let t = linspace(0.0, 3.0, 7);
        let g = evolve(&cs, &spec, &x, &t).unwrap();
        for j in 0..x.len() {
            let row = g.row(j);
            assert!(row
                .iter()
                .all(|v| (v - row[0]).abs() <= 1e-13 * row[0].max(1.0)));
        }
        let a = autocorrelation(&cs, &spec, &t).unwrap();
        assert!(revival_scan(&a, 0.3).is_empty());
    }

    #[test]
    fn slice_norms_are_conserved() {
        let (cs, spec) = fig_spt();
        let t = linspace(0.0, 2.0 * PI, 64);
        let g = evolve(&cs, &spec, &linspace(-1.0, 1.0, 16), &t).unwrap();
        assert!(g.slice_norms.iter().all(|n| (n - 1.0).abs() <= 1e-10));
        let spec = PotentialSpec::pt(2.0, 6.0).unwrap();
        let cs = pt_cs(c(10.0), 2.0, 6.0, 60).unwrap();
        let g = evolve(&cs, &spec, &linspace(0.0, FRAC_PI_2, 16), &t).unwrap();
        assert!(g.slice_norms.iter().all(|n| (n - 1.0).abs() <= 1e-8));
    }

    #[test]
    fn norm_drift_is_reported() {
        let (mut cs, spec) = fig_spt();
        cs.coeffs.iter_mut().for_each(|v| *v *= 1.01);
        assert!(matches!(
            evolve(&cs, &spec, &[0.0], &[0.0, 1.0]),
            Err(Error::NormDrift { index: 0, .. })
        ));
    }

    #[test]
    fn rejects_mismatched_or_morse_input() {
        let (cs, _) = fig_spt();
        let pt = PotentialSpec::pt(2.0, 6.0).unwrap();
        assert!(matches!(
            evolve(&cs, &pt, &[0.3], &[0.0]),
            Err(Error::BasisMismatch(_))
        ));
        assert!(matches!(
            autocorrelation(&cs, &pt, &[0.0]),
            Err(Error::BasisMismatch(_))
        ));
        let m = morse_cs(c(1.0), 3.0, 60).unwrap();
        let ms = PotentialSpec::morse(3.0).unwrap();
        assert!(matches!(
            evolve(&m, &ms, &[1.0], &[0.0]),
            Err(Error::Unsupported(_))
        ));
        let spt = PotentialSpec::spt(2.0).unwrap();
        assert!(evolve(&cs, &spt, &[0.3], &[-1.0]).is_err());
        assert!(evolve(&cs, &spt, &[], &[0.0]).is_err());
    }

    #[test]
    fn spt_autocorrelation_values() {
        let (cs, spec) = fig_spt();
        let a = autocorrelation(&cs, &spec, &[0.0, PI, 2.0 * PI]).unwrap();
        assert!((a.a[0] - c(1.0)).norm() <= 1e-15);
        let parity: f64 = cs
            .weights()
            .iter()
            .enumerate()
            .map(|(n, w)| if n % 2 == 0 { *w } else { -*w })
            .sum();
        assert!((a.a[1] - c(parity)).norm() <= 1e-12);
        assert!((a.a[2].norm_sqr() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn spt_autocorrelation_is_two_pi_periodic() {
        let t = linspace(0.0, 3.0, 31);
        let shifted: Vec<f64> = t.iter().map(|v| v + 2.0 * PI).collect();
        let cs = spt_cs(Complex64::new(2.0, 1.0), 2.0, 60).unwrap();
        let spec = PotentialSpec::spt(2.0).unwrap();
        let a = autocorrelation(&cs, &spec, &t).unwrap();
        let b = autocorrelation(&cs, &spec, &shifted).unwrap();
        for (x, y) in a.a.iter().zip(&b.a) {
            assert!((x - y).norm() <= 1e-10);
        }
        // half-integer ρ: the gaps are integers but E_0 is not, so only |A| repeats
        let cs = spt_cs(Complex64::new(2.0, 1.0), 1.5, 60).unwrap();
        let spec = PotentialSpec::spt(1.5).unwrap();
        let a = autocorrelation(&cs, &spec, &t).unwrap();
        let b = autocorrelation(&cs, &spec, &shifted).unwrap();
        for (x, y) in a.a.iter().zip(&b.a) {
            assert!((x.norm() - y.norm()).abs() <= 1e-10);
        }
    }

    #[test]
    fn pt_revival_times() {
        let spec = PotentialSpec::pt(2.0, 6.0).unwrap();
        let cs = pt_cs(c(10.0), 2.0, 6.0, 60).unwrap();
        let a = autocorrelation(&cs, &spec, &[FRAC_PI_4, FRAC_PI_2]).unwrap();
        assert!((a.a[1].norm_sqr() - 1.0).abs() <= 1e-10);
        let parity: f64 = cs
            .weights()
            .iter()
            .enumerate()
            .map(|(n, w)| if n % 2 == 0 { *w } else { -*w })
            .sum();
        assert!((a.a[0].norm_sqr() - parity * parity).abs() <= 1e-10);
        assert!(a.a[0].norm_sqr() < 0.99);
    }

    #[test]
    fn two_level_beats() {
        let w = [0.5, 0.5];
        let e = [4.0, 9.0];
        let t = linspace(0.0, 4.0 * PI, 2001);
        let step = t[1] - t[0];
        let a = autocorrelation_from_spectrum(&w, &e, &t).unwrap();
        let m = revival_scan(&a, 0.3);
        assert_eq!(m.len(), 10);
        for (k, mk) in m.iter().enumerate() {
            let want = 2.0 * PI * (k + 1) as f64 / 5.0;
            assert!((mk.t - want).abs() <= step, "{} vs {want}", mk.t);
            assert!((mk.value - 1.0).abs() < 1e-4);
            assert_eq!(mk.kind, RevivalKind::Full);
        }
    }

    #[test]
    fn spt_full_revival_is_detected() {
        let (cs, spec) = fig_spt();
        let t = linspace(0.0, 4.0 * PI, 4097);
        let step = t[1] - t[0];
        let a = autocorrelation(&cs, &spec, &t).unwrap();
        let m = revival_scan(&a, 0.3);
        assert!(m
            .iter()
            .any(|mk| mk.kind == RevivalKind::Full && (mk.t - 2.0 * PI).abs() <= step));
        assert!(m.iter().any(|mk| mk.kind == RevivalKind::Fractional));
        // the right endpoint of [0, 2π] is itself the revival
        let t = linspace(0.0, 2.0 * PI, 2048);
        let a = autocorrelation(&cs, &spec, &t).unwrap();
        let m = revival_scan(&a, 0.3);
        let last = m.last().unwrap();
        assert_eq!(last.t, 2.0 * PI);
        assert_eq!(last.kind, RevivalKind::Full);
    }

    #[test]
    fn scan_edge_cases() {
        let flat = AutocorrSeries {
            t: vec![0.0, 1.0, 2.0, 3.0],
            a: vec![c(0.8); 4],
            markers: vec![],
        };
        assert!(revival_scan(&flat, 0.3).is_empty());
        let plateau = AutocorrSeries {
            t: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            a: vec![c(0.1), c(0.7), c(0.7), c(0.2), c(0.1)],
            markers: vec![],
        };
        let m = revival_scan(&plateau, 0.3);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].t, 1.0);
        assert_eq!(m[0].kind, RevivalKind::Fractional);
        let short = AutocorrSeries {
            t: vec![0.0, 1.0],
            a: vec![c(0.1), c(1.0)],
            markers: vec![],
        };
        assert!(revival_scan(&short, 0.3).is_empty());
    }

    #[test]
    fn carpet_time_reversal_symmetry() {
        let (cs, spec) = fig_spt();
        let x = linspace(-1.0, 1.0, 65);
        let t = [0.7, 2.0 * PI - 0.7];
        let g = evolve(&cs, &spec, &x, &t).unwrap();
        for j in 0..x.len() {
            assert!((g.at(j, 0) - g.at(j, 1)).abs() <= 1e-9 * g.at(j, 0).max(1.0));
        }
    }

    #[test]
    fn weights_sum_to_one() {
        let (cs, _) = fig_spt();
        let w = weight_distribution(&cs);
        assert_eq!(w.len(), 21);
        assert!((w.iter().map(|p| p.1).sum::<f64>() - 1.0).abs() <= 1e-10);
        let g = weight_distribution(&spt_cs(c(0.0), 2.0, 5).unwrap());
        assert_eq!(g[0], (0, 1.0));
        assert!(g[1..].iter().all(|p| p.1 == 0.0));
    }

    #[test]
    fn linspace_shapes() {
        assert_eq!(linspace(0.0, 1.0, 1), vec![0.0]);
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }
}
