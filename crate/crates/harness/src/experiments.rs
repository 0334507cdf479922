//! Convergence sweeps, norm-equivalence studies and hypothesis reports.

use num_complex::Complex64;
use serde::Serialize;
use specmeans::hypotheses::HypothesisReport;
use specmeans::multiplier::MultiplierPlan;
use specmeans::spaces::{
    besov_norm_lp, besov_norm_modulus, build_partition, classical_besov_norm, liouville_norm, localized_norm,
    nikolskii_norm, slobodetskii_norm, sobolev_quadratic_norm,
};
use specmeans::distributions::realize;
use specmeans::{
    assemble_hypothesis_report, distribution_convergence, forward_transform, inverse_transform, BesovParams,
    GridFunction, GridSpec, NormSpec,
};

use crate::config::{ExperimentConfig, SpaceParams};
use crate::error::{HarnessError, HarnessResult};
use crate::signals::{make_signal, smooth_window, Signal, SUPPORT_MARGIN};

/// Errors below this multiple of the floor are excluded from slope fits
/// and from the monotonicity assertion.
pub const FLOOR_FACTOR: f64 = 10.0;

/// Roundoff allowance relative to the norm of the input.
const ROUNDOFF: f64 = 1e3 * f64::EPSILON;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub t: f64,
    pub error: f64,
    pub space: String,
    /// `|⟨p(tA)f - f, φ⟩|` for distribution runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_error: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub experiment: String,
    /// `theorem` when every hypothesis holds, `counterexample` otherwise.
    pub label: String,
    pub mean: String,
    pub symbol: String,
    pub signal: String,
    pub space: String,
    pub norm_route: String,
    pub localized: bool,
    pub records: Vec<ConvergenceRecord>,
    /// Log-log slope of error against `t` over the pre-floor points.
    pub slope: Option<f64>,
    pub slope_points: usize,
    /// Error at the smallest `t`.
    pub floor: f64,
    /// Norm of the outer half of the input's lattice spectrum.
    pub band_truncation: f64,
    pub roundoff: f64,
    /// `floor <= 2 max(band_truncation, roundoff)`.
    pub floor_validated: bool,
    pub monotone: bool,
    /// `sup_t ‖p(tA)u‖ / ‖u‖` in the error norm.
    pub uniform_bound: f64,
    pub hypotheses: HypothesisReport,
    pub notes: Vec<String>,
}

impl ConvergenceReport {
    /// A hypothesis-passing run whose errors fail to decrease.
    pub fn is_regression(&self) -> bool {
        self.hypotheses.all_pass() && !self.monotone
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Part of `f` on lattice modes with some `|k_i| > n/4`.
fn outer_half(f: &GridFunction) -> GridFunction {
    let spec = *f.spec();
    let cut = (spec.points_per_axis() / 4) as i64;
    let mut s = forward_transform(f);
    for (i, c) in s.coefficients_mut().iter_mut().enumerate() {
        if spec.wavenumbers(i).iter().all(|k| k.abs() <= cut) {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    inverse_transform(&s)
}

fn window_for(config: &ExperimentConfig) -> HarnessResult<Option<GridFunction>> {
    config
        .window_radius
        .map(|r| smooth_window(config.grid, r, r + SUPPORT_MARGIN * config.grid.period()))
        .transpose()
        .map_err(Into::into)
}

fn measure(f: &GridFunction, norm: &NormSpec, window: Option<&GridFunction>) -> HarnessResult<f64> {
    Ok(match window {
        Some(w) => localized_norm(f, w, norm)?,
        None => norm.evaluate(f)?,
    })
}

struct Summary {
    slope: Option<f64>,
    slope_points: usize,
    floor: f64,
    floor_validated: bool,
    monotone: bool,
}

fn summarize(t: &[f64], errors: &[f64], band_truncation: f64, roundoff: f64) -> Summary {
    let floor = *errors.last().expect("schedule is nonempty");
    let floor_validated = floor <= 2.0 * band_truncation.max(roundoff);
    let threshold = if floor_validated { FLOOR_FACTOR * floor } else { 0.0 };
    let keep: Vec<usize> = (0..t.len()).filter(|&i| errors[i] > threshold).collect();
    let xs: Vec<f64> = keep.iter().map(|&i| t[i]).collect();
    let ys: Vec<f64> = keep.iter().map(|&i| errors[i]).collect();
    let monotone = errors
        .windows(2)
        .all(|w| w[0] <= threshold || w[1] < w[0]);
    Summary {
        slope: log_log_slope(&xs, &ys),
        slope_points: keep.len(),
        floor,
        floor_validated,
        monotone,
    }
}

fn label(report: &HypothesisReport) -> String {
    if report.all_pass() { "theorem" } else { "counterexample" }.into()
}

fn route_of(config: &ExperimentConfig, norm: &NormSpec) -> String {
    match norm {
        NormSpec::Besov { .. } | NormSpec::BesovModulus { .. } | NormSpec::Classical { .. } => {
            config.space.route.as_str().into()
        }
        _ => "spectral".into(),
    }
}

/// `‖p(tA)u - u‖` over the schedule for the configured signal.
pub fn run_convergence_function(config: &ExperimentConfig) -> HarnessResult<ConvergenceReport> {
    config.validate()?;
    let u = make_signal(&config.signal, config.grid)?;
    converge_on(config, &u, config.signal.to_string(), "converge_function")
}

fn converge_on(
    config: &ExperimentConfig,
    u: &GridFunction,
    signal: String,
    experiment: &str,
) -> HarnessResult<ConvergenceReport> {
    let p = config.mean()?;
    let sigma = config.symbol()?;
    let hypotheses = assemble_hypothesis_report(config.theorem, &config.hypothesis_parameters()?, &p)?;
    let norm = config.function_norm();
    let window = window_for(config)?;
    let w = window.as_ref();
    let times = config.schedule.times();
    let u_norm = measure(u, &norm, w)?;
    let spectrum = forward_transform(u);
    let mut errors = Vec::with_capacity(times.len());
    let mut bound: f64 = 0.0;
    for &t in &times {
        let plan = MultiplierPlan::spectral_mean(config.grid, &p, t, &sigma)?;
        let mean = inverse_transform(&plan.apply_to_spectrum(&spectrum)?);
        errors.push(measure(&mean.sub(u)?, &norm, w)?);
        if u_norm > 0.0 {
            bound = bound.max(measure(&mean, &norm, w)? / u_norm);
        }
    }
    let band_truncation = measure(&outer_half(u), &norm, w)?;
    let roundoff = ROUNDOFF * u_norm;
    let s = summarize(&times, &errors, band_truncation, roundoff);
    let space = norm.to_string();
    let mut notes = Vec::new();
    if w.is_some() {
        notes.push("norms are of the windowed field, an upper bound for the norm restricted to M".into());
    }
    if !hypotheses.all_pass() {
        notes.push("hypotheses fail: run kept as a counterexample probe".into());
    }
    Ok(ConvergenceReport {
        experiment: experiment.into(),
        label: label(&hypotheses),
        mean: p.label().into(),
        symbol: sigma.label().into(),
        signal,
        norm_route: route_of(config, &norm),
        localized: w.is_some(),
        records: times
            .iter()
            .zip(&errors)
            .map(|(&t, &error)| ConvergenceRecord {
                t,
                error,
                space: space.clone(),
                pairing_error: None,
            })
            .collect(),
        space,
        slope: s.slope,
        slope_points: s.slope_points,
        floor: s.floor,
        band_truncation,
        roundoff,
        floor_validated: s.floor_validated,
        monotone: s.monotone,
        uniform_bound: bound,
        hypotheses,
        notes,
    })
}

/// `‖p(tA)f - f‖` in `L_p^{-α}` for the configured distribution, with the
/// pairing against the bump signal as a probe.
pub fn run_convergence_distribution(config: &ExperimentConfig) -> HarnessResult<ConvergenceReport> {
    config.validate()?;
    let f = config.resolved_distribution()?;
    let p = config.mean()?;
    let sigma = config.symbol()?;
    let hypotheses = assemble_hypothesis_report(config.theorem, &config.hypothesis_parameters()?, &p)?;
    let window = window_for(config)?;
    let w = window.as_ref();
    let times = config.schedule.times();
    let probe = make_signal(&Signal::Bump, config.grid)?;
    let sp = &config.space;
    let points = distribution_convergence(&p, &times, &sigma, &f, sp.alpha, sp.p, &config.grid, w, &probe)?;
    let norm = config.distribution_norm();
    let g = realize(&f, &config.grid)?;
    let g_norm = measure(&g, &norm, w)?;
    let band_truncation = measure(&outer_half(&g), &norm, w)?;
    let roundoff = ROUNDOFF * g_norm;
    let errors: Vec<f64> = points.iter().map(|q| q.error).collect();
    let s = summarize(&times, &errors, band_truncation, roundoff);
    let mut bound: f64 = 0.0;
    if g_norm > 0.0 {
        for &t in &times {
            let plan = MultiplierPlan::spectral_mean(config.grid, &p, t, &sigma)?;
            bound = bound.max(measure(&plan.apply(&g)?, &norm, w)? / g_norm);
        }
    }
    let space = norm.to_string();
    let mut notes = vec![
        "errors use the band-limited realization of the distribution on the grid".to_string(),
        "pairing_error probes weak convergence against the bump signal".to_string(),
    ];
    if w.is_some() {
        notes.push("norms are of the windowed field, an upper bound for the norm restricted to M".into());
    }
    Ok(ConvergenceReport {
        experiment: "converge_distribution".into(),
        label: label(&hypotheses),
        mean: p.label().into(),
        symbol: sigma.label().into(),
        signal: serde_json::to_string(&f).expect("distribution serializes"),
        norm_route: "spectral".into(),
        localized: w.is_some(),
        records: points
            .iter()
            .map(|q| ConvergenceRecord {
                t: q.t,
                error: q.error,
                space: space.clone(),
                pairing_error: Some(q.pairing_error),
            })
            .collect(),
        space,
        slope: s.slope,
        slope_points: s.slope_points,
        floor: s.floor,
        band_truncation,
        roundoff,
        floor_validated: s.floor_validated,
        monotone: s.monotone,
        uniform_bound: bound,
        hypotheses,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSummary {
    /// `numerator/denominator` norm names.
    pub pair: String,
    pub min: f64,
    pub max: f64,
    /// `max / min` on the base grid.
    pub bracket: f64,
    /// `max / min` on the doubled grid.
    pub fine_bracket: f64,
    /// `fine_bracket / bracket`.
    pub stability: f64,
    /// Largest per-function `|ratio(2n)/ratio(n) - 1|`.
    pub drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub corpus: usize,
    pub points: [usize; 2],
    pub params: crate::config::EquivalenceParams,
    pub ratios: Vec<RatioSummary>,
    /// Largest `|‖f‖_{L_2^1} / (‖f‖² + ‖∇f‖²)^{1/2} - 1|` over the corpus.
    pub liouville_sobolev_deviation: f64,
}

fn norms_for(f: &GridFunction, eq: &crate::config::EquivalenceParams) -> HarnessResult<Vec<(&'static str, f64)>> {
    let bp = BesovParams::new(eq.s, eq.p, eq.q)?;
    let part = build_partition(*f.spec())?;
    let mut out = vec![
        ("besov_lp", besov_norm_lp(f, &bp, &part)?),
        ("besov_modulus", besov_norm_modulus(f, &bp, eq.m, 0)?),
    ];
    if eq.q.is_finite() && eq.p.is_finite() {
        out.push(("classical", classical_besov_norm(f, &bp)?));
    } else if eq.q.is_infinite() {
        out.push(("nikolskii", nikolskii_norm(f, eq.s, eq.p)?));
    }
    if f.spec().dim() == 1 && eq.s.fract() != 0.0 && eq.p.is_finite() && eq.p == eq.q {
        out.push(("slobodetskii", slobodetskii_norm(f, eq.s, eq.p)?));
    }
    Ok(out)
}

/// Ratios between the Besov norm routes over a random band-limited corpus,
/// on the configured grid and on its refinement.
pub fn run_equivalence(config: &ExperimentConfig) -> HarnessResult<EquivalenceReport> {
    let eq = &config.equivalence;
    if eq.corpus < 20 {
        return Err(HarnessError::config(format!("corpus size must be >= 20, got {}", eq.corpus)));
    }
    let base = config.grid;
    let fine = base.with_points(2 * base.points_per_axis())?;
    let signals: Vec<Signal> = (0..eq.corpus as u64)
        .map(|k| Signal::RandomBandlimited {
            seed: eq.seed + k,
            band: eq.band,
        })
        .collect();
    let table = |spec: GridSpec| -> HarnessResult<Vec<Vec<(&'static str, f64)>>> {
        signals.iter().map(|s| norms_for(&make_signal(s, spec)?, eq)).collect()
    };
    let coarse = table(base)?;
    let refined = table(fine)?;
    let names: Vec<&str> = coarse[0].iter().map(|(n, _)| *n).collect();
    let mut ratios = Vec::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            let r = |rows: &Vec<Vec<(&str, f64)>>| -> Vec<f64> { rows.iter().map(|row| row[i].1 / row[j].1).collect() };
            let a = r(&coarse);
            let b = r(&refined);
            let min = a.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = a.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let fmin = b.iter().cloned().fold(f64::INFINITY, f64::min);
            let fmax = b.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let drift = a.iter().zip(&b).map(|(x, y)| (y / x - 1.0).abs()).fold(0.0, f64::max);
            ratios.push(RatioSummary {
                pair: format!("{}/{}", names[i], names[j]),
                min,
                max,
                bracket: max / min,
                fine_bracket: fmax / fmin,
                stability: (fmax / fmin) / (max / min),
                drift,
            });
        }
    }
    let mut deviation: f64 = 0.0;
    for s in &signals {
        let f = make_signal(s, base)?;
        let a = liouville_norm(&f, 1.0, 2.0)?;
        let b = sobolev_quadratic_norm(&f, 1, 2.0)?;
        deviation = deviation.max((a / b - 1.0).abs());
    }
    Ok(EquivalenceReport {
        corpus: eq.corpus,
        points: [base.points_per_axis(), fine.points_per_axis()],
        params: eq.clone(),
        ratios,
        liouville_sobolev_deviation: deviation,
    })
}

pub fn run_conditions(config: &ExperimentConfig) -> HarnessResult<HypothesisReport> {
    let p = config.mean()?;
    Ok(assemble_hypothesis_report(config.theorem, &config.hypothesis_parameters()?, &p)?)
}

/// Space parameters for the theorem-1 desk configuration.
pub fn desk_space(target: specmeans::hypotheses::Target) -> SpaceParams {
    SpaceParams {
        target,
        alpha: 0.5,
        beta: 1.5,
        p: 2.0,
        q: 2.0,
        p0: Some(2.0),
        alpha0: Some(0.5),
        l: Some(1),
        ..SpaceParams::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use specmeans::hypotheses::Target;

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 0.5, 0.25, 0.125];
        let y: Vec<f64> = x.iter().map(|t: &f64| 3.0 * t.powf(1.5)).collect();
        assert!((log_log_slope(&x, &y).unwrap() - 1.5).abs() < 1e-12);
        assert!(log_log_slope(&x[..1], &y[..1]).is_none());
    }

    #[test]
    fn summary_ignores_floor_points() {
        let t = [1.0, 0.1, 0.01, 0.001, 1e-4];
        let e = [1.0, 0.1, 1e-12, 2e-12, 1e-12];
        let s = summarize(&t, &e, 1e-13, 1e-12);
        assert!(s.floor_validated);
        assert_eq!(s.slope_points, 2);
        assert!(s.monotone);
        let s = summarize(&t, &[1.0, 2.0, 0.5, 0.1, 0.01], 1e-13, 1e-12);
        assert!(!s.floor_validated && !s.monotone);
    }

    #[test]
    fn gaussian_bump_run() {
        let mut c = ExperimentConfig::default();
        c.space = desk_space(Target::Liouville);
        let r = run_convergence_function(&c).unwrap();
        assert_eq!(r.records.len(), 7);
        assert!(r.hypotheses.all_pass(), "{:?}", r.hypotheses.failed());
        assert!(r.monotone);
        assert!(!r.is_regression());
        assert!((r.slope.unwrap() - 1.0).abs() < 0.2, "{:?}", r.slope);
        assert!(r.uniform_bound <= 1.0 + 1e-12);
    }

    #[test]
    fn regression_needs_passing_hypotheses() {
        let mut c = ExperimentConfig::default();
        c.schedule.steps = 2;
        let mut r = run_convergence_function(&c).unwrap();
        assert!(r.hypotheses.all_pass() && !r.is_regression());
        r.monotone = false;
        assert!(r.is_regression());
        c.mean = "riesz:0".into();
        let mut r = run_convergence_function(&c).unwrap();
        r.monotone = false;
        assert!(!r.is_regression());
    }

    #[test]
    fn windowed_run_is_bounded_by_global() {
        let mut c = ExperimentConfig::default();
        c.schedule.steps = 2;
        let global = run_convergence_function(&c).unwrap();
        c.window_radius = Some(1.0);
        let local = run_convergence_function(&c).unwrap();
        assert!(local.localized);
        for (a, b) in local.records.iter().zip(&global.records) {
            assert!(a.error <= b.error * 1.5);
        }
    }

    #[test]
    fn equivalence_needs_corpus() {
        let mut c = ExperimentConfig::default();
        c.equivalence.corpus = 5;
        assert!(matches!(run_equivalence(&c), Err(HarnessError::Config(_))));
    }
}
