//! JSON experiment configuration. Missing sections fall back to the
//! defaults below; command-line flags override individual fields.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use specmeans::hypotheses::{HypothesisParameters, Target, TheoremId};
use specmeans::{CompactDistribution, GridSpec, HomogeneousSymbol, MeanFunction, NormSpec};

use crate::error::{HarnessError, HarnessResult};
use crate::signals::{make_signal, Signal, SUPPORT_MARGIN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    #[default]
    ConvergeFunction,
    ConvergeDistribution,
    Equivalence,
    Conditions,
}

/// Geometric schedule `t_k = t0 · ratio^k`, `k = 0..=steps`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub t0: f64,
    pub ratio: f64,
    pub steps: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            t0: 0.1,
            ratio: 0.25,
            steps: 6,
        }
    }
}

impl Schedule {
    pub fn validate(&self) -> HarnessResult<()> {
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            return Err(HarnessError::config(format!("t0 must be > 0, got {}", self.t0)));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(HarnessError::config(format!("ratio must lie in (0, 1), got {}", self.ratio)));
        }
        if self.steps == 0 {
            return Err(HarnessError::config("steps must be >= 1"));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.t0 * self.ratio.powi(k as i32)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NormRoute {
    /// Dyadic Littlewood–Paley form.
    #[default]
    Lp,
    /// Modulus-of-continuity form.
    Modulus,
    /// Second differences of derivatives.
    Classical,
}

impl std::str::FromStr for NormRoute {
    type Err = HarnessError;
    fn from_str(s: &str) -> HarnessResult<Self> {
        match s {
            "lp" => Ok(NormRoute::Lp),
            "modulus" => Ok(NormRoute::Modulus),
            "classical" => Ok(NormRoute::Classical),
            _ => Err(HarnessError::config(format!("unknown norm route {s:?}"))),
        }
    }
}

impl NormRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormRoute::Lp => "lp",
            NormRoute::Modulus => "modulus",
            NormRoute::Classical => "classical",
        }
    }

    /// Besov norm of smoothness `s` by this route.
    pub fn besov(&self, s: f64, p: f64, q: f64, modulus_order: u32) -> NormSpec {
        match self {
            NormRoute::Lp => NormSpec::Besov { s, p, q },
            NormRoute::Modulus => NormSpec::BesovModulus {
                s,
                p,
                q,
                m: modulus_order,
                n1: 0,
            },
            NormRoute::Classical => NormSpec::Classical { s, p, q },
        }
    }
}

/// Space and hypothesis parameters. `p0`, `alpha0` and `l` default to the
/// values the selected condition set asks for when absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpaceParams {
    pub target: Target,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
    pub p0: Option<f64>,
    pub alpha0: Option<f64>,
    pub l: Option<usize>,
    pub tau: Option<f64>,
    pub route: NormRoute,
    /// Difference order for the modulus route.
    pub modulus_order: u32,
}

impl Default for SpaceParams {
    fn default() -> Self {
        SpaceParams {
            target: Target::Liouville,
            alpha: 0.5,
            beta: 1.5,
            p: 2.0,
            q: 2.0,
            p0: None,
            alpha0: None,
            l: None,
            tau: None,
            route: NormRoute::Lp,
            modulus_order: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EquivalenceParams {
    pub corpus: usize,
    pub seed: u64,
    pub band: usize,
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub m: u32,
}

impl Default for EquivalenceParams {
    fn default() -> Self {
        EquivalenceParams {
            corpus: 20,
            seed: 100,
            band: 8,
            s: 0.7,
            p: 2.0,
            q: 2.0,
            m: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

fn default_grid() -> GridSpec {
    GridSpec::new(1, 256, 2.0 * std::f64::consts::PI).expect("valid default grid")
}

fn default_symbol() -> String {
    "laplacian".into()
}

fn default_mean() -> String {
    "gaussian".into()
}

fn default_theorem() -> TheoremId {
    TheoremId::T1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub kind: ExperimentKind,
    #[serde(default = "default_grid")]
    pub grid: GridSpec,
    #[serde(default = "default_symbol")]
    pub symbol: String,
    #[serde(default = "default_mean")]
    pub mean: String,
    #[serde(default = "default_theorem")]
    pub theorem: TheoremId,
    #[serde(default)]
    pub space: SpaceParams,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default = "default_signal")]
    pub signal: Signal,
    /// Radius of the set `M`; the window is one on `|x| <= R` and falls to
    /// zero over a further `L/8`. `None` measures over the whole cell.
    #[serde(default)]
    pub window_radius: Option<f64>,
    #[serde(default)]
    pub distribution: Option<CompactDistribution>,
    #[serde(default)]
    pub equivalence: EquivalenceParams,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_signal() -> Signal {
    Signal::Bump
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults deserialize")
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> HarnessResult<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::config(format!("config: {e}")))
    }

    pub fn symbol(&self) -> HarnessResult<HomogeneousSymbol> {
        Ok(self.symbol.parse()?)
    }

    pub fn mean(&self) -> HarnessResult<MeanFunction> {
        Ok(self.mean.parse()?)
    }

    pub fn validate(&self) -> HarnessResult<()> {
        self.symbol()?;
        self.mean()?;
        if matches!(self.kind, ExperimentKind::ConvergeFunction | ExperimentKind::ConvergeDistribution) {
            self.schedule.validate()?;
        }
        if let Some(r) = self.window_radius {
            let limit = (0.5 - SUPPORT_MARGIN) * self.grid.period();
            if !(r > 0.0 && r < limit) {
                return Err(HarnessError::config(format!(
                    "window radius must lie in (0, {limit}) so the window fits the cell, got {r}"
                )));
            }
        }
        let sp = &self.space;
        for (name, v) in [("p", sp.p), ("q", sp.q)] {
            if v.is_nan() || v < 1.0 {
                return Err(HarnessError::config(format!("{name} must lie in [1, inf], got {v}")));
            }
        }
        if !(sp.alpha.is_finite() && sp.beta.is_finite()) {
            return Err(HarnessError::config("alpha and beta must be finite"));
        }
        if self.kind == ExperimentKind::ConvergeDistribution {
            let d = self
                .distribution
                .as_ref()
                .ok_or_else(|| HarnessError::config("converge_distribution needs a distribution"))?;
            if sp.alpha < 0.0 {
                return Err(HarnessError::config("distribution order alpha must be >= 0"));
            }
            if let Some(r) = &d.density_ref {
                r.parse::<Signal>()?;
            }
        }
        Ok(())
    }

    /// The error norm for function runs: Liouville of order `alpha`, or
    /// Besov `(alpha, p, q)` by the configured route.
    pub fn function_norm(&self) -> NormSpec {
        let sp = &self.space;
        match sp.target {
            Target::Besov => sp.route.besov(sp.alpha, sp.p, sp.q, sp.modulus_order),
            _ => NormSpec::Liouville { s: sp.alpha, p: sp.p },
        }
    }

    /// `L_p^{-alpha}` for distribution runs.
    pub fn distribution_norm(&self) -> NormSpec {
        NormSpec::Liouville {
            s: -self.space.alpha,
            p: self.space.p,
        }
    }

    /// The distribution with its density resolved from `density_ref`.
    pub fn resolved_distribution(&self) -> HarnessResult<CompactDistribution> {
        let mut d = self
            .distribution
            .clone()
            .ok_or_else(|| HarnessError::config("no distribution configured"))?;
        if let Some(r) = d.density_ref.clone() {
            let g = make_signal(&r.parse()?, self.grid)?;
            d = d.with_density(g);
        }
        d.validate(&self.grid)?;
        Ok(d)
    }

    pub fn hypothesis_parameters(&self) -> HarnessResult<HypothesisParameters> {
        let sp = &self.space;
        let dim = self.grid.dim();
        let n = dim as f64;
        let p0 = sp.p0.unwrap_or(sp.p);
        let alpha0 = sp.alpha0.unwrap_or(n / p0);
        // smallest integer above N(1/2 - 1/p0), at least 1
        let l = sp.l.unwrap_or_else(|| {
            let bound = n * (0.5 - 1.0 / p0);
            (bound.floor() + 1.0).max(1.0) as usize
        });
        Ok(HypothesisParameters {
            dim,
            m: self.symbol()?.degree(),
            p: sp.p,
            p0,
            alpha: sp.alpha,
            alpha0,
            epsilon: None,
            beta: sp.beta,
            l,
            q: (sp.target == Target::Besov).then_some(sp.q),
            tau: sp.tau,
            target: sp.target,
        })
    }
}
