//! Test signals on the period cell. Every signal vanishes (to roundoff for
//! the Gaussian-windowed one) outside `|x| <= 3L/8`, leaving an `L/8`
//! margin to the cell boundary.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use specmeans::smooth::{bump, smooth_step};
use specmeans::{Error, GridFunction, GridSpec, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Signal {
    /// `exp(-1/(1-|x/r|²))` with `r = 5L/16`.
    Bump,
    /// `min(1, 2(1 - |x|/r))₊` with `r = L/4`: Lipschitz, not C¹.
    TruncatedCone,
    /// Random trigonometric polynomial with `band` modes of step `8π/L`
    /// under a Gaussian window of width `L/20`.
    RandomBandlimited { seed: u64, band: usize },
    /// `Σ_{k<=n/4} k^{-γ} cos(2πk x₁/L)` times a smooth compact window;
    /// the amplitude decays like `|ξ|^{-γ}`.
    Fractional { gamma: f64 },
}

/// Fraction of the period left free at each side of the cell.
pub const SUPPORT_MARGIN: f64 = 1.0 / 8.0;

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signal::Bump => f.write_str("bump"),
            Signal::TruncatedCone => f.write_str("truncated_cone"),
            Signal::RandomBandlimited { seed, band } => write!(f, "random_bandlimited:{seed}:{band}"),
            Signal::Fractional { gamma } => write!(f, "fractional:{gamma}"),
        }
    }
}

impl FromStr for Signal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("unknown signal {s:?}"));
        Ok(match parts.as_slice() {
            ["bump"] => Signal::Bump,
            ["truncated_cone"] => Signal::TruncatedCone,
            ["random_bandlimited"] => Signal::RandomBandlimited { seed: 0, band: 8 },
            ["random_bandlimited", seed] => Signal::RandomBandlimited {
                seed: seed.parse().map_err(|_| bad())?,
                band: 8,
            },
            ["random_bandlimited", seed, band] => Signal::RandomBandlimited {
                seed: seed.parse().map_err(|_| bad())?,
                band: band.parse().map_err(|_| bad())?,
            },
            ["fractional", g] => Signal::Fractional {
                gamma: g.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        })
    }
}

impl TryFrom<String> for Signal {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Signal> for String {
    fn from(s: Signal) -> String {
        s.to_string()
    }
}

fn radius(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Smooth window equal to one on `|x| <= inner` and zero beyond `outer`.
pub fn smooth_window(spec: GridSpec, inner: f64, outer: f64) -> Result<GridFunction> {
    if !(inner > 0.0 && outer > inner) {
        return Err(Error::InvalidParameter(format!(
            "window needs 0 < inner < outer, got {inner}, {outer}"
        )));
    }
    GridFunction::from_real_fn(spec, |x| smooth_step(1.0 + (radius(x) - inner) / (outer - inner)))
}

pub fn make_signal(signal: &Signal, spec: GridSpec) -> Result<GridFunction> {
    let l = spec.period();
    match *signal {
        Signal::Bump => {
            let r = 5.0 * l / 16.0;
            GridFunction::from_real_fn(spec, |x| bump(radius(x) / r))
        }
        Signal::TruncatedCone => {
            let r = l / 4.0;
            GridFunction::from_real_fn(spec, |x| (2.0 * (1.0 - radius(x) / r)).clamp(0.0, 1.0))
        }
        Signal::RandomBandlimited { seed, band } => {
            if band == 0 {
                return Err(Error::InvalidParameter("band must be >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dim = spec.dim();
            let step = 8.0 * PI / l;
            let modes: Vec<(Vec<f64>, f64, f64)> = (1..=band)
                .map(|k| {
                    // direction on the sphere, then amplitude and phase
                    let mut dir: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let nrm = radius(&dir).max(1e-3);
                    dir.iter_mut().for_each(|d| *d *= step * k as f64 / nrm);
                    if dim == 1 {
                        dir[0] = step * k as f64;
                    }
                    (dir, rng.gen_range(-1.0..1.0), rng.gen_range(0.0..2.0 * PI))
                })
                .collect();
            let width = l / 20.0;
            GridFunction::from_real_fn(spec, |x| {
                let w = (-(radius(x) / width).powi(2)).exp();
                w * modes
                    .iter()
                    .map(|(d, a, ph)| a * (d.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + ph).cos())
                    .sum::<f64>()
            })
        }
        Signal::Fractional { gamma } => {
            if !(gamma.is_finite() && gamma > 0.0) {
                return Err(Error::InvalidParameter(format!("gamma must be > 0, got {gamma}")));
            }
            let top = spec.points_per_axis() / 4;
            let window = smooth_window(spec, l / 8.0, 3.0 * l / 8.0)?;
            let w = window.real_parts();
            let base = 2.0 * PI / l;
            let values: Vec<f64> = (0..spec.len())
                .map(|i| {
                    let x0 = spec.point(i)[0];
                    let s: f64 = (1..=top).map(|k| (k as f64).powf(-gamma) * (base * k as f64 * x0).cos()).sum();
                    w[i] * s
                })
                .collect();
            GridFunction::new(spec, values.into_iter().map(|v| v.into()).collect())
        }
    }
}
