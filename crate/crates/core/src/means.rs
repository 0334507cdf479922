//! Mean profiles `p(λ)` on `[0, ∞)` with `p(0) = 1`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::smooth::{smooth_step, smooth_step_derivative, JET_ORDER};

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum MeanKind {
    /// `(1 - λ)_+^s`
    Riesz { s: f64 },
    /// `exp(-λ)`
    Gaussian,
    /// `χ(2λ/τ)`: one on `[0, τ/2]`, zero on `[τ, ∞)`.
    SmoothCutoff { tau: f64 },
    /// `p ≡ 1`; the identity operator.
    Unit,
    /// `λ ↦ inner(t λ)`
    Rescaled { inner: Box<MeanFunction>, t: f64 },
    Custom { f: Profile },
}

/// A mean profile. Cheap to clone; all variants are immutable.
#[derive(Clone)]
pub struct MeanFunction {
    kind: MeanKind,
    label: String,
}

impl fmt::Debug for MeanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeanFunction").field("label", &self.label).finish()
    }
}

impl fmt::Display for MeanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

pub fn make_riesz_mean(s: f64) -> Result<MeanFunction> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidParameter(format!("Riesz order must be >= 0, got {s}")));
    }
    Ok(MeanFunction {
        kind: MeanKind::Riesz { s },
        label: format!("riesz:{s}"),
    })
}

pub fn make_gaussian_mean() -> MeanFunction {
    MeanFunction {
        kind: MeanKind::Gaussian,
        label: "gaussian".into(),
    }
}

pub fn make_smooth_cutoff_mean(tau: f64) -> Result<MeanFunction> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParameter(format!("cutoff tau must be > 0, got {tau}")));
    }
    Ok(MeanFunction {
        kind: MeanKind::SmoothCutoff { tau },
        label: format!("cutoff:{tau}"),
    })
}

fn falling_factorial(s: f64, j: usize) -> f64 {
    (0..j).map(|i| s - i as f64).product()
}

impl MeanFunction {
    pub fn unit() -> Self {
        MeanFunction {
            kind: MeanKind::Unit,
            label: "unit".into(),
        }
    }

    /// Arbitrary profile without closed-form derivatives.
    pub fn custom(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        MeanFunction {
            kind: MeanKind::Custom { f: Arc::new(f) },
            label: label.into(),
        }
    }

    /// `λ ↦ p(tλ)`.
    pub fn rescaled(&self, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter(format!("rescale factor must be > 0, got {t}")));
        }
        Ok(MeanFunction {
            kind: MeanKind::Rescaled {
                inner: Box::new(self.clone()),
                t,
            },
            label: format!("{}@{t}", self.label),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Riesz order `s` for Riesz means.
    pub fn riesz_order(&self) -> Option<f64> {
        match self.kind {
            MeanKind::Riesz { s } => Some(s),
            _ => None,
        }
    }

    pub fn evaluate(&self, lambda: f64) -> f64 {
        match &self.kind {
            MeanKind::Riesz { s } => {
                let z = lambda.abs();
                if z > 1.0 {
                    0.0
                } else if *s == 0.0 {
                    1.0
                } else {
                    (1.0 - z).powf(*s)
                }
            }
            MeanKind::Gaussian => (-lambda).exp(),
            MeanKind::SmoothCutoff { tau } => smooth_step(2.0 * lambda / tau),
            MeanKind::Unit => 1.0,
            MeanKind::Rescaled { inner, t } => inner.evaluate(t * lambda),
            MeanKind::Custom { f } => f(lambda),
        }
    }

    /// Closed-form `p^{(j)}(λ)` where the profile supplies one.
    ///
    /// Riesz means supply derivatives on `(0, 1)` for `j <= s`; outside that
    /// range callers fall back to finite differences.
    pub fn derivative(&self, j: usize, lambda: f64) -> Option<f64> {
        if j == 0 {
            return Some(self.evaluate(lambda));
        }
        match &self.kind {
            MeanKind::Riesz { s } => {
                if lambda > 0.0 && lambda < 1.0 && *s >= j as f64 {
                    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
                    Some(sign * falling_factorial(*s, j) * (1.0 - lambda).powf(s - j as f64))
                } else {
                    None
                }
            }
            MeanKind::Gaussian => {
                let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
                Some(sign * (-lambda).exp())
            }
            MeanKind::SmoothCutoff { tau } => {
                if j > JET_ORDER + 1 {
                    return None;
                }
                let scale = (2.0 / tau).powi(j as i32);
                Some(scale * smooth_step_derivative(j, 2.0 * lambda / tau))
            }
            MeanKind::Unit => Some(0.0),
            MeanKind::Rescaled { inner, t } => {
                inner.derivative(j, t * lambda).map(|d| t.powi(j as i32) * d)
            }
            MeanKind::Custom { .. } => None,
        }
    }

    /// Derivative from the closed form when available, otherwise from a
    /// fourth-order finite-difference stencil with step `step_scale·(1+λ)`.
    /// The flag reports whether finite differences were used.
    pub fn derivative_or_fd(&self, j: usize, lambda: f64, step_scale: f64) -> (f64, bool) {
        match self.derivative(j, lambda) {
            Some(v) => (v, false),
            None => (finite_difference(|x| self.evaluate(x), j, lambda, step_scale * (1.0 + lambda)), true),
        }
    }
}

/// `j`-th derivative of `f` at `x` from a stencil of `j + 4` nodes spaced
/// by `h`; central where possible, shifted right so no node falls below 0.
pub fn finite_difference(f: impl Fn(f64) -> f64, j: usize, x: f64, h: f64) -> f64 {
    if j == 0 {
        return f(x);
    }
    // central stencils need an odd node count: j + 3 or j + 4 for 4th order
    let count = if (j + 3) % 2 == 1 { j + 3 } else { j + 4 };
    let half = (count / 2) as f64;
    let mut offset = -half;
    if x + offset * h < 0.0 {
        offset = -(x / h).floor();
    }
    let nodes: Vec<f64> = (0..count).map(|i| (offset + i as f64) * h).collect();
    let w = fornberg_weights(0.0, &nodes, j);
    nodes.iter().zip(&w).map(|(dx, wi)| wi * f(x + dx)).sum()
}

/// Weights of the `m`-th derivative at `z` for the given nodes (Fornberg).
fn fornberg_weights(z: f64, nodes: &[f64], m: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[m]).collect()
}

impl FromStr for MeanFunction {
    type Err = Error;

    /// Accepts `gaussian`, `unit`, `riesz:<s>` and `cutoff:<τ>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |rest: &str| -> Result<f64> {
            rest.parse()
                .map_err(|_| Error::Parse(format!("bad number in mean {s:?}")))
        };
        match s {
            "gaussian" => Ok(make_gaussian_mean()),
            "unit" => Ok(MeanFunction::unit()),
            _ => {
                if let Some(rest) = s.strip_prefix("riesz:") {
                    make_riesz_mean(num(rest)?)
                } else if let Some(rest) = s.strip_prefix("cutoff:") {
                    make_smooth_cutoff_mean(num(rest)?)
                } else {
                    Err(Error::Parse(format!("unknown mean {s:?}")))
                }
            }
        }
    }
}
