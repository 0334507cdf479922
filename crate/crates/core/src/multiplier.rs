//! Fourier multipliers on the frequency lattice: spectral means `p(tA)`,
//! Bessel potentials, spectral derivatives and mollification.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::grid::{forward_transform, inverse_transform, norm, GridFunction, GridSpec, SpectrumFunction};
use crate::means::MeanFunction;
use crate::smooth::bump;
use crate::spaces::{localized_norm, NormSpec};
use crate::symbols::HomogeneousSymbol;

/// One multiplier value per lattice frequency, in DFT order.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierPlan {
    spec: GridSpec,
    values: Vec<Complex64>,
    provenance: String,
}

#[derive(Serialize)]
struct PlanDump<'a> {
    provenance: &'a str,
    spec: &'a GridSpec,
    multiplier: Vec<[f64; 2]>,
}

impl MultiplierPlan {
    pub fn new(spec: GridSpec, values: Vec<Complex64>, provenance: impl Into<String>) -> Result<Self> {
        if values.len() != spec.len() {
            return invalid(format!("plan needs {} values, got {}", spec.len(), values.len()));
        }
        let provenance = provenance.into();
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite(format!("{provenance}: multiplier entry {i}")));
        }
        Ok(MultiplierPlan {
            spec,
            values,
            provenance,
        })
    }

    /// Plan from a function of the frequency vector `y`.
    pub fn from_fn(spec: GridSpec, provenance: impl Into<String>, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let dim = spec.dim();
        let values = (0..spec.len()).map(|i| f(&spec.frequency(i)[..dim])).collect();
        Self::new(spec, values, provenance)
    }

    pub fn from_real_fn(spec: GridSpec, provenance: impl Into<String>, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        Self::from_fn(spec, provenance, |y| Complex64::new(f(y), 0.0))
    }

    pub fn identity(spec: GridSpec) -> Self {
        MultiplierPlan {
            spec,
            values: vec![Complex64::new(1.0, 0.0); spec.len()],
            provenance: "identity".into(),
        }
    }

    /// `p(tσ(y))`; the zero mode takes `p(0)` since `σ(0) = 0`.
    pub fn spectral_mean(spec: GridSpec, p: &MeanFunction, t: f64, sigma: &HomogeneousSymbol) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return invalid(format!("t must be > 0, got {t}"));
        }
        Self::from_real_fn(spec, format!("mean p={} t={t} sigma={}", p.label(), sigma.label()), |y| {
            p.evaluate(t * sigma.evaluate(y))
        })
    }

    /// `(1 + |y|²)^{s/2}`.
    pub fn bessel(spec: GridSpec, s: f64) -> Result<Self> {
        if !s.is_finite() {
            return invalid(format!("Bessel order must be finite, got {s}"));
        }
        Self::from_real_fn(spec, format!("bessel s={s}"), |y| {
            (1.0 + y.iter().map(|v| v * v).sum::<f64>()).powf(0.5 * s)
        })
    }

    /// `(iy)^α`, the symbol of `D^α`. The Nyquist frequency keeps its
    /// literal value, so odd orders map real fields to complex ones when
    /// the Nyquist coefficient is nonzero.
    pub fn derivative(spec: GridSpec, alpha: &[u32]) -> Result<Self> {
        if alpha.len() > spec.dim() {
            return invalid(format!("multi-index {alpha:?} exceeds dimension {}", spec.dim()));
        }
        Self::from_fn(spec, format!("derivative alpha={alpha:?}"), |y| {
            alpha
                .iter()
                .zip(y)
                .fold(Complex64::new(1.0, 0.0), |acc, (&a, &v)| acc * Complex64::new(0.0, v).powi(a as i32))
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Pointwise product of two plans, i.e. operator composition.
    pub fn compose(&self, other: &MultiplierPlan) -> Result<MultiplierPlan> {
        self.spec.check_same(&other.spec)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Self::new(self.spec, values, format!("({}) * ({})", self.provenance, other.provenance))
    }

    pub fn apply_to_spectrum(&self, s: &SpectrumFunction) -> Result<SpectrumFunction> {
        self.spec.check_same(s.spec())?;
        let mut out = s.clone();
        out.coefficients_mut()
            .iter_mut()
            .zip(&self.values)
            .for_each(|(c, m)| *c *= m);
        Ok(out)
    }

    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        apply_multiplier(self, f)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dump = PlanDump {
            provenance: &self.provenance,
            spec: &self.spec,
            multiplier: self.values.iter().map(|v| [v.re, v.im]).collect(),
        };
        serde_json::to_value(dump).expect("plan is serializable")
    }
}

pub fn apply_multiplier(plan: &MultiplierPlan, f: &GridFunction) -> Result<GridFunction> {
    plan.spec.check_same(f.spec())?;
    let s = plan.apply_to_spectrum(&forward_transform(f))?;
    Ok(inverse_transform(&s))
}

pub fn spectral_mean(p: &MeanFunction, t: f64, sigma: &HomogeneousSymbol, f: &GridFunction) -> Result<GridFunction> {
    MultiplierPlan::spectral_mean(*f.spec(), p, t, sigma)?.apply(f)
}

pub fn bessel_order(s: f64, f: &GridFunction) -> Result<GridFunction> {
    MultiplierPlan::bessel(*f.spec(), s)?.apply(f)
}

pub fn spectral_derivative(alpha: &[u32], f: &GridFunction) -> Result<GridFunction> {
    if alpha.iter().all(|&a| a == 0) {
        return Ok(f.clone());
    }
    MultiplierPlan::derivative(*f.spec(), alpha)?.apply(f)
}

/// `exp(-1/(1-|x|²))` on the unit ball, normalized to unit discrete mass.
pub fn standard_bump(spec: GridSpec) -> Result<GridFunction> {
    if spec.period() <= 2.0 {
        return invalid(format!("unit bump does not fit in a cell of period {}", spec.period()));
    }
    let raw = GridFunction::from_real_fn(spec, |x| bump(norm(x)))?;
    let mass = raw.integral().re;
    if mass <= 0.0 {
        return invalid("grid too coarse to resolve the unit bump");
    }
    Ok(raw.scale(Complex64::new(1.0 / mass, 0.0)))
}

const MASS_TOL: f64 = 1e-8;

/// `u_h = u * h^{-N} φ(·/h)` through the convolution theorem: the
/// multiplier is `Σ_x φ(x) exp(-i h x·y) dV`, the transform of the rescaled
/// discrete bump. Requires `h <= L/8` so the smoothing stays well inside
/// the cell.
pub fn mollify(u: &GridFunction, h: f64, phi: &GridFunction) -> Result<GridFunction> {
    mollifier_plan(phi, h)?.apply(u)
}

pub fn mollifier_plan(phi: &GridFunction, h: f64) -> Result<MultiplierPlan> {
    let spec = *phi.spec();
    if !(h.is_finite() && h > 0.0) {
        return invalid(format!("mollification scale must be > 0, got {h}"));
    }
    if h > spec.period() / 8.0 {
        return invalid(format!(
            "mollification scale {h} exceeds the support margin L/8 = {}",
            spec.period() / 8.0
        ));
    }
    let dim = spec.dim();
    let mut support = Vec::new();
    for (i, v) in phi.values().iter().enumerate() {
        if v.im.abs() > 1e-12 || v.re < -1e-12 {
            return invalid("bump must be real and nonnegative");
        }
        if v.re == 0.0 {
            continue;
        }
        let x = phi.spec().point(i);
        if norm(&x[..dim]) > 1.0 {
            return invalid("bump support exceeds the unit ball");
        }
        support.push((spec.coords(i), v.re));
    }
    let mass = phi.integral().re;
    if (mass - 1.0).abs() > MASS_TOL {
        return invalid(format!("bump must have unit mass, got {mass}"));
    }

    // per-axis phase tables exp(-i h x_c y_k) indexed [coord][wavenumber index]
    let n = spec.points_per_axis();
    let grid_h = spec.spacing();
    let step = spec.frequency_step();
    let table: Vec<Complex64> = (0..n)
        .flat_map(|c| {
            let x = -0.5 * spec.period() + c as f64 * grid_h;
            (0..n).map(move |k| {
                let y = step * spec.wavenumber(k) as f64;
                Complex64::from_polar(1.0, -h * x * y)
            })
        })
        .collect();

    let dv = spec.cell_volume();
    let values = (0..spec.len())
        .map(|flat| {
            let kc = spec.coords(flat);
            let s: Complex64 = support
                .iter()
                .map(|(xc, w)| {
                    (0..dim).fold(Complex64::new(*w, 0.0), |acc, a| acc * table[xc[a] * n + kc[a]])
                })
                .sum();
            s * dv
        })
        .collect();
    MultiplierPlan::new(spec, values, format!("mollifier h={h}"))
}

/// `‖p(tA)u - u‖` in the given norm, optionally localized by a window.
pub fn converge_error(
    p: &MeanFunction,
    t: f64,
    sigma: &HomogeneousSymbol,
    u: &GridFunction,
    norm_spec: &NormSpec,
    window: Option<&GridFunction>,
) -> Result<f64> {
    let diff = spectral_mean(p, t, sigma, u)?.sub(u)?;
    match window {
        Some(w) => localized_norm(&diff, w, norm_spec),
        None => norm_spec.evaluate(&diff),
    }
}
