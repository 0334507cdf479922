//! Norms of Liouville, Besov (dyadic and difference forms), Sobolev,
//! Nikolskii and Slobodetskii spaces on the sampled period cell.
//!
//! Restriction norms on a compact set are replaced by the norm of the
//! field times a smooth window that equals one on the set; this bounds the
//! restriction norm from above.

mod classical;
mod lattice;
mod norm_spec;
mod partition;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{forward_transform, lp_norm, lp_norm_of_values, GridFunction};
use crate::multiplier::{bessel_order, spectral_derivative};

pub use classical::{
    classical_besov_norm, classical_besov_traced, nikolskii_norm, slobodetskii_norm, sobolev_norm, sobolev_quadratic_norm,
    ClassicalTrace,
};
pub use lattice::{lattice_shifts, log_nodes, multi_indices, LatticeShift, DIRECTIONS};
pub use norm_spec::NormSpec;
pub use partition::{annulus_profile, build_partition, dyadic_ceiling, LittlewoodPaleyPartition};

/// Nodes per decade for the `t` and `h` quadratures.
pub const NODES_PER_DECADE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovParams {
    pub s: f64,
    pub p: f64,
    pub q: f64,
}

impl BesovParams {
    pub fn new(s: f64, p: f64, q: f64) -> Result<Self> {
        let bp = BesovParams { s, p, q };
        bp.validate()?;
        Ok(bp)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.s.is_finite() {
            return invalid(format!("smoothness must be finite, got {}", self.s));
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if v.is_nan() || v < 1.0 {
                return invalid(format!("{name} must lie in [1, inf], got {v}"));
            }
        }
        Ok(())
    }
}

/// `‖(1+|ξ|²)^{s/2} Ff‖` realized as `‖F^{-1}[(1+|ξ|²)^{s/2} Ff]‖_p`.
pub fn liouville_norm(f: &GridFunction, s: f64, p: f64) -> Result<f64> {
    lp_norm(&bessel_order(s, f)?, p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShellTrace {
    pub k: usize,
    pub norm: f64,
    /// `2^{sk}‖φ_k * f‖_p`.
    pub weighted: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BesovTrace {
    pub value: f64,
    pub base_norm: f64,
    pub shells: Vec<ShellTrace>,
}

/// Combine a sequence in `l_q`; `q = ∞` takes the maximum.
fn lq_sum(values: impl Iterator<Item = f64>, q: f64) -> f64 {
    if q.is_infinite() {
        values.fold(0.0, f64::max)
    } else {
        values.map(|v| v.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// `‖ψ*f‖_p + (Σ_k (2^{sk}‖φ_k*f‖_p)^q)^{1/q}`.
pub fn besov_norm_lp(f: &GridFunction, params: &BesovParams, partition: &LittlewoodPaleyPartition) -> Result<f64> {
    besov_norm_lp_traced(f, params, partition).map(|t| t.value)
}

pub fn besov_norm_lp_traced(
    f: &GridFunction,
    params: &BesovParams,
    partition: &LittlewoodPaleyPartition,
) -> Result<BesovTrace> {
    params.validate()?;
    f.spec().check_same(partition.spec())?;
    let spectrum = forward_transform(f);
    let base_norm = lp_norm(&partition.base_component(&spectrum)?, params.p)?;
    let mut shells = Vec::with_capacity(partition.k_max());
    for k in 1..=partition.k_max() {
        let norm = lp_norm(&partition.shell_component(&spectrum, k)?, params.p)?;
        shells.push(ShellTrace {
            k,
            norm,
            weighted: 2f64.powf(params.s * k as f64) * norm,
        });
    }
    let value = base_norm + lq_sum(shells.iter().map(|s| s.weighted), params.q);
    Ok(BesovTrace {
        value,
        base_norm,
        shells,
    })
}

fn binomial(m: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn difference_values(f: &GridFunction, steps: &[i64], m: u32) -> Vec<Complex64> {
    let spec = f.spec();
    let vals = f.values();
    let mut out = vec![Complex64::new(0.0, 0.0); spec.len()];
    for k in 0..=m {
        let c = binomial(m, k) * if k % 2 == 0 { 1.0 } else { -1.0 };
        let shift: Vec<i64> = steps.iter().map(|s| s * k as i64).collect();
        for (i, o) in out.iter_mut().enumerate() {
            *o += c * vals[spec.shifted_index(i, &shift)];
        }
    }
    out
}

/// `Δ_y^m f(x) = Σ_{k=0}^m C(m,k)(-1)^k f(x + k y)` for a shift of whole
/// grid steps (periodic).
pub fn difference(f: &GridFunction, steps: &[i64], m: u32) -> Result<GridFunction> {
    if m == 0 {
        return invalid("difference order must be >= 1");
    }
    if steps.len() != f.spec().dim() {
        return invalid(format!("shift {steps:?} does not match dimension {}", f.spec().dim()));
    }
    GridFunction::new(*f.spec(), difference_values(f, steps, m))
}

/// [`difference`] for a physical shift, which must be a whole number of
/// grid steps per axis.
pub fn difference_at(f: &GridFunction, y: &[f64], m: u32) -> Result<GridFunction> {
    let h = f.spec().spacing();
    let steps = y
        .iter()
        .map(|&v| {
            let s = v / h;
            if (s - s.round()).abs() > 1e-9 * s.abs().max(1.0) {
                Err(Error::InvalidParameter(format!(
                    "shift {v} is not a multiple of the spacing {h}"
                )))
            } else {
                Ok(s.round() as i64)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    difference(f, &steps, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModulusValue {
    pub value: f64,
    /// `t` did not exceed the grid spacing, so no shift was admissible.
    pub below_spacing: bool,
}

/// `ω(t) = sup_{|y| < t} ‖Δ_y^m f‖_p` for all `t` at once: the difference
/// norms over the admissible shifts sorted by length, with a running max.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusProfile {
    radii: Vec<f64>,
    running_max: Vec<f64>,
    spacing: f64,
}

impl ModulusProfile {
    pub fn new(f: &GridFunction, m: u32, p: f64, max_radius: f64) -> Result<Self> {
        if m == 0 {
            return invalid("difference order must be >= 1");
        }
        let spec = f.spec();
        let shifts = lattice_shifts(spec, max_radius);
        let mut radii = Vec::with_capacity(shifts.len());
        let mut running_max = Vec::with_capacity(shifts.len());
        let mut best = 0.0f64;
        for s in shifts {
            let v = lp_norm_of_values(&difference_values(f, &s.steps, m), spec.cell_volume(), p)?;
            best = best.max(v);
            radii.push(s.radius);
            running_max.push(best);
        }
        Ok(ModulusProfile {
            radii,
            running_max,
            spacing: spec.spacing(),
        })
    }

    pub fn at(&self, t: f64) -> ModulusValue {
        // shifts strictly shorter than t
        let count = self.radii.partition_point(|&r| r < t * (1.0 - 1e-12));
        ModulusValue {
            value: if count == 0 { 0.0 } else { self.running_max[count - 1] },
            below_spacing: t <= self.spacing,
        }
    }

    pub fn shift_count(&self) -> usize {
        self.radii.len()
    }
}

/// `ω_p^m(t, f)`. Exact enumeration in one dimension; a 64-direction
/// sample of lattice shifts otherwise.
pub fn modulus_of_continuity(f: &GridFunction, t: f64, m: u32, p: f64) -> Result<ModulusValue> {
    if !(t.is_finite() && t > 0.0) {
        return invalid(format!("t must be > 0, got {t}"));
    }
    let reach = t.min(0.5 * f.spec().period() * (f.spec().dim() as f64).sqrt());
    Ok(ModulusProfile::new(f, m, p, reach)?.at(t))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusTrace {
    pub value: f64,
    pub lp_norm: f64,
    pub t_nodes: Vec<f64>,
    /// `ω(t)` at each node, one row per axis `j`.
    pub moduli: Vec<Vec<f64>>,
    pub seminorms: Vec<f64>,
    pub sampled_directions: Option<usize>,
}

/// `‖f‖_p + Σ_j (∫ (t^{N1-s} ω_p^m(t, ∂_j^{N1} f))^q dt/t)^{1/q}` with the
/// `t` integral on `[h, L/2]` (trapezoid in `ln t`). Requires `s > 0`,
/// `0 <= N1 < s` and `m + N1 > s`.
pub fn besov_norm_modulus(f: &GridFunction, params: &BesovParams, m: u32, n1: u32) -> Result<f64> {
    besov_norm_modulus_traced(f, params, m, n1).map(|t| t.value)
}

pub fn besov_norm_modulus_traced(f: &GridFunction, params: &BesovParams, m: u32, n1: u32) -> Result<ModulusTrace> {
    params.validate()?;
    let s = params.s;
    if !(s > 0.0) {
        return invalid(format!("smoothness must be > 0, got {s}"));
    }
    if !((n1 as f64) < s && (m + n1) as f64 > s) {
        return invalid(format!("need 0 <= N1 < s < m + N1 (s={s}, m={m}, N1={n1})"));
    }
    let spec = f.spec();
    let dim = spec.dim();
    let lp = lp_norm(f, params.p)?;
    let t_nodes = log_nodes(spec.spacing(), 0.5 * spec.period(), NODES_PER_DECADE);
    let t_max = *t_nodes.last().expect("nonempty");
    let mut moduli = Vec::with_capacity(dim);
    let mut seminorms = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut alpha = vec![0u32; dim];
        alpha[j] = n1;
        let g = spectral_derivative(&alpha, f)?;
        let profile = ModulusProfile::new(&g, m, params.p, t_max)?;
        let om: Vec<f64> = t_nodes.iter().map(|&t| profile.at(t).value).collect();
        let weighted: Vec<f64> = t_nodes
            .iter()
            .zip(&om)
            .map(|(&t, &w)| t.powf(n1 as f64 - s) * w)
            .collect();
        let semi = if params.q.is_infinite() {
            weighted.iter().cloned().fold(0.0, f64::max)
        } else {
            let vals: Vec<f64> = weighted.iter().map(|w| w.powf(params.q)).collect();
            lattice::trapezoid_log(&t_nodes, &vals).powf(1.0 / params.q)
        };
        moduli.push(om);
        seminorms.push(semi);
    }
    Ok(ModulusTrace {
        value: lp + seminorms.iter().sum::<f64>(),
        lp_norm: lp,
        t_nodes,
        moduli,
        seminorms,
        sampled_directions: (dim > 1).then_some(DIRECTIONS),
    })
}

/// `norm_spec(window · f)`, an upper bound for the restriction norm on the
/// set where the window equals one.
pub fn localized_norm(f: &GridFunction, window: &GridFunction, norm_spec: &NormSpec) -> Result<f64> {
    f.spec().check_same(window.spec())?;
    if window
        .values()
        .iter()
        .any(|v| v.im.abs() > 1e-12 || v.re < -1e-12 || v.re > 1.0 + 1e-12)
    {
        return invalid("window values must lie in [0, 1]");
    }
    norm_spec.evaluate(&window.mul(f)?)
}
