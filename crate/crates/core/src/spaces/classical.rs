//! Difference-quotient norms: Sobolev, classical Besov, Nikolskii and
//! Slobodetskii.

use serde::Serialize;

use super::lattice::{half_space_directions, lattice_shifts, log_nodes, multi_indices, sphere_area, trapezoid_log};
use super::{difference_values, BesovParams, NODES_PER_DECADE};
use crate::error::{invalid, Result};
use crate::grid::{lp_norm, lp_norm_of_values, norm, GridFunction};
use crate::multiplier::spectral_derivative;

/// `Σ_{|α| <= m} ‖D^α f‖_p`.
pub fn sobolev_norm(f: &GridFunction, m: u32, p: f64) -> Result<f64> {
    let mut total = 0.0;
    for k in 0..=m {
        for alpha in multi_indices(f.spec().dim(), k) {
            total += lp_norm(&spectral_derivative(&alpha, f)?, p)?;
        }
    }
    Ok(total)
}

/// `(Σ_{|α| <= m} ‖D^α f‖_p²)^{1/2}`; at `p = 2, m = 1` this is the
/// Liouville norm of order one.
pub fn sobolev_quadratic_norm(f: &GridFunction, m: u32, p: f64) -> Result<f64> {
    let mut total = 0.0;
    for k in 0..=m {
        for alpha in multi_indices(f.spec().dim(), k) {
            total += lp_norm(&spectral_derivative(&alpha, f)?, p)?.powi(2);
        }
    }
    Ok(total.sqrt())
}

/// `s = s⁻ + s⁺` with integer `s⁻` and `0 < s⁺ <= 1`.
fn split_smoothness(s: f64) -> Result<(u32, f64)> {
    if !(s.is_finite() && s > 0.0) {
        return invalid(format!("smoothness must be > 0, got {s}"));
    }
    let lower = s.ceil() - 1.0;
    Ok((lower as u32, s - lower))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalTrace {
    pub value: f64,
    pub sobolev_part: f64,
    /// One seminorm per `|α| = s⁻`.
    pub seminorms: Vec<f64>,
    /// Quadrature nodes `|h|` along the first direction.
    pub nodes: Vec<f64>,
    pub directions: usize,
}

/// `‖f‖_{W_p^{s⁻}} + Σ_{|α|=s⁻} (∫_{|h|<=L/4} |h|^{-s⁺q} ‖Δ_h² D^α f‖_p^q dh/|h|^N)^{1/q}`.
///
/// In polar form `dh/|h|^N = d(ln r) dω`: each sampled direction gives a
/// log-grid trapezoid over lattice-rounded nodes in `[h, L/4]`, and the
/// direction average is scaled by `|S^{N-1}|`.
pub fn classical_besov_norm(f: &GridFunction, params: &BesovParams) -> Result<f64> {
    classical_besov_traced(f, params).map(|t| t.value)
}

pub fn classical_besov_traced(f: &GridFunction, params: &BesovParams) -> Result<ClassicalTrace> {
    params.validate()?;
    if params.p.is_infinite() || params.q.is_infinite() {
        return invalid("classical Besov norm needs finite p and q");
    }
    let (lower, frac) = split_smoothness(params.s)?;
    let spec = f.spec();
    let dim = spec.dim();
    let h = spec.spacing();
    let sobolev_part = sobolev_norm(f, lower, params.p)?;
    let radii = log_nodes(h, 0.25 * spec.period(), NODES_PER_DECADE);
    let dirs = half_space_directions(dim);

    // lattice-rounded nodes per direction, deduplicated, by increasing length
    let node_sets: Vec<Vec<(Vec<i64>, f64)>> = dirs
        .iter()
        .map(|d| {
            let mut set: Vec<(Vec<i64>, f64)> = Vec::new();
            for &r in &radii {
                let steps: Vec<i64> = d.iter().map(|c| (c * r / h).round() as i64).collect();
                if steps.iter().all(|&s| s == 0) || set.iter().any(|(s, _)| *s == steps) {
                    continue;
                }
                let len = norm(&steps.iter().map(|&s| s as f64 * h).collect::<Vec<_>>());
                set.push((steps, len));
            }
            set.sort_by(|a, b| a.1.total_cmp(&b.1));
            set
        })
        .collect();

    let mut seminorms = Vec::new();
    for alpha in multi_indices(dim, lower) {
        let g = spectral_derivative(&alpha, f)?;
        let mut acc = 0.0;
        for set in &node_sets {
            let nodes: Vec<f64> = set.iter().map(|(_, r)| *r).collect();
            let vals = set
                .iter()
                .map(|(steps, r)| {
                    let d = lp_norm_of_values(&difference_values(&g, steps, 2), spec.cell_volume(), params.p)?;
                    Ok(r.powf(-frac * params.q) * d.powf(params.q))
                })
                .collect::<Result<Vec<f64>>>()?;
            acc += trapezoid_log(&nodes, &vals);
        }
        let integral = sphere_area(dim) * acc / dirs.len() as f64;
        seminorms.push(integral.powf(1.0 / params.q));
    }
    Ok(ClassicalTrace {
        value: sobolev_part + seminorms.iter().sum::<f64>(),
        sobolev_part,
        seminorms,
        nodes: node_sets[0].iter().map(|(_, r)| *r).collect(),
        directions: dirs.len(),
    })
}

/// `‖f‖_{W_p^{s⁻}} + Σ_{|α|=s⁻} sup_{h≠0} |h|^{-s⁺} ‖Δ_h² D^α f‖_p`, the
/// supremum over lattice shifts with `|h| <= L/2`.
pub fn nikolskii_norm(f: &GridFunction, s: f64, p: f64) -> Result<f64> {
    let (lower, frac) = split_smoothness(s)?;
    let spec = f.spec();
    let shifts = lattice_shifts(spec, 0.5 * spec.period());
    let mut total = sobolev_norm(f, lower, p)?;
    for alpha in multi_indices(spec.dim(), lower) {
        let g = spectral_derivative(&alpha, f)?;
        let mut sup = 0.0f64;
        for sh in &shifts {
            let d = lp_norm_of_values(&difference_values(&g, &sh.steps, 2), spec.cell_volume(), p)?;
            sup = sup.max(sh.radius.powf(-frac) * d);
        }
        total += sup;
    }
    Ok(total)
}

/// `‖f‖_{W_p^{[s]}} + (∫∫ |D^{[s]}f(x) - D^{[s]}f(y)|^p / |x-y|^{1+{s}p} dx dy)^{1/p}`
/// in one dimension, for non-integer `s > 0`.
///
/// The field vanishes outside the cell, so the integral over `R × R` is the
/// double sum over distinct cell pairs plus, for each cell, the exact
/// integral of `|g(x)|^p |x-y|^{-1-{s}p}` over `y` outside the cell
/// (counted twice for the two orderings). Diagonal cells are excluded.
pub fn slobodetskii_norm(f: &GridFunction, s: f64, p: f64) -> Result<f64> {
    let spec = f.spec();
    if spec.dim() != 1 {
        return invalid("Slobodetskii norm is implemented for N = 1 only");
    }
    if !(s.is_finite() && s > 0.0) || s.fract() == 0.0 {
        return invalid(format!("Slobodetskii norm needs non-integer s > 0, got {s}"));
    }
    if !(p.is_finite() && p >= 1.0) {
        return invalid(format!("Slobodetskii norm needs finite p >= 1, got {p}"));
    }
    let whole = s.floor() as u32;
    let frac = s - s.floor();
    let sp = frac * p;
    let g = spectral_derivative(&[whole], f)?;
    let vals = g.values();
    let h = spec.spacing();
    let n = vals.len();
    let mut inner = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = (j - i) as f64 * h;
            inner += 2.0 * (vals[i] - vals[j]).norm().powf(p) / dist.powf(1.0 + sp);
        }
    }
    inner *= h * h;
    // cells span [-L/2 - h/2, L/2 - h/2)
    let left = -0.5 * spec.period() - 0.5 * h;
    let right = 0.5 * spec.period() - 0.5 * h;
    let mut exterior = 0.0;
    for (i, v) in vals.iter().enumerate() {
        let x = spec.point(i)[0];
        let tail = ((x - left).powf(-sp) + (right - x).powf(-sp)) / sp;
        exterior += 2.0 * v.norm().powf(p) * tail;
    }
    exterior *= h;
    Ok(sobolev_norm(f, whole, p)? + (inner + exterior).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn spec1(n: usize) -> GridSpec {
        GridSpec::new(1, n, 2.0 * PI).unwrap()
    }

    #[test]
    fn split_convention() {
        assert_eq!(split_smoothness(0.5).unwrap(), (0, 0.5));
        assert_eq!(split_smoothness(1.0).unwrap(), (0, 1.0));
        assert_eq!(split_smoothness(2.0).unwrap(), (1, 1.0));
        let (l, f) = split_smoothness(2.3).unwrap();
        assert_eq!(l, 2);
        assert_relative_eq!(f, 0.3, epsilon = 1e-15);
        assert!(split_smoothness(0.0).is_err());
    }

    #[test]
    fn sobolev_zero_is_lp() {
        let spec = GridSpec::new(2, 16, 2.0 * PI).unwrap();
        let f = GridFunction::from_real_fn(spec, |x| (-(x[0] * x[0] + x[1] * x[1])).exp()).unwrap();
        assert_eq!(sobolev_norm(&f, 0, 3.0).unwrap(), lp_norm(&f, 3.0).unwrap());
    }

    #[test]
    fn constants_reduce_to_lp() {
        let spec = spec1(64);
        let c = GridFunction::constant(spec, Complex64::new(0.7, 0.0));
        let l2 = lp_norm(&c, 2.0).unwrap();
        let bp = BesovParams::new(0.5, 2.0, 2.0).unwrap();
        assert_relative_eq!(classical_besov_norm(&c, &bp).unwrap(), l2, max_relative = 1e-12);
        assert_relative_eq!(nikolskii_norm(&c, 0.5, 2.0).unwrap(), l2, max_relative = 1e-12);
    }

    #[test]
    fn classical_seminorm_of_exponential_matches_scalar_integral() {
        let spec = spec1(256);
        let e = GridFunction::exponential(spec, &[1]);
        let q = 2.0;
        let bp = BesovParams::new(0.5, 2.0, q).unwrap();
        let tr = classical_besov_traced(&e, &bp).unwrap();
        let l2 = lp_norm(&e, 2.0).unwrap();
        // 2 ∫_0^{π/2} h^{-q/2} |1 - e^{ih}|^{2q} dh / h
        let integrand = |t: f64| {
            if t == 0.0 {
                0.0
            } else {
                t.powf(-0.5 * q) * (2.0 - 2.0 * t.cos()).powf(q) / t
            }
        };
        let oracle = 2.0 * quadrature::double_exponential::integrate(integrand, 0.0, 0.5 * PI, 1e-14).integral;
        let expect = oracle.powf(1.0 / q) * l2;
        assert_relative_eq!(tr.seminorms[0], expect, max_relative = 1e-3);
    }

    #[test]
    fn classical_is_translation_invariant() {
        let spec = spec1(64);
        let f = GridFunction::from_real_fn(spec, |x| (-(2.0 * x[0]).powi(2)).exp() * (1.0 + x[0])).unwrap();
        let bp = BesovParams::new(1.3, 2.0, 2.0).unwrap();
        let a = classical_besov_norm(&f, &bp).unwrap();
        let b = classical_besov_norm(&f.shifted(&[7]), &bp).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn slobodetskii_rejections() {
        let s2 = GridSpec::new(2, 16, 2.0 * PI).unwrap();
        let f2 = GridFunction::zeros(s2);
        assert!(slobodetskii_norm(&f2, 0.5, 2.0).is_err());
        let f1 = GridFunction::zeros(spec1(16));
        assert!(slobodetskii_norm(&f1, 1.0, 2.0).is_err());
        assert_eq!(slobodetskii_norm(&f1, 0.5, 2.0).unwrap(), 0.0);
    }
}
