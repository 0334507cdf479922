//! Lattice shifts, sampled directions and multi-indices shared by the
//! difference-based norms.

use std::collections::HashSet;
use std::f64::consts::PI;

use crate::grid::{norm, GridSpec};
use crate::symbols::fibonacci_sphere;

/// Directions sampled per half-space for `N >= 2`.
pub const DIRECTIONS: usize = 64;

/// Unit vectors covering a closed half-space (`±ω` give equal difference
/// norms on the torus). `N = 1` yields the single direction `+1`.
pub fn half_space_directions(dim: usize) -> Vec<Vec<f64>> {
    match dim {
        1 => vec![vec![1.0]],
        2 => (0..DIRECTIONS)
            .map(|i| {
                let a = PI * i as f64 / DIRECTIONS as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        _ => fibonacci_sphere(DIRECTIONS, true),
    }
}

/// Area of the unit sphere `S^{N-1}`; `2` for `N = 1`.
pub fn sphere_area(dim: usize) -> f64 {
    match dim {
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeShift {
    /// Shift in grid steps per axis.
    pub steps: Vec<i64>,
    /// Physical length `|y|`.
    pub radius: f64,
}

/// Nonzero lattice shifts with `|y| <= max_radius`, sorted by length.
///
/// `N = 1`: every positive multiple of the spacing. `N >= 2`: each sampled
/// direction scaled by the first eight multiples of the spacing and then a
/// logarithmic sequence (24 per decade), rounded to lattice vectors and
/// deduplicated.
pub fn lattice_shifts(spec: &GridSpec, max_radius: f64) -> Vec<LatticeShift> {
    let h = spec.spacing();
    let dim = spec.dim();
    let limit = (spec.points_per_axis() / 2) as i64;
    let mut out = Vec::new();
    if dim == 1 {
        for j in 1..=limit {
            let r = j as f64 * h;
            if r <= max_radius * (1.0 + 1e-12) {
                out.push(LatticeShift { steps: vec![j], radius: r });
            }
        }
        return out;
    }
    let mut radii: Vec<f64> = (1..=8).map(|j| j as f64 * h).collect();
    let mut r = 8.0 * h;
    loop {
        r *= 10f64.powf(1.0 / 24.0);
        if r > max_radius {
            break;
        }
        radii.push(r);
    }
    let mut seen = HashSet::new();
    for dir in half_space_directions(dim) {
        for &r in &radii {
            let steps: Vec<i64> = dir.iter().map(|c| (c * r / h).round() as i64).collect();
            if steps.iter().all(|&s| s == 0) || steps.iter().any(|s| s.abs() > limit) {
                continue;
            }
            let y: Vec<f64> = steps.iter().map(|&s| s as f64 * h).collect();
            let radius = norm(&y);
            if radius > max_radius * (1.0 + 1e-12) {
                continue;
            }
            if seen.insert(steps.clone()) {
                out.push(LatticeShift { steps, radius });
            }
        }
    }
    out.sort_by(|a, b| a.radius.total_cmp(&b.radius));
    out
}

/// Logarithmic nodes from `lo` to `hi`, `per_decade` per factor ten,
/// including both ends.
pub fn log_nodes(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let count = ((hi / lo).log10() * per_decade as f64).ceil().max(1.0) as usize;
    (0..=count)
        .map(|i| lo * (hi / lo).powf(i as f64 / count as f64))
        .collect()
}

/// Trapezoid rule for `∫ g d(ln t)` on increasing nodes.
pub fn trapezoid_log(nodes: &[f64], values: &[f64]) -> f64 {
    nodes
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (v[0] + v[1]) * (t[1] / t[0]).ln())
        .sum()
}

/// All multi-indices `α ∈ N^dim` with `|α| = order`.
pub fn multi_indices(dim: usize, order: u32) -> Vec<Vec<u32>> {
    if dim == 1 {
        return vec![vec![order]];
    }
    let mut out = Vec::new();
    for first in (0..=order).rev() {
        for mut rest in multi_indices(dim - 1, order - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
