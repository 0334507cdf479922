//! Dyadic Littlewood–Paley partition of the frequency lattice.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::grid::{forward_transform, inverse_transform, GridFunction, GridSpec, SpectrumFunction};
use crate::smooth::smooth_step;

/// Annulus profile `φ(r) = χ(r) - χ(2r)`, supported in `[1/2, 2]`.
pub fn annulus_profile(r: f64) -> f64 {
    smooth_step(r) - smooth_step(2.0 * r)
}

/// Shell multipliers `φ(2^{-k}ξ)` for `k = 1..=k_max` and the base
/// multiplier `ψ = 1 - Σ_k φ(2^{-k}ξ)`.
#[derive(Clone, Debug)]
pub struct LittlewoodPaleyPartition {
    spec: GridSpec,
    k_max: usize,
    shells: Vec<Vec<f64>>,
    base: Vec<f64>,
}

/// `k_max = ⌈log₂ max|ξ|⌉ + 1`, at least 1.
pub fn dyadic_ceiling(spec: &GridSpec) -> usize {
    let k = spec.max_frequency().log2().ceil() + 1.0;
    if k < 1.0 {
        1
    } else {
        k as usize
    }
}

pub fn build_partition(spec: GridSpec) -> Result<LittlewoodPaleyPartition> {
    if spec.points_per_axis() < 8 {
        return invalid(format!(
            "partition needs n >= 8, got {}",
            spec.points_per_axis()
        ));
    }
    let k_max = dyadic_ceiling(&spec);
    // χ(2^{-j}|ξ|) for j = 0..=k_max, keyed by the integer |k|²
    let step = spec.frequency_step();
    let mut cache: HashMap<i64, Vec<f64>> = HashMap::new();
    let mut shells = vec![vec![0.0; spec.len()]; k_max];
    let mut base = vec![0.0; spec.len()];
    for i in 0..spec.len() {
        let k = spec.wavenumbers(i);
        let key: i64 = k.iter().map(|v| v * v).sum();
        let chis = cache.entry(key).or_insert_with(|| {
            let r = step * (key as f64).sqrt();
            (0..=k_max).map(|j| smooth_step(r / 2f64.powi(j as i32))).collect()
        });
        let mut total = 0.0;
        for kk in 1..=k_max {
            let v = chis[kk] - chis[kk - 1];
            shells[kk - 1][i] = v;
            total += v;
        }
        base[i] = 1.0 - total;
    }
    Ok(LittlewoodPaleyPartition {
        spec,
        k_max,
        shells,
        base,
    })
}

impl LittlewoodPaleyPartition {
    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `φ(2^{-k}ξ)` in DFT order, `k >= 1`.
    pub fn shell(&self, k: usize) -> &[f64] {
        &self.shells[k - 1]
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    /// Largest `|ψ + Σ_k φ_k - 1|` over the lattice points below `2^{k_max}`.
    pub fn partition_defect(&self) -> f64 {
        let ceiling = 2f64.powi(self.k_max as i32);
        (0..self.spec.len())
            .filter(|&i| self.spec.frequency_norm(i) < ceiling)
            .map(|i| {
                let s: f64 = self.base[i] + self.shells.iter().map(|sh| sh[i]).sum::<f64>();
                (s - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    fn filter(&self, spectrum: &SpectrumFunction, mult: &[f64]) -> GridFunction {
        let mut s = spectrum.clone();
        s.coefficients_mut()
            .iter_mut()
            .zip(mult)
            .for_each(|(c, m)| *c *= Complex64::new(*m, 0.0));
        inverse_transform(&s)
    }

    /// `φ_k * f` given the spectrum of `f`.
    pub fn shell_component(&self, spectrum: &SpectrumFunction, k: usize) -> Result<GridFunction> {
        self.spec.check_same(spectrum.spec())?;
        Ok(self.filter(spectrum, self.shell(k)))
    }

    /// `ψ * f` given the spectrum of `f`.
    pub fn base_component(&self, spectrum: &SpectrumFunction) -> Result<GridFunction> {
        self.spec.check_same(spectrum.spec())?;
        Ok(self.filter(spectrum, &self.base))
    }

    pub fn decompose(&self, f: &GridFunction) -> Result<(GridFunction, Vec<GridFunction>)> {
        let s = forward_transform(f);
        let base = self.base_component(&s)?;
        let shells = (1..=self.k_max)
            .map(|k| self.shell_component(&s, k))
            .collect::<Result<Vec<_>>>()?;
        Ok((base, shells))
    }
}
