//! Periodic sampling lattice, grid functions and the discrete Fourier pair.
//!
//! A compactly supported function on `R^N` is modelled by its restriction to
//! the period cell `[-L/2, L/2)^N`, sampled at `n` points per axis. The
//! forward transform is the Riemann sum of
//!
//! ```text
//! f^(y) = (2π)^{-N} ∫ f(x) exp(-i x·y) dx
//! ```
//!
//! and the inverse is the lattice sum `Σ_y F(y) exp(i x·y) (2π/L)^N`, so the
//! pair is exactly inverse on the grid. Lattice frequencies are
//! `y = (2π/L) k` with every component of `k` in `[-n/2, n/2)`, stored in
//! standard DFT order (the Nyquist index carries its literal value `-n/2`).
//!
//! Values are stored row-major with axis 0 varying slowest.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

/// Multi-index or coordinate triple; entries past `dim` are zero.
pub type Triple<T> = [T; MAX_DIM];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGridSpec", into = "RawGridSpec")]
pub struct GridSpec {
    dim: usize,
    n: usize,
    period: f64,
}

#[derive(Serialize, Deserialize)]
struct RawGridSpec {
    #[serde(rename = "N")]
    dim: usize,
    n: usize,
    #[serde(rename = "L")]
    period: f64,
}

impl TryFrom<RawGridSpec> for GridSpec {
    type Error = Error;
    fn try_from(raw: RawGridSpec) -> Result<Self> {
        GridSpec::new(raw.dim, raw.n, raw.period)
    }
}

impl From<GridSpec> for RawGridSpec {
    fn from(spec: GridSpec) -> Self {
        RawGridSpec {
            dim: spec.dim,
            n: spec.n,
            period: spec.period,
        }
    }
}

impl GridSpec {
    pub fn new(dim: usize, n: usize, period: f64) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in 1..=3")));
        }
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be even and >= 8, got {n}"
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidGrid(format!("period must be positive, got {period}")));
        }
        Ok(GridSpec { dim, n, period })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Total number of lattice points, `n^N`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Spacing of the frequency lattice, `2π/L`.
    pub fn frequency_step(&self) -> f64 {
        2.0 * PI / self.period
    }

    pub fn frequency_cell_volume(&self) -> f64 {
        self.frequency_step().powi(self.dim as i32)
    }

    /// Largest lattice frequency modulus, attained at the all-Nyquist corner.
    pub fn max_frequency(&self) -> f64 {
        self.frequency_step() * (self.n / 2) as f64 * (self.dim as f64).sqrt()
    }

    /// Same dimension and period with a different resolution.
    pub fn with_points(&self, n: usize) -> Result<GridSpec> {
        GridSpec::new(self.dim, n, self.period)
    }

    pub fn coords(&self, flat: usize) -> Triple<usize> {
        let mut out = [0; MAX_DIM];
        let mut rem = flat;
        for axis in (0..self.dim).rev() {
            out[axis] = rem % self.n;
            rem /= self.n;
        }
        out
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .take(self.dim)
            .fold(0, |acc, &i| acc * self.n + (i % self.n))
    }

    /// Flat index of the lattice point displaced by `shift` grid steps.
    pub fn shifted_index(&self, flat: usize, shift: &[i64]) -> usize {
        let c = self.coords(flat);
        let n = self.n as i64;
        let mut out = 0usize;
        for axis in 0..self.dim {
            let s = shift.get(axis).copied().unwrap_or(0);
            let v = (c[axis] as i64 + s).rem_euclid(n) as usize;
            out = out * self.n + v;
        }
        out
    }

    pub fn point(&self, flat: usize) -> Triple<f64> {
        let c = self.coords(flat);
        let h = self.spacing();
        let mut x = [0.0; MAX_DIM];
        for axis in 0..self.dim {
            x[axis] = -0.5 * self.period + c[axis] as f64 * h;
        }
        x
    }

    /// Signed wavenumber of a DFT index along one axis.
    pub fn wavenumber(&self, index: usize) -> i64 {
        if index < self.n / 2 {
            index as i64
        } else {
            index as i64 - self.n as i64
        }
    }

    pub fn wavenumbers(&self, flat: usize) -> Triple<i64> {
        let c = self.coords(flat);
        let mut k = [0; MAX_DIM];
        for axis in 0..self.dim {
            k[axis] = self.wavenumber(c[axis]);
        }
        k
    }

    pub fn frequency(&self, flat: usize) -> Triple<f64> {
        let k = self.wavenumbers(flat);
        let step = self.frequency_step();
        let mut y = [0.0; MAX_DIM];
        for axis in 0..self.dim {
            y[axis] = step * k[axis] as f64;
        }
        y
    }

    pub fn frequency_norm(&self, flat: usize) -> f64 {
        norm(&self.frequency(flat))
    }

    /// DFT index of the wavenumber vector `k`, if it lies on this lattice.
    pub fn index_of_wavenumbers(&self, k: &[i64]) -> Option<usize> {
        let half = (self.n / 2) as i64;
        let mut out = 0usize;
        for axis in 0..self.dim {
            let v = k.get(axis).copied().unwrap_or(0);
            if v < -half || v >= half {
                return None;
            }
            out = out * self.n + v.rem_euclid(self.n as i64) as usize;
        }
        Some(out)
    }

    pub(crate) fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Sampled complex field on a [`GridSpec`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireField", into = "WireField")]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<Complex64>,
}

/// Discrete Fourier coefficients of a [`GridFunction`], in DFT order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireField", into = "WireField")]
pub struct SpectrumFunction {
    spec: GridSpec,
    coefficients: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct WireField {
    spec: GridSpec,
    values: Vec<[f64; 2]>,
}

fn check_values(spec: &GridSpec, values: &[Complex64]) -> Result<()> {
    if values.len() != spec.len() {
        return Err(Error::InvalidGrid(format!(
            "expected {} values, got {}",
            spec.len(),
            values.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite(format!("entry {i}")));
    }
    Ok(())
}

fn to_wire(spec: GridSpec, values: &[Complex64]) -> WireField {
    WireField {
        spec,
        values: values.iter().map(|v| [v.re, v.im]).collect(),
    }
}

fn from_wire(w: WireField) -> (GridSpec, Vec<Complex64>) {
    let values = w.values.iter().map(|v| Complex64::new(v[0], v[1])).collect();
    (w.spec, values)
}

impl TryFrom<WireField> for GridFunction {
    type Error = Error;
    fn try_from(w: WireField) -> Result<Self> {
        let (spec, values) = from_wire(w);
        GridFunction::new(spec, values)
    }
}

impl From<GridFunction> for WireField {
    fn from(f: GridFunction) -> Self {
        to_wire(f.spec, &f.values)
    }
}

impl TryFrom<WireField> for SpectrumFunction {
    type Error = Error;
    fn try_from(w: WireField) -> Result<Self> {
        let (spec, values) = from_wire(w);
        SpectrumFunction::new(spec, values)
    }
}

impl From<SpectrumFunction> for WireField {
    fn from(f: SpectrumFunction) -> Self {
        to_wire(f.spec, &f.coefficients)
    }
}

impl GridFunction {
    pub fn new(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        check_values(&spec, &values)?;
        Ok(GridFunction { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        GridFunction {
            spec,
            values: vec![Complex64::new(0.0, 0.0); spec.len()],
        }
    }

    pub fn constant(spec: GridSpec, c: Complex64) -> Self {
        GridFunction {
            spec,
            values: vec![c; spec.len()],
        }
    }

    pub fn from_fn(spec: GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let values = (0..spec.len())
            .map(|i| f(&spec.point(i)[..spec.dim()]))
            .collect();
        GridFunction::new(spec, values)
    }

    pub fn from_real_fn(spec: GridSpec, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        Self::from_fn(spec, |x| Complex64::new(f(x), 0.0))
    }

    /// The lattice exponential `exp(i y·x)` for wavenumber vector `k`.
    pub fn exponential(spec: GridSpec, k: &[i64]) -> Self {
        let step = spec.frequency_step();
        let values = (0..spec.len())
            .map(|i| {
                let x = spec.point(i);
                let phase: f64 = (0..spec.dim())
                    .map(|a| step * k.get(a).copied().unwrap_or(0) as f64 * x[a])
                    .sum();
                Complex64::from_polar(1.0, phase)
            })
            .collect();
        GridFunction { spec, values }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GridFunction {
            spec: self.spec,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        Ok(GridFunction {
            spec: self.spec,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Integral over the period cell (Riemann sum).
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.spec.cell_volume()
    }

    /// Periodic shift by whole grid steps: `g(x) = f(x + shift·h)`.
    pub fn shifted(&self, shift: &[i64]) -> Self {
        let values = (0..self.spec.len())
            .map(|i| self.values[self.spec.shifted_index(i, shift)])
            .collect();
        GridFunction {
            spec: self.spec,
            values,
        }
    }
}

impl SpectrumFunction {
    pub fn new(spec: GridSpec, coefficients: Vec<Complex64>) -> Result<Self> {
        check_values(&spec, &coefficients)?;
        Ok(SpectrumFunction { spec, coefficients })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        SpectrumFunction {
            spec,
            coefficients: vec![Complex64::new(0.0, 0.0); spec.len()],
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coefficients
    }

    /// Coefficient at wavenumber vector `k`, zero off the lattice.
    pub fn at_wavenumbers(&self, k: &[i64]) -> Complex64 {
        self.spec
            .index_of_wavenumbers(k)
            .map(|i| self.coefficients[i])
            .unwrap_or_default()
    }

    /// Evaluate `D^alpha` of the inverse transform at an arbitrary point by
    /// trigonometric interpolation; exact for band-limited fields.
    pub fn evaluate_derivative_at(&self, alpha: &[u32], x: &[f64]) -> Complex64 {
        let spec = &self.spec;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let y = spec.frequency(i);
            let mut phase = 0.0;
            let mut factor = Complex64::new(1.0, 0.0);
            for axis in 0..spec.dim() {
                phase += y[axis] * x.get(axis).copied().unwrap_or(0.0);
                let order = alpha.get(axis).copied().unwrap_or(0) as i32;
                if order > 0 {
                    factor *= Complex64::new(0.0, y[axis]).powi(order);
                }
            }
            acc += c * factor * Complex64::from_polar(1.0, phase);
        }
        acc * spec.frequency_cell_volume()
    }

    pub fn evaluate_at(&self, x: &[f64]) -> Complex64 {
        self.evaluate_derivative_at(&[], x)
    }

    /// Re-embed into a lattice of the same period, keeping coefficients at
    /// equal physical frequencies and dropping those the target cannot hold.
    pub fn resample(&self, target: GridSpec) -> Result<SpectrumFunction> {
        if target.dim() != self.spec.dim() || target.period() != self.spec.period() {
            return Err(Error::GridMismatch(format!(
                "cannot resample {:?} onto {:?}",
                self.spec, target
            )));
        }
        let mut out = SpectrumFunction::zeros(target);
        for (i, &c) in self.coefficients.iter().enumerate() {
            let k = self.spec.wavenumbers(i);
            if let Some(j) = target.index_of_wavenumbers(&k) {
                out.coefficients[j] = c;
            }
        }
        Ok(out)
    }
}

/// In-place unnormalized multidimensional FFT along every axis.
fn fft_in_place(data: &mut [Complex64], spec: &GridSpec, direction: FftDirection) {
    let n = spec.points_per_axis();
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft(n, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let total = spec.len();
    for axis in 0..spec.dim() {
        let stride = n.pow((spec.dim() - 1 - axis) as u32);
        for start in 0..total {
            // a line starts where the axis coordinate is zero
            if !(start / stride).is_multiple_of(n) {
                continue;
            }
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = data[start + j * stride];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (j, v) in line.iter().enumerate() {
                data[start + j * stride] = *v;
            }
        }
    }
}

fn parity_sign(spec: &GridSpec, flat: usize) -> f64 {
    let s: i64 = spec.wavenumbers(flat).iter().sum();
    if s.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn forward_transform(f: &GridFunction) -> SpectrumFunction {
    let spec = f.spec;
    let mut data = f.values.clone();
    fft_in_place(&mut data, &spec, FftDirection::Forward);
    let scale = spec.cell_volume() / (2.0 * PI).powi(spec.dim() as i32);
    for (i, v) in data.iter_mut().enumerate() {
        // x_0 = -L/2 contributes exp(iπk)
        *v *= scale * parity_sign(&spec, i);
    }
    SpectrumFunction {
        spec,
        coefficients: data,
    }
}

pub fn inverse_transform(spectrum: &SpectrumFunction) -> GridFunction {
    let spec = spectrum.spec;
    let mut data: Vec<Complex64> = spectrum
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, &c)| c * parity_sign(&spec, i))
        .collect();
    fft_in_place(&mut data, &spec, FftDirection::Inverse);
    let scale = spec.frequency_cell_volume();
    for v in data.iter_mut() {
        *v *= scale;
    }
    GridFunction { spec, values: data }
}

/// Discrete `L_p` norm; `p = f64::INFINITY` gives the max norm.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    lp_norm_of_values(f.values(), f.spec.cell_volume(), p)
}

pub(crate) fn lp_norm_of_values(values: &[Complex64], cell: f64, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("L_p exponent must be >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    if p == 2.0 {
        return Ok((values.iter().map(|v| v.norm_sqr()).sum::<f64>() * cell).sqrt());
    }
    // scale by the max to keep large p from overflowing
    let m = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = values.iter().map(|v| (v.norm() / m).powf(p)).sum();
    Ok(m * (s * cell).powf(1.0 / p))
}

/// Spectral 2-norm under the transform convention; equals `lp_norm(f, 2)`
/// for `f = inverse_transform(spectrum)`.
pub fn spectral_l2_norm(spectrum: &SpectrumFunction) -> f64 {
    let spec = spectrum.spec;
    let weight = (2.0 * PI).powi(spec.dim() as i32) * spec.frequency_cell_volume();
    (spectrum.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>() * weight).sqrt()
}

/// Bilinear pairing `∫ f g dx` (no conjugation).
pub fn pair(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.spec.check_same(&g.spec)?;
    let s: Complex64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum();
    Ok(s * f.spec.cell_volume())
}
