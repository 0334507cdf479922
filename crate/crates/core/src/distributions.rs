//! Compactly supported distributions: finite sums of derivatives of point
//! masses plus an optional grid density, and their means defined by duality
//! `⟨p(tA)f, φ⟩ = ⟨f, p(tA)φ⟩`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{forward_transform, inverse_transform, pair, GridFunction, GridSpec, SpectrumFunction};
use crate::means::MeanFunction;
use crate::multiplier::{spectral_mean, MultiplierPlan};
use crate::spaces::{liouville_norm, localized_norm, NormSpec};
use crate::symbols::HomogeneousSymbol;

/// Largest total derivative order of an atom.
pub const MAX_ATOM_ORDER: u32 = 4;

/// `c · D^α δ_x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: Vec<f64>,
    pub alpha: Vec<u32>,
    #[serde(with = "complex_pair")]
    pub c: Complex64,
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

impl Atom {
    pub fn order(&self) -> u32 {
        self.alpha.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactDistribution {
    pub atoms: Vec<Atom>,
    /// Where the density was loaded from, if anywhere; informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_ref: Option<String>,
    #[serde(skip)]
    density: Option<GridFunction>,
}

impl CompactDistribution {
    pub fn new(atoms: Vec<Atom>, density: Option<GridFunction>) -> Result<Self> {
        let d = CompactDistribution {
            atoms,
            density_ref: None,
            density,
        };
        d.check_shape()?;
        Ok(d)
    }

    pub fn delta(x: &[f64]) -> Self {
        Self::atom(x, &vec![0; x.len()], Complex64::new(1.0, 0.0))
    }

    pub fn atom(x: &[f64], alpha: &[u32], c: Complex64) -> Self {
        CompactDistribution {
            atoms: vec![Atom {
                x: x.to_vec(),
                alpha: alpha.to_vec(),
                c,
            }],
            density_ref: None,
            density: None,
        }
    }

    pub fn from_density(g: GridFunction) -> Self {
        CompactDistribution {
            atoms: Vec::new(),
            density_ref: None,
            density: Some(g),
        }
    }

    pub fn with_density(mut self, g: GridFunction) -> Self {
        self.density = Some(g);
        self
    }

    pub fn density(&self) -> Option<&GridFunction> {
        self.density.as_ref()
    }

    fn check_shape(&self) -> Result<()> {
        for a in &self.atoms {
            if a.x.len() != a.alpha.len() {
                return invalid(format!("atom location {:?} and multi-index {:?} differ in length", a.x, a.alpha));
            }
            if a.order() > MAX_ATOM_ORDER {
                return invalid(format!("atom order {} exceeds {MAX_ATOM_ORDER}", a.order()));
            }
            if a.x.iter().any(|v| !v.is_finite()) || !(a.c.re.is_finite() && a.c.im.is_finite()) {
                return Err(Error::NonFinite("atom".into()));
            }
        }
        Ok(())
    }

    /// Atoms must sit at least `L/8` inside the cell; the density must share
    /// the dimension and period of `spec`.
    pub fn validate(&self, spec: &GridSpec) -> Result<()> {
        self.check_shape()?;
        let reach = 0.375 * spec.period() * (1.0 + 1e-12);
        for a in &self.atoms {
            if a.x.len() != spec.dim() {
                return invalid(format!("atom dimension {} on a {}-dimensional grid", a.x.len(), spec.dim()));
            }
            if a.x.iter().any(|v| v.abs() > reach) {
                return invalid(format!("atom at {:?} is closer than L/8 to the cell boundary", a.x));
            }
        }
        if let Some(d) = &self.density {
            if d.spec().dim() != spec.dim() || d.spec().period() != spec.period() {
                return Err(Error::GridMismatch("density and grid differ in dimension or period".into()));
            }
        }
        Ok(())
    }

    /// `Σ c_j` over undifferentiated atoms plus the density integral.
    pub fn total_mass(&self) -> Complex64 {
        let atoms: Complex64 = self.atoms.iter().filter(|a| a.order() == 0).map(|a| a.c).sum();
        atoms + self.density.as_ref().map(|d| d.integral()).unwrap_or_default()
    }
}

/// `⟨f, φ⟩ = Σ_j c_j (-1)^{|α_j|} D^{α_j}φ(x_j) + ∫ g φ`, with derivatives at
/// off-lattice points by trigonometric interpolation.
pub fn pair_distribution(f: &CompactDistribution, phi: &GridFunction) -> Result<Complex64> {
    f.validate(phi.spec())?;
    let mut total = Complex64::new(0.0, 0.0);
    if !f.atoms.is_empty() {
        let s = forward_transform(phi);
        for a in &f.atoms {
            let sign = if a.order() % 2 == 0 { 1.0 } else { -1.0 };
            total += a.c * sign * s.evaluate_derivative_at(&a.alpha, &a.x);
        }
    }
    if let Some(d) = &f.density {
        total += pair(d, phi)?;
    }
    Ok(total)
}

/// Exact Fourier data of the atoms, `c (iy)^α (2π)^{-N} exp(-i x·y)`, plus
/// the transform of the density (resampled onto `spec`).
pub fn spectrum_of_distribution(f: &CompactDistribution, spec: &GridSpec) -> Result<SpectrumFunction> {
    f.validate(spec)?;
    let dim = spec.dim();
    let norm = (2.0 * PI).powi(-(dim as i32));
    let mut out = match &f.density {
        Some(d) if d.spec() == spec => forward_transform(d),
        Some(d) => forward_transform(d).resample(*spec)?,
        None => SpectrumFunction::zeros(*spec),
    };
    let coeffs = out.coefficients_mut();
    for (i, c) in coeffs.iter_mut().enumerate() {
        let y = spec.frequency(i);
        for a in &f.atoms {
            let mut v = a.c * norm;
            let mut phase = 0.0;
            for axis in 0..dim {
                phase -= a.x[axis] * y[axis];
                if a.alpha[axis] > 0 {
                    v *= Complex64::new(0.0, y[axis]).powi(a.alpha[axis] as i32);
                }
            }
            *c += v * Complex64::from_polar(1.0, phase);
        }
    }
    Ok(out)
}

/// Band-limited realization of `f` on `spec`.
pub fn realize(f: &CompactDistribution, spec: &GridSpec) -> Result<GridFunction> {
    Ok(inverse_transform(&spectrum_of_distribution(f, spec)?))
}

/// `p(tA)f` as a grid function: `F^{-1}[p(tσ(y)) F f]`.
pub fn mean_of_distribution(
    p: &MeanFunction,
    t: f64,
    sigma: &HomogeneousSymbol,
    f: &CompactDistribution,
    spec: &GridSpec,
) -> Result<GridFunction> {
    let plan = MultiplierPlan::spectral_mean(*spec, p, t, sigma)?;
    let s = plan.apply_to_spectrum(&spectrum_of_distribution(f, spec)?)?;
    Ok(inverse_transform(&s))
}

/// `|⟨p(tA)f, φ⟩ - ⟨f, p(tA)φ⟩|`.
pub fn verify_duality(
    p: &MeanFunction,
    t: f64,
    sigma: &HomogeneousSymbol,
    f: &CompactDistribution,
    phi: &GridFunction,
) -> Result<f64> {
    let lhs = pair(&mean_of_distribution(p, t, sigma, f, phi.spec())?, phi)?;
    let rhs = pair_distribution(f, &spectral_mean(p, t, sigma, phi)?)?;
    Ok((lhs - rhs).norm())
}

/// Liouville norm of order `-alpha` of the realization of `f`, localized by
/// `window` when given.
pub fn negative_liouville_norm(
    f: &CompactDistribution,
    alpha: f64,
    p: f64,
    spec: &GridSpec,
    window: Option<&GridFunction>,
) -> Result<f64> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return invalid(format!("order alpha must be >= 0, got {alpha}"));
    }
    let g = realize(f, spec)?;
    match window {
        Some(w) => localized_norm(&g, w, &NormSpec::Liouville { s: -alpha, p }),
        None => liouville_norm(&g, -alpha, p),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipReport {
    pub alpha: f64,
    pub p: f64,
    pub points: Vec<usize>,
    /// `‖f‖^p` in the order `-α` Liouville norm at each resolution.
    pub powered_norms: Vec<f64>,
    /// Powered norm at `2n` over that at `n`.
    pub refinement_ratio: f64,
    /// `log₂` of the ratio of the last two increments; negative when the
    /// increments shrink geometrically.
    pub increment_exponent: f64,
    pub member: bool,
}

/// Refinement test for `f ∈ L_p^{-α}`: the powered norm is computed at
/// `n, 2n, 4n, 8n`. If the norm converges, its increments decay like
/// `2^{e}` per doubling with `e < 0`; divergent lattice sums have
/// increments that stay flat or grow. Membership is declared when
/// `e < -0.01` or the increments vanish to roundoff.
pub fn classify_membership(f: &CompactDistribution, alpha: f64, p: f64, base: &GridSpec) -> Result<MembershipReport> {
    if !(p.is_finite() && p >= 1.0) {
        return invalid(format!("membership test needs finite p >= 1, got {p}"));
    }
    let n0 = base.points_per_axis();
    let points: Vec<usize> = (0..4).map(|k| n0 << k).collect();
    let powered = points
        .iter()
        .map(|&n| Ok(negative_liouville_norm(f, alpha, p, &base.with_points(n)?, None)?.powf(p)))
        .collect::<Result<Vec<f64>>>()?;
    let d2 = powered[2] - powered[1];
    let d3 = powered[3] - powered[2];
    let scale = powered[3].abs().max(f64::MIN_POSITIVE);
    let (exponent, member) = if d2.abs() <= 1e-12 * scale && d3.abs() <= 1e-12 * scale {
        (f64::NEG_INFINITY, true)
    } else {
        let e = (d3.abs() / d2.abs()).log2();
        (e, e < -0.01)
    };
    Ok(MembershipReport {
        alpha,
        p,
        refinement_ratio: powered[1] / powered[0],
        points,
        powered_norms: powered,
        increment_exponent: exponent,
        member,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistributionErrorPoint {
    pub t: f64,
    /// `‖p(tA)f - f‖` in `L_p^{-α}`, localized.
    pub error: f64,
    /// `|⟨p(tA)f - f, φ⟩|` for the probe.
    pub pairing_error: f64,
}

/// Errors of `p(tA)f → f` in the negative Liouville norm and against a
/// fixed probe, one point per `t`.
#[allow(clippy::too_many_arguments)]
pub fn distribution_convergence(
    p: &MeanFunction,
    t_list: &[f64],
    sigma: &HomogeneousSymbol,
    f: &CompactDistribution,
    alpha: f64,
    p_exp: f64,
    spec: &GridSpec,
    window: Option<&GridFunction>,
    probe: &GridFunction,
) -> Result<Vec<DistributionErrorPoint>> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return invalid(format!("order alpha must be >= 0, got {alpha}"));
    }
    let spectrum = spectrum_of_distribution(f, spec)?;
    let base = inverse_transform(&spectrum);
    let norm = NormSpec::Liouville { s: -alpha, p: p_exp };
    let reference = pair_distribution(f, probe)?;
    t_list
        .iter()
        .map(|&t| {
            let plan = MultiplierPlan::spectral_mean(*spec, p, t, sigma)?;
            let diff = inverse_transform(&plan.apply_to_spectrum(&spectrum)?).sub(&base)?;
            let error = match window {
                Some(w) => localized_norm(&diff, w, &norm)?,
                None => norm.evaluate(&diff)?,
            };
            let moved = pair_distribution(f, &plan.apply(probe)?)?;
            Ok(DistributionErrorPoint {
                t,
                error,
                pairing_error: (moved - reference).norm(),
            })
        })
        .collect()
}

/// `max_x window(x)|a(x) - b(x)|`: a pointwise surrogate for uniform
/// convergence on the set where the window is one.
pub fn windowed_sup_error(a: &GridFunction, b: &GridFunction, window: &GridFunction) -> Result<f64> {
    Ok(a.sub(b)?.mul(window)?.max_abs())
}
