//! Homogeneous elliptic symbols `σ(y)` of the constant-coefficient operator `A`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::norm;

#[derive(Clone, Copy, Debug, PartialEq)]
enum SymbolKind {
    /// `|y|^m`
    Radial { degree: f64 },
    /// `Σ y_i^4`, degree 4; non-radial.
    Quartic,
}

/// Positive symbol homogeneous of degree `m >= 1`, extended by `σ(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousSymbol {
    kind: SymbolKind,
    label: String,
}

impl HomogeneousSymbol {
    pub fn radial(degree: f64) -> Result<Self> {
        if !(degree.is_finite() && degree >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "symbol degree must be >= 1, got {degree}"
            )));
        }
        Ok(HomogeneousSymbol {
            kind: SymbolKind::Radial { degree },
            label: format!("radial:{degree}"),
        })
    }

    /// `|y|²`, the symbol of `-Δ`.
    pub fn laplacian() -> Self {
        Self::radial(2.0).expect("degree 2 is valid")
    }

    pub fn quartic() -> Self {
        HomogeneousSymbol {
            kind: SymbolKind::Quartic,
            label: "quartic".into(),
        }
    }

    pub fn degree(&self) -> f64 {
        match self.kind {
            SymbolKind::Radial { degree } => degree,
            SymbolKind::Quartic => 4.0,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, y: &[f64]) -> f64 {
        match self.kind {
            SymbolKind::Radial { degree } => {
                let r = norm(y);
                if r == 0.0 {
                    0.0
                } else if degree == 2.0 {
                    r * r
                } else {
                    r.powf(degree)
                }
            }
            SymbolKind::Quartic => y.iter().map(|v| v.powi(4)).sum(),
        }
    }

    /// Lower bound `c` in `σ(y) >= c|y|^m`, over a deterministic sample of the
    /// unit sphere in `R^dim`.
    pub fn ellipticity_constant(&self, dim: usize) -> f64 {
        unit_sphere_sample(dim, 256)
            .iter()
            .map(|y| self.evaluate(y))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Quasi-uniform points on the unit sphere (circle for `dim = 2`, `±1` for
/// `dim = 1`).
pub(crate) fn unit_sphere_sample(dim: usize, count: usize) -> Vec<Vec<f64>> {
    match dim {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..count)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        _ => fibonacci_sphere(count, false),
    }
}

/// Fibonacci lattice on the sphere; `upper_half` restricts to `z >= 0`.
pub(crate) fn fibonacci_sphere(count: usize, upper_half: bool) -> Vec<Vec<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let frac = (i as f64 + 0.5) / count as f64;
            let z = if upper_half { frac } else { 1.0 - 2.0 * frac };
            let r = (1.0 - z * z).max(0.0).sqrt();
            let a = golden * i as f64;
            vec![r * a.cos(), r * a.sin(), z]
        })
        .collect()
}

impl fmt::Display for HomogeneousSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl FromStr for HomogeneousSymbol {
    type Err = Error;

    /// Accepts `laplacian`, `radial:<m>` and `quartic`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "laplacian" => return Ok(Self::laplacian()),
            "quartic" => return Ok(Self::quartic()),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("radial:") {
            let m: f64 = m
                .parse()
                .map_err(|_| Error::Parse(format!("bad symbol degree in {s:?}")))?;
            return Self::radial(m);
        }
        Err(Error::Parse(format!("unknown symbol {s:?}")))
    }
}
