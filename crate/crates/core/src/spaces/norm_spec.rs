use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    besov_norm_lp, besov_norm_modulus, build_partition, classical_besov_norm, liouville_norm, nikolskii_norm,
    slobodetskii_norm, sobolev_norm, BesovParams,
};
use crate::error::{Error, Result};
use crate::grid::{lp_norm, GridFunction};

/// A norm selector with a compact text form, e.g. `besov:0.7:2:2`.
///
/// | form | norm |
/// |------|------|
/// | `lp:p` | `‖f‖_p` |
/// | `liouville:s:p` | Bessel-potential norm |
/// | `besov:s:p:q` | dyadic Besov norm |
/// | `besov-modulus:s:p:q:m:n1` | modulus-of-continuity Besov norm |
/// | `classical:s:p:q` | second-difference Besov norm |
/// | `sobolev:m:p` | sum of derivative norms |
/// | `nikolskii:s:p` | sup of second-difference quotients |
/// | `slobodetskii:s:p` | double-integral norm, `N = 1` |
///
/// Exponents accept `inf`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormSpec {
    Lp { p: f64 },
    Liouville { s: f64, p: f64 },
    Besov { s: f64, p: f64, q: f64 },
    BesovModulus { s: f64, p: f64, q: f64, m: u32, n1: u32 },
    Classical { s: f64, p: f64, q: f64 },
    Sobolev { m: u32, p: f64 },
    Nikolskii { s: f64, p: f64 },
    Slobodetskii { s: f64, p: f64 },
}

impl NormSpec {
    pub fn evaluate(&self, f: &GridFunction) -> Result<f64> {
        match *self {
            NormSpec::Lp { p } => lp_norm(f, p),
            NormSpec::Liouville { s, p } => liouville_norm(f, s, p),
            NormSpec::Besov { s, p, q } => {
                let part = build_partition(*f.spec())?;
                besov_norm_lp(f, &BesovParams::new(s, p, q)?, &part)
            }
            NormSpec::BesovModulus { s, p, q, m, n1 } => besov_norm_modulus(f, &BesovParams::new(s, p, q)?, m, n1),
            NormSpec::Classical { s, p, q } => classical_besov_norm(f, &BesovParams::new(s, p, q)?),
            NormSpec::Sobolev { m, p } => sobolev_norm(f, m, p),
            NormSpec::Nikolskii { s, p } => nikolskii_norm(f, s, p),
            NormSpec::Slobodetskii { s, p } => slobodetskii_norm(f, s, p),
        }
    }

    /// Space family name, e.g. `besov`.
    pub fn family(&self) -> &'static str {
        match self {
            NormSpec::Lp { .. } => "lp",
            NormSpec::Liouville { .. } => "liouville",
            NormSpec::Besov { .. } => "besov",
            NormSpec::BesovModulus { .. } => "besov-modulus",
            NormSpec::Classical { .. } => "classical",
            NormSpec::Sobolev { .. } => "sobolev",
            NormSpec::Nikolskii { .. } => "nikolskii",
            NormSpec::Slobodetskii { .. } => "slobodetskii",
        }
    }
}

fn fmt_exp(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        v.to_string()
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = fmt_exp;
        match *self {
            NormSpec::Lp { p } => write!(f, "lp:{}", e(p)),
            NormSpec::Liouville { s, p } => write!(f, "liouville:{s}:{}", e(p)),
            NormSpec::Besov { s, p, q } => write!(f, "besov:{s}:{}:{}", e(p), e(q)),
            NormSpec::BesovModulus { s, p, q, m, n1 } => {
                write!(f, "besov-modulus:{s}:{}:{}:{m}:{n1}", e(p), e(q))
            }
            NormSpec::Classical { s, p, q } => write!(f, "classical:{s}:{}:{}", e(p), e(q)),
            NormSpec::Sobolev { m, p } => write!(f, "sobolev:{m}:{}", e(p)),
            NormSpec::Nikolskii { s, p } => write!(f, "nikolskii:{s}:{}", e(p)),
            NormSpec::Slobodetskii { s, p } => write!(f, "slobodetskii:{s}:{}", e(p)),
        }
    }
}

fn num(field: &str, src: &str) -> Result<f64> {
    match field {
        "inf" | "infinity" => Ok(f64::INFINITY),
        _ => field
            .parse()
            .map_err(|_| Error::Parse(format!("bad number {field:?} in {src:?}"))),
    }
}

fn int(field: &str, src: &str) -> Result<u32> {
    field
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {field:?} in {src:?}")))
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let parts: Vec<&str> = src.trim().split(':').collect();
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(Error::Parse(format!("{:?} expects {k} parameters: {src:?}", parts[0])))
            }
        };
        let spec = match parts[0] {
            "lp" => {
                arity(1)?;
                NormSpec::Lp { p: num(parts[1], src)? }
            }
            "liouville" => {
                arity(2)?;
                NormSpec::Liouville {
                    s: num(parts[1], src)?,
                    p: num(parts[2], src)?,
                }
            }
            "besov" => {
                arity(3)?;
                NormSpec::Besov {
                    s: num(parts[1], src)?,
                    p: num(parts[2], src)?,
                    q: num(parts[3], src)?,
                }
            }
            "besov-modulus" => {
                arity(5)?;
                NormSpec::BesovModulus {
                    s: num(parts[1], src)?,
                    p: num(parts[2], src)?,
                    q: num(parts[3], src)?,
                    m: int(parts[4], src)?,
                    n1: int(parts[5], src)?,
                }
            }
            "classical" => {
                arity(3)?;
                NormSpec::Classical {
                    s: num(parts[1], src)?,
                    p: num(parts[2], src)?,
                    q: num(parts[3], src)?,
                }
            }
            "sobolev" => {
                arity(2)?;
                NormSpec::Sobolev {
                    m: int(parts[1], src)?,
                    p: num(parts[2], src)?,
                }
            }
            "nikolskii" => {
                arity(2)?;
                NormSpec::Nikolskii {
                    s: num(parts[1], src)?,
                    p: num(parts[2], src)?,
                }
            }
            "slobodetskii" => {
                arity(2)?;
                NormSpec::Slobodetskii {
                    s: num(parts[1], src)?,
                    p: num(parts[2], src)?,
                }
            }
            other => return Err(Error::Parse(format!("unknown norm {other:?}"))),
        };
        Ok(spec)
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormSpec> for String {
    fn from(n: NormSpec) -> String {
        n.to_string()
    }
}
