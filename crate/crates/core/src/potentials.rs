//! The three central-potential families and the effective radial potential.

use std::fmt;

use crate::error::{QesError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `V(r) = a r² + b r⁴ + c r⁶`
    Sextic,
    /// `V(r) = a r + b r² + c / r`
    Mixed,
    /// `V(r) = a r² + b / r² + c / r⁴ + d / r⁶`
    SingularEvenPower,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sextic => "sextic",
            Family::Mixed => "mixed",
            Family::SingularEvenPower => "singular",
        }
    }

    /// Coefficient names in the order they appear in the potential.
    pub fn coefficient_names(self) -> &'static [&'static str] {
        match self {
            Family::Sextic | Family::Mixed => &["a", "b", "c"],
            Family::SingularEvenPower => &["a", "b", "c", "d"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A potential family together with its real coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    Sextic { a: f64, b: f64, c: f64 },
    Mixed { a: f64, b: f64, c: f64 },
    SingularEvenPower { a: f64, b: f64, c: f64, d: f64 },
}

impl PotentialSpec {
    pub fn family(&self) -> Family {
        match self {
            PotentialSpec::Sextic { .. } => Family::Sextic,
            PotentialSpec::Mixed { .. } => Family::Mixed,
            PotentialSpec::SingularEvenPower { .. } => Family::SingularEvenPower,
        }
    }

    /// Builds a spec from a coefficient slice ordered as in
    /// [`Family::coefficient_names`].
    pub fn from_coefficients(family: Family, coeffs: &[f64]) -> Result<Self> {
        let expected = family.coefficient_names().len();
        if coeffs.len() != expected {
            return Err(QesError::InvalidParameter {
                name: "coefficient count",
                value: coeffs.len() as f64,
                reason: "does not match the family",
            });
        }
        Ok(match family {
            Family::Sextic => PotentialSpec::Sextic { a: coeffs[0], b: coeffs[1], c: coeffs[2] },
            Family::Mixed => PotentialSpec::Mixed { a: coeffs[0], b: coeffs[1], c: coeffs[2] },
            Family::SingularEvenPower => {
                PotentialSpec::SingularEvenPower { a: coeffs[0], b: coeffs[1], c: coeffs[2], d: coeffs[3] }
            }
        })
    }

    pub fn coefficients(&self) -> Vec<f64> {
        match *self {
            PotentialSpec::Sextic { a, b, c } | PotentialSpec::Mixed { a, b, c } => vec![a, b, c],
            PotentialSpec::SingularEvenPower { a, b, c, d } => vec![a, b, c, d],
        }
    }

    /// Returns a copy with the named coefficient replaced.
    pub fn with_coefficient(&self, name: &str, value: f64) -> Result<Self> {
        let family = self.family();
        let idx = family
            .coefficient_names()
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| QesError::NoSolution(format!("{family} potential has no coefficient {name}")))?;
        let mut coeffs = self.coefficients();
        coeffs[idx] = value;
        Self::from_coefficients(family, &coeffs)
    }

    /// Checks the reality conditions on the square roots taken by the ansatz.
    pub fn validate(self) -> Result<Self> {
        for (name, value) in self.family().coefficient_names().iter().zip(self.coefficients()) {
            if !value.is_finite() {
                return Err(QesError::InvalidParameter { name, value, reason: "coefficient must be finite" });
            }
        }
        match self {
            PotentialSpec::Sextic { c, .. } if c <= 0.0 => {
                Err(QesError::InvalidParameter { name: "c", value: c, reason: "β²=c requires c>0" })
            }
            PotentialSpec::Mixed { b, .. } if b <= 0.0 => {
                Err(QesError::InvalidParameter { name: "b", value: b, reason: "β²=b requires b>0" })
            }
            PotentialSpec::SingularEvenPower { a, c, d, .. } => {
                if a <= 0.0 {
                    Err(QesError::InvalidParameter { name: "a", value: a, reason: "α²=a requires a>0" })
                } else if d == 0.0 {
                    Err(QesError::InvalidParameter { name: "d", value: d, reason: "μ=c/(2√d) undefined" })
                } else if d < 0.0 {
                    Err(QesError::InvalidParameter { name: "d", value: d, reason: "β²=d requires d>0" })
                } else if c < 0.0 {
                    Err(QesError::InvalidParameter {
                        name: "c",
                        value: c,
                        reason: "c≥0 required so that δ=3/2+μ stays positive",
                    })
                } else {
                    Ok(self)
                }
            }
            _ => Ok(self),
        }
    }

    /// `V(r)`.
    pub fn value(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(match *self {
            PotentialSpec::Sextic { a, b, c } => {
                let r2 = r * r;
                r2 * (a + r2 * (b + c * r2))
            }
            PotentialSpec::Mixed { a, b, c } => a * r + b * r * r + c / r,
            PotentialSpec::SingularEvenPower { a, b, c, d } => {
                let r2 = r * r;
                let inv2 = 1.0 / r2;
                a * r2 + inv2 * (b + inv2 * (c + d * inv2))
            }
        })
    }

    /// `V(r) + (m² − 1/4)/r²`, the potential seen by the reduced radial
    /// function after the `r^{-1/2}` factor has been split off.
    pub fn effective(&self, m: u32, r: f64) -> Result<f64> {
        Ok(self.value(r)? + centrifugal(m, r))
    }
}

/// `(m² − 1/4)/r²`
pub fn centrifugal(m: u32, r: f64) -> f64 {
    let m = f64::from(m);
    (m * m - 0.25) / (r * r)
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(QesError::Domain(r))
    }
}

pub fn validate(spec: PotentialSpec) -> Result<PotentialSpec> {
    spec.validate()
}

pub fn potential_value(spec: &PotentialSpec, r: f64) -> Result<f64> {
    spec.value(r)
}

pub fn effective_potential(spec: &PotentialSpec, m: u32, r: f64) -> Result<f64> {
    spec.effective(m, r)
}
