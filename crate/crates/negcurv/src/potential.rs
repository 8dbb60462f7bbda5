//! Registry of radial Kähler potentials.
//!
//! Every metric in this crate comes from a scalar potential `f` applied to
//! `x = r² = Σ|z_i|²`. The registry is deliberately closed (no expression
//! parser): `linear` (flat), `exp` (the main example under study), `log_ball`
//! (the model of constant curvature −4 on the unit ball), `fubini` (the model
//! of constant positive holomorphic curvature), and `poly` with user
//! coefficients. All derivatives are closed-form, exact to rounding.

use crate::error::{Error, Result};
use crate::jet::Jet4;
use std::fmt;
use std::str::FromStr;

/// A named scalar potential `f(x)` with exact derivatives to order 4.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialPotential {
    /// `f(x) = x` — the flat metric.
    Linear,
    /// `f(x) = eˣ` — complete, strictly negatively curved.
    Exp,
    /// `f(x) = −ln(1−x)` on `x ∈ [0,1)` — constant curvature −4 on the ball.
    LogBall,
    /// `f(x) = ln(1+x)` — constant positive holomorphic curvature (incomplete
    /// as a metric on all of ℂⁿ in the completeness sense tested here).
    Fubini,
    /// `f(x) = Σ cᵢ xⁱ`, `i ≥ 1`, with the given coefficients `[c₁, …, c_k]`.
    Poly(Vec<f64>),
}

impl RadialPotential {
    /// Supremum of admissible `x = r²` (exclusive).
    pub fn domain_sup(&self) -> f64 {
        match self {
            RadialPotential::LogBall => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// `(f(x), f′(x), f″(x), f‴(x), f⁗(x))` packed into a [`Jet4`].
    ///
    /// The returned value is a bundle of derivatives in `x`, not a jet in
    /// some other variable; compose it with an inner jet to push it through
    /// the chain rule.
    pub fn jet(&self, x: f64) -> Result<Jet4> {
        if !(0.0..self.domain_sup()).contains(&x) {
            return Err(Error::Domain {
                x,
                sup: self.domain_sup(),
            });
        }
        Ok(match self {
            RadialPotential::Linear => Jet4::new(x, 1.0, 0.0, 0.0, 0.0),
            RadialPotential::Exp => {
                let e = x.exp();
                Jet4::new(e, e, e, e, e)
            }
            RadialPotential::LogBall => {
                // f⁽ᵏ⁾(x) = (k−1)! (1−x)^{−k} for k ≥ 1.
                let s = 1.0 / (1.0 - x);
                let s2 = s * s;
                Jet4::new(-(1.0 - x).ln(), s, s2, 2.0 * s2 * s, 6.0 * s2 * s2)
            }
            RadialPotential::Fubini => {
                // f⁽ᵏ⁾(x) = (−1)^{k−1} (k−1)! (1+x)^{−k} for k ≥ 1.
                let s = 1.0 / (1.0 + x);
                let s2 = s * s;
                Jet4::new((1.0 + x).ln(), s, -s2, 2.0 * s2 * s, -6.0 * s2 * s2)
            }
            RadialPotential::Poly(coeffs) => {
                let mut v = [0.0; 5];
                for (idx, &c) in coeffs.iter().enumerate() {
                    let i = (idx + 1) as f64; // term c x^i
                    let mut fall = 1.0;
                    for (k, slot) in v.iter_mut().enumerate() {
                        let e = i - k as f64;
                        if fall != 0.0 {
                            *slot += c * fall * x.powf(e);
                        }
                        fall *= e;
                    }
                }
                Jet4::new(v[0], v[1], v[2], v[3], v[4])
            }
        })
    }

    /// First derivative `f′(x)` (convenience accessor).
    pub fn fp(&self, x: f64) -> Result<f64> {
        Ok(self.jet(x)?.v1)
    }
}

impl fmt::Display for RadialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialPotential::Linear => write!(f, "linear"),
            RadialPotential::Exp => write!(f, "exp"),
            RadialPotential::LogBall => write!(f, "log_ball"),
            RadialPotential::Fubini => write!(f, "fubini"),
            RadialPotential::Poly(c) => {
                write!(f, "poly:")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for RadialPotential {
    type Err = Error;

    /// Spec strings: `linear`, `exp`, `log_ball`, `fubini`,
    /// `poly:c1,c2,...,ck` (meaning `f(x) = Σ cᵢ xⁱ`, `i ≥ 1`).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(RadialPotential::Linear),
            "exp" => Ok(RadialPotential::Exp),
            "log_ball" => Ok(RadialPotential::LogBall),
            "fubini" => Ok(RadialPotential::Fubini),
            _ => {
                if let Some(list) = s.strip_prefix("poly:") {
                    let coeffs: std::result::Result<Vec<f64>, _> =
                        list.split(',').map(|t| t.trim().parse::<f64>()).collect();
                    match coeffs {
                        Ok(c) if !c.is_empty() && c.iter().all(|v| v.is_finite()) => {
                            Ok(RadialPotential::Poly(c))
                        }
                        _ => Err(Error::Parse(format!("bad poly coefficient list: {list:?}"))),
                    }
                } else {
                    Err(Error::Parse(format!(
                        "unknown potential {s:?}; expected linear | exp | log_ball | fubini | poly:c1,c2,..."
                    )))
                }
            }
        }
    }
}
