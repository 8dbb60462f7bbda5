//! Order-4 scalar Taylor jets.
//!
//! A [`Jet4`] carries the value and the first four derivatives of a scalar
//! function at a point. Products follow the general Leibniz rule
//!
//! ```text
//! (fg)⁽⁴⁾ = f⁽⁴⁾g + 4 f‴g′ + 6 f″g″ + 4 f′g‴ + f g⁽⁴⁾,
//! ```
//!
//! and composition follows Faà di Bruno through order 4:
//!
//! ```text
//! (w∘a)′   = w′a′
//! (w∘a)″   = w′a″ + w″a′²
//! (w∘a)‴   = w′a‴ + 3 w″a′a″ + w‴a′³
//! (w∘a)⁗  = w′a⁗ + w″(4a′a‴ + 3a″²) + 6 w‴a′²a″ + w⁗a′⁴.
//! ```
//!
//! Order 4 is enough for everything downstream: the most derivative-hungry
//! consumer takes two radial derivatives of `ln(f'(r²) + r²f''(r²))`, which
//! consumes derivatives of `f` up to order 3 in `x = r²` and leaves one guard
//! order for cross-validation against finite differences.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Value and derivatives of orders 1–4 of a scalar function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet4 {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub v4: f64,
}

impl Jet4 {
    pub const fn new(v0: f64, v1: f64, v2: f64, v3: f64, v4: f64) -> Self {
        Jet4 { v0, v1, v2, v3, v4 }
    }

    /// The jet of a constant function.
    pub const fn constant(c: f64) -> Self {
        Jet4::new(c, 0.0, 0.0, 0.0, 0.0)
    }

    /// The jet of the identity `x ↦ x` at the point `x`.
    pub const fn variable(x: f64) -> Self {
        Jet4::new(x, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.v0.is_finite()
            && self.v1.is_finite()
            && self.v2.is_finite()
            && self.v3.is_finite()
            && self.v4.is_finite()
    }

    /// Scale every entry (the jet of `c·f`).
    pub fn scale(&self, c: f64) -> Self {
        Jet4::new(
            c * self.v0,
            c * self.v1,
            c * self.v2,
            c * self.v3,
            c * self.v4,
        )
    }

    /// Composition `w ∘ a` where `outer` lists the derivatives
    /// `w(a₀), w′(a₀), …, w⁗(a₀)` of the outer function at `a₀ = a.v0`.
    ///
    /// The result is exact through the highest order for which `outer` is
    /// exact; callers that only need the composed jet through order k may
    /// pad `outer` with zeros above order k.
    pub fn compose(outer: [f64; 5], a: Jet4) -> Jet4 {
        let [w0, w1, w2, w3, w4] = outer;
        let a1 = a.v1;
        let a2 = a.v2;
        let a3 = a.v3;
        let a4 = a.v4;
        Jet4 {
            v0: w0,
            v1: w1 * a1,
            v2: w1 * a2 + w2 * a1 * a1,
            v3: w1 * a3 + 3.0 * w2 * a1 * a2 + w3 * a1 * a1 * a1,
            v4: w1 * a4
                + w2 * (4.0 * a1 * a3 + 3.0 * a2 * a2)
                + 6.0 * w3 * a1 * a1 * a2
                + w4 * a1 * a1 * a1 * a1,
        }
    }
}

impl Add for Jet4 {
    type Output = Jet4;
    fn add(self, o: Jet4) -> Jet4 {
        Jet4::new(
            self.v0 + o.v0,
            self.v1 + o.v1,
            self.v2 + o.v2,
            self.v3 + o.v3,
            self.v4 + o.v4,
        )
    }
}

impl Sub for Jet4 {
    type Output = Jet4;
    fn sub(self, o: Jet4) -> Jet4 {
        Jet4::new(
            self.v0 - o.v0,
            self.v1 - o.v1,
            self.v2 - o.v2,
            self.v3 - o.v3,
            self.v4 - o.v4,
        )
    }
}

impl Neg for Jet4 {
    type Output = Jet4;
    fn neg(self) -> Jet4 {
        self.scale(-1.0)
    }
}

impl Mul for Jet4 {
    type Output = Jet4;
    fn mul(self, o: Jet4) -> Jet4 {
        jet_mul(self, o)
    }
}

/// Order-4 jet of the pointwise product (general Leibniz rule).
pub fn jet_mul(a: Jet4, b: Jet4) -> Jet4 {
    Jet4 {
        v0: a.v0 * b.v0,
        v1: a.v1 * b.v0 + a.v0 * b.v1,
        v2: a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
        v3: a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3,
        v4: a.v4 * b.v0 + 4.0 * a.v3 * b.v1 + 6.0 * a.v2 * b.v2 + 4.0 * a.v1 * b.v3 + a.v0 * b.v4,
    }
}

/// Elementary outer functions available for jet composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JetFn {
    Exp,
    Ln,
    Reciprocal,
    /// `u ↦ u^p` for real `p`; requires a positive base unless `p` is a
    /// nonnegative integer.
    Power(f64),
}

/// Order-4 jet of `kind ∘ a` (chain rule through order 4).
///
/// `Ln` requires `a.v0 > 0`, `Reciprocal` requires `a.v0 ≠ 0`, and
/// `Power(p)` with non-integer or negative `p` requires `a.v0 > 0`.
pub fn jet_elementary(kind: JetFn, a: Jet4) -> Result<Jet4> {
    let u = a.v0;
    let outer = match kind {
        JetFn::Exp => {
            let e = u.exp();
            [e, e, e, e, e]
        }
        JetFn::Ln => {
            if u <= 0.0 {
                return Err(Error::JetDomain {
                    func: "ln",
                    value: u,
                });
            }
            let r = 1.0 / u;
            let r2 = r * r;
            [u.ln(), r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2]
        }
        JetFn::Reciprocal => {
            if u == 0.0 {
                return Err(Error::JetDomain {
                    func: "reciprocal",
                    value: u,
                });
            }
            let r = 1.0 / u;
            let r2 = r * r;
            [r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2, 24.0 * r2 * r2 * r]
        }
        JetFn::Power(p) => {
            let integral = p >= 0.0 && p.fract() == 0.0;
            if u <= 0.0 && !integral {
                return Err(Error::JetDomain {
                    func: "power",
                    value: u,
                });
            }
            // Falling-factorial derivatives: d^k/du^k u^p = p(p-1)…(p-k+1) u^{p-k}.
            let mut outer = [0.0; 5];
            let mut coeff = 1.0;
            for (k, slot) in outer.iter_mut().enumerate() {
                let e = p - k as f64;
                *slot = if coeff == 0.0 { 0.0 } else { coeff * u.powf(e) };
                coeff *= e;
            }
            outer
        }
    };
    Ok(Jet4::compose(outer, a))
}
