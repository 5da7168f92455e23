//! Domain types shared by every module: supports, angles, tolerances and the
//! trinomial `z^(s+t) + p·z^t + q` itself.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Complex coefficients, roots and curve points.
pub type ComplexValue = Complex64;

/// Largest admitted degree `s + t`.
pub const MAX_DEGREE: u32 = 64;

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exponent pair of the trinomial `z^(s+t) + p·z^t + q` with `gcd(s, t) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Support {
    s: u32,
    t: u32,
}

impl Support {
    pub fn new(s: u32, t: u32) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::InvalidSupport { s, t, reason: "exponents must be positive" });
        }
        if gcd(s, t) != 1 {
            return Err(Error::InvalidSupport { s, t, reason: "exponents must be coprime" });
        }
        if s + t > MAX_DEGREE {
            return Err(Error::InvalidSupport { s, t, reason: "degree s + t exceeds 64" });
        }
        Ok(Support { s, t })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// The degree `s + t`.
    pub fn degree(&self) -> u32 {
        self.s + self.t
    }

    /// All coprime supports with `2 <= s + t <= max_degree`, ordered by degree then `s`.
    pub fn all_up_to(max_degree: u32) -> Vec<Support> {
        let mut out = Vec::new();
        for n in 2..=max_degree.min(MAX_DEGREE) {
            for s in 1..n {
                if let Ok(sup) = Support::new(s, n - s) {
                    out.push(sup);
                }
            }
        }
        out
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, t={})", self.s, self.t)
    }
}

/// Divides out `g = gcd(s_raw, t_raw)`.
///
/// Roots of the reduced trinomial are the `g`-th powers of the original roots,
/// so every reduced norm is the `g`-th power of an original norm.
pub fn reduce_support(s_raw: u32, t_raw: u32) -> Result<(Support, u32)> {
    if s_raw == 0 || t_raw == 0 {
        return Err(Error::InvalidSupport {
            s: s_raw,
            t: t_raw,
            reason: "exponents must be positive",
        });
    }
    let g = gcd(s_raw, t_raw);
    Ok((Support::new(s_raw / g, t_raw / g)?, g))
}

/// An angle reduced into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        Angle(reduce_angle(radians))
    }

    pub fn zero() -> Self {
        Angle(0.0)
    }

    /// Principal argument of `z`, reduced into `[0, 2π)`. Zero maps to zero.
    pub fn of(z: ComplexValue) -> Self {
        Angle::new(z.im.atan2(z.re))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Circular distance `min(|a − b|, 2π − |a − b|)`.
    pub fn distance(self, other: Angle) -> f64 {
        circular_distance(self.0, other.0)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

/// Reduces any finite angle into `[0, 2π)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid rounds tiny negatives up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = reduce_angle(a - b);
    d.min(TAU - d)
}

/// Distance from `x` to the nearest integer.
pub(crate) fn dist_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Classification tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Radians, or the equivalent distance for modular angle conditions.
    pub angle_tol: f64,
    /// Relative tolerance when comparing root norms.
    pub norm_rel_tol: f64,
    /// Bound on the scaled residual of an accepted root.
    pub residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { angle_tol: 1e-9, norm_rel_tol: 1e-6, residual_tol: 1e-9 }
    }
}

impl Tolerances {
    pub fn new(angle_tol: f64, norm_rel_tol: f64, residual_tol: f64) -> Result<Self> {
        for (name, v) in [
            ("angle_tol", angle_tol),
            ("norm_rel_tol", norm_rel_tol),
            ("residual_tol", residual_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Tolerances { angle_tol, norm_rel_tol, residual_tol })
    }

    /// `|a − b| <= norm_rel_tol · max(a, b)`.
    pub fn norms_equal(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.norm_rel_tol * a.abs().max(b.abs())
    }
}

/// The trinomial `z^(s+t) + p·z^t + q`, with `q ≠ 0` and `p` possibly zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trinomial {
    support: Support,
    p: ComplexValue,
    q: ComplexValue,
}

impl Trinomial {
    pub fn new(support: Support, p: ComplexValue, q: ComplexValue) -> Result<Self> {
        if !(p.re.is_finite() && p.im.is_finite()) {
            return Err(Error::NonFinite("p"));
        }
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::NonFinite("q"));
        }
        if q.norm() == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(Trinomial { support, p, q })
    }

    /// Convenience constructor from raw exponents and real/imaginary parts.
    pub fn from_parts(s: u32, t: u32, p: (f64, f64), q: (f64, f64)) -> Result<Self> {
        Trinomial::new(
            Support::new(s, t)?,
            ComplexValue::new(p.0, p.1),
            ComplexValue::new(q.0, q.1),
        )
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn s(&self) -> u32 {
        self.support.s
    }

    pub fn t(&self) -> u32 {
        self.support.t
    }

    pub fn degree(&self) -> u32 {
        self.support.degree()
    }

    pub fn p(&self) -> ComplexValue {
        self.p
    }

    pub fn q(&self) -> ComplexValue {
        self.q
    }

    pub fn with_p(&self, p: ComplexValue) -> Result<Self> {
        Trinomial::new(self.support, p, self.q)
    }

    pub fn eval(&self, z: ComplexValue) -> ComplexValue {
        let zt = z.powu(self.support.t);
        zt * z.powu(self.support.s) + self.p * zt + self.q
    }

    pub fn derivative(&self, z: ComplexValue) -> ComplexValue {
        let n = self.degree();
        let t = self.support.t;
        let ztm1 = z.powu(t - 1);
        ztm1 * (f64::from(n) * z.powu(self.support.s) + f64::from(t) * self.p)
    }

    /// Sum of the term magnitudes at `|z|`; the natural scale for `|f(z)|`.
    pub fn magnitude_scale(&self, z: ComplexValue) -> f64 {
        let r = z.norm();
        r.powi(self.degree() as i32) + self.p.norm() * r.powi(self.t() as i32) + self.q.norm()
    }

    /// Backward error `|f(z)| / (|z|^(s+t) + |p|·|z|^t + |q|)`.
    pub fn scaled_residual(&self, z: ComplexValue) -> f64 {
        self.eval(z).norm() / self.magnitude_scale(z)
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "z^{} + ({}{:+}i)·z^{} + ({}{:+}i)",
            self.degree(),
            self.p.re,
            self.p.im,
            self.t(),
            self.q.re,
            self.q.im
        )
    }
}

/// `z^(s+t) + p·z^t + q` validated; alias kept for callers that think in operations.
pub fn make_trinomial(support: Support, p: ComplexValue, q: ComplexValue) -> Result<Trinomial> {
    Trinomial::new(support, p, q)
}
