//! Paths on the argument torus `(arg p, arg q)`: the rotation paths `γ`, the
//! cyclic group action, the closed knot path `ρ`, winding numbers, and the
//! radial retraction onto the unit torus.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{circular_distance, reduce_angle, Angle, ComplexValue, Support};

/// Largest rounding residual accepted when reading off a winding number.
const WINDING_RESIDUAL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusPoint {
    pub phi_p: Angle,
    pub phi_q: Angle,
}

impl TorusPoint {
    pub fn new(phi_p: f64, phi_q: f64) -> Self {
        TorusPoint { phi_p: Angle::new(phi_p), phi_q: Angle::new(phi_q) }
    }

    pub fn of(p: ComplexValue, q: ComplexValue) -> Self {
        TorusPoint { phi_p: Angle::of(p), phi_q: Angle::of(q) }
    }

    /// Larger of the two circular coordinate distances.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        self.phi_p.distance(other.phi_p).max(self.phi_q.distance(other.phi_q))
    }

    /// Point of the standard torus in space with major radius 2 and minor radius 1;
    /// `phi_q` runs along the core circle.
    pub fn embed(&self) -> [f64; 3] {
        let (a, b) = (self.phi_p.radians(), self.phi_q.radians());
        let ring = 2.0 + a.cos();
        [ring * b.cos(), ring * b.sin(), a.sin()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotPath {
    pub samples: Vec<TorusPoint>,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindingNumbers {
    pub around_p: i64,
    pub around_q: i64,
}

/// `φ ↦ (arg p + 2πsφ/(s+t), arg q + 2πφ)` sampled at `n` points of `[0, 1]`.
pub fn gamma_path(start: TorusPoint, support: Support, n: usize) -> Result<KnotPath> {
    if n < 2 {
        return Err(Error::InvalidParameter("gamma path needs at least 2 samples".into()));
    }
    let ratio = f64::from(support.s()) / f64::from(support.degree());
    let samples = (0..n)
        .map(|i| {
            let phi = i as f64 / (n - 1) as f64;
            TorusPoint::new(
                start.phi_p.radians() + TAU * ratio * phi,
                start.phi_q.radians() + TAU * phi,
            )
        })
        .collect();
    Ok(KnotPath { samples, closed: false })
}

/// Action of `k ∈ Z/(s+t)` shifting `arg p` by `2πks/(s+t)`.
pub fn group_act(k: i64, pt: TorusPoint, support: Support) -> TorusPoint {
    let n = i64::from(support.degree());
    let step = (k.rem_euclid(n) * i64::from(support.s())).rem_euclid(n);
    TorusPoint {
        phi_p: Angle::new(pt.phi_p.radians() + TAU * step as f64 / n as f64),
        phi_q: pt.phi_q,
    }
}

/// `φ ↦ (offset + 2πsφ, 2π(s+t)φ)` at `φ = 0, 1/n, ..., 1`.
pub fn knot_path(support: Support, offset: Angle, n: usize) -> Result<KnotPath> {
    if n < 3 {
        return Err(Error::InvalidParameter("knot path needs at least 3 samples".into()));
    }
    let (s, deg) = (f64::from(support.s()), f64::from(support.degree()));
    let samples: Vec<TorusPoint> = (0..=n)
        .map(|i| {
            let phi = i as f64 / n as f64;
            TorusPoint::new(offset.radians() + TAU * s * phi, TAU * deg * phi)
        })
        .collect();
    let closed = samples[0].distance(&samples[n]) < 1e-9;
    Ok(KnotPath { samples, closed })
}

/// Distance from `pt` to the knot path with the given offset, computed from
/// the parameterization rather than from samples.
pub fn distance_to_knot(support: Support, offset: Angle, pt: TorusPoint) -> f64 {
    let (s, n) = (f64::from(support.s()), f64::from(support.degree()));
    (0..support.degree())
        .map(|m| {
            let along = s * (pt.phi_q.radians() + TAU * f64::from(m)) / n;
            circular_distance(pt.phi_p.radians() - offset.radians(), along)
        })
        .fold(f64::INFINITY, f64::min)
}

fn signed_step(from: Angle, to: Angle) -> f64 {
    let d = reduce_angle(to.radians() - from.radians());
    if d > PI {
        d - TAU
    } else {
        d
    }
}

pub fn winding_numbers(path: &KnotPath) -> Result<WindingNumbers> {
    if !path.closed {
        return Err(Error::InvalidParameter("winding numbers need a closed path".into()));
    }
    let (mut total_p, mut total_q) = (0.0, 0.0);
    for w in path.samples.windows(2) {
        let dp = signed_step(w[0].phi_p, w[1].phi_p);
        let dq = signed_step(w[0].phi_q, w[1].phi_q);
        if dp.abs() >= PI - 1e-12 || dq.abs() >= PI - 1e-12 {
            return Err(Error::InsufficientSampling(format!(
                "angular step of {:.3} rad is not below π",
                dp.abs().max(dq.abs())
            )));
        }
        total_p += dp;
        total_q += dq;
    }
    let (wp, wq) = (total_p / TAU, total_q / TAU);
    let residual = (wp - wp.round()).abs().max((wq - wq.round()).abs());
    if residual > WINDING_RESIDUAL {
        return Err(Error::InsufficientSampling(format!("rounding residual {residual:e}")));
    }
    Ok(WindingNumbers { around_p: wp.round() as i64, around_q: wq.round() as i64 })
}

/// `(p/((1−l) + l|p|), q/((1−l) + l|q|))`.
pub fn retract_to_unit_torus(
    p: ComplexValue,
    q: ComplexValue,
    l: f64,
) -> Result<(ComplexValue, ComplexValue)> {
    if p.norm() == 0.0 || q.norm() == 0.0 {
        return Err(Error::UndefinedArgument);
    }
    if !(0.0..=1.0).contains(&l) {
        return Err(Error::InvalidParameter(format!("homotopy parameter {l} outside [0, 1]")));
    }
    let scale = |z: ComplexValue| z / ((1.0 - l) + l * z.norm());
    Ok((scale(p), scale(q)))
}
