//! The ray fan `F(s,t,q)` in the `p`-plane, fan membership with parity, and
//! the classification of which gaps `|a_j| < |a_(j+1)|` are present.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{dist_to_integer, Angle, ComplexValue, Support, Tolerances, Trinomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: u64) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// The `2(s+t)` rays at angles `(s·arg q + kπ)/(s+t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fan {
    pub support: Support,
    pub arg_q: Angle,
    pub ray_angles: Vec<Angle>,
}

impl Fan {
    pub fn len(&self) -> usize {
        self.ray_angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ray_angles.is_empty()
    }

    pub fn parity(&self, k: usize) -> Parity {
        Parity::of(k as u64)
    }

    /// Point at distance `length` along ray `k`.
    pub fn endpoint(&self, k: usize, length: f64) -> ComplexValue {
        ComplexValue::from_polar(length, self.ray_angles[k].radians())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FanMembership {
    pub on_fan: bool,
    pub ray_index: Option<usize>,
    pub parity: Option<Parity>,
}

/// `member[j]` is true when `|a_j| ≠ |a_(j+1)|`, for `j = 0..=s+t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UjMembership {
    pub member: Vec<bool>,
}

impl UjMembership {
    pub fn indices(&self) -> Vec<usize> {
        self.member.iter().enumerate().filter(|(_, &m)| m).map(|(j, _)| j).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SameNormPair {
    None,
    Pair,
    /// `p = 0`: every root has norm `|q|^(1/(s+t))`.
    AllEqual,
}

impl SameNormPair {
    pub fn exists(self) -> bool {
        self != SameNormPair::None
    }
}

pub fn build_fan(support: Support, arg_q: Angle) -> Fan {
    let n = f64::from(support.degree());
    let s = f64::from(support.s());
    let ray_angles = (0..2 * support.degree())
        .map(|k| Angle::new((s * arg_q.radians() + f64::from(k) * PI) / n))
        .collect();
    Fan { support, arg_q, ray_angles }
}

/// `((s+t)·arg p − s·arg q)/π`; an integer exactly on the fan, and then
/// congruent to the ray index modulo `2(s+t)`.
pub fn fan_coordinate(support: Support, arg_p: Angle, arg_q: Angle) -> f64 {
    (f64::from(support.degree()) * arg_p.radians() - f64::from(support.s()) * arg_q.radians()) / PI
}

pub fn fan_membership(p: ComplexValue, fan: &Fan, tol: &Tolerances) -> Result<FanMembership> {
    if p.norm() == 0.0 {
        return Err(Error::UndefinedArgument);
    }
    let x = fan_coordinate(fan.support, Angle::of(p), fan.arg_q);
    if dist_to_integer(x) > tol.angle_tol {
        return Ok(FanMembership { on_fan: false, ray_index: None, parity: None });
    }
    let k = (x.round() as i64).rem_euclid(2 * i64::from(fan.support.degree())) as usize;
    Ok(FanMembership { on_fan: true, ray_index: Some(k), parity: Some(fan.parity(k)) })
}

/// `|q|^(s/(s+t))·((t/s)^(s/(s+t)) + (s/t)^(t/(s+t)))`.
pub fn critical_radius(support: Support, q_norm: f64) -> f64 {
    let (s, t) = (f64::from(support.s()), f64::from(support.t()));
    let n = s + t;
    q_norm.powf(s / n) * ((t / s).powf(s / n) + (s / t).powf(t / n))
}

/// `(|q|·t/s)^(1/(s+t))`, the norm of the double root on the critical circle.
pub fn double_root_norm(support: Support, q_norm: f64) -> f64 {
    let (s, t) = (f64::from(support.s()), f64::from(support.t()));
    (q_norm * t / s).powf(1.0 / (s + t))
}

const DISK_REL_TOL: f64 = 1e-12;

pub fn classify_uj(f: &Trinomial, tol: &Tolerances) -> UjMembership {
    let n = f.degree() as usize;
    let mut member = vec![false; n + 1];
    member[0] = true;
    member[n] = true;
    if f.p().norm() == 0.0 {
        return UjMembership { member };
    }
    let fan = build_fan(f.support(), Angle::of(f.q()));
    let m = fan_membership(f.p(), &fan, tol).expect("p is nonzero");
    // slice points computed in floating point land a few ulps either side of the circle
    let outside_disk = f.p().norm() > critical_radius(f.support(), f.q().norm()) * (1.0 + DISK_REL_TOL);
    let s = f.s() as usize;
    for (j, slot) in member.iter_mut().enumerate().take(n).skip(1) {
        let blocked = m.on_fan && m.parity == Some(Parity::of((s + j) as u64));
        *slot = !blocked || (j == f.t() as usize && outside_disk);
    }
    UjMembership { member }
}

pub fn same_norm_pair_exists(f: &Trinomial, tol: &Tolerances) -> SameNormPair {
    if f.p().norm() == 0.0 {
        return SameNormPair::AllEqual;
    }
    let uj = classify_uj(f, tol);
    if uj.member[1..f.degree() as usize].iter().all(|&m| m) {
        SameNormPair::None
    } else {
        SameNormPair::Pair
    }
}
