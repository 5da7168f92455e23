//! Egerváry's criterion for two trinomials to be related by rotation or
//! conjugation, and the equilibrium-field description of the roots via the
//! polytopes `P_s` and `P_(s+t)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{circular_distance, Angle, ComplexValue, Tolerances, Trinomial};

/// Vertices of `P_s` (the `s`-th roots of `−(2s+t)p/(s+t)`) and of `P_(s+t)`
/// (the `(s+t)`-th roots of `−(2s+t)q/s`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolytopePair {
    pub vertices_s: Vec<ComplexValue>,
    pub vertices_st: Vec<ComplexValue>,
}

impl PolytopePair {
    pub fn vertices(&self) -> impl Iterator<Item = &ComplexValue> {
        self.vertices_s.iter().chain(&self.vertices_st)
    }
}

/// Which sign of `±` in the congruence held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignBranch {
    /// Differences of arguments: `f2(z) = λ·f1(z·e^(iψ))`.
    Rotation,
    /// Sums of arguments: `f2` is a rotation of the conjugate of `f1`.
    Conjugation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub sign_branch: Option<SignBranch>,
}

/// `−(s+t)(arg p1 ± arg p2) + s(arg q1 ± arg q2) ≡ 0 mod 2π`, trying `−` first.
pub fn equivalent(f1: &Trinomial, f2: &Trinomial, tol: &Tolerances) -> Result<EquivalenceVerdict> {
    if f1.support() != f2.support() {
        return Err(Error::SupportMismatch);
    }
    if f1.p().norm() == 0.0 || f2.p().norm() == 0.0 {
        return Err(Error::UndefinedArgument);
    }
    if !tol.norms_equal(f1.p().norm(), f2.p().norm()) || !tol.norms_equal(f1.q().norm(), f2.q().norm()) {
        return Err(Error::NormMismatch);
    }
    let n = f64::from(f1.degree());
    let s = f64::from(f1.s());
    let (ap1, ap2) = (Angle::of(f1.p()).radians(), Angle::of(f2.p()).radians());
    let (aq1, aq2) = (Angle::of(f1.q()).radians(), Angle::of(f2.q()).radians());

    let rotation = -n * (ap1 - ap2) + s * (aq1 - aq2);
    let conjugation = -n * (ap1 + ap2) + s * (aq1 + aq2);
    let sign_branch = if circular_distance(rotation, 0.0) <= tol.angle_tol {
        Some(SignBranch::Rotation)
    } else if circular_distance(conjugation, 0.0) <= tol.angle_tol {
        Some(SignBranch::Conjugation)
    } else {
        None
    };
    Ok(EquivalenceVerdict { equivalent: sign_branch.is_some(), sign_branch })
}

fn roots_of_negative(c: ComplexValue, k: u32) -> Vec<ComplexValue> {
    let radius = c.norm().powf(1.0 / f64::from(k));
    let arg = Angle::of(c).radians();
    (0..k)
        .map(|j| {
            let phase = (arg + f64::from(2 * j + 1) * std::f64::consts::PI) / f64::from(k);
            ComplexValue::from_polar(radius, phase)
        })
        .collect()
}

pub fn polytopes(f: &Trinomial) -> Result<PolytopePair> {
    if f.p().norm() == 0.0 {
        return Err(Error::ZeroMiddleCoefficient);
    }
    let (s, n) = (f64::from(f.s()), f64::from(f.degree()));
    let weight = 2.0 * s + f64::from(f.t());
    Ok(PolytopePair {
        vertices_s: roots_of_negative(f.p() * (weight / n), f.s()),
        vertices_st: roots_of_negative(f.q() * (weight / s), f.degree()),
    })
}

/// `Σ 1/(z − w)` over all vertices `w` of both polytopes.
///
/// This equals `(2s+t)·z^(s−1)·f(z) / (A(z)·B(z))` where `A` and `B` are the
/// monic polynomials vanishing on the two vertex sets, so it vanishes at the
/// roots of `f` and, for `s > 1`, at `z = 0`.
pub fn field_residual(pp: &PolytopePair, z: ComplexValue) -> Result<ComplexValue> {
    let mut sum = ComplexValue::new(0.0, 0.0);
    for &w in pp.vertices() {
        let d = z - w;
        if d.norm() == 0.0 {
            return Err(Error::PoleAtVertex);
        }
        sum += d.inv();
    }
    Ok(sum)
}
