//! Counting roots of norm below `v` without solving: the lopsided trichotomy
//! and, when no term dominates, the integer count in Bohl's interval.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{dist_to_integer, Angle, Trinomial};

/// Endpoints closer than this to an integer raise the boundary flag.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Relative slack under which a triangle inequality counts as an equality.
const DEGENERATE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dominant {
    None,
    ConstantTerm,
    MiddleTerm,
    LeadingTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LopsidedResult {
    pub dominant: Dominant,
    /// `[|q|, |p|·v^t, v^(s+t)]`.
    pub list_values: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Degeneracy {
    None,
    LeadingEqualsSum,
    ConstantEqualsSum,
    MiddleEqualsSum,
}

/// Angles of the triangle with sides `v^(s+t)`, `|p|·v^t`, `|q|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleData {
    /// Angle between the sides `|p|·v^t` and `|q|`, in `[0, π]`.
    pub alpha: f64,
    /// Angle between the sides `v^(s+t)` and `|q|`, in `[0, π]`.
    pub beta: f64,
    pub degenerate: Degeneracy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohlInterval {
    pub lo: f64,
    pub hi: f64,
    pub midpoint_k: f64,
}

impl BohlInterval {
    fn from_center(center: f64, half: f64) -> Self {
        BohlInterval { lo: center - half, hi: center + half, midpoint_k: center }
    }

    /// Integers strictly inside `(lo, hi)`.
    pub fn integer_count(&self) -> usize {
        let c = self.hi.ceil() - self.lo.floor() - 1.0;
        if c > 0.0 {
            c as usize
        } else {
            0
        }
    }

    /// True when either endpoint is within [`BOUNDARY_TOL`] of an integer.
    pub fn on_boundary(&self) -> bool {
        dist_to_integer(self.lo) <= BOUNDARY_TOL || dist_to_integer(self.hi) <= BOUNDARY_TOL
    }

    /// Same interval shifted by an integer.
    pub fn shifted(&self, k: i64) -> Self {
        let k = k as f64;
        BohlInterval { lo: self.lo + k, hi: self.hi + k, midpoint_k: self.midpoint_k + k }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    Lopsided,
    Interval,
    /// `p = 0` with `v^(s+t) = |q|`: every root has norm exactly `v`.
    EqualNorms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootCountResult {
    pub count: usize,
    pub method: CountMethod,
    pub boundary: bool,
}

fn check_radius(v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("radius must be finite and positive, got {v}")))
    }
}

pub fn lopsided_at(f: &Trinomial, v: f64) -> Result<LopsidedResult> {
    check_radius(v)?;
    let q = f.q().norm();
    let mid = f.p().norm() * v.powi(f.t() as i32);
    let lead = v.powi(f.degree() as i32);
    let dominant = if q > mid + lead {
        Dominant::ConstantTerm
    } else if mid > q + lead {
        Dominant::MiddleTerm
    } else if lead > q + mid {
        Dominant::LeadingTerm
    } else {
        Dominant::None
    };
    Ok(LopsidedResult { dominant, list_values: [q, mid, lead] })
}

pub fn bohl_triangle(f: &Trinomial, v: f64) -> Result<TriangleData> {
    let lop = lopsided_at(f, v)?;
    if lop.dominant != Dominant::None {
        return Err(Error::NotATriangle);
    }
    let [q, p, l] = lop.list_values;
    if p == 0.0 {
        // sides l, 0, q with l = q: the constant side spans the other two
        return Ok(TriangleData { alpha: 0.0, beta: 0.0, degenerate: Degeneracy::ConstantEqualsSum });
    }
    let slack = DEGENERATE_REL_TOL * (q + p + l);
    if (l - (p + q)).abs() <= slack {
        return Ok(TriangleData { alpha: PI, beta: 0.0, degenerate: Degeneracy::LeadingEqualsSum });
    }
    if (q - (l + p)).abs() <= slack {
        return Ok(TriangleData { alpha: 0.0, beta: 0.0, degenerate: Degeneracy::ConstantEqualsSum });
    }
    if (p - (l + q)).abs() <= slack {
        return Ok(TriangleData { alpha: 0.0, beta: PI, degenerate: Degeneracy::MiddleEqualsSum });
    }
    let cos_alpha = ((p * p + q * q - l * l) / (2.0 * p * q)).clamp(-1.0, 1.0);
    let cos_beta = ((l * l + q * q - p * p) / (2.0 * l * q)).clamp(-1.0, 1.0);
    Ok(TriangleData { alpha: cos_alpha.acos(), beta: cos_beta.acos(), degenerate: Degeneracy::None })
}

/// Endpoints for explicit argument values, without any normalization.
///
/// Replacing `arg_p` by `arg_p + 2π` shifts both endpoints by `s + t`, and
/// `arg_q` by `arg_q + 2π` shifts them by `-s`, so the integer count does not
/// depend on the branch.
pub fn interval_for_arguments(
    s: u32,
    t: u32,
    arg_p: f64,
    arg_q: f64,
    tri: &TriangleData,
) -> BohlInterval {
    let n = f64::from(s + t);
    let t = f64::from(t);
    let center = (n * (PI + arg_p - arg_q) - t * (PI - arg_q)) / TAU;
    let half = (n * tri.alpha + t * tri.beta) / TAU;
    BohlInterval::from_center(center, half)
}

/// Bohl's interval with principal arguments, shifted by an integer so that
/// the midpoint lies in `[-1/2, 1/2)`.
pub fn bohl_interval(f: &Trinomial, v: f64) -> Result<BohlInterval> {
    if f.p().norm() == 0.0 {
        return Err(Error::UndefinedArgument);
    }
    let tri = bohl_triangle(f, v)?;
    let raw = interval_for_arguments(
        f.s(),
        f.t(),
        Angle::of(f.p()).radians(),
        Angle::of(f.q()).radians(),
        &tri,
    );
    let shift = -(raw.midpoint_k + 0.5).floor();
    Ok(raw.shifted(shift as i64))
}

pub fn count_roots_below(f: &Trinomial, v: f64) -> Result<RootCountResult> {
    let lop = lopsided_at(f, v)?;
    let lopsided = |count| Ok(RootCountResult { count, method: CountMethod::Lopsided, boundary: false });
    match lop.dominant {
        Dominant::ConstantTerm => return lopsided(0),
        Dominant::MiddleTerm => return lopsided(f.t() as usize),
        Dominant::LeadingTerm => return lopsided(f.degree() as usize),
        Dominant::None => {}
    }
    if f.p().norm() == 0.0 {
        let equal_norm = f.q().norm().powf(1.0 / f64::from(f.degree()));
        let count = if v <= equal_norm { 0 } else { f.degree() as usize };
        return Ok(RootCountResult { count, method: CountMethod::EqualNorms, boundary: true });
    }
    let interval = bohl_interval(f, v)?;
    Ok(RootCountResult {
        count: interval.integer_count().min(f.degree() as usize),
        method: CountMethod::Interval,
        boundary: interval.on_boundary(),
    })
}
