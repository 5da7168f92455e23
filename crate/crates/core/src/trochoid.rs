//! Coefficient loci with a root of prescribed norm `v`.
//!
//! With `q` fixed, the values of `−p` for which `f` has a root `v·e^(iφ)` trace
//! the hypotrochoid
//!
//! ```text
//! X(φ) = v^s·e^(isφ) + |q|·v^(−t)·e^(i(arg q − tφ))
//! ```
//!
//! and with `p` fixed the admissible `q` trace an epitrochoid. Both curves are
//! parameterized here by the root angle `φ ∈ [0, 2π)`, which closes them; in
//! roulette terms the rolling angle is `sφ` (hypo) or `tφ` (epi).

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Angle, ComplexValue, Support, Tolerances};

/// Relative tolerance for the named special shapes.
const SHAPE_REL_TOL: f64 = 1e-12;

/// Relative tolerance on `|d − r|` for the cusp regime.
const CUSP_REL_TOL: f64 = 1e-9;

/// Crossings closer than this to `δ = 0` or `δ = π` are the trivial ones.
const EDGE_DELTA: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Hypo,
    Epi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrochoidParams {
    pub kind: CurveKind,
    pub support: Support,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub r: f64,
    pub d: f64,
    /// Added to the anchor argument passed to [`curve_point`].
    pub rotation: Angle,
    pub v: f64,
}

fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

impl TrochoidParams {
    pub fn is_hypocycloid(&self) -> bool {
        self.kind == CurveKind::Hypo && rel_eq(self.d, self.r, SHAPE_REL_TOL)
    }

    pub fn is_rhodonea(&self) -> bool {
        self.kind == CurveKind::Hypo && rel_eq(self.big_r - self.r, self.d, SHAPE_REL_TOL)
    }

    pub fn is_ellipse(&self) -> bool {
        self.kind == CurveKind::Hypo && rel_eq(self.big_r, 2.0 * self.r, SHAPE_REL_TOL)
    }

    pub fn is_epicycloid(&self) -> bool {
        self.kind == CurveKind::Epi && rel_eq(self.d, self.r, SHAPE_REL_TOL)
    }

    pub fn is_limacon(&self) -> bool {
        self.kind == CurveKind::Epi && rel_eq(self.big_r, self.r, SHAPE_REL_TOL)
    }

    /// Largest distance of a curve point from the origin.
    pub fn max_radius(&self) -> f64 {
        match self.kind {
            CurveKind::Hypo => self.big_r - self.r + self.d,
            CurveKind::Epi => self.big_r + self.r + self.d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub phi: Angle,
    pub point: ComplexValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularityKind {
    Node,
    Cusp,
    MultiPoint,
}

impl SingularityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularityKind::Node => "node",
            SingularityKind::Cusp => "cusp",
            SingularityKind::MultiPoint => "multipoint",
        }
    }
}

/// A singular point of the hypotrochoid, reported as the coefficient `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityReport {
    pub kind: SingularityKind,
    pub location: ComplexValue,
    /// Root angles mapping to `location`: two for nodes and cusps (equal for
    /// cusps), `s + t` for the multiple point.
    pub phis: Vec<Angle>,
    pub v: f64,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite and positive, got {x}")))
    }
}

/// `R = v^s(s+t)/t`, `r = v^s·s/t`, `d = |q|·v^(−t)`.
pub fn hypotrochoid_params(support: Support, q_norm: f64, v: f64) -> Result<TrochoidParams> {
    positive("|q|", q_norm)?;
    positive("v", v)?;
    let (s, t) = (f64::from(support.s()), f64::from(support.t()));
    let vs = v.powi(support.s() as i32);
    Ok(TrochoidParams {
        kind: CurveKind::Hypo,
        support,
        big_r: vs * (s + t) / t,
        r: vs * s / t,
        d: q_norm / v.powi(support.t() as i32),
        rotation: Angle::zero(),
        v,
    })
}

/// `R = v^t·|p|·s/(s+t)`, `r = v^t·|p|·t/(s+t)`, `d = v^(s+t)`.
pub fn epitrochoid_params(support: Support, p_norm: f64, v: f64) -> Result<TrochoidParams> {
    positive("v", v)?;
    if p_norm == 0.0 {
        return Err(Error::ZeroMiddleCoefficient);
    }
    positive("|p|", p_norm)?;
    let (s, t) = (f64::from(support.s()), f64::from(support.t()));
    let scale = v.powi(support.t() as i32) * p_norm / (s + t);
    Ok(TrochoidParams {
        kind: CurveKind::Epi,
        support,
        big_r: scale * s,
        r: scale * t,
        d: v.powi(support.degree() as i32),
        rotation: Angle::zero(),
        v,
    })
}

/// Point of the curve for root angle `phi`.
///
/// Hypo: returns `X` such that `p = −X` puts a root at `v·e^(iφ)`; `arg_anchor`
/// is `arg q`. Epi: returns `q` itself; `arg_anchor` is `arg p`.
pub fn curve_point(params: &TrochoidParams, arg_anchor: Angle, phi: Angle) -> ComplexValue {
    let anchor = params.rotation.radians() + arg_anchor.radians();
    let phi = phi.radians();
    let s = f64::from(params.support.s());
    let t = f64::from(params.support.t());
    match params.kind {
        CurveKind::Hypo => {
            ComplexValue::from_polar(params.big_r - params.r, s * phi)
                + ComplexValue::from_polar(params.d, anchor - t * phi)
        }
        CurveKind::Epi => {
            ComplexValue::from_polar(params.big_r + params.r, PI + anchor + t * phi)
                - ComplexValue::from_polar(params.d, (s + t) * phi)
        }
    }
}

/// `n` samples at `φ = 2πi/n`.
pub fn sample_curve(params: &TrochoidParams, arg_anchor: Angle, n: usize) -> Result<Vec<CurveSample>> {
    if n < 2 {
        return Err(Error::InvalidParameter("curve sampling needs at least 2 points".into()));
    }
    Ok((0..n)
        .map(|i| {
            let phi = Angle::new(TAU * i as f64 / n as f64);
            CurveSample { phi, point: curve_point(params, arg_anchor, phi) }
        })
        .collect())
}

/// Bisection on a bracketing interval until it cannot shrink further.
fn bisect(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut ga = g(a);
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return m;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
}

/// Singular points of the hypotrochoid for `(support, q, v)`, as values of `p`.
///
/// Two root angles `μ ± δ` give the same point exactly when
/// `e^(i((s+t)μ − arg q)) = ε ∈ {±1}` and `ε·v^s·sin(sδ) = |q|v^(−t)·sin(tδ)`.
/// The first condition puts the point on a ray of the fan, so the search runs
/// ray by ray over the one-dimensional `δ`.
pub fn singularities(
    support: Support,
    q: ComplexValue,
    v: f64,
    tol: &Tolerances,
) -> Result<Vec<SingularityReport>> {
    if q.norm() == 0.0 {
        return Err(Error::ZeroConstantTerm);
    }
    let params = hypotrochoid_params(support, q.norm(), v)?;
    let arg_q = Angle::of(q).radians();
    let (s, t, n) = (support.s(), support.t(), support.degree());
    let (sf, tf, nf) = (f64::from(s), f64::from(t), f64::from(n));
    let vs = params.big_r - params.r;
    let d = params.d;
    let scale = vs + d;
    let mut out = Vec::new();

    let cusp_regime = (d - params.r).abs() <= CUSP_REL_TOL * d.max(params.r);
    if cusp_regime {
        for k in 0..n {
            let phi = (arg_q + TAU * f64::from(k)) / nf;
            out.push(SingularityReport {
                kind: SingularityKind::Cusp,
                location: -ComplexValue::from_polar(vs * (sf + tf) / tf, sf * phi),
                phis: vec![Angle::new(phi); 2],
                v,
            });
        }
    }

    let rhodonea = (vs - d).abs() <= CUSP_REL_TOL * scale;
    if rhodonea {
        out.push(SingularityReport {
            kind: SingularityKind::MultiPoint,
            location: ComplexValue::new(0.0, 0.0),
            phis: (0..n).map(|k| Angle::new((arg_q + PI + TAU * f64::from(k)) / nf)).collect(),
            v,
        });
    }

    let grid = 64 * s.max(t) as usize + 64;
    for m in 0..n {
        let mu = (arg_q + PI * f64::from(m)) / nf;
        let eps = if m % 2 == 0 { 1.0 } else { -1.0 };
        // sign of ε·v^s·U_(s−1)(cos δ) − d·U_(t−1)(cos δ) on (0, π)
        let g = |delta: f64| (eps * vs * (sf * delta).sin() - d * (tf * delta).sin()) / delta.sin();
        let mut prev = (PI / grid as f64, g(PI / grid as f64));
        for i in 2..grid {
            let delta = PI * i as f64 / grid as f64;
            let cur = (delta, g(delta));
            let root = if cur.1 == 0.0 {
                Some(cur.0)
            } else if (prev.1 < 0.0) != (cur.1 < 0.0) && prev.1 != 0.0 {
                Some(bisect(g, prev.0, cur.0))
            } else {
                None
            };
            prev = cur;
            let Some(delta) = root else { continue };
            if !(EDGE_DELTA..=PI - EDGE_DELTA).contains(&delta) {
                continue;
            }
            let x = ComplexValue::from_polar(1.0, sf * mu)
                * (vs * (sf * delta).cos() + eps * d * (tf * delta).cos());
            if rhodonea && x.norm() <= tol.angle_tol.max(1e-9) * scale {
                continue;
            }
            out.push(SingularityReport {
                kind: SingularityKind::Node,
                location: -x,
                phis: vec![Angle::new(mu + delta), Angle::new(mu - delta)],
                v,
            });
        }
    }
    Ok(out)
}
