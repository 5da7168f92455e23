//! Closed-form discriminant of `z^(s+t) + p·z^t + q`, its zero set in a
//! `q`-slice, the amoeba line it lies over, and coamoeba samples.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::types::{Angle, ComplexValue, Support, Trinomial};

/// Relative threshold for the two-term difference to count as zero.
pub const VANISH_REL_TOL: f64 = 1e-9;

/// Above this degree the value is only reported in log form.
pub const LOG_FORM_DEGREE: u32 = 30;

/// `D = (−1)^(n(n−1)/2) · q^(t−1) · (q^s·n^n − (−1)^n·p^n·s^s·t^t)` with `n = s + t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminantValue {
    /// Direct value, or `None` when the degree exceeds [`LOG_FORM_DEGREE`].
    pub value: Option<ComplexValue>,
    /// `log|D|`; `-inf` when `D = 0` exactly.
    pub log_abs: f64,
    /// `arg D` in `[0, 2π)`.
    pub arg: Angle,
    pub vanishes: bool,
}

/// `log|p| = slope·log|q| + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmoebaLine {
    pub slope: f64,
    pub intercept: f64,
}

impl AmoebaLine {
    pub fn log_p(&self, log_q: f64) -> f64 {
        self.slope * log_q + self.intercept
    }
}

fn ln_u(x: u32) -> f64 {
    f64::from(x).ln()
}

pub fn discriminant_value(f: &Trinomial) -> DiscriminantValue {
    let (s, t, n) = (f.s(), f.t(), f.degree());
    let (p, q) = (f.p(), f.q());

    // the two terms A = q^s n^n and B = (−1)^n p^n s^s t^t in log-polar form
    let log_a = f64::from(s) * q.norm().ln() + f64::from(n) * ln_u(n);
    let arg_a = f64::from(s) * q.arg();
    let log_b = f64::from(n) * p.norm().ln() + f64::from(s) * ln_u(s) + f64::from(t) * ln_u(t);
    let arg_b = f64::from(n) * (p.arg() + PI);

    // A − B = big·(1 − ratio) with |ratio| <= 1
    let (log_big, arg_big, ratio) = if log_a >= log_b {
        (log_a, arg_a, ComplexValue::from_polar((log_b - log_a).exp(), arg_b - arg_a))
    } else {
        (log_b, arg_b + PI, ComplexValue::from_polar((log_a - log_b).exp(), arg_a - arg_b))
    };
    let diff = ComplexValue::new(1.0, 0.0) - ratio;
    let vanishes = diff.norm() <= VANISH_REL_TOL * (1.0 + ratio.norm());

    let sign_arg = if (u64::from(n) * u64::from(n - 1) / 2) % 2 == 1 { PI } else { 0.0 };
    let log_abs = f64::from(t - 1) * q.norm().ln() + log_big + diff.norm().ln();
    let arg = Angle::new(sign_arg + f64::from(t - 1) * q.arg() + arg_big + diff.arg());

    let value = (n <= LOG_FORM_DEGREE).then(|| {
        let a = q.powu(s) * f64::from(n).powi(n as i32);
        let mut b = p.powu(n) * f64::from(s).powi(s as i32) * f64::from(t).powi(t as i32);
        if n % 2 == 1 {
            b = -b;
        }
        let d = q.powu(t - 1) * (a - b);
        if sign_arg != 0.0 {
            -d
        } else {
            d
        }
    });
    DiscriminantValue { value, log_abs, arg, vanishes }
}

pub fn has_double_root(f: &Trinomial) -> bool {
    discriminant_value(f).vanishes
}

/// The `s + t` values of `p` with `p^(s+t) = (−1)^(s+t)·q^s·(s+t)^(s+t)/(s^s·t^t)`,
/// ordered by `k` in `arg p = ((s+t)π + s·arg q + 2πk)/(s+t)`.
pub fn discriminant_slice_points(support: Support, q: ComplexValue) -> Vec<ComplexValue> {
    let r = crate::fan::critical_radius(support, q.norm());
    slice_arguments(support, Angle::of(q))
        .into_iter()
        .map(|a| ComplexValue::from_polar(r, a.radians()))
        .collect()
}

fn slice_arguments(support: Support, arg_q: Angle) -> Vec<Angle> {
    let n = f64::from(support.degree());
    let base = n * PI + f64::from(support.s()) * arg_q.radians();
    (0..support.degree())
        .map(|k| Angle::new((base + TAU * f64::from(k)) / n))
        .collect()
}

pub fn amoeba_line(support: Support) -> AmoebaLine {
    let (s, t) = (f64::from(support.s()), f64::from(support.t()));
    let n = s + t;
    AmoebaLine { slope: s / n, intercept: ((t / s).powf(s / n) + (s / t).powf(t / n)).ln() }
}

/// `(arg p, arg q)` for every slice point over `n` equally spaced `arg q`.
pub fn coamoeba_samples(support: Support, n: usize) -> Vec<(Angle, Angle)> {
    (0..n)
        .flat_map(|i| {
            let arg_q = Angle::new(TAU * i as f64 / n as f64);
            slice_arguments(support, arg_q).into_iter().map(move |a| (a, arg_q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_fan, critical_radius, fan_membership};
    use crate::rootfinder::{find_roots, SolverConfig};
    use crate::types::Tolerances;

    fn tri(s: u32, t: u32, p: (f64, f64), q: (f64, f64)) -> Trinomial {
        Trinomial::from_parts(s, t, p, q).unwrap()
    }

    fn sup(s: u32, t: u32) -> Support {
        Support::new(s, t).unwrap()
    }

    #[test]
    fn quadratic_specializations() {
        let d = discriminant_value(&tri(1, 1, (2.0, 0.0), (1.0, 0.0)));
        assert!(d.vanishes);
        assert_eq!(d.value.unwrap(), ComplexValue::new(0.0, 0.0));
        let d = discriminant_value(&tri(1, 1, (1.0, 0.0), (1.0, 0.0)));
        assert!(!d.vanishes);
        assert!((d.value.unwrap() - ComplexValue::new(-3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cubic_matches_classical_form() {
        let (p, q) = (ComplexValue::new(0.7, -1.3), ComplexValue::new(-0.4, 2.1));
        let f = Trinomial::new(sup(2, 1), p, q).unwrap();
        let want = -27.0 * q * q - 4.0 * p * p * p;
        let d = discriminant_value(&f);
        assert!((d.value.unwrap() - want).norm() < 1e-12 * want.norm());
        assert!((d.log_abs - want.norm().ln()).abs() < 1e-12);
        assert!(d.arg.distance(Angle::of(want)) < 1e-12);
    }

    #[test]
    fn resultant_identity_against_oracle() {
        let f = tri(3, 2, (0.4, 1.1), (-1.5, 0.3));
        let roots = find_roots(&f, &SolverConfig::default()).unwrap();
        let prod: ComplexValue = roots.roots.iter().map(|&a| f.derivative(a)).product();
        let n = f.degree();
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1.0 } else { 1.0 };
        let want = prod * sign;
        let d = discriminant_value(&f).value.unwrap();
        assert!((d - want).norm() < 1e-9 * want.norm());
    }

    #[test]
    fn double_root_detection() {
        assert!(has_double_root(&tri(1, 1, (2.0, 0.0), (1.0, 0.0))));
        assert!(!has_double_root(&tri(2, 1, (1.0, 0.0), (2f64.sqrt(), 0.0))));
        let s = sup(2, 3);
        for p in discriminant_slice_points(s, ComplexValue::new(1.0, 0.0)) {
            assert!(has_double_root(&Trinomial::new(s, p, ComplexValue::new(1.0, 0.0)).unwrap()));
        }
    }

    #[test]
    fn slice_points_on_fan_at_critical_radius() {
        let tol = Tolerances::default();
        for (s, q) in [(sup(1, 1), ComplexValue::new(1.0, 0.0)), (sup(2, 1), ComplexValue::new(1.0, 0.0)), (sup(2, 3), ComplexValue::new(0.0, 1.0))] {
            let pts = discriminant_slice_points(s, q);
            assert_eq!(pts.len(), s.degree() as usize);
            let fan = build_fan(s, Angle::of(q));
            let r = critical_radius(s, q.norm());
            for p in pts {
                assert!((p.norm() / r - 1.0).abs() < 1e-12);
                assert!(fan_membership(p, &fan, &tol).unwrap().on_fan);
                assert!(has_double_root(&Trinomial::new(s, p, q).unwrap()));
            }
        }
        let pts = discriminant_slice_points(sup(1, 1), ComplexValue::new(1.0, 0.0));
        assert!((pts[0] - ComplexValue::new(-2.0, 0.0)).norm() < 1e-15);
        assert!((pts[1] - ComplexValue::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn amoeba_line_examples() {
        let l = amoeba_line(sup(1, 1));
        assert_eq!(l.slope, 0.5);
        assert!((l.intercept - 2f64.ln()).abs() < 1e-15);
        let l = amoeba_line(sup(2, 3));
        assert!((l.slope - 0.4).abs() < 1e-15);
        assert!((l.intercept - (1.5f64.powf(0.4) + (2.0f64 / 3.0).powf(0.6)).ln()).abs() < 1e-15);
    }

    #[test]
    fn coamoeba_examples() {
        let pairs = coamoeba_samples(sup(1, 1), 1);
        let mut args: Vec<f64> = pairs.iter().map(|(a, _)| a.radians()).collect();
        args.sort_by(f64::total_cmp);
        assert!(args[0].abs() < 1e-15 && (args[1] - PI).abs() < 1e-15);
        assert!(pairs.iter().all(|(_, q)| q.radians() == 0.0));

        let pairs = coamoeba_samples(sup(2, 1), 4);
        assert_eq!(pairs.len(), 12);
        for (ap, aq) in pairs {
            let x = (3.0 * ap.radians() - 2.0 * aq.radians()) / PI;
            assert!((x - x.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn log_form_above_cutoff() {
        let s = sup(20, 21);
        let q = ComplexValue::new(0.3, 0.9);
        let d = discriminant_value(&Trinomial::new(s, ComplexValue::new(1.0, 1.0), q).unwrap());
        assert!(d.value.is_none());
        assert!(d.log_abs.is_finite() && !d.vanishes);
        let p = discriminant_slice_points(s, q)[3];
        assert!(discriminant_value(&Trinomial::new(s, p, q).unwrap()).vanishes);
    }
}
