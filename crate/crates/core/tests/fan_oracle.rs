mod common;

use std::f64::consts::TAU;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use trinoma::{
    build_fan, classify_uj, critical_radius, discriminant_slice_points, discriminant_value,
    fan_membership, Support, Tolerances, Trinomial,
};

/// Predicted-equal gaps must be equal to `norm_rel_tol`; predicted-distinct
/// gaps are only compared outside the guard band of width `10·norm_rel_tol`.
#[test]
fn classification_matches_oracle_with_guard_band() {
    let supports = Support::all_up_to(12);
    let tol = Tolerances::default();
    let guard = 10.0 * tol.norm_rel_tol;
    let mut rng = rng(21);
    let (mut equal_checked, mut distinct_checked, mut in_band) = (0, 0, 0);
    for i in 0..12_000 {
        let f = if i % 3 == 0 {
            on_fan(&mut rng, &supports, 1e-2, 1e2)
        } else {
            generic(&mut rng, &supports, 1e-2, 1e2)
        };
        let norms = norms(&f);
        let uj = classify_uj(&f, &tol);
        for j in 1..norms.len() {
            let gap = rel_gap(norms[j - 1], norms[j]);
            if !uj.member[j] {
                assert!(gap <= tol.norm_rel_tol, "{f:?}: U_{j} predicted empty, norms {norms:?}");
                equal_checked += 1;
            } else if gap > guard {
                distinct_checked += 1;
            } else {
                in_band += 1;
            }
        }
    }
    assert!(equal_checked > 3000, "{equal_checked}");
    assert!(distinct_checked > 10 * in_band, "{distinct_checked} vs {in_band}");
}

/// Every oracle gap that is far from the guard band is predicted correctly,
/// whichever way it goes.
#[test]
fn resolvable_equalities_are_predicted() {
    let supports = Support::all_up_to(12);
    let tol = Tolerances::default();
    let mut rng = rng(22);
    for i in 0..4000 {
        let f = if i % 2 == 0 {
            on_fan(&mut rng, &supports, 0.1, 10.0)
        } else {
            real(&mut rng, &supports, 0.1, 10.0)
        };
        let norms = norms(&f);
        let uj = classify_uj(&f, &tol);
        for j in 1..norms.len() {
            let gap = rel_gap(norms[j - 1], norms[j]);
            if gap <= 1e-12 {
                assert!(!uj.member[j], "{f:?}: U_{j} predicted nonempty, norms {norms:?}");
            }
        }
    }
}

fn rotate(f: &Trinomial, phi: f64) -> Trinomial {
    let ratio = f64::from(f.s()) / f64::from(f.degree());
    let p = f.p() * polar(1.0, TAU * ratio * phi);
    let q = f.q() * polar(1.0, TAU * phi);
    Trinomial::new(f.support(), p, q).unwrap()
}

#[test]
fn classification_is_constant_along_rotation_paths() {
    let supports = Support::all_up_to(12);
    let tol = Tolerances::default();
    let mut rng = rng(23);
    for i in 0..400 {
        let f = if i % 2 == 0 {
            on_fan(&mut rng, &supports, 1e-2, 1e2)
        } else {
            generic(&mut rng, &supports, 1e-2, 1e2)
        };
        let base = classify_uj(&f, &tol);
        for k in 0..32 {
            let g = rotate(&f, k as f64 / 31.0);
            assert_eq!(classify_uj(&g, &tol), base, "{f:?} at step {k}");
        }
    }
}

#[test]
fn scaling_p_only_matters_for_the_disk_at_t() {
    let supports = Support::all_up_to(12);
    let tol = Tolerances::default();
    let mut rng = rng(24);
    for _ in 0..400 {
        let f = on_fan(&mut rng, &supports, 0.1, 10.0);
        let t = f.t() as usize;
        let mut was_true_at_t = false;
        let base = classify_uj(&f, &tol);
        let mut lambda = 1e-3;
        while lambda < 1e3 {
            let g = f.with_p(f.p() * lambda).unwrap();
            let uj = classify_uj(&g, &tol);
            for j in 0..uj.member.len() {
                if j != t {
                    assert_eq!(uj.member[j], base.member[j]);
                }
            }
            assert!(!was_true_at_t || uj.member[t], "{f:?}: U_t lost at scale {lambda}");
            was_true_at_t |= uj.member[t];
            lambda *= 1.1;
        }
    }
}

#[test]
fn slice_points_are_double_roots_on_the_blocking_ray() {
    let tol = Tolerances::default();
    let mut rng = rng(25);
    for sup in Support::all_up_to(8) {
        for _ in 0..10 {
            let q = polar(log_uniform(&mut rng, 0.1, 10.0), rng.gen_range(0.0..TAU));
            let fan = build_fan(sup, arg(q));
            for p in discriminant_slice_points(sup, q) {
                let f = Trinomial::new(sup, p, q).unwrap();
                assert!(discriminant_value(&f).vanishes, "{f:?}");
                assert!(fan_membership(p, &fan, &tol).unwrap().on_fan);
                assert!(((p.norm() / critical_radius(sup, q.norm())) - 1.0).abs() < 1e-12);
                assert!(!classify_uj(&f, &tol).member[sup.t() as usize], "{f:?}");
            }
        }
    }
}

fn arb_fan_trinomial() -> impl Strategy<Value = Trinomial> {
    let supports = Support::all_up_to(12);
    (0..supports.len(), -2.0f64..2.0, -2.0f64..2.0, 0.0f64..TAU, 0u32..24).prop_map(
        move |(i, lp, lq, aq, k)| {
            let sup = supports[i];
            let k = k % (2 * sup.degree());
            let ap = (f64::from(sup.s()) * aq + f64::from(k) * std::f64::consts::PI) / f64::from(sup.degree());
            Trinomial::new(sup, polar(10f64.powf(lp), ap), polar(10f64.powf(lq), aq)).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn endpoints_are_always_members(f in arb_fan_trinomial()) {
        let uj = classify_uj(&f, &Tolerances::default());
        prop_assert!(uj.member[0]);
        prop_assert!(uj.member[f.degree() as usize]);
    }

    #[test]
    fn blocked_set_is_one_parity_class_minus_the_disk_exception(f in arb_fan_trinomial()) {
        let tol = Tolerances::default();
        let uj = classify_uj(&f, &tol);
        let fan = build_fan(f.support(), arg(f.q()));
        let k = fan_membership(f.p(), &fan, &tol).unwrap().ray_index.unwrap();
        let (s, t, n) = (f.s() as usize, f.t() as usize, f.degree() as usize);
        let outside = f.p().norm() > critical_radius(f.support(), f.q().norm()) * (1.0 + 1e-12);
        for j in 1..n {
            let in_class = (s + j) % 2 == k % 2;
            let want_blocked = in_class && !(j == t && outside);
            prop_assert_eq!(uj.member[j], !want_blocked);
        }
    }
}
