#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trinoma::{norm_spectrum, Angle, ComplexValue, SolverConfig, Support, Trinomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

pub fn pick(rng: &mut ChaCha8Rng, supports: &[Support]) -> Support {
    supports[rng.gen_range(0..supports.len())]
}

pub fn polar(r: f64, a: f64) -> ComplexValue {
    ComplexValue::from_polar(r, a)
}

pub fn generic(rng: &mut ChaCha8Rng, supports: &[Support], lo: f64, hi: f64) -> Trinomial {
    let sup = pick(rng, supports);
    let p = polar(log_uniform(rng, lo, hi), rng.gen_range(0.0..TAU));
    let q = polar(log_uniform(rng, lo, hi), rng.gen_range(0.0..TAU));
    Trinomial::new(sup, p, q).unwrap()
}

/// `p` placed exactly on a random ray of the fan.
pub fn on_fan(rng: &mut ChaCha8Rng, supports: &[Support], lo: f64, hi: f64) -> Trinomial {
    let sup = pick(rng, supports);
    let arg_q: f64 = rng.gen_range(0.0..TAU);
    let k = rng.gen_range(0..2 * sup.degree());
    let arg_p = (f64::from(sup.s()) * arg_q + f64::from(k) * PI) / f64::from(sup.degree());
    let p = polar(log_uniform(rng, lo, hi), arg_p);
    let q = polar(log_uniform(rng, lo, hi), arg_q);
    Trinomial::new(sup, p, q).unwrap()
}

pub fn real(rng: &mut ChaCha8Rng, supports: &[Support], lo: f64, hi: f64) -> Trinomial {
    let sup = pick(rng, supports);
    let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let p = sign(rng) * log_uniform(rng, lo, hi);
    let q = sign(rng) * log_uniform(rng, lo, hi);
    Trinomial::new(sup, ComplexValue::new(p, 0.0), ComplexValue::new(q, 0.0)).unwrap()
}

pub fn norms(f: &Trinomial) -> Vec<f64> {
    norm_spectrum(f, &SolverConfig::default()).unwrap().norms().to_vec()
}

pub fn rel_gap(a: f64, b: f64) -> f64 {
    (b - a).abs() / a.abs().max(b.abs())
}

pub fn arg(z: ComplexValue) -> Angle {
    Angle::of(z)
}
