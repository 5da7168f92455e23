//! Randomized sweep checking the closed-form results against the root-finding
//! oracle. Every sample draws from its own ChaCha stream, so results do not
//! depend on how the samples are scheduled across threads.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bohl::count_roots_below;
use crate::discriminant::{discriminant_slice_points, has_double_root};
use crate::error::Result;
use crate::fan::{build_fan, classify_uj, double_root_norm, fan_membership, UjMembership};
use crate::rootfinder::{find_roots, NormSpectrum, RootSet, SolverConfig};
use crate::trochoid::{curve_point, hypotrochoid_params};
use crate::types::{Angle, ComplexValue, Support, Tolerances, Trinomial};

/// Names of the checked statements, in report order.
pub const THEOREMS: [&str; 9] = [
    "oracle",
    "bohl_count",
    "landau_bound",
    "at_most_two",
    "hypotrochoid_locus",
    "fan_pairs",
    "uj_classification",
    "real_roots",
    "double_root",
];

/// Deliberate defects used to check that the sweep can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// Classify with `p` moved to the neighbouring fan ray.
    ParityFlip,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree_max: u32,
    pub tol: Tolerances,
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(seed: u64, samples: usize, degree_max: u32) -> Self {
        VerifyConfig { seed, samples, degree_max, tol: Tolerances::default(), fault: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub theorem: &'static str,
    pub sample: usize,
    pub s: u32,
    pub t: u32,
    pub p: [f64; 2],
    pub q: [f64; 2],
    pub v: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub degree_max: u32,
    pub all_passed: bool,
    pub theorems: Vec<TheoremTally>,
    pub counterexamples: Vec<Counterexample>,
}

/// At most this many counterexamples are kept in the report.
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Default)]
struct Outcome {
    checks: Vec<(&'static str, bool)>,
    failures: Vec<Counterexample>,
}

impl Outcome {
    fn record(&mut self, theorem: &'static str, ok: bool, ctx: &Ctx, v: Option<f64>, detail: impl FnOnce() -> String) {
        self.checks.push((theorem, ok));
        if !ok {
            self.failures.push(Counterexample {
                theorem,
                sample: ctx.index,
                s: ctx.f.s(),
                t: ctx.f.t(),
                p: [ctx.f.p().re, ctx.f.p().im],
                q: [ctx.f.q().re, ctx.f.q().im],
                v,
                detail: detail(),
            });
        }
    }
}

struct Ctx {
    index: usize,
    f: Trinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Generic,
    OnFan,
    Real,
    Slice,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn draw(rng: &mut ChaCha8Rng, supports: &[Support], mode: Mode) -> Trinomial {
    let support = supports[rng.gen_range(0..supports.len())];
    let (s, n) = (f64::from(support.s()), f64::from(support.degree()));
    // wider ranges produce distinct norms closer than double precision can separate
    let q_norm = log_uniform(rng, 0.1, 10.0);
    let p_norm = log_uniform(rng, 0.1, 10.0);
    let (p, q) = match mode {
        Mode::Generic => (
            ComplexValue::from_polar(p_norm, rng.gen_range(0.0..TAU)),
            ComplexValue::from_polar(q_norm, rng.gen_range(0.0..TAU)),
        ),
        Mode::OnFan => {
            let arg_q: f64 = rng.gen_range(0.0..TAU);
            let k = rng.gen_range(0..2 * support.degree());
            let arg_p = (s * arg_q + f64::from(k) * PI) / n;
            (ComplexValue::from_polar(p_norm, arg_p), ComplexValue::from_polar(q_norm, arg_q))
        }
        Mode::Real => {
            let sp = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let sq = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            (ComplexValue::new(sp * p_norm, 0.0), ComplexValue::new(sq * q_norm, 0.0))
        }
        Mode::Slice => {
            let q = ComplexValue::from_polar(q_norm, rng.gen_range(0.0..TAU));
            let pts = discriminant_slice_points(support, q);
            (pts[rng.gen_range(0..pts.len())], q)
        }
    };
    Trinomial::new(support, p, q).expect("sampled coefficients are finite with q != 0")
}

fn solve(f: &Trinomial) -> Result<RootSet> {
    find_roots(f, &SolverConfig::default())
        .or_else(|_| find_roots(f, &SolverConfig { max_iter: 5000, ..SolverConfig::default() }))
}

fn classify(f: &Trinomial, tol: &Tolerances, fault: Option<Fault>) -> UjMembership {
    match fault {
        Some(Fault::ParityFlip) => {
            let turn = ComplexValue::from_polar(1.0, PI / f64::from(f.degree()));
            classify_uj(&f.with_p(f.p() * turn).expect("rotation keeps p finite"), tol)
        }
        None => classify_uj(f, tol),
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (b - a).abs() / a.max(b)
}

fn check_sample(index: usize, cfg: &VerifyConfig, supports: &[Support]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mode = [Mode::Generic, Mode::OnFan, Mode::Real, Mode::Slice][index % 4];
    let f = draw(&mut rng, supports, mode);
    let ctx = Ctx { index, f };
    let tol = cfg.tol;
    let mut out = Outcome::default();

    let roots = match solve(&f) {
        Ok(r) => r,
        Err(e) => {
            out.record("oracle", false, &ctx, None, || e.to_string());
            return out;
        }
    };
    let spec = roots.norms();
    let norms = spec.norms();
    let prod: f64 = norms.iter().product();
    // a double root is only resolved to about the square root of machine precision
    let vieta_tol = if mode == Mode::Slice { 1e-6 } else { 1e-9 };
    out.record("oracle", (prod / f.q().norm() - 1.0).abs() < vieta_tol, &ctx, None, || {
        format!("product of norms {prod} against |q| {}", f.q().norm())
    });

    let (s, t, n) = (f.s() as usize, f.t() as usize, f.degree() as usize);

    check_bohl(&mut out, &ctx, &mut rng, &spec, &tol);

    if t == 1 {
        let bound = 2.0 * f.q().norm() / f.p().norm();
        out.record("landau_bound", norms[0] <= bound * (1.0 + 1e-12), &ctx, None, || {
            format!("smallest norm {} exceeds 2|q/p| = {bound}", norms[0])
        });
    }

    let largest = spec.max_cluster(1e-9);
    out.record("at_most_two", largest <= 2, &ctx, None, || format!("cluster of {largest} equal norms"));

    check_locus(&mut out, &ctx, &mut rng);

    // equal norms force p onto the fan
    if let Some(j) = (1..n).find(|&j| rel_gap(norms[j - 1], norms[j]) <= 1e-9) {
        let fan = build_fan(f.support(), Angle::of(f.q()));
        let on = fan_membership(f.p(), &fan, &tol).map(|m| m.on_fan).unwrap_or(false);
        out.record("fan_pairs", on, &ctx, None, || format!("|a_{j}| = |a_{}| but p is off the fan", j + 1));
    }

    let uj = classify(&f, &tol, cfg.fault);
    let mut agree = true;
    let mut first_bad = 0;
    for j in 1..n {
        let gap = rel_gap(norms[j - 1], norms[j]);
        let bad = if uj.member[j] { gap <= 1e-12 } else { gap > tol.norm_rel_tol };
        if bad {
            agree = false;
            first_bad = j;
            break;
        }
    }
    out.record("uj_classification", agree, &ctx, None, || {
        format!("member[{first_bad}] = {} disagrees with norms {norms:?}", uj.member[first_bad])
    });

    if mode == Mode::Real {
        check_real_roots(&mut out, &ctx, &roots, &spec, s, t);
    }

    if mode == Mode::Slice {
        let vanishes = has_double_root(&f);
        let want = double_root_norm(f.support(), f.q().norm());
        let at_t = (norms[t - 1] / want - 1.0).abs() < 1e-6 && (norms[t] / want - 1.0).abs() < 1e-6;
        out.record("double_root", vanishes && at_t, &ctx, None, || {
            format!("discriminant vanishes: {vanishes}; norms {norms:?}, expected pair at {want} in slots {t}, {}", t + 1)
        });
    }
    out
}

fn check_bohl(out: &mut Outcome, ctx: &Ctx, rng: &mut ChaCha8Rng, spec: &NormSpectrum, tol: &Tolerances) {
    let norms = spec.norms();
    let n = norms.len();
    let j = rng.gen_range(0..=n);
    let v = match j {
        0 => norms[0] * 0.5,
        j if j == n => norms[n - 1] * 2.0,
        j => (norms[j - 1] * norms[j]).sqrt(),
    };
    let guard = 10.0 * tol.norm_rel_tol;
    if norms.iter().any(|&a| rel_gap(a, v) <= guard) {
        return;
    }
    match count_roots_below(&ctx.f, v) {
        Ok(c) => {
            let want = spec.count_below(v);
            out.record("bohl_count", c.count == want, ctx, Some(v), || {
                format!("counted {} ({:?}), oracle {want}", c.count, c.method)
            });
        }
        Err(e) => out.record("bohl_count", false, ctx, Some(v), || e.to_string()),
    }
}

fn check_locus(out: &mut Outcome, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let f = ctx.f;
    let v = log_uniform(rng, 0.2, 5.0);
    let phi = Angle::new(rng.gen_range(0.0..TAU));
    let params = hypotrochoid_params(f.support(), f.q().norm(), v).expect("positive inputs");
    let x = curve_point(&params, Angle::of(f.q()), phi);
    let Ok(g) = f.with_p(-x) else { return };
    match solve(&g) {
        Ok(r) => {
            let best = r.roots.iter().map(|a| (a.norm() / v - 1.0).abs()).fold(f64::INFINITY, f64::min);
            out.record("hypotrochoid_locus", best < 1e-6, ctx, Some(v), || {
                format!("closest root norm off by {best:e} relative")
            });
        }
        Err(e) => out.record("hypotrochoid_locus", false, ctx, Some(v), || e.to_string()),
    }
}

fn check_real_roots(out: &mut Outcome, ctx: &Ctx, roots: &RootSet, spec: &NormSpectrum, s: usize, t: usize) {
    let n = s + t;
    let norms = spec.norms();
    let real: Vec<usize> = roots
        .roots
        .iter()
        .enumerate()
        .filter(|(_, a)| a.im.abs() <= 1e-9 * a.norm().max(1.0))
        .map(|(i, _)| i)
        .collect();
    let count_ok = if n % 2 == 1 { matches!(real.len(), 1 | 3) } else { matches!(real.len(), 0 | 2) };
    let allowed = [1, t, t + 1, n];
    let index_ok = real.iter().all(|&i| {
        // any slot tied with the root's norm is an admissible index
        (0..n).filter(|&k| rel_gap(norms[k], norms[i]) <= 1e-6).any(|k| allowed.contains(&(k + 1)))
    });
    out.record("real_roots", count_ok && index_ok, ctx, None, || {
        format!("real roots at sorted slots {:?} of {n}", real.iter().map(|i| i + 1).collect::<Vec<_>>())
    });
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let supports = Support::all_up_to(cfg.degree_max.max(2));
    let outcomes: Vec<Outcome> =
        (0..cfg.samples).into_par_iter().map(|i| check_sample(i, cfg, &supports)).collect();

    let mut theorems: Vec<TheoremTally> =
        THEOREMS.iter().map(|&name| TheoremTally { name, passed: 0, failed: 0 }).collect();
    let mut counterexamples = Vec::new();
    for o in outcomes {
        for (name, ok) in o.checks {
            let tally = theorems.iter_mut().find(|x| x.name == name).expect("known theorem name");
            if ok {
                tally.passed += 1;
            } else {
                tally.failed += 1;
            }
        }
        for c in o.failures {
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(c);
            }
        }
    }
    VerifyReport {
        seed: cfg.seed,
        samples: cfg.samples,
        degree_max: cfg.degree_max,
        all_passed: theorems.iter().all(|x| x.failed == 0),
        theorems,
        counterexamples,
    }
}
