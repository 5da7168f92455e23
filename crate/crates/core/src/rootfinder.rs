//! Aberth–Ehrlich simultaneous iteration for all roots of a trinomial, plus the
//! norm spectrum and the complement components of the (univariate) amoeba.
//!
//! This is the independent oracle that every theorem-derived computation in the
//! crate is checked against, so it deliberately uses nothing but evaluation of
//! `f` and `f'`.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Angle, ComplexValue, Tolerances, Trinomial};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Convergence threshold on the update size, relative to `max(1, |z|)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Seeds the perturbation of the starting circle.
    pub seed: u64,
    /// Largest scaled residual accepted on output.
    pub residual_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-13, max_iter: 200, seed: 0, residual_tol: 1e-9 }
    }
}

impl SolverConfig {
    // the negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || self.max_iter == 0 || !(self.residual_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "solver needs tol > 0, residual_tol > 0 and max_iter >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// All `s + t` roots, sorted by norm and then by argument in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub roots: Vec<ComplexValue>,
    /// Scaled residuals `|f(a)| / (|a|^(s+t) + |p||a|^t + |q|)`, aligned with `roots`.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

impl RootSet {
    pub fn norms(&self) -> NormSpectrum {
        NormSpectrum { norms: self.roots.iter().map(|z| z.norm()).collect() }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Nondecreasing root norms `|a_1| <= ... <= |a_(s+t)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSpectrum {
    norms: Vec<f64>,
}

impl NormSpectrum {
    pub fn new(norms: Vec<f64>) -> Result<Self> {
        if norms.len() < 2 {
            return Err(Error::InvalidParameter("spectrum needs at least two norms".into()));
        }
        if norms.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::InvalidParameter("norms must be finite and positive".into()));
        }
        if norms.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("norms must be nondecreasing".into()));
        }
        Ok(NormSpectrum { norms })
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    /// Number of norms strictly below `v`.
    pub fn count_below(&self, v: f64) -> usize {
        self.norms.iter().filter(|&&x| x < v).count()
    }

    /// Maximal runs of consecutive norms that pairwise chain within `rel_tol`,
    /// as `(first index, length)` with 0-based indices.
    pub fn clusters(&self, rel_tol: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.norms.len() {
            let breaks = i == self.norms.len() || {
                let (a, b) = (self.norms[i - 1], self.norms[i]);
                (b - a).abs() > rel_tol * a.max(b)
            };
            if breaks {
                out.push((start, i - start));
                start = i;
            }
        }
        out
    }

    /// Size of the largest cluster at `rel_tol`.
    pub fn max_cluster(&self, rel_tol: f64) -> usize {
        self.clusters(rel_tol).into_iter().map(|(_, l)| l).max().unwrap_or(0)
    }

    /// Relative gap `(|a_(j+1)| − |a_j|) / |a_(j+1)|` for `1 <= j < s+t` (1-based `j`).
    pub fn relative_gap(&self, j: usize) -> f64 {
        let (a, b) = (self.norms[j - 1], self.norms[j]);
        (b - a) / b
    }
}

/// A component `E_j` of the complement of the amoeba in `R`: the open interval
/// of `log`-radii having exactly `j` roots of smaller norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplementComponent {
    pub order: usize,
    /// `log|a_j|`, or `-inf` for `j = 0`.
    pub lower: f64,
    /// `log|a_(j+1)|`, or `+inf` for `j = s+t`.
    pub upper: f64,
    pub empty: bool,
}

pub fn find_roots(f: &Trinomial, cfg: &SolverConfig) -> Result<RootSet> {
    cfg.validate()?;
    let n = f.degree() as usize;
    let s = f.s() as i32;
    let radius = f
        .q()
        .norm()
        .powf(1.0 / n as f64)
        .max((2.0 * f.p().norm()).powf(1.0 / f64::from(s)));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut z: Vec<ComplexValue> = (0..n)
        .map(|k| {
            let jitter: f64 = rng.gen_range(0.0..1e-3);
            ComplexValue::from_polar(radius, TAU * k as f64 / n as f64 + 0.3 + jitter)
        })
        .collect();

    let mut iterations = 0;
    for iter in 1..=cfg.max_iter {
        iterations = iter;
        let mut largest_step = 0.0f64;
        for k in 0..n {
            let zk = z[k];
            let fz = f.eval(zk);
            if fz == ComplexValue::new(0.0, 0.0) {
                continue;
            }
            let repulsion: ComplexValue = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| (zk - zj).inv())
                .sum();
            let denom = f.derivative(zk) / fz - repulsion;
            if denom == ComplexValue::new(0.0, 0.0) || !denom.is_finite() {
                continue;
            }
            let step = denom.inv();
            z[k] = zk - step;
            largest_step = largest_step.max(step.norm() / zk.norm().max(1.0));
        }
        if z.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonConvergence { iterations, max_residual: f64::INFINITY });
        }
        if largest_step <= cfg.tol {
            break;
        }
    }

    z.sort_by(|a, b| compare_roots(*a, *b));
    let residuals: Vec<f64> = z.iter().map(|&w| f.scaled_residual(w)).collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    if max_residual.is_nan() || max_residual > cfg.residual_tol {
        return Err(Error::NonConvergence { iterations, max_residual });
    }
    Ok(RootSet { roots: z, residuals, iterations })
}

fn compare_roots(a: ComplexValue, b: ComplexValue) -> Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then_with(|| Angle::of(a).radians().total_cmp(&Angle::of(b).radians()))
}

pub fn norm_spectrum(f: &Trinomial, cfg: &SolverConfig) -> Result<NormSpectrum> {
    Ok(find_roots(f, cfg)?.norms())
}

/// The `s + t + 1` components `E_0, ..., E_(s+t)`, flagged empty when the
/// bounding norms agree within `norm_rel_tol`.
pub fn complement_components(spec: &NormSpectrum, tol: &Tolerances) -> Vec<ComplementComponent> {
    let norms = spec.norms();
    let n = norms.len();
    (0..=n)
        .map(|j| {
            let lower = if j == 0 { f64::NEG_INFINITY } else { norms[j - 1].ln() };
            let upper = if j == n { f64::INFINITY } else { norms[j].ln() };
            let empty = j != 0 && j != n && tol.norms_equal(norms[j - 1], norms[j]);
            ComplementComponent { order: j, lower, upper, empty }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Support;

    fn tri(s: u32, t: u32, p: f64, q: f64) -> Trinomial {
        Trinomial::from_parts(s, t, (p, 0.0), (q, 0.0)).unwrap()
    }

    fn assert_norms(f: &Trinomial, expected: &[f64], tol: f64) {
        let spec = norm_spectrum(f, &SolverConfig::default()).unwrap();
        assert_eq!(spec.len(), expected.len());
        for (got, want) in spec.norms().iter().zip(expected) {
            assert!((got - want).abs() < tol, "{f}: got {:?}, want {expected:?}", spec.norms());
        }
    }

    #[test]
    fn bohl_example_norms() {
        assert_norms(&tri(2, 1, 1.0, 2f64.sqrt()), &[0.83403883, 1.30216004, 1.30216004], 1e-8);
    }

    #[test]
    fn zero_middle_coefficient() {
        let f = tri(1, 1, 0.0, 1.0);
        let roots = find_roots(&f, &SolverConfig::default()).unwrap();
        for r in &roots.roots {
            assert!((r.norm() - 1.0).abs() < 1e-12);
            assert!(r.re.abs() < 1e-12);
        }
        let g = Trinomial::from_parts(3, 4, (0.0, 0.0), (0.0, 5.0)).unwrap();
        let want = 5f64.powf(1.0 / 7.0);
        assert_norms(&g, &[want; 7], 1e-12);
    }

    #[test]
    fn quintic_examples() {
        assert_norms(&tri(2, 3, 6.0, 1.0), &[0.5416, 0.5546, 0.5546, 2.4498, 2.4498], 1e-4);
        assert_norms(&tri(3, 2, 6.0, 1.0), &[0.4082, 0.4082, 1.8030, 1.8030, 1.8462], 1e-3);
        assert_norms(&tri(3, 1, 0.5, 1.0), &[0.916, 0.916, 1.091, 1.091], 1e-3);
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let f = Trinomial::from_parts(7, 4, (0.3, -2.0), (1.5, 0.25)).unwrap();
        let cfg = SolverConfig { seed: 9, ..SolverConfig::default() };
        let a = find_roots(&f, &cfg).unwrap();
        let b = find_roots(&f, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn vieta_product_of_norms() {
        let f = Trinomial::from_parts(5, 3, (-1.2, 0.7), (0.4, -3.0)).unwrap();
        let roots = find_roots(&f, &SolverConfig::default()).unwrap();
        let prod: f64 = roots.roots.iter().map(|z| z.norm()).product();
        assert!((prod / f.q().norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn non_convergence_is_reported() {
        let f = Trinomial::from_parts(9, 4, (3.0, 1.0), (0.2, 0.0)).unwrap();
        let cfg = SolverConfig { max_iter: 1, ..SolverConfig::default() };
        assert!(matches!(find_roots(&f, &cfg), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn components_of_paper_quintic() {
        let spec = NormSpectrum::new(vec![0.4082, 0.4082, 1.8030, 1.8030, 1.8462]).unwrap();
        let comps = complement_components(&spec, &Tolerances::default());
        let nonempty: Vec<usize> = comps.iter().filter(|c| !c.empty).map(|c| c.order).collect();
        assert_eq!(nonempty, vec![0, 2, 4, 5]);
        assert_eq!(comps[0].lower, f64::NEG_INFINITY);
        assert_eq!(comps[5].upper, f64::INFINITY);
    }

    #[test]
    fn components_equal_and_distinct() {
        let tol = Tolerances::default();
        let flat = NormSpectrum::new(vec![2.0; 4]).unwrap();
        let ne: Vec<usize> =
            complement_components(&flat, &tol).iter().filter(|c| !c.empty).map(|c| c.order).collect();
        assert_eq!(ne, vec![0, 4]);
        let strict = NormSpectrum::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(complement_components(&strict, &tol).iter().all(|c| !c.empty));
    }

    #[test]
    fn clusters_chain_consecutive_norms() {
        let spec = NormSpectrum::new(vec![1.0, 1.0, 2.0, 3.0, 3.0 + 1e-12]).unwrap();
        assert_eq!(spec.clusters(1e-9), vec![(0, 2), (2, 1), (3, 2)]);
        assert_eq!(spec.max_cluster(1e-9), 2);
        assert!(NormSpectrum::new(vec![2.0, 1.0]).is_err());
    }

    #[test]
    fn handles_max_degree() {
        let sup = Support::new(33, 31).unwrap();
        let f = Trinomial::new(sup, ComplexValue::new(0.5, 0.5), ComplexValue::new(-2.0, 0.1)).unwrap();
        let roots = find_roots(&f, &SolverConfig { max_iter: 2000, ..Default::default() }).unwrap();
        assert_eq!(roots.roots.len(), 64);
    }
}
