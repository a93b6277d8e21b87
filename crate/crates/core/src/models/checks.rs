//! Numeric checks of rank and vanishing behavior of invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group::C64;
use super::sample::{generic_vector, sample_rank_point};
use super::ExplicitModel;

/// Derives independent per-task seeds from one base seed.
pub(crate) fn sub_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut z = base ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RssMeasurement {
    NoInvariants,
    Rank(usize),
    /// Every invariant vanished at every sampled rank.
    AllVanish,
}

/// Smallest `r` such that some invariant exceeds `tol` (relative) on some
/// rank-`r` sample.
pub fn measure_rss(m: &ExplicitModel, samples_per_rank: usize, tol: f64, seed: u64) -> RssMeasurement {
    if m.invariants().is_empty() {
        return RssMeasurement::NoInvariants;
    }
    for r in 1..=m.max_rank() {
        for i in 0..samples_per_rank {
            let s = sample_rank_point(m, r, sub_seed(seed, r as u64, i as u64)).expect("rank within range");
            if m.invariants().iter().any(|f| m.relative_value(f, &s.vector) > tol) {
                return RssMeasurement::Rank(r);
            }
        }
    }
    RssMeasurement::AllVanish
}

/// 0-based indices `j` of generators (ordered by degree) that must vanish
/// on rank-`r` points: `f_{k−(r_max−r−1)}, …, f_k` in 1-based numbering.
pub fn vanishing_window(k: usize, r_max: usize, r: usize) -> std::ops::Range<usize> {
    let first = (k + r + 1).saturating_sub(r_max).max(1);
    (first - 1).min(k)..k
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecantReport {
    pub rank: usize,
    pub samples: usize,
    /// Names of the generators required to vanish.
    pub vanishing: Vec<String>,
    pub max_vanishing_value: f64,
    /// Generators of degree at most `rank` outside the vanishing set.
    pub nonvanishing: Vec<String>,
    /// Per sample, the largest relative value among `nonvanishing`; these
    /// are the minimum and maximum of that over samples. Absent when
    /// `nonvanishing` is empty.
    pub min_nonvanishing_value: Option<f64>,
    pub max_nonvanishing_value: Option<f64>,
    pub pass: bool,
}

/// Checks on rank-`r` samples that the generators picked out by
/// [`vanishing_window`] vanish (below `tol_zero`), and that the remaining
/// generators of degree `≤ r`, if any, do not vanish generically: some
/// sample exceeds `tol_nonzero` and no sample drops to `tol_zero`.
///
/// A nonzero polynomial takes arbitrarily small values near its zero set,
/// so requiring `tol_nonzero` on every sample would test the conditioning
/// of the samples rather than vanishing.
pub fn secant_vanishing_check(
    m: &ExplicitModel,
    r: usize,
    samples: usize,
    tol_zero: f64,
    tol_nonzero: f64,
    seed: u64,
) -> SecantReport {
    let invs = m.invariants();
    let window = vanishing_window(invs.len(), m.max_rank(), r);
    let others: Vec<usize> = (0..invs.len()).filter(|j| !window.contains(j) && invs[*j].degree <= r).collect();
    let mut max_zero: f64 = 0.0;
    let mut min_nonzero: Option<f64> = None;
    let mut max_nonzero: Option<f64> = None;
    for i in 0..samples {
        let s = sample_rank_point(m, r, sub_seed(seed, r as u64, i as u64)).expect("rank within range");
        for j in window.clone() {
            max_zero = max_zero.max(m.relative_value(&invs[j], &s.vector));
        }
        if !others.is_empty() {
            let best = others.iter().map(|&j| m.relative_value(&invs[j], &s.vector)).fold(0.0, f64::max);
            min_nonzero = Some(min_nonzero.map_or(best, |x| x.min(best)));
            max_nonzero = Some(max_nonzero.map_or(best, |x| x.max(best)));
        }
    }
    let generic = match (min_nonzero, max_nonzero) {
        (Some(lo), Some(hi)) => lo > tol_zero && hi > tol_nonzero,
        _ => true,
    };
    let pass = max_zero <= tol_zero && generic;
    SecantReport {
        rank: r,
        samples,
        vanishing: window.map(|j| invs[j].name()).collect(),
        max_vanishing_value: max_zero,
        nonvanishing: others.iter().map(|&j| invs[j].name()).collect(),
        min_nonvanishing_value: min_nonzero,
        max_nonvanishing_value: max_nonzero,
        pass,
    }
}

fn relative_gap(a: C64, b: C64, scale: f64) -> f64 {
    if scale == 0.0 {
        return (a - b).norm();
    }
    (a - b).norm() / scale
}

/// Largest `|f(g·v) − f(v)| / scale` over `trials` random group elements
/// `g = exp(ξ)`, `‖ξ‖ = 0.5`, and random `v`, for every invariant.
pub fn invariance_defect(m: &ExplicitModel, trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let v = generic_vector(m, sub_seed(seed, 1, t as u64));
        let g = m.random_group_element(&mut rng, 0.5);
        let gv = m.coords(&m.act_group(&g, &m.to_matrix(&v)));
        for f in m.invariants() {
            let scale = m.scale(f, &v).max(m.scale(f, &gv));
            worst = worst.max(relative_gap(m.evaluate(f, &gv), m.evaluate(f, &v), scale));
        }
    }
    worst
}

/// Largest `|f(tv) − t^d f(v)| / (|t|^d scale(v))` over random complex `t`
/// and `v`.
pub fn homogeneity_defect(m: &ExplicitModel, trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let v = generic_vector(m, sub_seed(seed, 2, i as u64));
        let t = C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
        let tv: Vec<C64> = v.iter().map(|x| x * t).collect();
        for f in m.invariants() {
            let td = t.powi(f.degree as i32);
            let scale = m.scale(f, &v) * td.norm();
            worst = worst.max(relative_gap(m.evaluate(f, &tv), td * m.evaluate(f, &v), scale));
        }
    }
    worst
}
