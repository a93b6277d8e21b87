//! Root-distinct balanced simplices.
//!
//! A set `M` of weights is root-distinct when no difference of two of its
//! elements is a root, and a balanced simplex when it is minimal among sets
//! admitting a relation `Σ b_ν ν = 0` with all `b_ν` positive integers. Such a
//! set is exactly a circuit whose unique relation has one sign, which is what
//! the search below tests.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact;
use crate::rootsys::{RootSet, RootSystem, WeightVec};
use crate::weights::{self, WeightError};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search exceeded node budget of {0}")]
    BudgetExceeded(u64),
    #[error("max size {requested} exceeds rank of the weight span plus one ({limit})")]
    MaxSizeTooLarge { requested: usize, limit: usize },
    #[error("integer overflow in exact elimination")]
    Overflow,
    #[error(transparent)]
    Weights(#[from] WeightError),
}

/// A root-distinct balanced simplex with its coprime positive coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BalancedSimplex {
    weights: Vec<WeightVec>,
    coefficients: Vec<u64>,
    total: u64,
}

impl BalancedSimplex {
    /// Pairs up weights and coefficients and sorts them canonically. No
    /// validation; see [`validate`].
    pub fn from_parts(weights: Vec<WeightVec>, coefficients: Vec<u64>) -> Self {
        let mut pairs: Vec<(WeightVec, u64)> = weights.into_iter().zip(coefficients).collect();
        pairs.sort();
        let total = pairs.iter().map(|p| p.1).sum();
        let (weights, coefficients) = pairs.into_iter().unzip();
        Self { weights, coefficients, total }
    }

    pub fn weights(&self) -> &[WeightVec] {
        &self.weights
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// `b_M = Σ b_ν`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The singleton `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.weights.len() == 1 && self.weights[0].is_zero()
    }
}

impl Ord for BalancedSimplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.weights.cmp(&other.weights))
            .then_with(|| self.coefficients.cmp(&other.coefficients))
    }
}

impl PartialOrd for BalancedSimplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn is_root_distinct<R: RootSet + ?Sized>(roots: &R, m: &[WeightVec]) -> bool {
    m.iter().enumerate().all(|(i, a)| {
        m[i + 1..].iter().all(|b| {
            let d = a - b;
            !roots.contains_root(&d) && !roots.contains_root(&-&d)
        })
    })
}

/// Coprime positive coefficients and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circuit {
    pub coefficients: Vec<u64>,
    pub total: u64,
}

/// The unique positive relation of `m` when `m` is minimally positively
/// dependent; `None` otherwise.
pub fn positive_circuit(m: &[WeightVec]) -> Option<Circuit> {
    let vectors: Vec<&[i64]> = m.iter().map(WeightVec::coords).collect();
    let rel = exact::positive_circuit_relation(&vectors)?;
    let coefficients: Vec<u64> = rel.iter().map(|x| x.to_u64().expect("small coefficient")).collect();
    let total = coefficients.iter().sum();
    Some(Circuit { coefficients, total })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexViolation {
    #[error("weights and coefficients differ in length")]
    Shape,
    #[error("a coefficient is not positive")]
    NonPositive,
    #[error("coefficients are not coprime")]
    NotCoprime,
    #[error("b_M does not equal the coefficient sum")]
    WrongTotal,
    #[error("Σ b_ν ν ≠ 0")]
    NotBalanced,
    #[error("a proper subset is linearly dependent")]
    NotMinimal,
    #[error("two weights differ by a root")]
    NotRootDistinct,
    #[error("repeated weight")]
    Repeated,
}

/// Re-checks every defining property of a balanced simplex from scratch.
pub fn validate<R: RootSet + ?Sized>(roots: &R, s: &BalancedSimplex) -> Result<(), SimplexViolation> {
    let w = s.weights();
    let b = s.coefficients();
    if w.len() != b.len() || w.is_empty() {
        return Err(SimplexViolation::Shape);
    }
    if b.contains(&0) {
        return Err(SimplexViolation::NonPositive);
    }
    if b.iter().fold(0u64, |g, &x| num_integer::gcd(g, x)) != 1 {
        return Err(SimplexViolation::NotCoprime);
    }
    if b.iter().sum::<u64>() != s.total() {
        return Err(SimplexViolation::WrongTotal);
    }
    for i in 0..w.len() {
        if w[i + 1..].contains(&w[i]) {
            return Err(SimplexViolation::Repeated);
        }
    }
    let dim = w[0].rank();
    for k in 0..dim {
        let sum: i128 = w.iter().zip(b).map(|(v, &c)| v.coords()[k] as i128 * c as i128).sum();
        if sum != 0 {
            return Err(SimplexViolation::NotBalanced);
        }
    }
    for skip in 0..w.len() {
        let rows: Vec<Vec<i64>> =
            w.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.coords().to_vec()).collect();
        if !rows.is_empty() && exact::rank(&exact::to_rational(&rows)) != rows.len() {
            return Err(SimplexViolation::NotMinimal);
        }
    }
    if !is_root_distinct(roots, w) {
        return Err(SimplexViolation::NotRootDistinct);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest simplex size to report; defaults to the rank of the weight
    /// span plus one.
    pub max_size: Option<usize>,
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { max_size: None, node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// All root-distinct balanced simplices drawn from `set`, canonically sorted.
///
/// Depth-first over subsets in canonical order, keeping partial sets
/// root-distinct and linearly independent; a branch closes as soon as the
/// newest weight creates a dependency, and that dependency is reported when
/// it is a positive circuit.
pub fn enumerate_simplices<R: RootSet + Sync + ?Sized>(
    roots: &R,
    set: &[WeightVec],
    config: &SearchConfig,
) -> Result<Vec<BalancedSimplex>, SearchError> {
    let mut points: Vec<WeightVec> = set.to_vec();
    points.sort();
    points.dedup();
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let dim = points[0].rank();
    let rows: Vec<Vec<i64>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let limit = exact::rank(&exact::to_rational(&rows)) + 1;
    let max_size = match config.max_size {
        Some(s) if s > limit => return Err(SearchError::MaxSizeTooLarge { requested: s, limit }),
        Some(s) => s,
        None => limit,
    };
    if max_size == 0 {
        return Ok(Vec::new());
    }

    let n = points.len();
    let words = n.div_ceil(64);
    let compat: Vec<Bits> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = Bits::empty(words);
            for j in 0..n {
                if j != i {
                    let d = &points[i] - &points[j];
                    if !roots.contains_root(&d) && !roots.contains_root(&-&d) {
                        b.set(j);
                    }
                }
            }
            b
        })
        .collect();

    let search = Search {
        points: &points,
        compat: &compat,
        dim,
        max_size,
        budget: config.node_budget,
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
    };
    let per_root: Vec<Result<Vec<BalancedSimplex>, SearchError>> =
        (0..n).into_par_iter().map(|i| search.rooted_at(i)).collect();
    let mut out = Vec::new();
    for r in per_root {
        out.extend(r?);
    }
    out.sort();
    Ok(out)
}

/// Where to look for simplices inside `Λ(V(λ))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// The full weight support.
    Support,
    /// The extreme weights `Wλ` only.
    Orbit,
}

pub fn simplices_for_highest_weight(
    rs: &RootSystem,
    lambda: &WeightVec,
    space: SearchSpace,
    config: &SearchConfig,
) -> Result<Vec<BalancedSimplex>, SearchError> {
    let ws = weights::weight_support(rs, lambda)?;
    let set = match space {
        SearchSpace::Support => ws.weights().to_vec(),
        SearchSpace::Orbit => rs.weyl_orbit(lambda),
    };
    enumerate_simplices(rs, &set, config)
}

/// The simplices `Π̃ ∪ {−θ̃}` for every connected subdiagram `Π̃`, with
/// coefficient `m̃_α` on each simple root and `1` on `−θ̃`, so that
/// `b = h_Π̃`.
pub fn pi_q_simplices(rs: &RootSystem) -> Vec<BalancedSimplex> {
    let simple = rs.simple_roots();
    rs.connected_subdiagrams()
        .iter()
        .map(|sd| {
            let sub = rs.subsystem(&sd.nodes).expect("connected subdiagram");
            let mut alpha = vec![0; rs.rank()];
            for (k, &node) in sd.nodes.iter().enumerate() {
                alpha[node] = -sub.marks()[k];
            }
            let mut weights: Vec<WeightVec> = sd.nodes.iter().map(|&i| simple[i].clone()).collect();
            let mut coefficients: Vec<u64> = sub.marks().iter().map(|&m| m as u64).collect();
            weights.push(rs.from_alpha(&alpha));
            coefficients.push(1);
            BalancedSimplex::from_parts(weights, coefficients)
        })
        .collect()
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(words: usize) -> Self {
        Self(vec![0; words])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    /// Set bits strictly greater than `after`.
    fn iter_after(&self, after: usize) -> impl Iterator<Item = usize> + '_ {
        let start = after + 1;
        (start / 64..self.0.len()).flat_map(move |w| {
            let mut word = self.0[w];
            if w == start / 64 {
                word &= !0u64 << (start % 64);
            }
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Integer row echelon form of the chosen weights, each row carrying the
/// combination of chosen weights it equals.
struct Echelon {
    rows: Vec<(Vec<i128>, usize, Vec<i128>)>,
}

enum Reduced {
    Independent(Vec<i128>, usize, Vec<i128>),
    /// Coefficients of a linear relation among the chosen weights plus the new
    /// one; the new weight's coefficient is nonzero.
    Dependent(Vec<i128>),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Echelon {
    fn reduce(&self, w: &[i64], slot: usize, width: usize) -> Result<Reduced, SearchError> {
        let mut x: Vec<i128> = w.iter().map(|&v| v as i128).collect();
        let mut comb = vec![0i128; width];
        comb[slot] = 1;
        for (row, pivot, rcomb) in &self.rows {
            let xp = x[*pivot];
            if xp == 0 {
                continue;
            }
            let rp = row[*pivot];
            let g = gcd_i128(rp, xp);
            let (a, b) = (rp / g, xp / g);
            let combine = |u: i128, v: i128| -> Result<i128, SearchError> {
                a.checked_mul(u).zip(b.checked_mul(v)).and_then(|(p, q)| p.checked_sub(q)).ok_or(SearchError::Overflow)
            };
            for (u, v) in x.iter_mut().zip(row) {
                *u = combine(*u, *v)?;
            }
            for (u, v) in comb.iter_mut().zip(rcomb) {
                *u = combine(*u, *v)?;
            }
            let g = x.iter().chain(&comb).fold(0, |g, &v| gcd_i128(g, v));
            if g > 1 {
                x.iter_mut().chain(comb.iter_mut()).for_each(|v| *v /= g);
            }
        }
        Ok(match x.iter().position(|&v| v != 0) {
            Some(p) => Reduced::Independent(x, p, comb),
            None => Reduced::Dependent(comb),
        })
    }
}

struct Search<'a> {
    points: &'a [WeightVec],
    compat: &'a [Bits],
    dim: usize,
    max_size: usize,
    budget: u64,
    nodes: AtomicU64,
    abort: AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> Result<(), SearchError> {
        if self.abort.load(AtomicOrdering::Relaxed) || self.nodes.fetch_add(1, AtomicOrdering::Relaxed) >= self.budget {
            self.abort.store(true, AtomicOrdering::Relaxed);
            return Err(SearchError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn rooted_at(&self, i: usize) -> Result<Vec<BalancedSimplex>, SearchError> {
        let mut out = Vec::new();
        let mut chosen = vec![i];
        let mut ech = Echelon { rows: Vec::with_capacity(self.dim) };
        self.tick()?;
        match ech.reduce(self.points[i].coords(), 0, self.max_size)? {
            Reduced::Dependent(_) => out.push(BalancedSimplex::from_parts(vec![self.points[i].clone()], vec![1])),
            Reduced::Independent(row, p, comb) => {
                if self.max_size > 1 {
                    ech.rows.push((row, p, comb));
                    let cand = self.compat[i].clone();
                    self.extend(&mut chosen, &mut ech, &cand, &mut out)?;
                }
            }
        }
        Ok(out)
    }

    fn extend(
        &self,
        chosen: &mut Vec<usize>,
        ech: &mut Echelon,
        cand: &Bits,
        out: &mut Vec<BalancedSimplex>,
    ) -> Result<(), SearchError> {
        let last = *chosen.last().expect("nonempty");
        let slot = chosen.len();
        for j in cand.iter_after(last) {
            self.tick()?;
            match ech.reduce(self.points[j].coords(), slot, self.max_size)? {
                Reduced::Dependent(comb) => {
                    if let Some(s) = self.circuit(chosen, j, &comb[..=slot]) {
                        out.push(s);
                    }
                }
                Reduced::Independent(row, p, comb) => {
                    if slot + 1 < self.max_size {
                        ech.rows.push((row, p, comb));
                        chosen.push(j);
                        let next = cand.and(&self.compat[j]);
                        let r = self.extend(chosen, ech, &next, out);
                        chosen.pop();
                        ech.rows.pop();
                        r?;
                    }
                }
            }
        }
        Ok(())
    }

    fn circuit(&self, chosen: &[usize], j: usize, comb: &[i128]) -> Option<BalancedSimplex> {
        let sign = comb[comb.len() - 1].signum();
        if comb.iter().any(|&c| c.signum() != sign) {
            return None;
        }
        let g = comb.iter().fold(0, |g, &v| gcd_i128(g, v));
        let coefficients: Vec<u64> = comb.iter().map(|&c| (c.abs() / g) as u64).collect();
        let weights: Vec<WeightVec> =
            chosen.iter().chain(std::iter::once(&j)).map(|&k| self.points[k].clone()).collect();
        Some(BalancedSimplex::from_parts(weights, coefficients))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn root_distinct_examples() {
        let a2 = rs("A2");
        let piq = vec![a2.from_alpha(&[1, 0]), a2.from_alpha(&[0, 1]), a2.from_alpha(&[-1, -1])];
        assert!(is_root_distinct(&a2, &piq));
        let natural = a2.weyl_orbit(&WeightVec::fundamental(2, 0));
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!is_root_distinct(&a2, &[natural[i].clone(), natural[j].clone()]));
            }
        }
        assert!(is_root_distinct(&a2, &[WeightVec::new(vec![5, -3])]));
    }

    #[test]
    fn circuit_examples() {
        let a2 = rs("A2");
        let piq = vec![a2.from_alpha(&[1, 0]), a2.from_alpha(&[0, 1]), a2.from_alpha(&[-1, -1])];
        assert_eq!(positive_circuit(&piq), Some(Circuit { coefficients: vec![1, 1, 1], total: 3 }));
        assert_eq!(positive_circuit(&[WeightVec::zero(2)]), Some(Circuit { coefficients: vec![1], total: 1 }));
        let ver = vec![WeightVec::new(vec![2]), WeightVec::new(vec![-2])];
        assert_eq!(positive_circuit(&ver), Some(Circuit { coefficients: vec![1, 1], total: 2 }));
        // dependent but not minimal
        let not_min = vec![WeightVec::new(vec![1, 0]), WeightVec::new(vec![-1, 0]), WeightVec::new(vec![0, 1])];
        assert_eq!(positive_circuit(&not_min), None);
        // circuit with mixed signs
        let mixed = vec![WeightVec::new(vec![1, 0]), WeightVec::new(vec![0, 1]), WeightVec::new(vec![1, 1])];
        assert_eq!(positive_circuit(&mixed), None);
        // coefficients need not be equal
        let g2 = rs("G2");
        let piq = vec![g2.from_alpha(&[1, 0]), g2.from_alpha(&[0, 1]), g2.from_alpha(&[-3, -2])];
        assert_eq!(positive_circuit(&piq), Some(Circuit { coefficients: vec![3, 2, 1], total: 6 }));
    }

    #[test]
    fn a2_adjoint_enumeration() {
        let a2 = rs("A2");
        let ws = weights::weight_support(&a2, a2.highest_root()).unwrap();
        let found = enumerate_simplices(&a2, ws.weights(), &SearchConfig::default()).unwrap();
        assert!(found.iter().any(|s| s.is_trivial() && s.total() == 1));
        // the three ±α pairs
        let pairs: Vec<_> = found.iter().filter(|s| s.len() == 2).collect();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|s| s.total() == 2));
        let triangles: Vec<_> = found.iter().filter(|s| s.len() == 3).collect();
        assert!(!triangles.is_empty());
        assert!(triangles.iter().all(|s| s.total() == 3));
        for s in &found {
            validate(&a2, s).unwrap();
        }
    }

    #[test]
    fn veronese_orbits() {
        for n in 2..=5 {
            let r = rs(&format!("A{}", n - 1));
            for k in 2..=3 {
                let lambda = WeightVec::fundamental(n - 1, 0).scaled(k);
                let found =
                    simplices_for_highest_weight(&r, &lambda, SearchSpace::Orbit, &SearchConfig::default()).unwrap();
                assert_eq!(found.len(), 1, "n={n} k={k}");
                assert_eq!(found[0].len(), n);
                assert_eq!(found[0].total(), n as u64);
            }
            let natural = simplices_for_highest_weight(
                &r,
                &WeightVec::fundamental(n - 1, 0),
                SearchSpace::Orbit,
                &SearchConfig::default(),
            )
            .unwrap();
            assert!(natural.is_empty());
        }
    }

    #[test]
    fn pi_q_examples() {
        let g2 = pi_q_simplices(&rs("G2"));
        let mut totals: Vec<u64> = g2.iter().map(BalancedSimplex::total).collect();
        totals.sort();
        assert_eq!(totals, vec![2, 2, 6]);
        let a1 = pi_q_simplices(&rs("A1"));
        assert_eq!(a1.len(), 1);
        assert_eq!(a1[0].total(), 2);
        assert_eq!(a1[0].weights(), &[WeightVec::new(vec![-2]), WeightVec::new(vec![2])]);

        let e8 = rs("E8");
        let s = pi_q_simplices(&e8);
        assert_eq!(s.len(), e8.connected_subdiagrams().len());
        assert!(s.iter().any(|x| x.total() == 30 && x.len() == 9));
        for x in &s {
            validate(&e8, x).unwrap();
        }
    }

    #[test]
    fn max_size_is_enforced() {
        let a2 = rs("A2");
        let set = a2.roots().to_vec();
        assert_eq!(
            enumerate_simplices(&a2, &set, &SearchConfig { max_size: Some(4), ..Default::default() }),
            Err(SearchError::MaxSizeTooLarge { requested: 4, limit: 3 })
        );
        let pairs_only =
            enumerate_simplices(&a2, &set, &SearchConfig { max_size: Some(2), ..Default::default() }).unwrap();
        assert!(pairs_only.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn budget_overflow_is_an_error() {
        let a2 = rs("A2");
        let r = enumerate_simplices(&a2, a2.roots(), &SearchConfig { max_size: None, node_budget: 3 });
        assert_eq!(r, Err(SearchError::BudgetExceeded(3)));
    }

    #[test]
    fn validator_rejects_broken_simplices() {
        let a2 = rs("A2");
        let a = a2.from_alpha(&[1, 0]);
        let b = a2.from_alpha(&[0, 1]);
        let c = a2.from_alpha(&[-1, -1]);
        let good = BalancedSimplex::from_parts(vec![a.clone(), b.clone(), c.clone()], vec![1, 1, 1]);
        validate(&a2, &good).unwrap();
        let bad_coeff = BalancedSimplex::from_parts(vec![a.clone(), b.clone(), c.clone()], vec![2, 1, 1]);
        assert_eq!(validate(&a2, &bad_coeff), Err(SimplexViolation::NotBalanced));
        let scaled = BalancedSimplex::from_parts(vec![a.clone(), b.clone(), c.clone()], vec![2, 2, 2]);
        assert_eq!(validate(&a2, &scaled), Err(SimplexViolation::NotCoprime));
        let not_min = BalancedSimplex::from_parts(vec![a.clone(), b.clone(), -&a, -&b], vec![1, 1, 1, 1]);
        assert_eq!(validate(&a2, &not_min), Err(SimplexViolation::NotMinimal));
        // balanced, but the weights of the natural module differ by roots
        let nat = a2.weyl_orbit(&WeightVec::fundamental(2, 0));
        let s = BalancedSimplex::from_parts(nat, vec![1, 1, 1]);
        assert_eq!(validate(&a2, &s), Err(SimplexViolation::NotRootDistinct));
    }

    #[test]
    fn order_of_input_does_not_matter() {
        let a2 = rs("A2");
        let ws = weights::weight_support(&a2, a2.highest_root()).unwrap();
        let mut rev = ws.weights().to_vec();
        rev.reverse();
        let a = enumerate_simplices(&a2, ws.weights(), &SearchConfig::default()).unwrap();
        let b = enumerate_simplices(&a2, &rev, &SearchConfig::default()).unwrap();
        assert_eq!(a, b);
    }
}
