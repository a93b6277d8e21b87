//! Weight supports of irreducible modules (no multiplicities).

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::exact;
use crate::rootsys::{RootSystem, RootSystemError, WeightVec};

/// Refuse highest weights whose support would exceed this many weights.
pub const DEFAULT_SUPPORT_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("weight support exceeds cap of {0} weights")]
    TooLarge(usize),
}

/// The set `Λ(V(λ))` of weights of an irreducible module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    highest: WeightVec,
    dominant: Vec<WeightVec>,
    weights: Vec<WeightVec>,
}

impl WeightSet {
    pub fn highest_weight(&self) -> &WeightVec {
        &self.highest
    }

    /// Dominant weights, sorted canonically.
    pub fn dominant(&self) -> &[WeightVec] {
        &self.dominant
    }

    /// All weights, sorted canonically.
    pub fn weights(&self) -> &[WeightVec] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, w: &WeightVec) -> bool {
        self.weights.binary_search(w).is_ok()
    }
}

/// Dominant `μ` with `λ − μ` a nonnegative integer combination of simple
/// roots. Found by walking down from `λ` one simple root at a time and
/// discarding anything with a negative simple-root coordinate.
pub fn dominant_weights(rs: &RootSystem, lambda: &WeightVec, cap: usize) -> Result<Vec<WeightVec>, WeightError> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(RootSystemError::NotDominant(lambda.clone()).into());
    }
    let simple = rs.simple_roots();
    let region_cap = cap.saturating_mul(10);
    let mut seen: HashSet<WeightVec> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    let mut dominant = BTreeSet::new();
    while let Some(nu) = queue.pop_front() {
        if nu.is_dominant() {
            dominant.insert(nu.clone());
        }
        for a in &simple {
            let next = &nu - a;
            if seen.contains(&next) || rs.alpha_numerators(&next).iter().any(|&x| x < 0) {
                continue;
            }
            seen.insert(next.clone());
            if seen.len() > region_cap {
                return Err(WeightError::TooLarge(cap));
            }
            queue.push_back(next);
        }
    }
    Ok(dominant.into_iter().collect())
}

pub fn weight_support(rs: &RootSystem, lambda: &WeightVec) -> Result<WeightSet, WeightError> {
    weight_support_capped(rs, lambda, DEFAULT_SUPPORT_CAP)
}

pub fn weight_support_capped(rs: &RootSystem, lambda: &WeightVec, cap: usize) -> Result<WeightSet, WeightError> {
    let dominant = dominant_weights(rs, lambda, cap)?;
    let mut all = BTreeSet::new();
    for mu in &dominant {
        let room = cap.saturating_sub(all.len());
        let orbit = rs.weyl_orbit_capped(mu, room).map_err(|_| WeightError::TooLarge(cap))?;
        all.extend(orbit);
        if all.len() > cap {
            return Err(WeightError::TooLarge(cap));
        }
    }
    Ok(WeightSet { highest: lambda.clone(), dominant, weights: all.into_iter().collect() })
}

/// Whether `0` lies in the convex hull of `m`, decided exactly.
///
/// By Carathéodory, `0 ∈ Conv(m)` iff `m` contains `0` or a subset of at
/// most `dim + 1` vectors carrying a strictly positive linear relation with a
/// one-dimensional relation space.
pub fn zero_in_hull(m: &[WeightVec]) -> bool {
    if m.iter().any(WeightVec::is_zero) {
        return true;
    }
    let Some(first) = m.first() else {
        return false;
    };
    let dim = first.rank();
    let points: Vec<&[i64]> = m.iter().map(WeightVec::coords).collect();
    let max = (dim + 1).min(points.len());
    let mut chosen = Vec::with_capacity(max);
    (2..=max).any(|size| subset_has_circuit(&points, size, 0, &mut chosen))
}

fn subset_has_circuit<'a>(points: &[&'a [i64]], size: usize, start: usize, chosen: &mut Vec<&'a [i64]>) -> bool {
    if chosen.len() == size {
        return exact::positive_circuit_relation(chosen).is_some();
    }
    for i in start..points.len() {
        if points.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(points[i]);
        let found = subset_has_circuit(points, size, i + 1, chosen);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn adjoint_a2_is_roots_and_zero() {
        let a2 = rs("A2");
        let ws = weight_support(&a2, a2.highest_root()).unwrap();
        assert_eq!(ws.len(), 7);
        let mut expected: Vec<WeightVec> = a2.roots().to_vec();
        expected.push(WeightVec::zero(2));
        expected.sort();
        assert_eq!(ws.weights(), expected.as_slice());
    }

    #[test]
    fn natural_representations() {
        for n in 2..=6 {
            let r = rs(&format!("A{}", n - 1));
            let ws = weight_support(&r, &WeightVec::fundamental(n - 1, 0)).unwrap();
            assert_eq!(ws.len(), n);
            assert_eq!(ws.dominant().len(), 1);
        }
    }

    #[test]
    fn trivial_representation() {
        let b3 = rs("B3");
        let ws = weight_support(&b3, &WeightVec::zero(3)).unwrap();
        assert_eq!(ws.weights(), &[WeightVec::zero(3)]);
    }

    #[test]
    fn symmetric_square_of_c4() {
        // S²ℂ⁴ for SL4: weights εi+εj, ten of them, two dominant (2ω₁ and ω₂)
        let a3 = rs("A3");
        let ws = weight_support(&a3, &WeightVec::new(vec![2, 0, 0])).unwrap();
        assert_eq!(ws.len(), 10);
        assert_eq!(ws.dominant(), &[WeightVec::new(vec![0, 1, 0]), WeightVec::new(vec![2, 0, 0])]);
    }

    #[test]
    fn rejects_bad_input_and_caps() {
        let a2 = rs("A2");
        assert!(matches!(
            weight_support(&a2, &WeightVec::new(vec![1, -1])),
            Err(WeightError::RootSystem(RootSystemError::NotDominant(_)))
        ));
        assert!(matches!(weight_support_capped(&a2, &WeightVec::new(vec![3, 3]), 10), Err(WeightError::TooLarge(10))));
    }

    #[test]
    fn hull_examples() {
        let a2 = rs("A2");
        let m = vec![a2.from_alpha(&[1, 0]), a2.from_alpha(&[0, 1]), a2.from_alpha(&[-1, -1])];
        assert!(zero_in_hull(&m));
        assert!(!zero_in_hull(&[WeightVec::fundamental(2, 0)]));
        assert!(zero_in_hull(&[WeightVec::zero(2)]));
        assert!(!zero_in_hull(&m[..2]));
        // segment through the origin with extra points around it
        let seg = vec![WeightVec::new(vec![2, 1]), WeightVec::new(vec![5, 7]), WeightVec::new(vec![-4, -2])];
        assert!(zero_in_hull(&seg));
    }
}
