//! Simple root systems of types A–G in exact integer arithmetic.
//!
//! Simple roots follow Bourbaki numbering. Weights are stored in the
//! fundamental-weight basis; simple-root coordinates are derived through the
//! inverse Cartan matrix. Row `i` of the Cartan matrix holds the
//! fundamental-weight coordinates of the simple root `α_i`, i.e.
//! `C[i][j] = ⟨α_i, α_j^∨⟩`.

mod types;
mod weight;

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact;

pub use types::{Family, SimpleType};
pub use weight::WeightVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("unknown root system type {0:?}")]
    UnknownType(String),
    #[error("cannot parse weight {0:?}")]
    ParseWeight(String),
    #[error("weight {0} is not dominant")]
    NotDominant(WeightVec),
    #[error("weight has {got} coordinates, root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("Weyl orbit exceeds cap of {0} weights")]
    OrbitTooLarge(usize),
    #[error("Dynkin subdiagram is not connected or not of finite type")]
    NotSimple,
}

/// Anything that can answer "is this vector a root?".
///
/// Implemented by [`RootSystem`] and by the product groups used in the
/// explicit models.
pub trait RootSet {
    fn contains_root(&self, w: &WeightVec) -> bool;
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    simple_type: SimpleType,
    /// Simple-root inner products, scaled to integers.
    form: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    cartan_det: i64,
    /// `cartan_det · C⁻¹`, an integer matrix.
    cartan_adj: Vec<Vec<i64>>,
    roots: Vec<WeightVec>,
    root_set: HashSet<WeightVec>,
    /// Positive roots in simple-root coordinates, aligned with `positive_omega`.
    positive_alpha: Vec<Vec<i64>>,
    positive_omega: Vec<WeightVec>,
    highest: usize,
}

/// A connected subset of the Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subdiagram {
    pub nodes: Vec<usize>,
    pub simple_type: SimpleType,
    pub coxeter_number: u64,
}

fn chain(rank: usize, len: impl Fn(usize) -> i64, bond: impl Fn(usize) -> i64) -> Vec<Vec<i64>> {
    let mut f = vec![vec![0; rank]; rank];
    for i in 0..rank {
        f[i][i] = len(i);
        if i + 1 < rank {
            f[i][i + 1] = bond(i);
            f[i + 1][i] = bond(i);
        }
    }
    f
}

fn form_for(t: SimpleType) -> Vec<Vec<i64>> {
    let l = t.rank();
    match t.family() {
        Family::A => chain(l, |_| 2, |_| -1),
        // long roots have squared length 4, short 2
        Family::B => chain(l, |i| if i + 1 == l { 2 } else { 4 }, |_| -2),
        Family::C => chain(l, |i| if i + 1 == l { 4 } else { 2 }, |i| if i + 2 == l { -2 } else { -1 }),
        Family::D => {
            let mut f = chain(l - 1, |_| 2, |_| -1);
            for row in f.iter_mut() {
                row.push(0);
            }
            f.push(vec![0; l]);
            f[l - 1][l - 1] = 2;
            f[l - 3][l - 1] = -1;
            f[l - 1][l - 3] = -1;
            f
        }
        Family::E => {
            let mut f = vec![vec![0; l]; l];
            for (i, row) in f.iter_mut().enumerate() {
                row[i] = 2;
            }
            let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            for (a, b) in edges {
                if a < l && b < l {
                    f[a][b] = -1;
                    f[b][a] = -1;
                }
            }
            f
        }
        Family::F => vec![vec![4, -2, 0, 0], vec![-2, 4, -2, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]],
        Family::G => vec![vec![2, -3], vec![-3, 6]],
    }
}

impl RootSystem {
    pub fn new(t: SimpleType) -> Self {
        Self::from_form(form_for(t), Some(t)).expect("built-in Cartan data is valid")
    }

    /// Builds the root system of a connected Dynkin diagram given by the
    /// integer inner products of its simple roots. The type is recognized
    /// from the root data when not supplied.
    fn from_form(form: Vec<Vec<i64>>, t: Option<SimpleType>) -> Result<Self, RootSystemError> {
        let l = form.len();
        let cartan: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| 2 * form[i][j] / form[j][j]).collect()).collect();
        let det = exact::determinant(&cartan);
        if det <= BigInt::zero() {
            return Err(RootSystemError::NotSimple);
        }
        let inv = exact::inverse(&exact::to_rational(&cartan)).ok_or(RootSystemError::NotSimple)?;
        let det_q = BigRational::from_integer(det.clone());
        let cartan_adj: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * &det_q;
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().expect("small adjugate")
                    })
                    .collect()
            })
            .collect();
        let cartan_det = det.to_i64().expect("small determinant");

        // roots = W-orbits of the simple roots
        let simple: Vec<WeightVec> = cartan.iter().cloned().map(WeightVec::new).collect();
        let mut root_set: HashSet<WeightVec> = simple.iter().cloned().collect();
        let mut queue: VecDeque<WeightVec> = simple.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for i in 0..l {
                let s = reflect_with(&cartan, &r, i);
                if root_set.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut roots: Vec<WeightVec> = root_set.iter().cloned().collect();
        roots.sort();

        let to_alpha_int = |w: &WeightVec| -> Vec<i64> {
            (0..l)
                .map(|j| {
                    let num: i64 = (0..l).map(|i| w.coords()[i] * cartan_adj[i][j]).sum();
                    debug_assert_eq!(num % cartan_det, 0);
                    num / cartan_det
                })
                .collect()
        };
        let mut positive_omega = Vec::new();
        let mut positive_alpha = Vec::new();
        for r in &roots {
            let a = to_alpha_int(r);
            let pos = a.iter().all(|&x| x >= 0);
            let neg = a.iter().all(|&x| x <= 0);
            if !(pos || neg) {
                return Err(RootSystemError::NotSimple);
            }
            if pos {
                positive_omega.push(r.clone());
                positive_alpha.push(a);
            }
        }
        let highest = (0..positive_alpha.len())
            .max_by_key(|&k| positive_alpha[k].iter().sum::<i64>())
            .expect("nonempty root system");

        let simple_type = match t {
            Some(t) => t,
            None => classify(&form, &positive_alpha)?,
        };
        Ok(Self {
            simple_type,
            form,
            cartan,
            cartan_det,
            cartan_adj,
            roots,
            root_set,
            positive_alpha,
            positive_omega,
            highest,
        })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrized inner products of the simple roots, normalized so that
    /// long roots have squared length 2.
    pub fn inner_product_matrix(&self) -> Vec<Vec<BigRational>> {
        let long = self.form.iter().enumerate().map(|(i, r)| r[i]).max().unwrap_or(2);
        self.form
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::new(BigInt::from(2 * x), BigInt::from(long))).collect())
            .collect()
    }

    pub fn simple_roots(&self) -> Vec<WeightVec> {
        self.cartan.iter().cloned().map(WeightVec::new).collect()
    }

    /// All roots, sorted canonically.
    pub fn roots(&self) -> &[WeightVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[WeightVec] {
        &self.positive_omega
    }

    pub fn fundamental_weights(&self) -> Vec<WeightVec> {
        (0..self.rank()).map(|i| WeightVec::fundamental(self.rank(), i)).collect()
    }

    pub fn weyl_vector(&self) -> WeightVec {
        WeightVec::new(vec![1; self.rank()])
    }

    pub fn highest_root(&self) -> &WeightVec {
        &self.positive_omega[self.highest]
    }

    /// Simple-root coefficients `m_α` of the highest root.
    pub fn marks(&self) -> &[i64] {
        &self.positive_alpha[self.highest]
    }

    /// `h = 1 + Σ m_α`.
    pub fn coxeter_number(&self) -> u64 {
        1 + self.marks().iter().sum::<i64>() as u64
    }

    pub fn is_root(&self, w: &WeightVec) -> bool {
        self.root_set.contains(w)
    }

    pub fn check_rank(&self, w: &WeightVec) -> Result<(), RootSystemError> {
        if w.rank() != self.rank() {
            return Err(RootSystemError::RankMismatch { expected: self.rank(), got: w.rank() });
        }
        Ok(())
    }

    /// Simple-root coordinates, exact.
    pub fn to_alpha(&self, w: &WeightVec) -> Vec<BigRational> {
        self.alpha_numerators(w)
            .into_iter()
            .map(|n| BigRational::new(BigInt::from(n), BigInt::from(self.cartan_det)))
            .collect()
    }

    /// Numerators of the simple-root coordinates over the common denominator
    /// [`Self::cartan_determinant`].
    pub fn alpha_numerators(&self, w: &WeightVec) -> Vec<i64> {
        let l = self.rank();
        (0..l).map(|j| (0..l).map(|i| w.coords()[i] * self.cartan_adj[i][j]).sum()).collect()
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.cartan_det
    }

    /// The weight `Σ a_i α_i`.
    pub fn from_alpha(&self, alpha: &[i64]) -> WeightVec {
        let l = self.rank();
        WeightVec::new((0..l).map(|j| (0..l).map(|i| alpha[i] * self.cartan[i][j]).sum()).collect())
    }

    /// `s_i(ν) = ν − ⟨ν, α_i^∨⟩ α_i`.
    pub fn reflect(&self, w: &WeightVec, i: usize) -> WeightVec {
        reflect_with(&self.cartan, w, i)
    }

    /// The Weyl orbit of `w`, by breadth-first closure under simple
    /// reflections, sorted canonically.
    pub fn weyl_orbit(&self, w: &WeightVec) -> Vec<WeightVec> {
        self.weyl_orbit_capped(w, usize::MAX).expect("uncapped")
    }

    pub fn weyl_orbit_capped(&self, w: &WeightVec, cap: usize) -> Result<Vec<WeightVec>, RootSystemError> {
        let mut seen: BTreeSet<WeightVec> = BTreeSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                if v.coords()[i] == 0 {
                    continue;
                }
                let s = self.reflect(&v, i);
                if seen.insert(s.clone()) {
                    if seen.len() > cap {
                        return Err(RootSystemError::OrbitTooLarge(cap));
                    }
                    queue.push_back(s);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Moves `w` into the dominant chamber by simple reflections.
    pub fn to_dominant(&self, w: &WeightVec) -> WeightVec {
        let mut v = w.clone();
        while let Some(i) = v.coords().iter().position(|&x| x < 0) {
            v = self.reflect(&v, i);
        }
        v
    }

    /// Highest weight of the dual module: the dominant representative of `−λ`.
    pub fn dual_weight(&self, lambda: &WeightVec) -> Result<WeightVec, RootSystemError> {
        self.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(RootSystemError::NotDominant(lambda.clone()));
        }
        Ok(self.to_dominant(&-lambda))
    }

    /// Root subsystem spanned by a subset of the simple roots, with its own
    /// simple roots numbered in the order of `nodes`.
    pub fn subsystem(&self, nodes: &[usize]) -> Result<RootSystem, RootSystemError> {
        let form: Vec<Vec<i64>> = nodes.iter().map(|&i| nodes.iter().map(|&j| self.form[i][j]).collect()).collect();
        if !is_connected(&form) {
            return Err(RootSystemError::NotSimple);
        }
        RootSystem::from_form(form, None)
    }

    /// All nonempty connected subsets of the Dynkin diagram, by increasing
    /// bitmask, each with its type and Coxeter number.
    pub fn connected_subdiagrams(&self) -> Vec<Subdiagram> {
        let l = self.rank();
        let mut out = Vec::new();
        for mask in 1u32..(1 << l) {
            let nodes: Vec<usize> = (0..l).filter(|i| mask & (1 << i) != 0).collect();
            if let Ok(sub) = self.subsystem(&nodes) {
                out.push(Subdiagram { nodes, simple_type: sub.simple_type(), coxeter_number: sub.coxeter_number() });
            }
        }
        out
    }

    /// Squared length of a root given in simple-root coordinates, in the
    /// scaled integer normalization of the stored form.
    fn squared_length(form: &[Vec<i64>], alpha: &[i64]) -> i64 {
        let l = form.len();
        (0..l).flat_map(|i| (0..l).map(move |j| (i, j))).map(|(i, j)| alpha[i] * form[i][j] * alpha[j]).sum()
    }
}

impl RootSet for RootSystem {
    fn contains_root(&self, w: &WeightVec) -> bool {
        self.is_root(w)
    }
}

fn reflect_with(cartan: &[Vec<i64>], w: &WeightVec, i: usize) -> WeightVec {
    let c = w.coords()[i];
    WeightVec::new(w.coords().iter().zip(&cartan[i]).map(|(x, a)| x - c * a).collect())
}

fn is_connected(form: &[Vec<i64>]) -> bool {
    let l = form.len();
    if l == 0 {
        return false;
    }
    let mut seen = vec![false; l];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..l {
            if !seen[j] && form[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn classify(form: &[Vec<i64>], positive_alpha: &[Vec<i64>]) -> Result<SimpleType, RootSystemError> {
    let l = form.len();
    let n = 2 * positive_alpha.len();
    let lengths: Vec<i64> = positive_alpha.iter().map(|a| RootSystem::squared_length(form, a)).collect();
    let max = lengths.iter().copied().max().unwrap_or(0);
    let short = 2 * lengths.iter().filter(|&&x| x < max).count();
    let family = if short == 0 {
        if n == l * (l + 1) {
            Family::A
        } else if l >= 4 && n == 2 * l * (l - 1) {
            Family::D
        } else if matches!((l, n), (6, 72) | (7, 126) | (8, 240)) {
            Family::E
        } else {
            return Err(RootSystemError::NotSimple);
        }
    } else if l == 2 && n == 12 {
        Family::G
    } else if l == 4 && n == 48 {
        Family::F
    } else if n == 2 * l * l {
        if short == 2 * l {
            Family::B
        } else {
            Family::C
        }
    } else {
        return Err(RootSystemError::NotSimple);
    };
    SimpleType::new(family, l)
}
