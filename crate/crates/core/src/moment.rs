//! Momentum map `μ[v](ξ) = ⟨ξv, v⟩ / ⟨v, v⟩` on explicit models.
//!
//! The torus part is reported in the model's cocharacter coordinates, the
//! root parts as the complex numbers `⟨e_α v, v⟩ / ‖v‖²`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::models::{complex_gaussian, ExplicitModel, C64};
use crate::rootsys::WeightVec;
use crate::simplex::{is_root_distinct, BalancedSimplex};

/// Weight components with norm at most this are outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MomentError {
    #[error("momentum of the zero vector is undefined")]
    ZeroVector,
    #[error("vector has {got} coordinates, model has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight set is not root-distinct")]
    NotRootDistinct,
    #[error("weight {0} does not occur in the model")]
    WeightAbsent(WeightVec),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentValue {
    /// `Σ_ν (|a_ν|²/‖v‖²) ν`.
    pub torus: Vec<f64>,
    /// The coefficients `|a_ν|²/‖v‖²` over the support.
    pub barycentric: Vec<(WeightVec, f64)>,
    /// `⟨e_α v, v⟩ / ‖v‖²` for every root `α`.
    pub roots: Vec<(WeightVec, C64)>,
    pub norm_sq: f64,
}

impl MomentValue {
    pub fn max_root_component(&self) -> f64 {
        self.roots.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of all components together.
    pub fn norm(&self) -> f64 {
        let t: f64 = self.torus.iter().map(|x| x * x).sum();
        let r: f64 = self.roots.iter().map(|(_, z)| z.norm_sqr()).sum();
        (t + r).sqrt()
    }
}

fn check(m: &ExplicitModel, v: &[C64]) -> Result<f64, MomentError> {
    if v.len() != m.dim() {
        return Err(MomentError::DimensionMismatch { expected: m.dim(), got: v.len() });
    }
    let norm_sq: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(MomentError::ZeroVector);
    }
    Ok(norm_sq)
}

fn nonzero_indices(v: &[C64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] != C64::new(0.0, 0.0)).collect()
}

/// Squared norm of the projection of `v` to each weight space, keyed by
/// position in the model's distinct weights.
fn weight_magnitudes(m: &ExplicitModel, v: &[C64], nonzero: &[usize]) -> BTreeMap<usize, f64> {
    let mut out = BTreeMap::new();
    for &i in nonzero {
        *out.entry(m.weight_id(i)).or_insert(0.0) += v[i].norm_sqr();
    }
    out
}

/// Weights whose projection of `v` has norm above [`SUPPORT_TOL`].
pub fn support(m: &ExplicitModel, v: &[C64]) -> Result<Vec<WeightVec>, MomentError> {
    check(m, v)?;
    let weights = m.distinct_weights();
    Ok(weight_magnitudes(m, v, &nonzero_indices(v))
        .into_iter()
        .filter(|(_, sq)| sq.sqrt() > SUPPORT_TOL)
        .map(|(w, _)| weights[w].clone())
        .collect())
}

/// Numeric content of the momentum without labels.
struct Parts {
    /// `(weight position, |a_ν|²/‖v‖²)` over the support.
    barycentric: Vec<(usize, f64)>,
    torus: Vec<f64>,
    roots: Vec<C64>,
}

fn parts(m: &ExplicitModel, v: &[C64], norm_sq: f64) -> Parts {
    let nonzero = nonzero_indices(v);
    let weights = m.distinct_weights();
    let barycentric: Vec<(usize, f64)> = weight_magnitudes(m, v, &nonzero)
        .into_iter()
        .filter(|(_, sq)| sq.sqrt() > SUPPORT_TOL)
        .map(|(w, sq)| (w, sq / norm_sq))
        .collect();
    let mut torus = vec![0.0; m.torus_rank()];
    for &(w, c) in &barycentric {
        for (t, &x) in torus.iter_mut().zip(weights[w].coords()) {
            *t += c * x as f64;
        }
    }
    let roots = m.root_operators().iter().map(|op| op.op.pairing_on(v, &nonzero) / norm_sq).collect();
    Parts { barycentric, torus, roots }
}

pub fn momentum(m: &ExplicitModel, v: &[C64]) -> Result<MomentValue, MomentError> {
    let norm_sq = check(m, v)?;
    let p = parts(m, v, norm_sq);
    let weights = m.distinct_weights();
    Ok(MomentValue {
        torus: p.torus,
        barycentric: p.barycentric.into_iter().map(|(w, c)| (weights[w].clone(), c)).collect(),
        roots: m.root_operators().iter().map(|op| op.root.clone()).zip(p.roots).collect(),
        norm_sq,
    })
}

/// The torus part computed directly as `⟨h v, v⟩ / ‖v‖²` for each
/// cocharacter `h`, without using weights.
pub fn torus_momentum_from_operators(m: &ExplicitModel, v: &[C64]) -> Result<Vec<f64>, MomentError> {
    let norm_sq = check(m, v)?;
    let nonzero = nonzero_indices(v);
    Ok(m.torus_operators().iter().map(|h| h.pairing_on(v, &nonzero).re / norm_sq).collect())
}

/// A Gaussian vector supported on the weight spaces of `set`.
pub fn random_supported_vector(m: &ExplicitModel, set: &[WeightVec], seed: u64) -> Result<Vec<C64>, MomentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = vec![C64::new(0.0, 0.0); m.dim()];
    for w in set {
        let idx = m.weight_indices(w);
        if idx.is_empty() {
            return Err(MomentError::WeightAbsent(w.clone()));
        }
        for i in idx {
            v[i] = complex_gaussian(&mut rng);
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WildbergerReport {
    pub set: Vec<WeightVec>,
    pub trials: usize,
    /// Largest `|⟨e_α v, v⟩| / ‖v‖²`.
    pub max_root_component: f64,
    /// Largest `|Σ c_ν − 1|` over barycentric coordinates.
    pub max_barycentric_error: f64,
    pub min_barycentric: f64,
    /// Largest difference between the weight formula and the cocharacter
    /// pairings for the torus part.
    pub max_torus_mismatch: f64,
    /// Whether the supports stayed inside the set.
    pub supports_inside: bool,
    /// Largest distance of `μ(v_ν)` from `ν` over the vertices.
    pub max_vertex_error: f64,
    pub pass: bool,
}

pub const ROOT_TOL: f64 = 1e-10;
pub const BARYCENTRIC_TOL: f64 = 1e-12;

/// For random `v` supported on the root-distinct set `set`: root parts
/// vanish, and the torus part is the convex combination of `set` with
/// coefficients `|a_ν|²/‖v‖²`. Each vertex `ν` is attained by a vector in
/// its weight space.
pub fn wildberger_check(
    m: &ExplicitModel,
    set: &[WeightVec],
    trials: usize,
    seed: u64,
) -> Result<WildbergerReport, MomentError> {
    if !is_root_distinct(m, set) {
        return Err(MomentError::NotRootDistinct);
    }
    let mut report = WildbergerReport {
        set: set.to_vec(),
        trials,
        max_root_component: 0.0,
        max_barycentric_error: 0.0,
        min_barycentric: f64::INFINITY,
        max_torus_mismatch: 0.0,
        supports_inside: true,
        max_vertex_error: 0.0,
        pass: false,
    };
    let members: Vec<usize> = set
        .iter()
        .map(|w| m.distinct_weights().binary_search(w).map_err(|_| MomentError::WeightAbsent(w.clone())))
        .collect::<Result<_, _>>()?;
    for t in 0..trials {
        let v = random_supported_vector(m, set, seed.wrapping_add(t as u64))?;
        let norm_sq = check(m, &v)?;
        let p = parts(m, &v, norm_sq);
        let max_root = p.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        report.max_root_component = report.max_root_component.max(max_root);
        let sum: f64 = p.barycentric.iter().map(|(_, c)| c).sum();
        report.max_barycentric_error = report.max_barycentric_error.max((sum - 1.0).abs());
        for &(w, c) in &p.barycentric {
            report.min_barycentric = report.min_barycentric.min(c);
            report.supports_inside &= members.contains(&w);
        }
        let direct = torus_momentum_from_operators(m, &v)?;
        for (a, b) in direct.iter().zip(&p.torus) {
            report.max_torus_mismatch = report.max_torus_mismatch.max((a - b).abs());
        }
    }
    for w in set {
        let i = m.weight_indices(w)[0];
        let mut v = vec![C64::new(0.0, 0.0); m.dim()];
        v[i] = C64::new(1.0, 0.0);
        let mu = momentum(m, &v)?;
        for (a, &b) in mu.torus.iter().zip(w.coords()) {
            report.max_vertex_error = report.max_vertex_error.max((a - b as f64).abs());
        }
        report.max_vertex_error = report.max_vertex_error.max(mu.max_root_component());
    }
    report.pass = report.max_root_component < ROOT_TOL
        && report.max_barycentric_error <= BARYCENTRIC_TOL
        && report.min_barycentric >= 0.0
        && report.max_torus_mismatch < ROOT_TOL
        && report.supports_inside
        && report.max_vertex_error < ROOT_TOL;
    Ok(report)
}

/// `Σ √b_ν v_ν`, with `v_ν` the first basis vector of weight `ν`.
pub fn zero_momentum_vector(m: &ExplicitModel, s: &BalancedSimplex) -> Result<Vec<C64>, MomentError> {
    let mut v = vec![C64::new(0.0, 0.0); m.dim()];
    for (w, &b) in s.weights().iter().zip(s.coefficients()) {
        let i = *m.weight_indices(w).first().ok_or_else(|| MomentError::WeightAbsent(w.clone()))?;
        v[i] = C64::new((b as f64).sqrt(), 0.0);
    }
    Ok(v)
}

/// Whether some invariant of the model is nonzero at `v` (relative to its
/// scale), i.e. `v` is a semistability witness.
pub fn has_nonvanishing_invariant(m: &ExplicitModel, v: &[C64], tol: f64) -> bool {
    m.invariants().iter().any(|f| m.relative_value(f, v) > tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, sample_rank_point};
    use crate::rootsys::RootSystem;
    use crate::simplex::{enumerate_simplices, SearchConfig};

    fn model(s: &str) -> ExplicitModel {
        build_model(s.parse().unwrap()).unwrap()
    }

    fn unit(m: &ExplicitModel, i: usize) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); m.dim()];
        v[i] = C64::new(1.0, 0.0);
        v
    }

    #[test]
    fn support_examples() {
        let m = model("sym2:3");
        assert_eq!(support(&m, &unit(&m, 2)).unwrap(), vec![m.weight(2).clone()]);
        // e1e2 + e3e3 in fundamental coordinates: ε1+ε2 = [0,1], 2ε3 = [0,-2]
        let mut x = crate::models::CMat::zeros(3, 3);
        x[(0, 1)] = C64::new(0.5, 0.0);
        x[(1, 0)] = C64::new(0.5, 0.0);
        x[(2, 2)] = C64::new(1.0, 0.0);
        let v = m.coords(&x);
        assert_eq!(support(&m, &v).unwrap(), vec![WeightVec::new(vec![0, -2]), WeightVec::new(vec![0, 1])]);
        let s = sample_rank_point(&m, 3, 1).unwrap();
        assert_eq!(support(&m, &s.vector).unwrap(), m.weight_set());
        assert_eq!(support(&m, &[C64::new(0.0, 0.0); 6]), Err(MomentError::ZeroVector));
    }

    #[test]
    fn highest_weight_vector_momentum() {
        let m = model("adj:3");
        let a2 = RootSystem::new("A2".parse().unwrap());
        let i = m.weight_indices(a2.highest_root())[0];
        let mu = momentum(&m, &unit(&m, i)).unwrap();
        assert_eq!(mu.torus, vec![1.0, 1.0]);
        assert!(mu.max_root_component() < 1e-12);
    }

    #[test]
    fn torus_routes_agree() {
        for id in ["sym2:3", "adj:4", "symp:3", "quadric:5", "segre:2x3", "alt2:5"] {
            let m = model(id);
            let v = sample_rank_point(&m, m.max_rank(), 4).unwrap().vector;
            let a = momentum(&m, &v).unwrap().torus;
            let b = torus_momentum_from_operators(&m, &v).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12, "{id}");
            }
        }
    }

    #[test]
    fn wildberger_examples() {
        let adj = model("adj:3");
        let a2 = RootSystem::new("A2".parse().unwrap());
        let pi_q: Vec<WeightVec> = a2.simple_roots().into_iter().chain([-a2.highest_root()]).collect();
        assert!(wildberger_check(&adj, &pi_q, 50, 1).unwrap().pass);

        let sym = model("sym2:3");
        let squares: Vec<WeightVec> = (0..3)
            .map(|i| {
                sym.weight(sym.basis().iter().position(|b| sym.element_matrix(b)[(i, i)].norm() > 0.5).unwrap()).clone()
            })
            .collect();
        let rep = wildberger_check(&sym, &squares, 50, 2).unwrap();
        assert!(rep.pass, "{rep:?}");

        let single = vec![sym.weight(1).clone()];
        let rep = wildberger_check(&sym, &single, 5, 3).unwrap();
        assert!(rep.pass && rep.max_vertex_error < 1e-14);

        // two weights differing by a root
        let bad = vec![a2.simple_roots()[0].clone(), WeightVec::zero(2)];
        assert_eq!(wildberger_check(&adj, &bad, 5, 3), Err(MomentError::NotRootDistinct));
    }

    #[test]
    fn non_root_distinct_support_has_root_components() {
        let adj = model("adj:3");
        let v = sample_rank_point(&adj, 3, 8).unwrap().vector;
        assert!(momentum(&adj, &v).unwrap().max_root_component() > 1e-3);
    }

    #[test]
    fn zero_momentum_examples() {
        let sym = model("sym2:4");
        let found = enumerate_simplices(&sym, &sym.weight_set(), &SearchConfig::default()).unwrap();
        let full = found.iter().find(|s| s.len() == 4 && s.total() == 4).unwrap();
        let v = zero_momentum_vector(&sym, full).unwrap();
        assert!(momentum(&sym, &v).unwrap().norm() < 1e-10);
        assert!((sym.to_matrix(&v) - crate::models::CMat::identity(4, 4)).norm() < 1e-14);
        assert!(has_nonvanishing_invariant(&sym, &v, 1e-4));

        let sl2 = model("adj:2");
        let pair = enumerate_simplices(&sl2, &sl2.weight_set(), &SearchConfig::default())
            .unwrap()
            .into_iter()
            .find(|s| s.len() == 2)
            .unwrap();
        let v = zero_momentum_vector(&sl2, &pair).unwrap();
        let x = sl2.to_matrix(&v);
        assert_eq!((x[(0, 1)], x[(1, 0)]), (C64::new(1.0, 0.0), C64::new(1.0, 0.0)));
        assert!(momentum(&sl2, &v).unwrap().norm() < 1e-10);

        let zero = BalancedSimplex::from_parts(vec![WeightVec::zero(3)], vec![1]);
        let adj4 = model("adj:4");
        let v = zero_momentum_vector(&adj4, &zero).unwrap();
        assert!(momentum(&adj4, &v).unwrap().torus.iter().all(|x| x.abs() < 1e-14));

        let absent = BalancedSimplex::from_parts(vec![WeightVec::new(vec![5, 0, 0])], vec![1]);
        assert!(matches!(zero_momentum_vector(&adj4, &absent), Err(MomentError::WeightAbsent(_))));
    }
}
