//! Explicit matrix realizations of classical representations: weight bases,
//! root operators, low-rank samplers and invariant evaluators.
//!
//! Every ambient space carries the Frobenius inner product of its matrix
//! form, and every basis below is orthonormal for it, so the maximal compact
//! subgroup acts unitarily. Weights are written in the coordinates of the
//! diagonal cocharacters: `E_kk − E_{k+1,k+1}` for `SL_n` (these are the
//! simple coroots, so weights come out in fundamental-weight coordinates)
//! and `E_kk − E_{k̄k̄}` for the split orthogonal and symplectic groups
//! (ε-coordinates).

mod checks;
mod group;
mod invariants;
mod sample;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use checks::{
    homogeneity_defect, invariance_defect, measure_rss, secant_vanishing_check, vanishing_window, RssMeasurement,
    SecantReport,
};
pub use group::{complex_gaussian, random_matrix, CMat, Classical, MatrixGroup, RootVector, C64};
pub use invariants::{elementary_from_power_sums, pfaffian, Invariant, InvariantKind};
pub use sample::{sample_rank_point, RankSample};

use crate::predict::TableRow;
use crate::rootsys::{RootSet, WeightVec};

/// Largest accepted size parameter of a model.
pub const MAX_PARAMETER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("cannot parse model id {0:?} (expected e.g. sym2:4, alt2:6, adj:5, segre:3x3, quadric:5, symp:3, nat:4)")]
    Parse(String),
    #[error("unsupported dimension for {0}")]
    Unsupported(String),
    #[error("rank {requested} exceeds the maximal rank {max} of {case}")]
    RankTooLarge { case: String, requested: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelCase {
    /// `ℂⁿ` under `SL_n`.
    Natural(usize),
    /// `S²ℂⁿ` under `SL_n`.
    Sym2(usize),
    /// `Λ²ℂⁿ` under `SL_n`.
    Alt2(usize),
    /// `𝔰𝔩_n` under `SL_n`.
    AdjointSL(usize),
    /// `ℂᵐ ⊗ ℂⁿ` under `SL_m × SL_n`.
    Segre(usize, usize),
    /// `ℂⁿ` under `SO_n`.
    Quadric(usize),
    /// `Λ₀²ℂ²ⁿ` under `Sp_{2n}`.
    SympAlt2(usize),
}

impl ModelCase {
    pub fn validate(&self) -> Result<(), ModelError> {
        let ok = |n: usize, min: usize| (min..=MAX_PARAMETER).contains(&n);
        let valid = match *self {
            Self::Natural(n) | Self::Sym2(n) | Self::AdjointSL(n) | Self::SympAlt2(n) => ok(n, 2),
            Self::Alt2(n) | Self::Quadric(n) => ok(n, 3),
            Self::Segre(m, n) => ok(m, 2) && ok(n, 2),
        };
        if valid {
            Ok(())
        } else {
            Err(ModelError::Unsupported(self.to_string()))
        }
    }

    /// Maximal value of the rank function on the ambient space.
    pub fn max_rank(&self) -> usize {
        match *self {
            Self::Natural(_) => 1,
            Self::Sym2(n) | Self::AdjointSL(n) | Self::SympAlt2(n) => n,
            Self::Alt2(n) => n / 2,
            Self::Segre(m, n) => m.min(n),
            Self::Quadric(_) => 2,
        }
    }

    pub fn table_row(&self) -> TableRow {
        match *self {
            Self::Natural(n) => TableRow::Projective(n),
            Self::Sym2(n) => TableRow::Veronese2(n),
            Self::Alt2(n) => TableRow::Grassmann2(n),
            Self::AdjointSL(n) => TableRow::Flag(n),
            Self::Segre(m, n) => TableRow::Segre(m, n),
            Self::Quadric(n) => TableRow::Quadric(n),
            Self::SympAlt2(n) => TableRow::SymplecticGrassmann(n),
        }
    }

    fn groups(&self) -> Vec<Classical> {
        match *self {
            Self::Natural(n) | Self::Sym2(n) | Self::Alt2(n) | Self::AdjointSL(n) => vec![Classical::Special(n)],
            Self::Segre(m, n) => vec![Classical::Special(m), Classical::Special(n)],
            Self::Quadric(n) => vec![Classical::Orthogonal(n)],
            Self::SympAlt2(n) => vec![Classical::Symplectic(n)],
        }
    }
}

impl fmt::Display for ModelCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Natural(n) => write!(f, "nat:{n}"),
            Self::Sym2(n) => write!(f, "sym2:{n}"),
            Self::Alt2(n) => write!(f, "alt2:{n}"),
            Self::AdjointSL(n) => write!(f, "adj:{n}"),
            Self::Segre(m, n) => write!(f, "segre:{m}x{n}"),
            Self::Quadric(n) => write!(f, "quadric:{n}"),
            Self::SympAlt2(n) => write!(f, "symp:{n}"),
        }
    }
}

impl FromStr for ModelCase {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ModelError::Parse(s.to_string());
        let (kind, arg) = s.trim().split_once(':').ok_or_else(err)?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| err());
        Ok(match kind.trim().to_ascii_lowercase().as_str() {
            "nat" => Self::Natural(num(arg)?),
            "sym2" => Self::Sym2(num(arg)?),
            "alt2" => Self::Alt2(num(arg)?),
            "adj" => Self::AdjointSL(num(arg)?),
            "segre" => {
                let (m, n) = arg.split_once(['x', 'X', '×']).ok_or_else(err)?;
                Self::Segre(num(m)?, num(n)?)
            }
            "quadric" => Self::Quadric(num(arg)?),
            "symp" => Self::SympAlt2(num(arg)?),
            _ => return Err(err()),
        })
    }
}

impl Serialize for ModelCase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A basis vector of the ambient space: its weight and its nonzero matrix
/// entries.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub weight: WeightVec,
    entries: Vec<(usize, usize, f64)>,
}

/// A linear operator on ambient coordinates, stored by column.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    cols: Vec<Vec<(usize, C64)>>,
}

impl SparseOperator {
    fn new(dim: usize, entries: Vec<(usize, usize, C64)>) -> Self {
        let mut cols = vec![Vec::new(); dim];
        for (r, c, x) in entries {
            cols[c].push((r, x));
        }
        Self { cols }
    }

    /// Nonzero entries `(row, column, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, x)| (r, c, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (r, c, x) in self.entries() {
            out[r] += x * v[c];
        }
        out
    }

    /// `⟨Av, v⟩` for the Hermitian form linear in the first slot.
    pub fn pairing(&self, v: &[C64]) -> C64 {
        self.entries().map(|(r, c, x)| x * v[c] * v[r].conj()).sum()
    }

    /// `⟨Av, v⟩` when `v` vanishes outside the indices `nonzero`.
    pub fn pairing_on(&self, v: &[C64], nonzero: &[usize]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in nonzero {
            for &(r, x) in &self.cols[c] {
                acc += x * v[c] * v[r].conj();
            }
        }
        acc
    }
}

/// The action of a root vector `e_α` on ambient coordinates.
#[derive(Debug, Clone)]
pub struct RootOperator {
    pub root: WeightVec,
    pub factor: usize,
    pub generator: CMat,
    pub op: SparseOperator,
}

/// A group element of the model's (possibly product) group, with inverse.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub factors: Vec<CMat>,
    pub inverses: Vec<CMat>,
}

#[derive(Debug, Clone)]
pub struct ExplicitModel {
    case: ModelCase,
    groups: Vec<MatrixGroup>,
    shape: (usize, usize),
    basis: Vec<BasisElement>,
    roots: Vec<WeightVec>,
    root_set: HashSet<WeightVec>,
    root_ops: Vec<RootOperator>,
    torus_ops: Vec<SparseOperator>,
    weight_list: Vec<WeightVec>,
    weight_ids: Vec<usize>,
    invariants: Vec<Invariant>,
}

fn concat(parts: &[&[i64]]) -> WeightVec {
    WeightVec::new(parts.iter().flat_map(|p| p.iter().copied()).collect())
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn build_model(case: ModelCase) -> Result<ExplicitModel, ModelError> {
    case.validate()?;
    let groups: Vec<MatrixGroup> = case.groups().into_iter().map(MatrixGroup::new).collect();
    let g = &groups[0];
    let dim = g.dim();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::new();
    let mut push = |weight: WeightVec, entries: Vec<(usize, usize, f64)>| basis.push(BasisElement { weight, entries });
    let shape = match case {
        ModelCase::Natural(_) | ModelCase::Quadric(_) => {
            for i in 0..dim {
                push(WeightVec::new(g.basis_weight(i).to_vec()), vec![(i, 0, 1.0)]);
            }
            (dim, 1)
        }
        ModelCase::Sym2(_) => {
            for i in 0..dim {
                for j in i..dim {
                    let w = WeightVec::new(add(g.basis_weight(i), g.basis_weight(j)));
                    if i == j {
                        push(w, vec![(i, i, 1.0)]);
                    } else {
                        push(w, vec![(i, j, r2), (j, i, r2)]);
                    }
                }
            }
            (dim, dim)
        }
        ModelCase::Alt2(_) => {
            for i in 0..dim {
                for j in i + 1..dim {
                    push(WeightVec::new(add(g.basis_weight(i), g.basis_weight(j))), vec![(i, j, r2), (j, i, -r2)]);
                }
            }
            (dim, dim)
        }
        ModelCase::SympAlt2(n) => {
            for i in 0..dim {
                for j in i + 1..dim {
                    if i + j != dim - 1 {
                        push(WeightVec::new(add(g.basis_weight(i), g.basis_weight(j))), vec![(i, j, r2), (j, i, -r2)]);
                    }
                }
            }
            // u_k = e_k ∧ e_k̄ all have the same contraction with ω; the
            // traceless combinations below span the zero weight space.
            let zero = WeightVec::zero(g.rank());
            for m in 1..n {
                let c = 1.0 / ((m * (m + 1)) as f64).sqrt();
                let mut entries = Vec::new();
                for k in 0..=m {
                    let coef = if k < m { c } else { -(m as f64) * c };
                    entries.push((k, dim - 1 - k, coef * r2));
                    entries.push((dim - 1 - k, k, -coef * r2));
                }
                push(zero.clone(), entries);
            }
            (dim, dim)
        }
        ModelCase::AdjointSL(n) => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        push(WeightVec::new(sub(g.basis_weight(i), g.basis_weight(j))), vec![(i, j, 1.0)]);
                    }
                }
            }
            let zero = WeightVec::zero(g.rank());
            for m in 1..n {
                let c = 1.0 / ((m * (m + 1)) as f64).sqrt();
                let entries = (0..=m).map(|k| (k, k, if k < m { c } else { -(m as f64) * c })).collect();
                push(zero.clone(), entries);
            }
            (n, n)
        }
        ModelCase::Segre(m, n) => {
            let h = &groups[1];
            for i in 0..m {
                for j in 0..n {
                    push(concat(&[g.basis_weight(i), h.basis_weight(j)]), vec![(i, j, 1.0)]);
                }
            }
            (m, n)
        }
    };

    let ranks: Vec<usize> = groups.iter().map(MatrixGroup::rank).collect();
    let total_rank: usize = ranks.iter().sum();
    let mut model = ExplicitModel {
        case,
        groups,
        shape,
        basis,
        roots: Vec::new(),
        root_set: HashSet::new(),
        root_ops: Vec::new(),
        torus_ops: Vec::new(),
        weight_list: Vec::new(),
        weight_ids: Vec::new(),
        invariants: Vec::new(),
    };

    let mut ops = Vec::new();
    let mut offset = 0;
    for (f, grp) in model.groups.iter().enumerate() {
        for rv in grp.roots() {
            let mut w = vec![0; total_rank];
            w[offset..offset + ranks[f]].copy_from_slice(&rv.weight);
            let op = model.operator(&model.embed(f, &rv.matrix));
            ops.push(RootOperator { root: WeightVec::new(w), factor: f, generator: rv.matrix.clone(), op });
        }
        offset += ranks[f];
    }
    ops.sort_by(|a, b| a.root.cmp(&b.root));
    model.roots = ops.iter().map(|o| o.root.clone()).collect();
    model.root_set = model.roots.iter().cloned().collect();
    model.root_ops = ops;
    model.torus_ops = model.cocharacters().iter().map(|h| model.operator(h)).collect();
    model.weight_list = model.basis.iter().map(|b| b.weight.clone()).collect();
    model.weight_list.sort();
    model.weight_list.dedup();
    model.weight_ids =
        model.basis.iter().map(|b| model.weight_list.binary_search(&b.weight).expect("weight listed")).collect();
    model.invariants = default_invariants(case);
    Ok(model)
}

fn default_invariants(case: ModelCase) -> Vec<Invariant> {
    let inv = |kind, degree| Invariant { kind, degree };
    match case {
        ModelCase::Sym2(n) => vec![inv(InvariantKind::Determinant, n)],
        ModelCase::Alt2(n) if n % 2 == 0 => vec![inv(InvariantKind::Pfaffian, n / 2)],
        ModelCase::AdjointSL(n) => (2..=n).map(|k| inv(InvariantKind::CharCoefficient(k), k)).collect(),
        ModelCase::Segre(m, n) if m == n => vec![inv(InvariantKind::Determinant, n)],
        ModelCase::Quadric(_) => vec![inv(InvariantKind::QuadraticForm, 2)],
        ModelCase::SympAlt2(n) => (2..=n).map(|k| inv(InvariantKind::SymplecticCoefficient(k), k)).collect(),
        _ => Vec::new(),
    }
}

impl ExplicitModel {
    pub fn case(&self) -> ModelCase {
        self.case
    }

    pub fn groups(&self) -> &[MatrixGroup] {
        &self.groups
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rows and columns of the matrix form of an ambient vector.
    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    /// Number of torus coordinates of a weight.
    pub fn torus_rank(&self) -> usize {
        self.groups.iter().map(MatrixGroup::rank).sum()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn weight(&self, i: usize) -> &WeightVec {
        &self.basis[i].weight
    }

    /// The distinct weights, sorted canonically.
    pub fn weight_set(&self) -> Vec<WeightVec> {
        self.weight_list.clone()
    }

    pub fn distinct_weights(&self) -> &[WeightVec] {
        &self.weight_list
    }

    /// Position of the weight of basis vector `i` in [`Self::distinct_weights`].
    pub fn weight_id(&self, i: usize) -> usize {
        self.weight_ids[i]
    }

    /// Basis indices of the given weight, in order.
    pub fn weight_indices(&self, w: &WeightVec) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].weight == *w).collect()
    }

    pub fn roots(&self) -> &[WeightVec] {
        &self.roots
    }

    pub fn root_operators(&self) -> &[RootOperator] {
        &self.root_ops
    }

    /// The cocharacters acting on ambient coordinates, in the order of the
    /// weight coordinates.
    pub fn torus_operators(&self) -> &[SparseOperator] {
        &self.torus_ops
    }

    pub fn invariants(&self) -> &[Invariant] {
        &self.invariants
    }

    /// The derived action of a Lie algebra element on ambient coordinates.
    pub fn operator(&self, xi: &[CMat]) -> SparseOperator {
        let mut entries = Vec::new();
        for (c, b) in self.basis.iter().enumerate() {
            let y = self.coords(&self.act_lie(xi, &self.element_matrix(b)));
            for (r, x) in y.into_iter().enumerate() {
                if x.norm() > 1e-13 {
                    entries.push((r, c, x));
                }
            }
        }
        SparseOperator::new(self.basis.len(), entries)
    }

    pub fn max_rank(&self) -> usize {
        self.case.max_rank()
    }

    pub fn element_matrix(&self, b: &BasisElement) -> CMat {
        let mut m = CMat::zeros(self.shape.0, self.shape.1);
        for &(r, c, x) in &b.entries {
            m[(r, c)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn to_matrix(&self, v: &[C64]) -> CMat {
        let mut m = CMat::zeros(self.shape.0, self.shape.1);
        for (b, &x) in self.basis.iter().zip(v) {
            for &(r, c, e) in &b.entries {
                m[(r, c)] += x * e;
            }
        }
        m
    }

    /// Coordinates of the orthogonal projection of `x` onto the ambient
    /// space.
    pub fn coords(&self, x: &CMat) -> Vec<C64> {
        self.basis.iter().map(|b| b.entries.iter().map(|&(r, c, e)| x[(r, c)] * e).sum()).collect()
    }

    fn embed(&self, factor: usize, xi: &CMat) -> Vec<CMat> {
        self.groups
            .iter()
            .enumerate()
            .map(|(f, g)| if f == factor { xi.clone() } else { CMat::zeros(g.dim(), g.dim()) })
            .collect()
    }

    /// Derived action of a Lie algebra element (one matrix per factor) on
    /// matrix forms.
    pub fn act_lie(&self, xi: &[CMat], x: &CMat) -> CMat {
        match self.case {
            ModelCase::Natural(_) | ModelCase::Quadric(_) => &xi[0] * x,
            ModelCase::Sym2(_) | ModelCase::Alt2(_) | ModelCase::SympAlt2(_) => &xi[0] * x + x * xi[0].transpose(),
            ModelCase::AdjointSL(_) => &xi[0] * x - x * &xi[0],
            ModelCase::Segre(..) => &xi[0] * x + x * xi[1].transpose(),
        }
    }

    pub fn act_group(&self, g: &GroupElement, x: &CMat) -> CMat {
        let a = &g.factors[0];
        match self.case {
            ModelCase::Natural(_) | ModelCase::Quadric(_) => a * x,
            ModelCase::Sym2(_) | ModelCase::Alt2(_) | ModelCase::SympAlt2(_) => a * x * a.transpose(),
            ModelCase::AdjointSL(_) => a * x * &g.inverses[0],
            ModelCase::Segre(..) => a * x * g.factors[1].transpose(),
        }
    }

    /// `exp(ξ)` for a random Lie algebra element `ξ` of norm `norm` in each
    /// factor.
    pub fn random_group_element<R: Rng + ?Sized>(&self, rng: &mut R, norm: f64) -> GroupElement {
        let xis: Vec<CMat> = self.groups.iter().map(|g| g.random_lie(rng, norm)).collect();
        GroupElement {
            factors: xis.iter().map(CMat::exp).collect(),
            inverses: xis.iter().map(|x| (-x).exp()).collect(),
        }
    }

    /// Torus coordinates acting on ambient coordinates: cocharacter `k` of
    /// the product group as a Lie algebra element per factor.
    pub fn cocharacters(&self) -> Vec<Vec<CMat>> {
        let mut out = Vec::new();
        for (f, g) in self.groups.iter().enumerate() {
            for h in g.cocharacter_matrices() {
                out.push(self.embed(f, &h));
            }
        }
        out
    }

    pub fn act_lie_coords(&self, xi: &[CMat], v: &[C64]) -> Vec<C64> {
        self.coords(&self.act_lie(xi, &self.to_matrix(v)))
    }

    pub fn evaluate(&self, inv: &Invariant, v: &[C64]) -> C64 {
        inv.evaluate(&self.to_matrix(v), self.groups[0].form())
    }

    /// Normalizing scale `s(v)^deg` against which invariant values are
    /// compared: `s = ‖X‖/√rows` for square matrix forms and `‖v‖` for
    /// vectors, so that e.g. `|det X| ≤ s^n`.
    pub fn scale(&self, inv: &Invariant, v: &[C64]) -> f64 {
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let s = if self.shape.1 == 1 { norm } else { norm / (self.shape.0 as f64).sqrt() };
        s.powi(inv.degree as i32)
    }

    /// `|f(v)| / scale`.
    pub fn relative_value(&self, inv: &Invariant, v: &[C64]) -> f64 {
        let s = self.scale(inv, v);
        if s == 0.0 {
            return 0.0;
        }
        self.evaluate(inv, v).norm() / s
    }

    /// Singular values of the matrix form.
    pub fn singular_values(&self, v: &[C64]) -> Vec<f64> {
        let mut s: Vec<f64> = self.to_matrix(v).singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Rank of the matrix form: singular values above `tol` times the
    /// largest.
    pub fn matrix_rank(&self, v: &[C64], tol: f64) -> usize {
        let s = self.singular_values(v);
        let top = s.first().copied().unwrap_or(0.0);
        s.iter().filter(|&&x| x > tol * top.max(f64::MIN_POSITIVE)).count()
    }
}

impl RootSet for ExplicitModel {
    fn contains_root(&self, w: &WeightVec) -> bool {
        self.root_set.contains(w)
    }
}
