//! Degree predictions from balanced simplices, and reconciliation against
//! known generator degrees.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{Family, RootSystem, RootSystemError, SimpleType, WeightVec};
use crate::simplex::{self, SearchConfig, SearchError, SearchSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("no degree fixture for {0} (rank above 8)")]
    UnsupportedRank(SimpleType),
    #[error("highest weight must be nonzero")]
    TrivialWeight,
    #[error("report lacks {0}")]
    MissingData(&'static str),
}

/// How the ranks `r_ss..=r_max` correspond to the generator degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankRelation {
    /// `{r_ss, …, r_max} = {d_1, …, d_k}`.
    Equal,
    /// `d_j = 2(r_j − 1)`.
    Doubled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    RsTable,
    AdjointFixture,
}

/// A case whose generator degrees and secant ranks are known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnownCase {
    pub id: String,
    pub group: String,
    pub highest_weight: String,
    /// Nondecreasing; empty when the only invariants are constants.
    pub degrees: Vec<u64>,
    pub r_us: Option<u64>,
    pub r_ss: Option<u64>,
    pub r_max: Option<u64>,
    pub rank_relation: Option<RankRelation>,
    pub source: Source,
}

/// Rows of the classification of rs-continuous varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableRow {
    /// `ℙ(ℂⁿ)` under `SL_n`.
    Projective(usize),
    /// `Ver₂(ℙ(ℂⁿ)) ⊂ ℙ(S²ℂⁿ)`.
    Veronese2(usize),
    /// `Gr₂(ℂⁿ) ⊂ ℙ(Λ²ℂⁿ)`.
    Grassmann2(usize),
    /// `Fl_{1,n−1}(ℂⁿ) ⊂ ℙ(𝔰𝔩_n)`.
    Flag(usize),
    /// The quadric in `ℙ(ℂⁿ)` under `SO_n`.
    Quadric(usize),
    /// Pure spinors in `ℙ¹⁵` under `Spin₁₀`.
    Spinor10,
    /// `Gr₂(ℂ²ⁿ, ω) ⊂ ℙ(Λ₀²ℂ²ⁿ)` under `Sp_{2n}`.
    SymplecticGrassmann(usize),
    /// Rank-one octonionic Hermitian matrices under `E₆`.
    E16,
    /// Traceless part of the above under `F₄`.
    F15,
    /// `Seg(ℙ^{m−1} × ℙ^{n−1})` under `SL_m × SL_n`.
    Segre(usize, usize),
}

impl TableRow {
    pub fn known_case(&self) -> KnownCase {
        let n = match *self {
            Self::Projective(n)
            | Self::Veronese2(n)
            | Self::Grassmann2(n)
            | Self::Flag(n)
            | Self::Quadric(n)
            | Self::SymplecticGrassmann(n) => n as u64,
            Self::Segre(m, n) => m.min(n) as u64,
            Self::Spinor10 | Self::E16 | Self::F15 => 0,
        };
        let (group, hw, degrees, r_us, r_ss, r_max, relation) = match *self {
            Self::Projective(_) => (format!("SL{n}"), "ω1".into(), vec![], 1, None, 1, None),
            Self::Veronese2(_) => {
                (format!("SL{n}"), "2ω1".into(), vec![n], n - 1, Some(n), n, Some(RankRelation::Equal))
            }
            Self::Grassmann2(_) => {
                let half = n / 2;
                if n % 2 == 0 {
                    (format!("SL{n}"), "ω2".into(), vec![half], half - 1, Some(half), half, Some(RankRelation::Equal))
                } else {
                    (format!("SL{n}"), "ω2".into(), vec![], half, None, half, None)
                }
            }
            Self::Flag(_) => {
                (format!("SL{n}"), "ω1+ω(n-1)".into(), (2..=n).collect(), 1, Some(2), n, Some(RankRelation::Equal))
            }
            Self::Quadric(_) => (format!("SO{n}"), "ω1".into(), vec![2], 1, Some(2), 2, Some(RankRelation::Equal)),
            Self::Spinor10 => ("Spin10".into(), "ω5".into(), vec![], 2, None, 2, None),
            Self::SymplecticGrassmann(_) => (
                format!("Sp{}", 2 * n),
                "ω2".into(),
                (1..n).map(|j| 2 * j).collect(),
                1,
                Some(2),
                n,
                Some(RankRelation::Doubled),
            ),
            Self::E16 => ("E6".into(), "ω1".into(), vec![3], 2, Some(3), 3, Some(RankRelation::Equal)),
            Self::F15 => ("F4".into(), "ω4".into(), vec![2, 3], 1, Some(2), 3, Some(RankRelation::Equal)),
            Self::Segre(a, b) => {
                let group = format!("SL{a}×SL{b}");
                if a == b {
                    (group, "ω1⊗ω1".into(), vec![n], n - 1, Some(n), n, Some(RankRelation::Equal))
                } else {
                    (group, "ω1⊗ω1".into(), vec![], n, None, n, None)
                }
            }
        };
        KnownCase {
            id: self.to_string(),
            group,
            highest_weight: hw,
            degrees,
            r_us: Some(r_us),
            r_ss,
            r_max: Some(r_max),
            rank_relation: relation,
            source: Source::RsTable,
        }
    }

    /// The row realized by `V(λ)` for a simple group, if any. Dual highest
    /// weights are recognized as the same row.
    pub fn recognize(rs: &RootSystem, lambda: &WeightVec) -> Option<Self> {
        let t = rs.simple_type();
        let l = t.rank();
        let is = |i: usize, k: i64| *lambda == WeightVec::fundamental(l, i).scaled(k);
        match t.family() {
            Family::A => {
                let n = l + 1;
                if is(0, 1) || is(l - 1, 1) {
                    Some(Self::Projective(n))
                } else if is(0, 2) || is(l - 1, 2) {
                    Some(Self::Veronese2(n))
                } else if l >= 3 && (is(1, 1) || is(l - 2, 1)) {
                    Some(Self::Grassmann2(n))
                } else if lambda == rs.highest_root() {
                    Some(Self::Flag(n))
                } else {
                    None
                }
            }
            Family::B if is(0, 1) => Some(Self::Quadric(2 * l + 1)),
            Family::D if is(0, 1) => Some(Self::Quadric(2 * l)),
            Family::D if l == 5 && (is(3, 1) || is(4, 1)) => Some(Self::Spinor10),
            Family::C if is(1, 1) => Some(Self::SymplecticGrassmann(l)),
            Family::E if l == 6 && (is(0, 1) || is(5, 1)) => Some(Self::E16),
            Family::F if is(3, 1) => Some(Self::F15),
            _ => None,
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Projective(n) => write!(f, "projective:{n}"),
            Self::Veronese2(n) => write!(f, "ver2:{n}"),
            Self::Grassmann2(n) => write!(f, "gr2:{n}"),
            Self::Flag(n) => write!(f, "flag:{n}"),
            Self::Quadric(n) => write!(f, "quadric:{n}"),
            Self::Spinor10 => write!(f, "spinor10"),
            Self::SymplecticGrassmann(n) => write!(f, "symp-gr2:{n}"),
            Self::E16 => write!(f, "e16"),
            Self::F15 => write!(f, "f15"),
            Self::Segre(m, n) => write!(f, "segre:{m}x{n}"),
        }
    }
}

/// Every table row, instantiated for parameters up to 8.
pub fn rs_table() -> Vec<KnownCase> {
    let mut rows = Vec::new();
    rows.extend((2..=8).map(TableRow::Projective));
    rows.extend((2..=8).map(TableRow::Veronese2));
    rows.extend((4..=8).map(TableRow::Grassmann2));
    rows.extend((2..=8).map(TableRow::Flag));
    rows.extend((3..=8).map(TableRow::Quadric));
    rows.push(TableRow::Spinor10);
    rows.extend((2..=8).map(TableRow::SymplecticGrassmann));
    rows.push(TableRow::E16);
    rows.push(TableRow::F15);
    for m in 2..=8 {
        rows.extend((m..=8).map(|n| TableRow::Segre(m, n)));
    }
    rows.iter().map(TableRow::known_case).collect()
}

/// Degrees of the basic invariants of the adjoint representation
/// (exponents plus one), for ranks up to 8.
pub fn adjoint_known_degrees(t: SimpleType) -> Result<Vec<u64>, PredictError> {
    let l = t.rank() as u64;
    if l > 8 {
        return Err(PredictError::UnsupportedRank(t));
    }
    let mut d: Vec<u64> = match t.family() {
        Family::A => (2..=l + 1).collect(),
        Family::B | Family::C => (1..=l).map(|k| 2 * k).collect(),
        Family::D => (1..l).map(|k| 2 * k).chain([l]).collect(),
        Family::E => match l {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        Family::F => vec![2, 6, 8, 12],
        Family::G => vec![2, 6],
    };
    d.sort_unstable();
    Ok(d)
}

/// The adjoint representation as a known case.
pub fn adjoint_case(rs: &RootSystem) -> Result<KnownCase, PredictError> {
    let t = rs.simple_type();
    if t.family() == Family::A && t.rank() >= 2 {
        return Ok(TableRow::Flag(t.rank() + 1).known_case());
    }
    Ok(KnownCase {
        id: format!("adjoint:{t}"),
        group: t.to_string(),
        highest_weight: rs.highest_root().to_string(),
        degrees: adjoint_known_degrees(t)?,
        r_us: Some(1),
        r_ss: Some(2),
        r_max: None,
        rank_relation: None,
        source: Source::AdjointFixture,
    })
}

/// Known data for `V(λ)`, from the table or the adjoint fixtures.
pub fn recognize(rs: &RootSystem, lambda: &WeightVec) -> Option<KnownCase> {
    if let Some(row) = TableRow::recognize(rs, lambda) {
        return Some(row.known_case());
    }
    if lambda == rs.highest_root() {
        return adjoint_case(rs).ok();
    }
    None
}

/// `{b_M}` over root-distinct balanced simplices of `V(λ)`, excluding the
/// trivial simplex `{0}`.
pub fn predicted_divisors(
    rs: &RootSystem,
    lambda: &WeightVec,
    space: SearchSpace,
    config: &SearchConfig,
) -> Result<BTreeSet<u64>, PredictError> {
    rs.check_rank(lambda)?;
    if lambda.is_zero() {
        return Err(PredictError::TrivialWeight);
    }
    let found = simplex::simplices_for_highest_weight(rs, lambda, space, config)?;
    Ok(found.iter().filter(|s| !s.is_trivial()).map(|s| s.total()).collect())
}

/// Coxeter numbers of the connected subdiagrams, i.e. the totals of the
/// simplices `Π̃ ∪ {−θ̃}` in the adjoint representation.
pub fn subdiagram_divisors(rs: &RootSystem) -> BTreeSet<u64> {
    rs.connected_subdiagrams().iter().map(|s| s.coxeter_number).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorStatus {
    pub divisor: u64,
    /// Known degrees this divisor divides.
    pub divides: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeStatus {
    pub degree: u64,
    /// Divisors dividing this degree.
    pub multiple_of: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub case: String,
    pub divisors: Vec<u64>,
    pub degrees: Vec<u64>,
    pub divisor_status: Vec<DivisorStatus>,
    pub degree_status: Vec<DegreeStatus>,
    pub pass: bool,
    pub r_ss: Option<u64>,
    pub r_max: Option<u64>,
    pub rank_relation: Option<RankRelation>,
}

impl DegreeReport {
    /// Attaches the rank data of a known case.
    pub fn with_ranks(mut self, case: &KnownCase) -> Self {
        self.r_ss = case.r_ss;
        self.r_max = case.r_max;
        self.rank_relation = case.rank_relation;
        self
    }
}

/// Two-sided divisibility: every divisor divides some degree and every
/// degree is a multiple of some divisor.
pub fn reconcile(case: &str, divisors: &BTreeSet<u64>, degrees: &[u64]) -> DegreeReport {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    let divisor_status: Vec<DivisorStatus> = divisors
        .iter()
        .map(|&b| DivisorStatus {
            divisor: b,
            divides: degrees.iter().copied().filter(|d| b != 0 && d % b == 0).collect(),
        })
        .collect();
    let degree_status: Vec<DegreeStatus> = degrees
        .iter()
        .map(|&d| DegreeStatus {
            degree: d,
            multiple_of: divisors.iter().copied().filter(|&b| b != 0 && d % b == 0).collect(),
        })
        .collect();
    let pass =
        divisor_status.iter().all(|s| !s.divides.is_empty()) && degree_status.iter().all(|s| !s.multiple_of.is_empty());
    DegreeReport {
        case: case.to_string(),
        divisors: divisors.iter().copied().collect(),
        degrees,
        divisor_status,
        degree_status,
        pass,
        r_ss: None,
        r_max: None,
        rank_relation: None,
    }
}

/// Whether `V(λ) ≅ V(λ)*`.
pub fn self_dual(rs: &RootSystem, lambda: &WeightVec) -> Result<bool, RootSystemError> {
    Ok(rs.dual_weight(lambda)? == *lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RssCheck {
    pub r_ss: u64,
    pub min_degree: u64,
    /// `r_ss ≤ d_1`.
    pub bound_holds: bool,
    /// Correspondence between `{r_ss, …, r_max}` and the degrees, when the
    /// report carries a rank range.
    pub ranks_match_degrees: Option<bool>,
    pub pass: bool,
}

pub fn rss_lower_bound(report: &DegreeReport) -> Result<RssCheck, PredictError> {
    let r_ss = report.r_ss.ok_or(PredictError::MissingData("r_ss"))?;
    let min_degree = *report.degrees.iter().min().ok_or(PredictError::MissingData("degrees"))?;
    let bound_holds = r_ss <= min_degree;
    let ranks_match_degrees = match (report.r_max, report.rank_relation) {
        (Some(r_max), Some(rel)) => {
            let expected: BTreeSet<u64> = (r_ss..=r_max)
                .map(|r| match rel {
                    RankRelation::Equal => r,
                    RankRelation::Doubled => 2 * (r - 1),
                })
                .collect();
            let degrees: BTreeSet<u64> = report.degrees.iter().copied().collect();
            Some(expected == degrees && degrees.len() == report.degrees.len())
        }
        _ => None,
    };
    Ok(RssCheck {
        r_ss,
        min_degree,
        bound_holds,
        ranks_match_degrees,
        pass: bound_holds && ranks_match_degrees.unwrap_or(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn divisor_examples() {
        let cfg = SearchConfig::default();
        let a2 = rs("A2");
        assert_eq!(predicted_divisors(&a2, a2.highest_root(), SearchSpace::Support, &cfg).unwrap(), set(&[2, 3]));
        let a1 = rs("A1");
        let two = WeightVec::new(vec![2]);
        assert_eq!(predicted_divisors(&a1, &two, SearchSpace::Support, &cfg).unwrap(), set(&[2]));
        for n in 2..=6 {
            let r = rs(&format!("A{}", n - 1));
            let nat = WeightVec::fundamental(n - 1, 0);
            assert!(predicted_divisors(&r, &nat, SearchSpace::Support, &cfg).unwrap().is_empty());
        }
        assert_eq!(
            predicted_divisors(&a2, &WeightVec::zero(2), SearchSpace::Support, &cfg),
            Err(PredictError::TrivialWeight)
        );
    }

    #[test]
    fn adjoint_fixture_shape() {
        for t in SimpleType::all_up_to_rank(8) {
            let d = adjoint_known_degrees(t).unwrap();
            assert_eq!(d.len(), t.rank());
            assert_eq!(d[0], 2);
            let r = RootSystem::new(t);
            assert_eq!(*d.last().unwrap(), r.coxeter_number(), "{t}");
            // the product of the degrees is |W|, the sum of exponents |Δ⁺|
            let exps: u64 = d.iter().map(|x| x - 1).sum();
            assert_eq!(exps as usize, t.root_count() / 2, "{t}");
        }
        assert_eq!(adjoint_known_degrees("G2".parse().unwrap()).unwrap(), vec![2, 6]);
        assert_eq!(adjoint_known_degrees("A1".parse().unwrap()).unwrap(), vec![2]);
        assert!(matches!(
            adjoint_known_degrees(SimpleType::new(Family::A, 9).unwrap()),
            Err(PredictError::UnsupportedRank(_))
        ));
    }

    #[test]
    fn reconcile_examples() {
        assert!(reconcile("A2", &set(&[2, 3]), &[2, 3]).pass);
        let e6 = reconcile("E6", &subdiagram_divisors(&rs("E6")), &[2, 5, 6, 8, 9, 12]);
        assert!(e6.pass);
        let nine = e6.degree_status.iter().find(|s| s.degree == 9).unwrap();
        assert_eq!(nine.multiple_of, vec![3]);
        let empty = reconcile("nat", &BTreeSet::new(), &[]);
        assert!(empty.pass && empty.divisor_status.is_empty());
        assert!(!reconcile("x", &set(&[3]), &[2, 4]).pass);
        assert!(!reconcile("x", &BTreeSet::new(), &[2]).pass);
    }

    #[test]
    fn subdiagram_coxeter_numbers_reconcile_with_adjoint_degrees() {
        for t in SimpleType::all_up_to_rank(8) {
            let r = RootSystem::new(t);
            let report = reconcile(&t.to_string(), &subdiagram_divisors(&r), &adjoint_known_degrees(t).unwrap());
            assert!(report.pass, "{t}: {report:?}");
        }
    }

    #[test]
    fn self_duality() {
        let a2 = rs("A2");
        assert!(!self_dual(&a2, &WeightVec::fundamental(2, 0)).unwrap());
        assert!(self_dual(&a2, a2.highest_root()).unwrap());
        let b2 = rs("B2");
        for a in 0..3 {
            for b in 0..3 {
                assert!(self_dual(&b2, &WeightVec::new(vec![a, b])).unwrap());
            }
        }
    }

    #[test]
    fn table_rows() {
        let ver = TableRow::Veronese2(4).known_case();
        assert_eq!((ver.degrees.clone(), ver.r_ss, ver.r_max), (vec![4], Some(4), Some(4)));
        let sp = TableRow::SymplecticGrassmann(3).known_case();
        assert_eq!(sp.degrees, vec![2, 4]);
        assert_eq!(sp.rank_relation, Some(RankRelation::Doubled));
        let fl = TableRow::Flag(5).known_case();
        assert_eq!(fl.degrees, vec![2, 3, 4, 5]);
        assert!(TableRow::Grassmann2(5).known_case().degrees.is_empty());
        assert_eq!(TableRow::Grassmann2(6).known_case().degrees, vec![3]);
        assert!(TableRow::Segre(2, 3).known_case().degrees.is_empty());
        for case in rs_table() {
            assert!(case.degrees.windows(2).all(|w| w[0] <= w[1]), "{}", case.id);
        }
    }

    #[test]
    fn rss_bounds_for_table_rows() {
        for case in rs_table() {
            if case.degrees.is_empty() {
                continue;
            }
            let report = reconcile(&case.id, &BTreeSet::new(), &case.degrees).with_ranks(&case);
            let check = rss_lower_bound(&report).unwrap();
            assert!(check.pass, "{}: {check:?}", case.id);
            assert_eq!(check.ranks_match_degrees, Some(true));
        }
        let empty = reconcile("nat", &BTreeSet::new(), &[]);
        assert_eq!(rss_lower_bound(&empty), Err(PredictError::MissingData("r_ss")));
    }

    #[test]
    fn recognition() {
        let cases = [
            ("A3", vec![2, 0, 0], "ver2:4"),
            ("A3", vec![0, 0, 2], "ver2:4"),
            ("A2", vec![1, 0], "projective:3"),
            ("A4", vec![0, 0, 1, 0], "gr2:5"),
            ("A3", vec![1, 0, 1], "flag:4"),
            ("B3", vec![1, 0, 0], "quadric:7"),
            ("D4", vec![1, 0, 0, 0], "quadric:8"),
            ("D5", vec![0, 0, 0, 0, 1], "spinor10"),
            ("C3", vec![0, 1, 0], "symp-gr2:3"),
            ("E6", vec![0, 0, 0, 0, 0, 1], "e16"),
            ("F4", vec![0, 0, 0, 1], "f15"),
            ("A1", vec![2], "ver2:2"),
        ];
        for (t, w, id) in cases {
            let r = rs(t);
            assert_eq!(recognize(&r, &WeightVec::new(w)).unwrap().id, id);
        }
        let g2 = rs("G2");
        let adj = recognize(&g2, g2.highest_root()).unwrap();
        assert_eq!((adj.degrees, adj.source), (vec![2, 6], Source::AdjointFixture));
        assert!(recognize(&rs("A2"), &WeightVec::new(vec![3, 0])).is_none());
    }
}
