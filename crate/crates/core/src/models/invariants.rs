//! Classical invariant polynomials, evaluated in floating point.

use serde::Serialize;

use super::group::{CMat, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum InvariantKind {
    Determinant,
    Pfaffian,
    /// `e_k` of the eigenvalues, i.e. `±` the coefficient of `t^{n−k}` in
    /// the characteristic polynomial.
    CharCoefficient(usize),
    /// `v ↦ vᵀSv`.
    QuadraticForm,
    /// `e_k` of the eigenvalue pairs of `JX`: `JX` has every eigenvalue
    /// with even multiplicity, and these are the elementary symmetric
    /// functions of one representative per pair.
    SymplecticCoefficient(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariant {
    pub kind: InvariantKind,
    pub degree: usize,
}

impl Invariant {
    pub fn name(&self) -> String {
        match self.kind {
            InvariantKind::Determinant => "det".into(),
            InvariantKind::Pfaffian => "pf".into(),
            InvariantKind::CharCoefficient(k) => format!("c{k}"),
            InvariantKind::QuadraticForm => "q".into(),
            InvariantKind::SymplecticCoefficient(k) => format!("s{k}"),
        }
    }

    /// `form` is the Gram matrix of the group's bilinear form, needed by the
    /// orthogonal and symplectic invariants.
    pub fn evaluate(&self, x: &CMat, form: Option<&CMat>) -> C64 {
        match self.kind {
            InvariantKind::Determinant => x.clone().determinant(),
            InvariantKind::Pfaffian => pfaffian(x),
            InvariantKind::CharCoefficient(k) => elementary_from_power_sums(&power_sums(x, k, 1.0))[k],
            InvariantKind::QuadraticForm => {
                let s = form.expect("quadratic form needs a Gram matrix");
                (x.transpose() * s * x)[(0, 0)]
            }
            InvariantKind::SymplecticCoefficient(k) => {
                let j = form.expect("symplectic invariant needs a Gram matrix");
                elementary_from_power_sums(&power_sums(&(j * x), k, 0.5))[k]
            }
        }
    }
}

/// `[_, f·tr(X), f·tr(X²), …, f·tr(X^k)]`.
fn power_sums(x: &CMat, k: usize, factor: f64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); k + 1];
    let mut power = x.clone();
    for slot in out.iter_mut().skip(1) {
        *slot = power.trace() * factor;
        power = &power * x;
    }
    out
}

/// Newton's identities: `k e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i`.
pub fn elementary_from_power_sums(p: &[C64]) -> Vec<C64> {
    let mut e = vec![C64::new(1.0, 0.0); p.len()];
    for k in 1..p.len() {
        let mut acc = C64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / k as f64;
    }
    e
}

/// Pfaffian of a skew-symmetric matrix by skew-symmetric Gaussian
/// elimination with pivoting on the super-diagonal entry.
pub fn pfaffian(x: &CMat) -> C64 {
    let n = x.nrows();
    if n % 2 == 1 {
        return C64::new(0.0, 0.0);
    }
    let mut a = x.clone();
    let mut pf = C64::new(1.0, 0.0);
    for k in (0..n).step_by(2) {
        let p = (k + 1..n).max_by(|&i, &j| a[(k, i)].norm().total_cmp(&a[(k, j)].norm())).expect("nonempty range");
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            a.swap_columns(k + 1, p);
            pf = -pf;
        }
        let pivot = a[(k, k + 1)];
        if pivot.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        pf *= pivot;
        for i in k + 2..n {
            let tau = a[(k, i)] / pivot;
            for r in 0..n {
                let v = a[(r, k + 1)];
                a[(r, i)] -= tau * v;
            }
            for c in 0..n {
                let v = a[(k + 1, c)];
                a[(i, c)] -= tau * v;
            }
        }
    }
    pf
}
