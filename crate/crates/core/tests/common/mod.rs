//! Independent oracles for the integration and acceptance tests. Nothing
//! here calls into the exact-arithmetic or search code under test.
#![allow(dead_code)]

use rdsimplex::rootsys::{Family, RootSet, RootSystem, SimpleType, WeightVec};

/// Root counts of the simple types.
pub fn classical_root_count(t: SimpleType) -> usize {
    let n = t.rank();
    match t.family() {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        Family::F => 48,
        Family::G => 12,
    }
}

type IMat = Vec<Vec<i128>>;

fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// The product `s_1 ⋯ s_n` of simple reflections acting on fundamental
/// weight coordinates: `s_i(λ) = λ − λ_i α_i`.
pub fn coxeter_element(rs: &RootSystem) -> IMat {
    let n = rs.rank();
    let simple = rs.simple_roots();
    let mut c = identity(n);
    for (i, alpha) in simple.iter().enumerate() {
        let mut s = identity(n);
        for (row, &a) in alpha.coords().iter().enumerate() {
            s[row][i] -= i128::from(a);
        }
        c = mul(&c, &s);
    }
    c
}

pub fn matrix_order(m: &IMat, limit: usize) -> Option<usize> {
    let id = identity(m.len());
    let mut p = m.clone();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = mul(&p, m);
    }
    None
}

/// Characteristic polynomial, lowest degree first, by Faddeev–LeVerrier.
pub fn charpoly(a: &IMat) -> Vec<i128> {
    let n = a.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = identity(n);
    for k in 1..=n {
        let am = mul(a, &m);
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        let c = -tr / k as i128;
        assert_eq!(-tr % k as i128, 0, "integer charpoly");
        coeffs[n - k] = c;
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    coeffs
}

fn poly_divrem(num: &[i128], den: &[i128]) -> (Vec<i128>, Vec<i128>) {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "monic divisor");
    if r.len() <= dd {
        return (vec![0], r);
    }
    let mut q = vec![0i128; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    r.truncate(dd.max(1));
    (q, r)
}

/// `Φ_d` by dividing `x^d − 1` by `Φ_e` for each proper divisor `e`.
pub fn cyclotomic(d: usize) -> Vec<i128> {
    let mut p = vec![0i128; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in (1..d).filter(|&e| d.is_multiple_of(e)) {
        let (q, r) = poly_divrem(&p, &cyclotomic(e));
        assert!(r.iter().all(|&x| x == 0));
        p = q;
    }
    p
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponents `m` with eigenvalues `e^{2πi m/h}` of a Coxeter element of
/// order `h`, read off by factoring its characteristic polynomial into
/// cyclotomic polynomials.
pub fn coxeter_exponents(rs: &RootSystem) -> Vec<usize> {
    let c = coxeter_element(rs);
    let h = matrix_order(&c, 64).expect("finite order");
    let mut p = charpoly(&c);
    let mut exps = Vec::new();
    for d in (1..=h).filter(|&d| h.is_multiple_of(d)) {
        let phi = cyclotomic(d);
        loop {
            let (q, r) = poly_divrem(&p, &phi);
            if r.iter().any(|&x| x != 0) || p.len() < phi.len() {
                break;
            }
            p = q;
            exps.extend((0..h).filter(|&m| h / gcd(m, h) == d));
        }
    }
    assert_eq!(p, vec![1], "charpoly splits into cyclotomic factors");
    exps.sort_unstable();
    exps
}

pub fn all_types(max_rank: usize) -> Vec<SimpleType> {
    SimpleType::all_up_to_rank(max_rank)
}

/// Determinant of a small square integer matrix by permutation expansion.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i128>], total: &mut i128) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][perm[i]]).product();
        *total += if inversions % 2 == 0 { prod } else { -prod };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Rank of the columns `vectors` via nonvanishing minors.
pub fn minor_rank(vectors: &[Vec<i64>]) -> usize {
    let k = vectors.len();
    let d = vectors.first().map_or(0, Vec::len);
    for r in (1..=k.min(d)).rev() {
        for rows in subsets(d, r) {
            for cols in subsets(k, r) {
                let m: Vec<Vec<i128>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| i128::from(vectors[j][i])).collect()).collect();
                if det(&m) != 0 {
                    return r;
                }
            }
        }
    }
    0
}

/// Brute-force positive circuit: `vectors` must have rank `k − 1` with a
/// kernel vector, built from signed maximal minors, whose entries are all
/// nonzero and of one sign. Returns the primitive positive relation.
pub fn circuit_oracle(vectors: &[Vec<i64>]) -> Option<Vec<u64>> {
    let k = vectors.len();
    if k == 0 {
        return None;
    }
    if k == 1 {
        return vectors[0].iter().all(|&x| x == 0).then(|| vec![1]);
    }
    if minor_rank(vectors) != k - 1 {
        return None;
    }
    let d = vectors[0].len();
    for rows in subsets(d, k - 1) {
        let c: Vec<i128> = (0..k)
            .map(|j| {
                let m: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| (0..k).filter(|&c| c != j).map(|c| i128::from(vectors[c][i])).collect())
                    .collect();
                if j % 2 == 0 {
                    det(&m)
                } else {
                    -det(&m)
                }
            })
            .collect();
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        for i in 0..d {
            let s: i128 = (0..k).map(|j| c[j] * i128::from(vectors[j][i])).sum();
            assert_eq!(s, 0, "cofactor vector lies in the kernel");
        }
        let positive = c.iter().all(|&x| x > 0);
        let negative = c.iter().all(|&x| x < 0);
        if !(positive || negative) {
            return None;
        }
        let g = c.iter().fold(0u128, |g, &x| {
            let (mut a, mut b) = (g, x.unsigned_abs());
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        });
        return Some(c.iter().map(|&x| (x.unsigned_abs() / g) as u64).collect());
    }
    unreachable!("rank k − 1 gives a nonzero maximal minor")
}

/// Sorted `(weight, coefficient)` pairs, for comparing simplices.
pub type Canonical = Vec<(Vec<i64>, u64)>;

pub fn canonical(weights: &[WeightVec], coefficients: &[u64]) -> Canonical {
    let mut v: Canonical = weights.iter().map(|w| w.coords().to_vec()).zip(coefficients.iter().copied()).collect();
    v.sort();
    v
}

/// Every root-distinct subset of `weights` of size `≤ max_size` that is a
/// positive circuit, by exhaustive search.
pub fn brute_force_simplices<R: RootSet>(roots: &R, weights: &[WeightVec], max_size: usize) -> Vec<Canonical> {
    let mut out = Vec::new();
    for k in 1..=max_size.min(weights.len()) {
        for idx in subsets(weights.len(), k) {
            let m: Vec<WeightVec> = idx.iter().map(|&i| weights[i].clone()).collect();
            let distinct = m.iter().enumerate().all(|(i, a)| {
                m[i + 1..].iter().all(|b| {
                    let d = a - b;
                    !roots.contains_root(&d) && !roots.contains_root(&-&d)
                })
            });
            if !distinct {
                continue;
            }
            let vecs: Vec<Vec<i64>> = m.iter().map(|w| w.coords().to_vec()).collect();
            if let Some(c) = circuit_oracle(&vecs) {
                out.push(canonical(&m, &c));
            }
        }
    }
    out.sort();
    out
}
