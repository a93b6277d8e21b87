use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

/// A classical group in its defining representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classical {
    /// `SL_n` on `ℂⁿ`.
    Special(usize),
    /// `SO_n` preserving the anti-diagonal symmetric form.
    Orthogonal(usize),
    /// `Sp_{2n}` preserving the anti-diagonal form with `+1` above the
    /// anti-diagonal midpoint and `−1` below.
    Symplectic(usize),
}

#[derive(Debug, Clone)]
pub struct RootVector {
    /// In cocharacter coordinates.
    pub weight: Vec<i64>,
    pub matrix: CMat,
}

/// Defining-representation data: Gram matrix of the invariant form (if
/// any), the diagonal cocharacters spanning the torus, the torus weight of
/// each standard basis vector and one root vector per root.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    kind: Classical,
    dim: usize,
    form: Option<CMat>,
    form_inv: Option<CMat>,
    /// `basis_weights[i][k]` = eigenvalue of cocharacter `k` on `e_i`.
    basis_weights: Vec<Vec<i64>>,
    cocharacters: Vec<Vec<i64>>,
    roots: Vec<RootVector>,
}

fn unit(dim: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(dim, dim);
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

impl MatrixGroup {
    pub fn new(kind: Classical) -> Self {
        let (dim, form, form_inv) = match kind {
            Classical::Special(n) => (n, None, None),
            Classical::Orthogonal(n) => {
                let s =
                    CMat::from_fn(n, n, |i, j| if i + j == n - 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
                (n, Some(s.clone()), Some(s))
            }
            Classical::Symplectic(n) => {
                let dim = 2 * n;
                let j = CMat::from_fn(dim, dim, |a, b| {
                    if a + b != dim - 1 {
                        C64::new(0.0, 0.0)
                    } else if a < n {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(-1.0, 0.0)
                    }
                });
                let inv = -j.clone();
                (dim, Some(j), Some(inv))
            }
        };
        let cocharacters: Vec<Vec<i64>> = match kind {
            Classical::Special(n) => {
                (0..n - 1).map(|k| (0..n).map(|i| i64::from(i == k) - i64::from(i == k + 1)).collect()).collect()
            }
            Classical::Orthogonal(_) | Classical::Symplectic(_) => (0..dim / 2)
                .map(|k| (0..dim).map(|i| i64::from(i == k) - i64::from(i == dim - 1 - k)).collect())
                .collect(),
        };
        let basis_weights: Vec<Vec<i64>> = (0..dim).map(|i| cocharacters.iter().map(|h| h[i]).collect()).collect();
        let mut group = Self { kind, dim, form, form_inv, basis_weights, cocharacters, roots: Vec::new() };
        group.roots = group.build_roots();
        group
    }

    fn build_roots(&self) -> Vec<RootVector> {
        let mut roots: Vec<RootVector> = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j {
                    continue;
                }
                let weight: Vec<i64> =
                    self.basis_weights[i].iter().zip(&self.basis_weights[j]).map(|(a, b)| a - b).collect();
                if weight.iter().all(|&x| x == 0) || roots.iter().any(|r| r.weight == weight) {
                    continue;
                }
                let e = unit(self.dim, i, j);
                let matrix = match self.kind {
                    Classical::Special(_) => e,
                    _ => &e + self.reflect(&e),
                };
                if matrix.norm() > 1e-12 {
                    roots.push(RootVector { weight, matrix });
                }
            }
        }
        roots
    }

    /// `A ↦ −G⁻¹AᵀG`, the involution whose fixed points form the Lie algebra
    /// of a form-preserving group.
    fn reflect(&self, a: &CMat) -> CMat {
        match (&self.form, &self.form_inv) {
            (Some(g), Some(g_inv)) => -(g_inv * a.transpose() * g),
            _ => a.clone(),
        }
    }

    pub fn kind(&self) -> Classical {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of cocharacter coordinates.
    pub fn rank(&self) -> usize {
        self.cocharacters.len()
    }

    pub fn form(&self) -> Option<&CMat> {
        self.form.as_ref()
    }

    pub fn basis_weight(&self, i: usize) -> &[i64] {
        &self.basis_weights[i]
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    /// The cocharacters as diagonal matrices.
    pub fn cocharacter_matrices(&self) -> Vec<CMat> {
        self.cocharacters
            .iter()
            .map(|h| {
                CMat::from_diagonal(&nalgebra::DVector::from_iterator(
                    self.dim,
                    h.iter().map(|&x| C64::new(x as f64, 0.0)),
                ))
            })
            .collect()
    }

    /// Orthogonal projection onto the Lie algebra.
    pub fn project(&self, a: &CMat) -> CMat {
        match self.kind {
            Classical::Special(n) => {
                let shift = a.trace() / C64::new(n as f64, 0.0);
                a - CMat::identity(n, n) * shift
            }
            _ => (a + self.reflect(a)) * C64::new(0.5, 0.0),
        }
    }

    pub fn contains(&self, xi: &CMat, tol: f64) -> bool {
        (self.project(xi) - xi).norm() <= tol * xi.norm().max(1.0)
    }

    /// A random Lie algebra element of the given Frobenius norm.
    pub fn random_lie<R: Rng + ?Sized>(&self, rng: &mut R, norm: f64) -> CMat {
        let a = random_matrix(rng, self.dim, self.dim);
        let xi = self.project(&a);
        let scale = norm / xi.norm();
        xi * C64::new(scale, 0.0)
    }
}

/// Complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}
