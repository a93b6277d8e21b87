use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group::{complex_gaussian, random_matrix, CMat, C64};
use super::{ExplicitModel, ModelCase, ModelError};

/// A point of rank at most `rank`: a sum of `rank` random points of the cone
/// over the closed orbit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankSample {
    #[serde(skip)]
    pub vector: Vec<C64>,
    pub rank: usize,
    pub seed: u64,
}

fn column(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    random_matrix(rng, n, 1)
}

fn bilinear(a: &CMat, b: &CMat) -> C64 {
    (a.transpose() * b)[(0, 0)]
}

fn wedge(v: &CMat, w: &CMat) -> CMat {
    v * w.transpose() - w * v.transpose()
}

/// A random point of the cone over the closed orbit, in matrix form.
fn cone_point(m: &ExplicitModel, rng: &mut ChaCha8Rng) -> CMat {
    let (rows, cols) = m.shape();
    match m.case() {
        ModelCase::Natural(_) => column(rng, rows),
        ModelCase::Sym2(_) => {
            let v = column(rng, rows);
            &v * v.transpose()
        }
        ModelCase::Alt2(_) => {
            let v = column(rng, rows);
            let w = column(rng, rows);
            wedge(&v, &w)
        }
        ModelCase::AdjointSL(_) => {
            let v = column(rng, rows);
            let mut w = column(rng, rows);
            let t = bilinear(&w, &v) / bilinear(&v, &v);
            w -= &v * t;
            v * w.transpose()
        }
        ModelCase::Segre(..) => column(rng, rows) * random_matrix(rng, 1, cols),
        ModelCase::Quadric(_) => {
            let mut v = column(rng, rows);
            let n = rows;
            let rest: C64 = (1..n - 1).map(|i| v[(i, 0)] * v[(n - 1 - i, 0)]).sum();
            v[(0, 0)] = -rest / (v[(n - 1, 0)] * 2.0);
            v
        }
        ModelCase::SympAlt2(_) => {
            let j = m.groups()[0].form().expect("symplectic form");
            let v = column(rng, rows);
            let mut w = column(rng, rows);
            let u = column(rng, rows);
            let t = bilinear(&v, &(j * &w)) / bilinear(&v, &(j * &u));
            w -= &u * t;
            wedge(&v, &w)
        }
    }
}

pub fn sample_rank_point(m: &ExplicitModel, r: usize, seed: u64) -> Result<RankSample, ModelError> {
    if r > m.max_rank() {
        return Err(ModelError::RankTooLarge { case: m.case().to_string(), requested: r, max: m.max_rank() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rows, cols) = m.shape();
    let mut x = CMat::zeros(rows, cols);
    for _ in 0..r {
        x += cone_point(m, &mut rng);
    }
    Ok(RankSample { vector: m.coords(&x), rank: r, seed })
}

/// A Gaussian vector in ambient coordinates.
pub(crate) fn generic_vector(m: &ExplicitModel, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m.dim()).map(|_| complex_gaussian(&mut rng)).collect()
}
