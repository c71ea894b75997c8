//! Seeded, bounded random vector corpora for reproducible runs.

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{vertices, Vertex};
use crate::norm::Vector;
use crate::rational::big_rational;

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub k: usize,
    /// Draw support points from the first `support_pool` vertices of `ω^k`.
    pub support_pool: usize,
    pub max_support: usize,
    pub count: usize,
    pub seed: u64,
}

fn coefficient_pool() -> Vec<BigRational> {
    [
        (1, 1),
        (-1, 1),
        (1, 2),
        (-1, 2),
        (3, 2),
        (-3, 2),
        (1, 4),
        (2, 1),
    ]
    .into_iter()
    .map(|(n, d)| big_rational(n, d))
    .collect()
}

/// Deterministic nonzero vectors: support subsets of the pool, coefficients
/// from a small rational set.
pub fn seeded_vectors(spec: &CorpusSpec) -> Vec<Vector> {
    let pool: Vec<Vertex> = vertices(spec.k).take(spec.support_pool).collect();
    let coeffs = coefficient_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let size = rng.random_range(1..=spec.max_support.min(pool.len()));
        let mut idx: Vec<usize> = (0..pool.len()).collect();
        for i in 0..size {
            let j = rng.random_range(i..idx.len());
            idx.swap(i, j);
        }
        let mut x = Vector::zero(spec.k).unwrap();
        for &i in idx.iter().take(size) {
            let c = coeffs[rng.random_range(0..coeffs.len())].clone();
            x.set(pool[i].clone(), c).unwrap();
        }
        out.push(x);
    }
    out
}
