//! Seeded generators for random nonnegative rational matrices.
//!
//! Everything is driven by a ChaCha stream so that harness runs are
//! reproducible from a single integer seed.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{rational, NonnegativeMatrix, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A positive rational `p/q` with `1 ≤ p ≤ 9`, `1 ≤ q ≤ 4`.
pub fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

/// Random matrix whose cells are positive with probability `density`.
pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> NonnegativeMatrix {
    NonnegativeMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(density) {
            positive_rational(rng)
        } else {
            Rational::zero()
        }
    })
    .expect("generated entries are nonnegative")
}

/// Random 0/1 matrix with the given density.
pub fn binary<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> NonnegativeMatrix {
    NonnegativeMatrix::from_fn(rows, cols, |_, _| rational(rng.gen_bool(density) as i64, 1))
        .expect("0/1 entries")
}

/// Random shape with both sides in `1..=max_dim` and a random density in
/// `[0.3, 0.8]`.
pub fn small_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> NonnegativeMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let density = rng.gen_range(0.3..0.8);
    matrix(rng, rows, cols, density)
}

/// Like [`small_matrix`] but never the zero matrix.
pub fn small_nonzero_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> NonnegativeMatrix {
    loop {
        let a = small_matrix(rng, max_dim);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Entries strictly below the diagonal are zero (`A[i][j] = 0` for `i > j`),
/// the diagonal is positive, and the rest is random.
pub fn triangular<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> NonnegativeMatrix {
    NonnegativeMatrix::from_fn(rows, cols, |i, j| {
        if i == j || (i < j && rng.gen_bool(density)) {
            positive_rational(rng)
        } else {
            Rational::zero()
        }
    })
    .expect("generated entries are nonnegative")
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn positive_scales<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| positive_rational(rng)).collect()
}
