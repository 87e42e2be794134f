//! Exact rank over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::matrix::{NonnegativeMatrix, Rational};

/// Rank together with an invertible `rank x rank` submatrix certifying it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankResult {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Exact rank by Bareiss fraction-free elimination.
///
/// Rows are first cleared of denominators (which does not change the rank).
/// The pivot in each column is the first nonzero entry at or below the
/// current row, so the result is deterministic.
pub fn rank(a: &NonnegativeMatrix) -> RankResult {
    let (m, n) = a.shape();
    let mut grid: Vec<Vec<BigInt>> = (0..m).map(|i| integer_row(a.row(i))).collect();
    let mut order: Vec<usize> = (0..m).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivot_cols = Vec::new();

    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !grid[i][c].is_zero()) else {
            continue;
        };
        grid.swap(r, p);
        order.swap(r, p);
        let (head, tail) = grid.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..n {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivot_cols.push(c);
        r += 1;
    }

    let mut pivot_rows = order[..r].to_vec();
    // Keep the certified submatrix in natural order; row order does not affect invertibility.
    let mut paired: Vec<usize> = (0..r).collect();
    paired.sort_by_key(|&k| pivot_rows[k]);
    pivot_rows = paired.iter().map(|&k| pivot_rows[k]).collect();
    RankResult {
        rank: r,
        pivot_rows,
        pivot_cols,
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Determinant of a square rational grid by plain rational elimination.
pub fn determinant(grid: &[Vec<Rational>]) -> Rational {
    let n = grid.len();
    let mut g: Vec<Vec<Rational>> = grid.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !g[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            g.swap(p, c);
            det = -det;
        }
        let pivot = g[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if g[i][c].is_zero() {
                continue;
            }
            let f = &g[i][c] / &pivot;
            for j in c..n {
                let v = &f * &g[c][j];
                g[i][j] -= v;
            }
        }
    }
    det
}

impl RankResult {
    /// Checks that the pivot submatrix of `a` is square and invertible.
    pub fn verify(&self, a: &NonnegativeMatrix) -> bool {
        if self.pivot_rows.len() != self.rank || self.pivot_cols.len() != self.rank {
            return false;
        }
        let sub = a.submatrix(&self.pivot_rows, &self.pivot_cols);
        self.rank == 0 || !determinant(&sub.to_rows()).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rational};

    fn m(rows: &[&[i64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn incomparability_matrices() {
        let a_rm = m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let b_rm = m(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[0, 1, 1, 1], &[1, 1, 0, 1]]);
        let ra = rank(&a_rm);
        assert_eq!(ra.rank, 3);
        assert!(ra.verify(&a_rm));
        let rb = rank(&b_rm);
        assert_eq!(rb.rank, 4);
        assert!(rb.verify(&b_rm));
    }

    #[test]
    fn identities_and_zero() {
        for n in 1..=6 {
            let r = rank(&NonnegativeMatrix::identity(n));
            assert_eq!(r.rank, n);
            assert_eq!(r.pivot_rows, (0..n).collect::<Vec<_>>());
        }
        assert_eq!(rank(&NonnegativeMatrix::zeros(3, 2)).rank, 0);
        assert_eq!(rank(&NonnegativeMatrix::empty()).rank, 0);
    }

    #[test]
    fn rational_entries_and_skipped_columns() {
        let a = NonnegativeMatrix::from_rows(vec![
            vec![int(0), rational(1, 2), rational(1, 3)],
            vec![int(0), int(1), rational(2, 3)],
            vec![int(0), int(0), int(5)],
        ])
        .unwrap();
        let r = rank(&a);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![1, 2]);
        assert!(r.verify(&a));
    }

    #[test]
    fn determinant_sign() {
        let g = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&g), int(-1));
    }
}
