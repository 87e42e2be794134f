//! Congruence (`B = X A Yᵀ` with `X`, `Y` monomial) and equivalence (congruence
//! after discarding zero rows and columns).
//!
//! A nonnegative invertible matrix with nonnegative inverse is a permutation
//! times a positive diagonal, so congruence is decided by a combinatorial
//! search for row and column bijections plus a consistency check on the
//! implied scale factors.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::matrix::{NonnegativeMatrix, Rational};
use crate::random;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// A permutation composed with a positive diagonal: basis vector `i` goes to
/// `scales[i] · e_{permutation[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialTransform {
    pub permutation: Vec<usize>,
    #[serde(serialize_with = "serialize_scales")]
    pub scales: Vec<Rational>,
}

fn serialize_scales<S: serde::Serializer>(scales: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(scales.iter().map(crate::matrix::format_rational))
}

impl MonomialTransform {
    pub fn identity(n: usize) -> Self {
        MonomialTransform {
            permutation: (0..n).collect(),
            scales: vec![Rational::one(); n],
        }
    }

    /// Returns `None` unless `permutation` is a bijection and every scale is positive.
    pub fn new(permutation: Vec<usize>, scales: Vec<Rational>) -> Option<Self> {
        let n = permutation.len();
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        if scales.len() != n || scales.iter().any(|s| !s.is_positive()) {
            return None;
        }
        Some(MonomialTransform { permutation, scales })
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        MonomialTransform {
            permutation: random::permutation(rng, n),
            scales: random::positive_scales(rng, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.permutation.len()
    }

    pub fn to_matrix(&self) -> NonnegativeMatrix {
        let n = self.dim();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, (&p, s)) in self.permutation.iter().zip(&self.scales).enumerate() {
            rows[p][i] = s.clone();
        }
        NonnegativeMatrix::from_rows(rows).expect("positive scales")
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut permutation = vec![0; n];
        let mut scales = vec![Rational::one(); n];
        for (i, (&p, s)) in self.permutation.iter().zip(&self.scales).enumerate() {
            permutation[p] = i;
            scales[p] = s.recip();
        }
        MonomialTransform { permutation, scales }
    }
}

/// `row · A · colᵀ` computed without forming the transform matrices.
pub fn apply_congruence(a: &NonnegativeMatrix, row: &MonomialTransform, col: &MonomialTransform) -> NonnegativeMatrix {
    let mut out = vec![vec![Rational::zero(); a.cols()]; a.rows()];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let v = a.get(i, j);
            if !v.is_zero() {
                out[row.permutation[i]][col.permutation[j]] = v * &row.scales[i] * &col.scales[j];
            }
        }
    }
    if a.rows() == 0 {
        return NonnegativeMatrix::zeros(0, a.cols());
    }
    NonnegativeMatrix::from_rows(out).expect("scaled nonnegative entries")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Congruence {
    Congruent { row: MonomialTransform, col: MonomialTransform },
    NotCongruent,
    /// The search budget ran out before a decision.
    Unknown,
}

impl Congruence {
    pub fn is_congruent(&self) -> bool {
        matches!(self, Congruence::Congruent { .. })
    }
}

/// Decides whether `b = X a Yᵀ` for monomial `X`, `Y`.
///
/// Connected components of the two support graphs are paired greedily;
/// since congruence is an equivalence relation, a failed greedy pairing
/// proves non-congruence. Within a component, rows are assigned first with
/// degree and column-signature pruning, then columns in breadth-first order
/// so that scale factors propagate along the support.
pub fn is_congruent(a: &NonnegativeMatrix, b: &NonnegativeMatrix, budget: u64) -> Congruence {
    if a.shape() != b.shape() || a.nnz() != b.nnz() {
        return Congruence::NotCongruent;
    }
    let (sa, sb) = (a.support(), b.support());
    let degrees = |s: &crate::matrix::SupportPattern| {
        let mut r: Vec<usize> = (0..s.rows()).map(|i| s.row_cells(i).count()).collect();
        let mut c: Vec<usize> = (0..s.cols()).map(|j| s.col_cells(j).count()).collect();
        r.sort_unstable();
        c.sort_unstable();
        (r, c)
    };
    if degrees(&sa) != degrees(&sb) {
        return Congruence::NotCongruent;
    }

    let comps_a = sa.components();
    let comps_b = sb.components();
    if comps_a.len() != comps_b.len() {
        return Congruence::NotCongruent;
    }
    let mut nodes = 0u64;
    let mut used = vec![false; comps_b.len()];
    let mut row = MonomialTransform::identity(a.rows());
    let mut col = MonomialTransform::identity(a.cols());
    let mut saw_unknown = false;
    for (ra, ca) in &comps_a {
        let sub_a = a.submatrix(ra, ca);
        let mut matched = false;
        for (k, (rb, cb)) in comps_b.iter().enumerate() {
            if used[k] || rb.len() != ra.len() || cb.len() != ca.len() {
                continue;
            }
            let sub_b = b.submatrix(rb, cb);
            if sub_a.nnz() != sub_b.nnz() {
                continue;
            }
            match congruent_connected(&sub_a, &sub_b, budget, &mut nodes) {
                Search::Found(pr, pc) => {
                    for (li, &gi) in ra.iter().enumerate() {
                        row.permutation[gi] = rb[pr.permutation[li]];
                        row.scales[gi] = pr.scales[li].clone();
                    }
                    for (lj, &gj) in ca.iter().enumerate() {
                        col.permutation[gj] = cb[pc.permutation[lj]];
                        col.scales[gj] = pc.scales[lj].clone();
                    }
                    used[k] = true;
                    matched = true;
                    break;
                }
                Search::Exhausted => saw_unknown = true,
                Search::None => {}
            }
        }
        if !matched {
            return if saw_unknown {
                Congruence::Unknown
            } else {
                Congruence::NotCongruent
            };
        }
    }
    // Zero lines map to zero lines in increasing order.
    let zero_rows_a: Vec<usize> = (0..a.rows()).filter(|&i| sa.row_cells(i).next().is_none()).collect();
    let zero_rows_b: Vec<usize> = (0..b.rows()).filter(|&i| sb.row_cells(i).next().is_none()).collect();
    for (&i, &p) in zero_rows_a.iter().zip(&zero_rows_b) {
        row.permutation[i] = p;
        row.scales[i] = Rational::one();
    }
    let zero_cols_a: Vec<usize> = (0..a.cols()).filter(|&j| sa.col_cells(j).next().is_none()).collect();
    let zero_cols_b: Vec<usize> = (0..b.cols()).filter(|&j| sb.col_cells(j).next().is_none()).collect();
    for (&j, &q) in zero_cols_a.iter().zip(&zero_cols_b) {
        col.permutation[j] = q;
        col.scales[j] = Rational::one();
    }
    debug_assert_eq!(&apply_congruence(a, &row, &col), b);
    Congruence::Congruent { row, col }
}

/// Equivalence: congruence of the matrices with all zero rows and columns
/// removed. The returned witness acts on those stripped cores.
pub fn is_equivalent(a: &NonnegativeMatrix, b: &NonnegativeMatrix, budget: u64) -> Congruence {
    let (ca, cb) = (a.strip_zero_lines().core, b.strip_zero_lines().core);
    is_congruent(&ca, &cb, budget)
}

enum Search {
    Found(MonomialTransform, MonomialTransform),
    None,
    Exhausted,
}

struct ComponentSearch<'a> {
    a: &'a NonnegativeMatrix,
    b: &'a NonnegativeMatrix,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
    row_map: Vec<Option<usize>>,
    row_used: Vec<bool>,
    col_map: Vec<Option<usize>>,
    col_used: Vec<bool>,
    row_scale: Vec<Option<Rational>>,
    col_scale: Vec<Rational>,
    nodes: &'a mut u64,
    budget: u64,
}

/// Breadth-first visiting order of rows and columns of a connected support.
fn bfs_orders(a: &NonnegativeMatrix) -> (Vec<usize>, Vec<usize>) {
    let s = a.support();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut row_seen = vec![false; a.rows()];
    let mut col_seen = vec![false; a.cols()];
    let mut queue = VecDeque::new();
    if a.rows() > 0 {
        queue.push_back((true, 0));
        row_seen[0] = true;
    }
    while let Some((is_row, v)) = queue.pop_front() {
        if is_row {
            rows.push(v);
            for j in s.row_cells(v) {
                if !col_seen[j] {
                    col_seen[j] = true;
                    queue.push_back((false, j));
                }
            }
        } else {
            cols.push(v);
            for i in s.col_cells(v) {
                if !row_seen[i] {
                    row_seen[i] = true;
                    queue.push_back((true, i));
                }
            }
        }
    }
    (rows, cols)
}

fn congruent_connected(a: &NonnegativeMatrix, b: &NonnegativeMatrix, budget: u64, nodes: &mut u64) -> Search {
    let (row_order, col_order) = bfs_orders(a);
    let mut s = ComponentSearch {
        a,
        b,
        row_order,
        col_order,
        row_map: vec![None; a.rows()],
        row_used: vec![false; b.rows()],
        col_map: vec![None; a.cols()],
        col_used: vec![false; b.cols()],
        row_scale: vec![None; a.rows()],
        col_scale: vec![Rational::one(); a.cols()],
        nodes,
        budget,
    };
    match s.assign_row(0) {
        Some(true) => {
            let row = MonomialTransform {
                permutation: s.row_map.iter().map(|p| p.expect("all rows assigned")).collect(),
                scales: s
                    .row_scale
                    .iter()
                    .map(|r| r.clone().expect("connected support fixes every row scale"))
                    .collect(),
            };
            let col = MonomialTransform {
                permutation: s.col_map.iter().map(|p| p.expect("all columns assigned")).collect(),
                scales: s.col_scale.clone(),
            };
            Search::Found(row, col)
        }
        Some(false) => Search::None,
        None => Search::Exhausted,
    }
}

impl ComponentSearch<'_> {
    fn tick(&mut self) -> bool {
        *self.nodes += 1;
        *self.nodes <= self.budget
    }

    /// Multisets of column patterns restricted to the assigned rows agree.
    fn signatures_agree(&self) -> bool {
        let mut sig_a: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for j in 0..self.a.cols() {
            let mut pat: Vec<usize> = (0..self.a.rows())
                .filter_map(|i| self.row_map[i].filter(|_| self.a.is_positive(i, j)))
                .collect();
            pat.sort_unstable();
            *sig_a.entry(pat).or_default() += 1;
        }
        let mut sig_b: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for k in 0..self.b.cols() {
            let pat: Vec<usize> = (0..self.b.rows())
                .filter(|&p| self.row_used[p] && self.b.is_positive(p, k))
                .collect();
            *sig_b.entry(pat).or_default() += 1;
        }
        sig_a == sig_b
    }

    /// `Some(true)` on success, `Some(false)` when the subtree has no solution, `None` on budget.
    fn assign_row(&mut self, depth: usize) -> Option<bool> {
        if depth == self.row_order.len() {
            return self.assign_col(0);
        }
        let i = self.row_order[depth];
        let deg = (0..self.a.cols()).filter(|&j| self.a.is_positive(i, j)).count();
        for p in 0..self.b.rows() {
            if self.row_used[p] || (0..self.b.cols()).filter(|&k| self.b.is_positive(p, k)).count() != deg {
                continue;
            }
            if !self.tick() {
                return None;
            }
            self.row_map[i] = Some(p);
            self.row_used[p] = true;
            let outcome = if self.signatures_agree() {
                self.assign_row(depth + 1)
            } else {
                Some(false)
            };
            if outcome != Some(false) {
                return outcome;
            }
            self.row_map[i] = None;
            self.row_used[p] = false;
        }
        Some(false)
    }

    fn assign_col(&mut self, depth: usize) -> Option<bool> {
        if depth == self.col_order.len() {
            return Some(true);
        }
        let j = self.col_order[depth];
        let mut pattern: Vec<usize> = (0..self.a.rows())
            .filter(|&i| self.a.is_positive(i, j))
            .map(|i| self.row_map[i].expect("rows assigned before columns"))
            .collect();
        pattern.sort_unstable();
        for k in 0..self.b.cols() {
            if self.col_used[k] {
                continue;
            }
            let target: Vec<usize> = (0..self.b.rows()).filter(|&p| self.b.is_positive(p, k)).collect();
            if target != pattern {
                continue;
            }
            if !self.tick() {
                return None;
            }
            let saved = self.row_scale.clone();
            if let Some(c) = self.fit_scales(j, k) {
                self.col_map[j] = Some(k);
                self.col_used[k] = true;
                self.col_scale[j] = c;
                match self.assign_col(depth + 1) {
                    Some(false) => {}
                    other => return other,
                }
                self.col_map[j] = None;
                self.col_used[k] = false;
            }
            self.row_scale = saved;
        }
        Some(false)
    }

    /// Fixes the column scale for `j ↦ k` from rows whose scale is known and
    /// extends the row scales; `None` on an inconsistency.
    fn fit_scales(&mut self, j: usize, k: usize) -> Option<Rational> {
        let rows: Vec<usize> = (0..self.a.rows()).filter(|&i| self.a.is_positive(i, j)).collect();
        let ratio = |i: usize| -> Rational {
            let p = self.row_map[i].expect("assigned");
            self.b.get(p, k) / self.a.get(i, j)
        };
        let c = match rows.iter().find(|&&i| self.row_scale[i].is_some()) {
            Some(&i) => ratio(i) / self.row_scale[i].as_ref().expect("checked"),
            None => Rational::one(),
        };
        for &i in &rows {
            let r = ratio(i) / &c;
            match &self.row_scale[i] {
                Some(existing) if *existing != r => return None,
                Some(_) => {}
                None => self.row_scale[i] = Some(r),
            }
        }
        Some(c)
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
    fn transform_matrix_agrees_with_apply() {
        let mut rng = random::rng(11);
        let a = random::matrix(&mut rng, 3, 4, 0.6);
        let x = MonomialTransform::random(&mut rng, 3);
        let y = MonomialTransform::random(&mut rng, 4);
        let direct = a.sandwich(&x.to_matrix(), &y.to_matrix()).unwrap();
        assert_eq!(apply_congruence(&a, &x, &y), direct);
        let back = apply_congruence(&direct, &x.inverse(), &y.inverse());
        assert_eq!(back, a);
        assert_eq!(x.to_matrix().mul(&x.inverse().to_matrix()).unwrap(), NonnegativeMatrix::identity(3));
    }

    #[test]
    fn permuted_and_scaled_copies_are_congruent() {
        let mut rng = random::rng(5);
        for _ in 0..20 {
            let a = random::small_matrix(&mut rng, 4);
            let x = MonomialTransform::random(&mut rng, a.rows());
            let y = MonomialTransform::random(&mut rng, a.cols());
            let b = apply_congruence(&a, &x, &y);
            match is_congruent(&a, &b, DEFAULT_SEARCH_BUDGET) {
                Congruence::Congruent { row, col } => assert_eq!(apply_congruence(&a, &row, &col), b),
                other => panic!("expected a witness, got {other:?}"),
            }
        }
    }

    #[test]
    fn non_congruent_pairs() {
        assert_eq!(
            is_congruent(&NonnegativeMatrix::identity(2), &m(&[&[1, 1], &[0, 1]]), 1000),
            Congruence::NotCongruent
        );
        // same support, cross ratio differs
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = m(&[&[1, 1], &[1, 2]]);
        assert_eq!(is_congruent(&a, &b, 1000), Congruence::NotCongruent);
        let c = NonnegativeMatrix::from_rows(vec![vec![int(2), rational(1, 3)], vec![int(6), int(1)]]).unwrap();
        assert!(is_congruent(&a, &c, 1000).is_congruent());
    }

    #[test]
    fn equivalence_ignores_zero_padding() {
        let a = m(&[&[1, 2], &[0, 3]]);
        assert!(is_equivalent(&a, &a.direct_sum(&NonnegativeMatrix::zeros(2, 3)), 1000).is_congruent());
        assert!(is_equivalent(&NonnegativeMatrix::zeros(1, 5), &NonnegativeMatrix::zeros(4, 2), 1000).is_congruent());
        assert_eq!(
            is_equivalent(&NonnegativeMatrix::identity(2), &NonnegativeMatrix::identity(3), 1000),
            Congruence::NotCongruent
        );
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        let a = NonnegativeMatrix::from_ints(&[[1i64; 4]; 4]).unwrap();
        let b = m(&[&[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 2]]);
        assert_eq!(is_congruent(&a, &b, 3), Congruence::Unknown);
        assert_eq!(is_congruent(&a, &b, DEFAULT_SEARCH_BUDGET), Congruence::NotCongruent);
    }
}
