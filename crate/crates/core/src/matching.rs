//! Nonnegative subrank as the maximum induced matching of the support graph.
//!
//! A set of support cells is an induced matching when any two of its cells
//! `(a, b)`, `(c, d)` satisfy `A[a][d] = A[c][b] = 0`. The largest such set
//! has the size of the largest identity restriction `I_t = X A Yᵀ`, and each
//! result carries the pair `(X, Y)` that realizes it.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::matrix::{NonnegativeMatrix, Rational};

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;
pub const DEFAULT_BRUTEFORCE_LIMIT: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingOptions {
    /// Branch-and-bound nodes explored before giving up on optimality.
    pub node_budget: u64,
}

impl Default for MatchingOptions {
    fn default() -> Self {
        MatchingOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    pub size: usize,
    /// Matched cells `(row, col)`, sorted by row.
    pub matching: Vec<(usize, usize)>,
    /// `X` (t x m) with `X A Yᵀ = I_t`.
    pub certificate_left: NonnegativeMatrix,
    /// `Y` (t x n).
    pub certificate_right: NonnegativeMatrix,
    /// False when the node budget ran out; `size` is then only a lower bound.
    pub exact: bool,
}

impl MatchingResult {
    /// Exact check of `X A Yᵀ = I_t`.
    pub fn verify(&self, a: &NonnegativeMatrix) -> bool {
        is_induced_matching(a, &self.matching).unwrap_or(false)
            && a
                .sandwich(&self.certificate_left, &self.certificate_right)
                .map(|p| p == NonnegativeMatrix::identity(self.size))
                .unwrap_or(false)
    }
}

pub fn is_induced_matching(a: &NonnegativeMatrix, cells: &[(usize, usize)]) -> Result<bool> {
    for &(i, j) in cells {
        if !a.checked_get(i, j)?.is_positive() {
            return Ok(false);
        }
    }
    for (k, &(a1, b1)) in cells.iter().enumerate() {
        for &(a2, b2) in &cells[k + 1..] {
            if a1 == a2 || b1 == b2 || a.is_positive(a1, b2) || a.is_positive(a2, b1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn conflicts(a: &NonnegativeMatrix, (a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> bool {
    a1 == a2 || b1 == b2 || a.is_positive(a1, b2) || a.is_positive(a2, b1)
}

/// Builds `X = [D⁻¹ 0]·P` and `Y = [I 0]·Q` for a valid induced matching.
pub fn certificates(a: &NonnegativeMatrix, matching: &[(usize, usize)]) -> (NonnegativeMatrix, NonnegativeMatrix) {
    let t = matching.len();
    let mut x = vec![Rational::zero(); t * a.rows()];
    let mut y = vec![Rational::zero(); t * a.cols()];
    for (k, &(i, j)) in matching.iter().enumerate() {
        x[k * a.rows() + i] = a.get(i, j).recip();
        y[k * a.cols() + j] = Rational::one();
    }
    (
        NonnegativeMatrix::new(t, a.rows(), x).expect("reciprocals of positive entries are positive"),
        NonnegativeMatrix::new(t, a.cols(), y).expect("0/1 entries"),
    )
}

/// Maximum induced matching by branch and bound.
///
/// Cells are ordered by ascending conflict degree (ties row-major). The bound
/// at each node is the number of distinct rows, or of distinct columns, left
/// among the candidates.
pub fn subrank(a: &NonnegativeMatrix, opts: MatchingOptions) -> MatchingResult {
    let support = a.support().cells();
    let k = support.len();
    let mut degree = vec![0usize; k];
    let mut conflict_pairs = vec![Vec::new(); k];
    for p in 0..k {
        for q in p + 1..k {
            if conflicts(a, support[p], support[q]) {
                degree[p] += 1;
                degree[q] += 1;
                conflict_pairs[p].push(q);
                conflict_pairs[q].push(p);
            }
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| (degree[p], support[p]));
    let mut rank_of = vec![0; k];
    for (r, &p) in order.iter().enumerate() {
        rank_of[p] = r;
    }
    let cells: Vec<(usize, usize)> = order.iter().map(|&p| support[p]).collect();
    let compatible: Vec<BitSet> = order
        .iter()
        .map(|&p| {
            let mut s = BitSet::full(k);
            s.remove(rank_of[p]);
            for &q in &conflict_pairs[p] {
                s.remove(rank_of[q]);
            }
            s
        })
        .collect();

    let mut search = Search {
        cells: &cells,
        compatible: &compatible,
        rows: a.rows(),
        cols: a.cols(),
        best: greedy(&compatible, k),
        nodes: 0,
        budget: opts.node_budget,
        exhausted: false,
    };
    let mut current = Vec::new();
    search.expand(&mut current, BitSet::full(k));

    let mut matching: Vec<(usize, usize)> = search.best.iter().map(|&v| cells[v]).collect();
    matching.sort();
    let (certificate_left, certificate_right) = certificates(a, &matching);
    MatchingResult {
        size: matching.len(),
        matching,
        certificate_left,
        certificate_right,
        exact: !search.exhausted,
    }
}

fn greedy(compatible: &[BitSet], k: usize) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut allowed = BitSet::full(k);
    while let Some(v) = allowed.first() {
        chosen.push(v);
        allowed = allowed.intersect(&compatible[v]);
    }
    chosen
}

struct Search<'a> {
    cells: &'a [(usize, usize)],
    compatible: &'a [BitSet],
    rows: usize,
    cols: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn bound(&self, candidates: &BitSet) -> usize {
        let mut rows = vec![false; self.rows];
        let mut cols = vec![false; self.cols];
        let (mut r, mut c) = (0, 0);
        for v in candidates.iter() {
            let (i, j) = self.cells[v];
            if !rows[i] {
                rows[i] = true;
                r += 1;
            }
            if !cols[j] {
                cols[j] = true;
                c += 1;
            }
        }
        r.min(c)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: BitSet) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        while let Some(v) = candidates.first() {
            if current.len() + self.bound(&candidates) <= self.best.len() {
                return;
            }
            current.push(v);
            let next = candidates.intersect(&self.compatible[v]);
            self.expand(current, next);
            current.pop();
            if self.exhausted {
                return;
            }
            candidates.remove(v);
        }
    }
}

/// Exhaustive maximum over all subsets of the support.
pub fn subrank_bruteforce(a: &NonnegativeMatrix, max_support: usize) -> Result<usize> {
    let cells = a.support().cells();
    let k = cells.len();
    if k > max_support || k > 30 {
        return Err(Error::Budget(format!(
            "support of size {k} exceeds the exhaustive-search limit {}",
            max_support.min(30)
        )));
    }
    let mut conflict = vec![0u32; k];
    for p in 0..k {
        for q in 0..k {
            if p != q && conflicts(a, cells[p], cells[q]) {
                conflict[p] |= 1 << q;
            }
        }
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << k) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (0..k).all(|p| mask >> p & 1 == 0 || conflict[p] & mask == 0);
        if ok {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_ints(rows).unwrap()
    }

    fn example() -> NonnegativeMatrix {
        m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 1]])
    }

    #[test]
    fn worked_example_matchings() {
        let a = example();
        // (4,1),(3,2) in 1-based indexing
        assert!(is_induced_matching(&a, &[(3, 0), (2, 1)]).unwrap());
        assert!(!is_induced_matching(&a, &[(0, 0), (1, 2), (2, 1), (3, 3)]).unwrap());
        assert!(is_induced_matching(&a, &[]).unwrap());
        assert!(matches!(
            is_induced_matching(&a, &[(4, 0)]),
            Err(Error::IndexOutOfRange { .. })
        ));
        // cell outside the support
        assert!(!is_induced_matching(&a, &[(0, 2)]).unwrap());
    }

    #[test]
    fn worked_example_subrank() {
        let a = example();
        let r = subrank(&a, MatchingOptions::default());
        assert_eq!(r.size, 2);
        assert!(r.exact);
        assert!(r.verify(&a));
        assert_eq!(subrank_bruteforce(&a, DEFAULT_BRUTEFORCE_LIMIT).unwrap(), 2);
    }

    #[test]
    fn identity_and_zero() {
        for n in 1..=5 {
            let r = subrank(&NonnegativeMatrix::identity(n), MatchingOptions::default());
            assert_eq!(r.size, n);
            assert_eq!(r.matching, (0..n).map(|i| (i, i)).collect::<Vec<_>>());
        }
        let r = subrank(&NonnegativeMatrix::zeros(2, 3), MatchingOptions::default());
        assert_eq!(r.size, 0);
        assert_eq!(r.certificate_left.shape(), (0, 2));
        assert_eq!(r.certificate_right.shape(), (0, 3));
        assert_eq!(subrank_bruteforce(&NonnegativeMatrix::identity(4), 22).unwrap(), 4);
        let ones = m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(subrank_bruteforce(&ones, 22).unwrap(), 1);
        assert_eq!(subrank(&ones, MatchingOptions::default()).size, 1);
    }

    #[test]
    fn bruteforce_refuses_large_support() {
        let ones = NonnegativeMatrix::from_ints(&[[1i64; 5]; 5]).unwrap();
        assert!(subrank_bruteforce(&ones, 22).unwrap_err().is_budget());
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let a = example().kronecker(&example());
        let r = subrank(&a, MatchingOptions { node_budget: 3 });
        assert!(!r.exact);
        assert!(r.verify(&a));
    }
}
