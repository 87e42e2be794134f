//! Fractional and t-fold rectangle covers of the support.
//!
//! A monochromatic rectangle is a block `X × Y` inside the support. The
//! fractional cover number `F(A)` is the optimum of the covering LP over
//! those rectangles; `F_t(A)` is its integer t-fold analogue. The LPs here
//! range over inclusion-maximal rectangles only: enlarging a rectangle never
//! breaks a cover, and the packing constraint of a smaller rectangle is
//! implied by that of any maximal rectangle containing it.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lp::{solve_lp_exact, LinearProgram, Relation, Sense};
use crate::matrix::{format_rational, NonnegativeMatrix, Rational, SupportPattern};

pub const DEFAULT_RECTANGLE_CAP: usize = 100_000;
pub const DEFAULT_ILP_NODE_BUDGET: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    /// Maximum number of maximal rectangles to enumerate.
    pub rectangle_cap: usize,
    /// Branch-and-bound nodes for the t-fold integer program.
    pub ilp_node_budget: u64,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            rectangle_cap: DEFAULT_RECTANGLE_CAP,
            ilp_node_budget: DEFAULT_ILP_NODE_BUDGET,
        }
    }
}

/// `rows × cols`, both sorted and nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Rectangle {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Rectangle { rows, cols }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows.binary_search(&i).is_ok() && self.cols.binary_search(&j).is_ok()
    }

    pub fn area(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .flat_map(move |&i| self.cols.iter().map(move |&j| (i, j)))
    }

    pub fn is_monochromatic(&self, s: &SupportPattern) -> bool {
        !self.rows.is_empty() && !self.cols.is_empty() && self.cells().all(|(i, j)| s.contains(i, j))
    }

    /// The rank-one 0/1 matrix `1_X 1_Yᵀ` of shape `rows x cols`.
    pub fn indicator(&self, rows: usize, cols: usize) -> NonnegativeMatrix {
        NonnegativeMatrix::from_fn(rows, cols, |i, j| {
            if self.contains(i, j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .expect("0/1 entries")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Fractional,
    IntegerTfold(u32),
}

/// A cover with its certificates.
///
/// In fractional mode `primal` is an optimal LP solution and `dual` a packing
/// of equal total weight. In t-fold mode `primal` holds integer multiplicities
/// and `dual` is empty. Zero weights are omitted from both lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub value: Rational,
    pub primal: Vec<(Rectangle, Rational)>,
    pub dual: Vec<((usize, usize), Rational)>,
    pub mode: CoverMode,
}

impl CoverSolution {
    fn empty(mode: CoverMode) -> Self {
        CoverSolution {
            value: Rational::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
            mode,
        }
    }

    /// Exact check of every certificate invariant against `support` and the
    /// rectangle family the program ranged over.
    pub fn verify(&self, support: &SupportPattern, rectangles: &[Rectangle]) -> bool {
        let threshold = match self.mode {
            CoverMode::Fractional => Rational::one(),
            CoverMode::IntegerTfold(t) => Rational::from_integer(BigInt::from(t)),
        };
        let weights_ok = self.primal.iter().all(|(r, w)| {
            r.is_monochromatic(support)
                && w.is_positive()
                && match self.mode {
                    CoverMode::Fractional => *w <= Rational::one(),
                    CoverMode::IntegerTfold(_) => w.is_integer(),
                }
        });
        let total = self.primal.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        let covered = support.cells().iter().all(|&(i, j)| {
            let c = self
                .primal
                .iter()
                .filter(|(r, _)| r.contains(i, j))
                .fold(Rational::zero(), |acc, (_, w)| acc + w);
            c >= threshold
        });
        if !(weights_ok && covered && total == self.value) {
            return false;
        }
        if self.mode != CoverMode::Fractional {
            return true;
        }
        let dual: BTreeMap<(usize, usize), &Rational> = self.dual.iter().map(|(c, w)| (*c, w)).collect();
        let dual_in_range = self.dual.iter().all(|((i, j), w)| {
            support.contains(*i, *j) && w.is_positive() && *w <= Rational::one()
        });
        let packing = rectangles.iter().all(|r| {
            r.cells()
                .filter_map(|c| dual.get(&c))
                .fold(Rational::zero(), |acc, w| acc + *w)
                <= Rational::one()
        });
        let dual_total = self.dual.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        dual_in_range && packing && dual_total == self.value
    }
}

impl Serialize for CoverSolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Weighted<'a> {
            rows: &'a [usize],
            cols: &'a [usize],
            weight: String,
        }
        #[derive(Serialize)]
        struct CellWeight {
            row: usize,
            col: usize,
            weight: String,
        }
        let mut st = s.serialize_struct("CoverSolution", 4)?;
        st.serialize_field("value", &format_rational(&self.value))?;
        match self.mode {
            CoverMode::Fractional => st.serialize_field("mode", "fractional")?,
            CoverMode::IntegerTfold(t) => st.serialize_field("mode", &format!("integer_tfold({t})"))?,
        }
        let primal: Vec<Weighted> = self
            .primal
            .iter()
            .map(|(r, w)| Weighted {
                rows: &r.rows,
                cols: &r.cols,
                weight: format_rational(w),
            })
            .collect();
        st.serialize_field("primal", &primal)?;
        let dual: Vec<CellWeight> = self
            .dual
            .iter()
            .map(|((row, col), w)| CellWeight {
                row: *row,
                col: *col,
                weight: format_rational(w),
            })
            .collect();
        st.serialize_field("dual", &dual)?;
        st.end()
    }
}

/// All inclusion-maximal monochromatic rectangles, sorted canonically.
///
/// Closed row sets are produced in lectic order (next-closure), each closed
/// set with a nonempty column intent giving one maximal rectangle.
pub fn enumerate_maximal_rectangles(s: &SupportPattern, cap: usize) -> Result<Vec<Rectangle>> {
    let (m, n) = (s.rows(), s.cols());
    let row_sets: Vec<BitSet> = (0..m)
        .map(|i| {
            let mut b = BitSet::new(n);
            for j in s.row_cells(i) {
                b.insert(j);
            }
            b
        })
        .collect();
    let col_sets: Vec<BitSet> = (0..n)
        .map(|j| {
            let mut b = BitSet::new(m);
            for i in s.col_cells(j) {
                b.insert(i);
            }
            b
        })
        .collect();
    let intent = |rows: &BitSet| -> BitSet {
        rows.iter()
            .fold(BitSet::full(n), |acc, i| acc.intersect(&row_sets[i]))
    };
    let extent = |cols: &BitSet| -> BitSet {
        cols.iter()
            .fold(BitSet::full(m), |acc, j| acc.intersect(&col_sets[j]))
    };
    let closure = |rows: &BitSet| extent(&intent(rows));

    let mut out = Vec::new();
    let mut current = closure(&BitSet::new(m));
    loop {
        let cols = intent(&current);
        if !current.is_empty() && !cols.is_empty() {
            if out.len() >= cap {
                return Err(Error::Budget(format!(
                    "more than {cap} maximal rectangles"
                )));
            }
            out.push(Rectangle {
                rows: current.iter().collect(),
                cols: cols.iter().collect(),
            });
        }
        let mut next = None;
        for i in (0..m).rev() {
            if current.contains(i) {
                continue;
            }
            let mut prefix = BitSet::new(m);
            for k in current.iter().filter(|&k| k < i) {
                prefix.insert(k);
            }
            let mut seed = prefix.clone();
            seed.insert(i);
            let candidate = closure(&seed);
            let head_matches = (0..i).all(|k| candidate.contains(k) == prefix.contains(k));
            if head_matches {
                next = Some(candidate);
                break;
            }
        }
        match next {
            Some(c) => current = c,
            None => break,
        }
    }
    out.sort();
    Ok(out)
}

/// Every monochromatic rectangle, maximal or not. Exponential; for
/// cross-checking the maximal-rectangle reduction on tiny patterns.
pub fn enumerate_all_rectangles(s: &SupportPattern, cap: usize) -> Result<Vec<Rectangle>> {
    let (m, n) = (s.rows(), s.cols());
    if m > 20 || n > 20 {
        return Err(Error::Budget("all-rectangle enumeration limited to 20x20".into()));
    }
    let mut out = Vec::new();
    for rmask in 1u32..(1 << m) {
        let rows: Vec<usize> = (0..m).filter(|&i| rmask >> i & 1 == 1).collect();
        let common: Vec<usize> = (0..n)
            .filter(|&j| rows.iter().all(|&i| s.contains(i, j)))
            .collect();
        for cmask in 1u32..(1 << common.len()) {
            if out.len() >= cap {
                return Err(Error::Budget(format!("more than {cap} rectangles")));
            }
            let cols = (0..common.len())
                .filter(|&k| cmask >> k & 1 == 1)
                .map(|k| common[k])
                .collect();
            out.push(Rectangle { rows: rows.clone(), cols });
        }
    }
    out.sort();
    Ok(out)
}

/// Fractional cover number with primal and dual certificates.
pub fn fractional_cover(a: &NonnegativeMatrix, opts: CoverOptions) -> Result<CoverSolution> {
    let s = a.support();
    if s.is_empty() {
        return Ok(CoverSolution::empty(CoverMode::Fractional));
    }
    let rects = enumerate_maximal_rectangles(&s, opts.rectangle_cap)?;
    fractional_cover_over(&s, &rects)
}

fn covering_program(s: &SupportPattern, rects: &[Rectangle], demand: &Rational) -> (LinearProgram, Vec<(usize, usize)>) {
    let cells = s.cells();
    let mut lp = LinearProgram::new(Sense::Minimize, vec![Rational::one(); rects.len()]);
    for &(i, j) in &cells {
        let row = rects
            .iter()
            .map(|r| {
                if r.contains(i, j) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        lp.push(row, Relation::Ge, demand.clone());
    }
    (lp, cells)
}

/// Solves the covering LP over the given rectangle family.
///
/// The family must cover every support cell. Upper bounds `τ ≤ 1` are not
/// imposed; they never bind at an optimum of a covering program with unit
/// demands.
pub fn fractional_cover_over(s: &SupportPattern, rects: &[Rectangle]) -> Result<CoverSolution> {
    if s.is_empty() {
        return Ok(CoverSolution::empty(CoverMode::Fractional));
    }
    let (lp, cells) = covering_program(s, rects, &Rational::one());
    let sol = solve_lp_exact(&lp)?;
    let primal = rects
        .iter()
        .zip(&sol.x)
        .filter(|(_, w)| !w.is_zero())
        .map(|(r, w)| (r.clone(), w.clone()))
        .collect();
    let dual = cells
        .iter()
        .zip(&sol.duals)
        .filter(|(_, w)| !w.is_zero())
        .map(|(c, w)| (*c, w.clone()))
        .collect();
    Ok(CoverSolution {
        value: sol.value,
        primal,
        dual,
        mode: CoverMode::Fractional,
    })
}

/// Minimum t-fold cover `F_t(A)` by LP-based branch and bound.
pub fn tfold_cover(a: &NonnegativeMatrix, t: u32, opts: CoverOptions) -> Result<CoverSolution> {
    if t == 0 {
        return Err(Error::Precondition("t must be positive".into()));
    }
    let s = a.support();
    if s.is_empty() {
        return Ok(CoverSolution::empty(CoverMode::IntegerTfold(t)));
    }
    let rects = enumerate_maximal_rectangles(&s, opts.rectangle_cap)?;
    tfold_cover_over(&s, &rects, t, opts.ilp_node_budget)
}

pub fn tfold_cover_over(s: &SupportPattern, rects: &[Rectangle], t: u32, node_budget: u64) -> Result<CoverSolution> {
    let demand = Rational::from_integer(BigInt::from(t));
    let (base, cells) = covering_program(s, rects, &demand);
    let incidence: Vec<Vec<usize>> = cells
        .iter()
        .map(|&(i, j)| (0..rects.len()).filter(|&k| rects[k].contains(i, j)).collect())
        .collect();

    let mut bb = TfoldSearch {
        base: &base,
        incumbent: greedy_multicover(&incidence, rects, t),
        nodes: 0,
        budget: node_budget,
    };
    bb.branch(&mut Vec::new())?;

    let best = bb.incumbent;
    let value: u64 = best.iter().sum();
    let primal = rects
        .iter()
        .zip(&best)
        .filter(|(_, &w)| w > 0)
        .map(|(r, &w)| (r.clone(), Rational::from_integer(BigInt::from(w))))
        .collect();
    Ok(CoverSolution {
        value: Rational::from_integer(BigInt::from(value)),
        primal,
        dual: Vec::new(),
        mode: CoverMode::IntegerTfold(t),
    })
}

/// Repeatedly takes the rectangle meeting the most outstanding demand.
fn greedy_multicover(incidence: &[Vec<usize>], rects: &[Rectangle], t: u32) -> Vec<u64> {
    let mut need = vec![t as u64; incidence.len()];
    let mut mult = vec![0u64; rects.len()];
    let mut by_rect = vec![Vec::new(); rects.len()];
    for (c, ks) in incidence.iter().enumerate() {
        for &k in ks {
            by_rect[k].push(c);
        }
    }
    while need.iter().any(|&d| d > 0) {
        let (k, _) = by_rect
            .iter()
            .enumerate()
            .map(|(k, cs)| (k, cs.iter().filter(|&&c| need[c] > 0).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("every cell lies in some rectangle");
        mult[k] += 1;
        for &c in &by_rect[k] {
            need[c] = need[c].saturating_sub(1);
        }
    }
    mult
}

#[derive(Clone, Copy)]
enum Bound {
    AtMost(usize, u64),
    AtLeast(usize, u64),
}

struct TfoldSearch<'a> {
    base: &'a LinearProgram,
    incumbent: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl TfoldSearch<'_> {
    fn incumbent_value(&self) -> u64 {
        self.incumbent.iter().sum()
    }

    fn branch(&mut self, bounds: &mut Vec<Bound>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!(
                "t-fold cover search exceeded {} nodes",
                self.budget
            )));
        }
        let mut lp = self.base.clone();
        let n = lp.num_vars();
        for &b in bounds.iter() {
            let (k, rel, v) = match b {
                Bound::AtMost(k, v) => (k, Relation::Le, v),
                Bound::AtLeast(k, v) => (k, Relation::Ge, v),
            };
            let mut row = vec![Rational::zero(); n];
            row[k] = Rational::one();
            lp.push(row, rel, Rational::from_integer(BigInt::from(v)));
        }
        let sol = match solve_lp_exact(&lp) {
            Ok(sol) => sol,
            Err(Error::Infeasible) => return Ok(()),
            Err(e) => return Err(e),
        };
        // Objective is integral on integer points, so ⌈LP⌉ bounds the subtree.
        let floor = ceil_u64(&sol.value);
        if floor >= self.incumbent_value() {
            return Ok(());
        }
        let rounded: Vec<u64> = sol.x.iter().map(ceil_u64).collect();
        if rounded.iter().sum::<u64>() < self.incumbent_value() {
            self.incumbent = rounded;
        }
        let fractional = sol
            .x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_integer())
            .max_by(|(ka, a), (kb, b)| a.cmp(b).then(kb.cmp(ka)));
        let Some((k, v)) = fractional else {
            return Ok(());
        };
        let up = ceil_u64(v);
        for bound in [Bound::AtLeast(k, up), Bound::AtMost(k, up - 1)] {
            bounds.push(bound);
            let r = self.branch(bounds);
            bounds.pop();
            r?;
            if floor >= self.incumbent_value() {
                break;
            }
        }
        Ok(())
    }
}

fn ceil_u64(v: &Rational) -> u64 {
    v.ceil().to_integer().to_u64().expect("nonnegative multiplicities fit in u64")
}

/// One term `F_t(A) / t` of the asymptotic sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldTerm {
    pub t: u32,
    pub cover_number: u64,
    pub ratio: Rational,
}

/// `F_t(A)/t` for `t = 1..=t_max` with the certified floor `F(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FStarEstimate {
    pub floor: Rational,
    pub terms: Vec<FoldTerm>,
}

impl FStarEstimate {
    /// Smallest ratio seen; an upper bound on `F(A)`.
    pub fn best(&self) -> Option<&FoldTerm> {
        self.terms.iter().min_by(|a, b| match a.ratio.cmp(&b.ratio) {
            Ordering::Equal => a.t.cmp(&b.t),
            o => o,
        })
    }

    /// True once some `F_t/t` meets the floor.
    pub fn closed(&self) -> bool {
        self.terms.iter().any(|t| t.ratio == self.floor)
    }
}

pub fn fstar_estimate(a: &NonnegativeMatrix, t_max: u32, opts: CoverOptions) -> Result<FStarEstimate> {
    if t_max == 0 {
        return Err(Error::Precondition("t_max must be at least 1".into()));
    }
    let s = a.support();
    let floor = fractional_cover(a, opts)?.value;
    let rects = if s.is_empty() {
        Vec::new()
    } else {
        enumerate_maximal_rectangles(&s, opts.rectangle_cap)?
    };
    let mut terms = Vec::new();
    for t in 1..=t_max {
        let f = if s.is_empty() {
            0
        } else {
            let sol = tfold_cover_over(&s, &rects, t, opts.ilp_node_budget)?;
            sol.value.to_integer().to_u64().expect("cover size fits in u64")
        };
        terms.push(FoldTerm {
            t,
            cover_number: f,
            ratio: Rational::new(BigInt::from(f), BigInt::from(t)),
        });
    }
    Ok(FStarEstimate { floor, terms })
}

/// Least common multiple of the denominators of the primal weights: the
/// fold count at which scaling the LP optimum gives an integer cover.
pub fn primal_denominator(sol: &CoverSolution) -> BigInt {
    sol.primal
        .iter()
        .fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rational};

    fn m(rows: &[&[i64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_ints(rows).unwrap()
    }

    fn a_rm() -> NonnegativeMatrix {
        m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]])
    }

    fn b_rm() -> NonnegativeMatrix {
        m(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[0, 1, 1, 1], &[1, 1, 0, 1]])
    }

    #[test]
    fn maximal_rectangles_examples() {
        let r = enumerate_maximal_rectangles(&NonnegativeMatrix::identity(3).support(), 100).unwrap();
        assert_eq!(r, (0..3).map(|i| Rectangle::new(vec![i], vec![i])).collect::<Vec<_>>());
        let ones = m(&[&[1, 1], &[1, 1]]);
        let r = enumerate_maximal_rectangles(&ones.support(), 100).unwrap();
        assert_eq!(r, vec![Rectangle::new(vec![0, 1], vec![0, 1])]);
        let r = enumerate_maximal_rectangles(&a_rm().support(), 100).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(|x| x.area() == 2));
        assert!(enumerate_maximal_rectangles(&a_rm().support(), 7).unwrap_err().is_budget());
    }

    #[test]
    fn maximal_rectangles_are_maximal_and_distinct() {
        let s = b_rm().support();
        let all = enumerate_all_rectangles(&s, 10_000).unwrap();
        let maximal = enumerate_maximal_rectangles(&s, 100).unwrap();
        let expected: Vec<Rectangle> = all
            .iter()
            .filter(|r| {
                !all.iter().any(|q| {
                    q != *r
                        && r.rows.iter().all(|i| q.rows.contains(i))
                        && r.cols.iter().all(|j| q.cols.contains(j))
                })
            })
            .cloned()
            .collect();
        assert_eq!(maximal, expected);
    }

    #[test]
    fn fractional_cover_examples() {
        let sol = fractional_cover(&a_rm(), CoverOptions::default()).unwrap();
        assert_eq!(sol.value, int(4));
        let s = b_rm().support();
        let sol = fractional_cover(&b_rm(), CoverOptions::default()).unwrap();
        assert_eq!(sol.value, rational(7, 2));
        assert!(sol.verify(&s, &enumerate_maximal_rectangles(&s, 100).unwrap()));
        for n in 1..=5 {
            let sol = fractional_cover(&NonnegativeMatrix::identity(n), CoverOptions::default()).unwrap();
            assert_eq!(sol.value, int(n as i64));
        }
        let sol = fractional_cover(&NonnegativeMatrix::zeros(2, 2), CoverOptions::default()).unwrap();
        assert_eq!(sol.value, int(0));
        assert!(sol.primal.is_empty());
    }

    #[test]
    fn tfold_examples() {
        let opts = CoverOptions::default();
        assert_eq!(tfold_cover(&NonnegativeMatrix::identity(2), 1, opts).unwrap().value, int(2));
        let one = tfold_cover(&a_rm(), 1, opts).unwrap();
        assert_eq!(one.value, int(4));
        let s = a_rm().support();
        assert!(one.verify(&s, &[]));
        let two = tfold_cover(&a_rm(), 2, opts).unwrap();
        assert!(two.value <= int(8));
        assert!(two.verify(&s, &[]));
        assert_eq!(tfold_cover(&NonnegativeMatrix::zeros(1, 2), 3, opts).unwrap().value, int(0));
        assert!(tfold_cover(&a_rm(), 0, opts).is_err());
    }

    #[test]
    fn fstar_examples() {
        let opts = CoverOptions::default();
        let est = fstar_estimate(&NonnegativeMatrix::identity(3), 3, opts).unwrap();
        assert!(est.terms.iter().all(|t| t.ratio == int(3)));
        let est = fstar_estimate(&a_rm(), 1, opts).unwrap();
        assert_eq!(est.floor, int(4));
        assert!(est.closed());
        let est = fstar_estimate(&b_rm(), 2, opts).unwrap();
        assert_eq!(est.terms[0].cover_number, 4);
        assert_eq!(est.terms[1].ratio, rational(7, 2));
        assert!(est.closed());
        assert_eq!(est.best().unwrap().t, 2);
    }

    #[test]
    fn certificates_serialize_as_strings() {
        let sol = fractional_cover(&b_rm(), CoverOptions::default()).unwrap();
        let v = serde_json::to_value(&sol).unwrap();
        assert_eq!(v["value"], "7/2");
        assert_eq!(v["mode"], "fractional");
        assert!(v["primal"][0]["weight"].is_string());
        assert!(v["primal"][0]["rows"].is_array());
        assert_eq!(primal_denominator(&sol), BigInt::from(2));
    }
}
