//! Bounds on the nonnegative rank.
//!
//! The lower end is `max(rank, F_1)` per connected block of the support; the
//! upper end starts from the trivial factorization `A = I·A` (or `A·I`) and
//! is improved by seeded multiplicative-update factorizations whose float
//! factors are rounded back to rationals and checked exactly. Everything is
//! computed block by block and summed, since the nonnegative rank of a
//! direct sum is the sum of the ranks of its summands.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cover::{tfold_cover, CoverOptions};
use crate::error::Error;
use crate::linalg::rank;
use crate::matrix::{NonnegativeMatrix, Rational};
use crate::random;

#[derive(Debug, Clone, PartialEq)]
pub struct NnrankOptions {
    /// Accept a float factorization when its max relative entry error is at most this.
    pub tol: f64,
    pub seeds: Vec<u64>,
    pub iterations: usize,
    /// Largest denominator used when rounding float factors.
    pub max_denominator: u64,
    pub cover: CoverOptions,
}

impl Default for NnrankOptions {
    fn default() -> Self {
        NnrankOptions {
            tol: 1e-9,
            seeds: vec![0, 1, 2],
            iterations: 200,
            max_denominator: 1_000_000,
            cover: CoverOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerSource {
    Rank,
    IntegerCover,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatFactorization {
    pub w: Vec<Vec<f64>>,
    pub h: Vec<Vec<f64>>,
    /// Max entry error of `W·H` relative to the largest entry of `A`.
    pub residual: f64,
}

/// `A = W·H` with nonnegative rational factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactFactorization {
    pub w: NonnegativeMatrix,
    pub h: NonnegativeMatrix,
}

impl ExactFactorization {
    pub fn inner_dim(&self) -> usize {
        self.w.cols()
    }

    pub fn verify(&self, a: &NonnegativeMatrix) -> bool {
        self.w.cols() == self.h.rows() && self.w.mul(&self.h).map(|p| p == *a).unwrap_or(false)
    }

    /// Trivial factorization through the shorter side.
    pub fn trivial(a: &NonnegativeMatrix) -> Self {
        if a.rows() <= a.cols() {
            ExactFactorization {
                w: NonnegativeMatrix::identity(a.rows()),
                h: a.clone(),
            }
        } else {
            ExactFactorization {
                w: a.clone(),
                h: NonnegativeMatrix::identity(a.cols()),
            }
        }
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        ExactFactorization {
            w: self.w.kronecker(&other.w),
            h: self.h.kronecker(&other.h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NnrankBounds {
    pub lower: usize,
    pub upper: usize,
    pub upper_certified: bool,
    /// Upper end backed by `certificate`; equals `upper` when certified.
    pub certified_upper: usize,
    pub lower_sources: Vec<LowerSource>,
    /// False when `F_1` could not be computed within budget on some block.
    pub integer_cover_complete: bool,
    pub factorization: Option<FloatFactorization>,
    pub certificate: Option<ExactFactorization>,
}

/// One connected block of the support with its position in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub matrix: NonnegativeMatrix,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub fn blocks(a: &NonnegativeMatrix) -> Vec<Block> {
    a.support()
        .components()
        .into_iter()
        .map(|(rows, cols)| Block {
            matrix: a.submatrix(&rows, &cols),
            rows,
            cols,
        })
        .collect()
}

/// Submatrices on the connected components of the support graph.
pub fn nnrank_block_decompose(a: &NonnegativeMatrix) -> Vec<NonnegativeMatrix> {
    blocks(a).into_iter().map(|b| b.matrix).collect()
}

struct BlockBounds {
    lower: usize,
    sources: Vec<LowerSource>,
    cover_complete: bool,
    upper: usize,
    float: Option<FloatFactorization>,
    certificate: ExactFactorization,
}

pub fn nnrank_bounds(a: &NonnegativeMatrix, opts: &NnrankOptions) -> NnrankBounds {
    let parts = blocks(a);
    let mut per_block = Vec::with_capacity(parts.len());
    for b in &parts {
        let r = rank(&b.matrix).rank;
        let f1 = match tfold_cover(&b.matrix, 1, opts.cover) {
            Ok(sol) => Some(sol.value.to_integer().to_usize().expect("cover size fits in usize")),
            Err(Error::Budget(_)) => None,
            Err(e) => panic!("covering program on a valid block failed: {e}"),
        };
        let mut sources = Vec::new();
        let lower = match f1 {
            Some(f) if f > r => {
                sources.push(LowerSource::IntegerCover);
                f
            }
            Some(f) if f == r => {
                sources.extend([LowerSource::Rank, LowerSource::IntegerCover]);
                r
            }
            _ => {
                sources.push(LowerSource::Rank);
                r
            }
        };
        per_block.push(block_upper(&b.matrix, lower, sources, f1.is_some(), opts));
    }
    assemble(a, &parts, per_block)
}

/// Bounds with the rank as the only lower-bound source. Skips the integer
/// cover, so it stays cheap on Kronecker powers.
pub fn nnrank_upper(a: &NonnegativeMatrix, opts: &NnrankOptions) -> NnrankBounds {
    let parts = blocks(a);
    let per_block = parts
        .iter()
        .map(|b| {
            let r = rank(&b.matrix).rank;
            block_upper(&b.matrix, r, vec![LowerSource::Rank], false, opts)
        })
        .collect();
    assemble(a, &parts, per_block)
}

fn block_upper(
    b: &NonnegativeMatrix,
    lower: usize,
    sources: Vec<LowerSource>,
    cover_complete: bool,
    opts: &NnrankOptions,
) -> BlockBounds {
    let certificate = ExactFactorization::trivial(b);
    let mut out = BlockBounds {
        lower,
        sources,
        cover_complete,
        upper: certificate.inner_dim(),
        float: None,
        certificate,
    };
    for r in lower..out.upper {
        if let Some((float, exact)) = attempt_rank(b, r, opts) {
            out.upper = r;
            out.float = Some(float);
            if let Some(exact) = exact {
                out.certificate = exact;
            }
            break;
        }
    }
    out
}

fn assemble(a: &NonnegativeMatrix, parts: &[Block], per_block: Vec<BlockBounds>) -> NnrankBounds {
    let lower = per_block.iter().map(|b| b.lower).sum();
    let upper = per_block.iter().map(|b| b.upper).sum();
    let certified_upper: usize = per_block.iter().map(|b| b.certificate.inner_dim()).sum();
    let mut lower_sources: Vec<LowerSource> = per_block.iter().flat_map(|b| b.sources.clone()).collect();
    lower_sources.sort();
    lower_sources.dedup();
    if parts.is_empty() {
        lower_sources.push(LowerSource::Rank);
    }

    // Block-diagonal assembly of the exact factors in the parent's coordinates.
    let mut w = vec![Rational::zero(); a.rows() * certified_upper];
    let mut h = vec![Rational::zero(); certified_upper * a.cols()];
    let mut offset = 0;
    for (part, bb) in parts.iter().zip(&per_block) {
        let k = bb.certificate.inner_dim();
        for (bi, &i) in part.rows.iter().enumerate() {
            for t in 0..k {
                w[i * certified_upper + offset + t] = bb.certificate.w.get(bi, t).clone();
            }
        }
        for t in 0..k {
            for (bj, &j) in part.cols.iter().enumerate() {
                h[(offset + t) * a.cols() + j] = bb.certificate.h.get(t, bj).clone();
            }
        }
        offset += k;
    }
    let certificate = ExactFactorization {
        w: NonnegativeMatrix::new(a.rows(), certified_upper, w).expect("block factors are nonnegative"),
        h: NonnegativeMatrix::new(certified_upper, a.cols(), h).expect("block factors are nonnegative"),
    };
    debug_assert!(certificate.verify(a));

    let factorization = float_assembly(a, parts, &per_block, upper);
    NnrankBounds {
        lower,
        upper,
        upper_certified: upper == certified_upper,
        certified_upper,
        lower_sources,
        integer_cover_complete: per_block.iter().all(|b| b.cover_complete),
        factorization,
        certificate: Some(certificate),
    }
}

/// Float factors realizing `upper`, present only when some block used the heuristic.
fn float_assembly(a: &NonnegativeMatrix, parts: &[Block], per_block: &[BlockBounds], upper: usize) -> Option<FloatFactorization> {
    if per_block.iter().all(|b| b.float.is_none()) {
        return None;
    }
    let mut w = vec![vec![0.0; upper]; a.rows()];
    let mut h = vec![vec![0.0; a.cols()]; upper];
    let mut offset = 0;
    for (part, bb) in parts.iter().zip(per_block) {
        let (bw, bh) = match &bb.float {
            Some(f) => (f.w.clone(), f.h.clone()),
            None => (to_float(&bb.certificate.w), to_float(&bb.certificate.h)),
        };
        let k = bb.upper;
        for (bi, &i) in part.rows.iter().enumerate() {
            w[i][offset..offset + k].copy_from_slice(&bw[bi][..k]);
        }
        for t in 0..k {
            for (bj, &j) in part.cols.iter().enumerate() {
                h[offset + t][j] = bh[t][bj];
            }
        }
        offset += k;
    }
    let target = to_float(a);
    let residual = relative_residual(&target, &w, &h);
    Some(FloatFactorization { w, h, residual })
}

fn to_float(m: &NonnegativeMatrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect())
        .collect()
}

fn product(w: &[Vec<f64>], h: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = h.first().map_or(0, Vec::len);
    w.iter()
        .map(|wr| {
            let mut out = vec![0.0; n];
            for (t, &wv) in wr.iter().enumerate() {
                if wv != 0.0 {
                    for (o, &hv) in out.iter_mut().zip(&h[t]) {
                        *o += wv * hv;
                    }
                }
            }
            out
        })
        .collect()
}

fn relative_residual(a: &[Vec<f64>], w: &[Vec<f64>], h: &[Vec<f64>]) -> f64 {
    let scale = a.iter().flatten().fold(0.0f64, |m, &x| m.max(x));
    if scale == 0.0 {
        return 0.0;
    }
    let p = product(w, h);
    a.iter()
        .flatten()
        .zip(p.iter().flatten())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / scale
}

/// Lee–Seung multiplicative updates for `‖A − WH‖_F`.
pub fn multiplicative_updates(a: &[Vec<f64>], r: usize, iterations: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    const EPS: f64 = 1e-300;
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rng = random::rng(seed);
    let mean = a.iter().flatten().sum::<f64>() / (m * n).max(1) as f64;
    let init = (mean / r.max(1) as f64).sqrt().max(1e-3);
    let mut w: Vec<Vec<f64>> = (0..m).map(|_| (0..r).map(|_| init * rng.gen_range(0.1..1.0)).collect()).collect();
    let mut h: Vec<Vec<f64>> = (0..r).map(|_| (0..n).map(|_| init * rng.gen_range(0.1..1.0)).collect()).collect();
    for _ in 0..iterations {
        // H ← H ∘ (WᵀA) / (WᵀW H)
        let wt_a: Vec<Vec<f64>> = (0..r)
            .map(|t| (0..n).map(|j| (0..m).map(|i| w[i][t] * a[i][j]).sum()).collect())
            .collect();
        let wt_w: Vec<Vec<f64>> = (0..r)
            .map(|s| (0..r).map(|t| (0..m).map(|i| w[i][s] * w[i][t]).sum()).collect())
            .collect();
        let denom = product(&wt_w, &h);
        for t in 0..r {
            for j in 0..n {
                h[t][j] *= wt_a[t][j] / (denom[t][j] + EPS);
            }
        }
        // W ← W ∘ (A Hᵀ) / (W H Hᵀ)
        let a_ht: Vec<Vec<f64>> = (0..m)
            .map(|i| (0..r).map(|t| (0..n).map(|j| a[i][j] * h[t][j]).sum()).collect())
            .collect();
        let h_ht: Vec<Vec<f64>> = (0..r)
            .map(|s| (0..r).map(|t| (0..n).map(|j| h[s][j] * h[t][j]).sum()).collect())
            .collect();
        let denom = product(&w, &h_ht);
        for i in 0..m {
            for t in 0..r {
                w[i][t] *= a_ht[i][t] / (denom[i][t] + EPS);
            }
        }
    }
    (w, h)
}

/// Tries to factor `b` through inner dimension `r`. Returns the float
/// factors when they meet the tolerance, and an exact factorization when
/// rounding reproduces `b` exactly.
fn attempt_rank(b: &NonnegativeMatrix, r: usize, opts: &NnrankOptions) -> Option<(FloatFactorization, Option<ExactFactorization>)> {
    if r == 0 {
        return None;
    }
    let target = to_float(b);
    let mut accepted: Option<FloatFactorization> = None;
    for &seed in &opts.seeds {
        let (w, h) = multiplicative_updates(&target, r, opts.iterations, seed);
        let residual = relative_residual(&target, &w, &h);
        if residual <= opts.tol {
            let float = FloatFactorization { w, h, residual };
            if let Some(exact) = certify(b, &float, opts.max_denominator) {
                return Some((float, Some(exact)));
            }
            if accepted.as_ref().is_none_or(|f| residual < f.residual) {
                accepted = Some(float);
            }
        }
    }
    accepted.map(|f| (f, None))
}

/// Rounds float factors to rationals (after normalizing the gauge freedom
/// `W D, D⁻¹ H` two ways) and keeps the first rounding that is exact.
pub fn certify(b: &NonnegativeMatrix, f: &FloatFactorization, max_den: u64) -> Option<ExactFactorization> {
    let r = f.h.len();
    for normalize_w in [true, false] {
        let (mut w, mut h) = (f.w.clone(), f.h.clone());
        for t in 0..r {
            let scale = if normalize_w {
                w.iter().fold(0.0f64, |m, row| m.max(row[t]))
            } else {
                h[t].iter().fold(0.0f64, |m, &x| m.max(x))
            };
            if scale <= 0.0 || !scale.is_finite() {
                continue;
            }
            for row in w.iter_mut() {
                row[t] /= scale;
            }
            for x in h[t].iter_mut() {
                *x *= scale;
            }
        }
        let round = |grid: &[Vec<f64>]| -> Option<NonnegativeMatrix> {
            let rows = grid.len();
            let cols = grid.first().map_or(0, Vec::len);
            let mut data = Vec::with_capacity(rows * cols);
            for row in grid {
                for &x in row {
                    data.push(limit_denominator(&Ratio::from_float(x.max(0.0))?, max_den));
                }
            }
            NonnegativeMatrix::new(rows, cols, data).ok()
        };
        let (Some(w), Some(h)) = (round(&w), round(&h)) else {
            continue;
        };
        let exact = ExactFactorization { w, h };
        if exact.verify(b) {
            return Some(exact);
        }
    }
    None
}

/// Closest rational to `x` with denominator at most `max_den`.
pub fn limit_denominator(x: &Rational, max_den: u64) -> Rational {
    let max_den = BigInt::from(max_den.max(1));
    if x.denom() <= &max_den {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let rem = &n - &a * &d;
        n = std::mem::replace(&mut d, rem);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max_den - &q0).div_floor(&q1);
    let bound1 = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let bound2 = Rational::new(p1, q1);
    if (&bound2 - x).abs() <= (&bound1 - x).abs() {
        bound2
    } else {
        bound1
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
    fn identity_bounds_are_tight_and_certified() {
        for n in 1..=5 {
            let b = nnrank_bounds(&NonnegativeMatrix::identity(n), &NnrankOptions::default());
            assert_eq!((b.lower, b.upper), (n, n));
            assert!(b.upper_certified);
            assert!(b.certificate.unwrap().verify(&NonnegativeMatrix::identity(n)));
        }
    }

    #[test]
    fn incomparability_matrix_bounds() {
        let a = m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let b = nnrank_bounds(&a, &NnrankOptions::default());
        assert_eq!((b.lower, b.upper), (4, 4));
        assert!(b.upper_certified);
        assert_eq!(b.lower_sources, vec![LowerSource::IntegerCover]);
    }

    #[test]
    fn triangular_bounds() {
        let a = NonnegativeMatrix::from_rows(vec![
            vec![int(2), rational(1, 3), int(5)],
            vec![int(0), int(1), int(4)],
            vec![int(0), int(0), rational(7, 2)],
        ])
        .unwrap();
        let b = nnrank_bounds(&a, &NnrankOptions::default());
        assert_eq!((b.lower, b.upper), (3, 3));
        assert!(b.upper_certified);
    }

    #[test]
    fn rank_one_block_is_certified_by_rounding() {
        // 3x3 rank one: trivial bound 3, heuristic must find and certify 1.
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]]);
        let opts = NnrankOptions {
            iterations: 2000,
            ..NnrankOptions::default()
        };
        let b = nnrank_bounds(&a, &opts);
        assert_eq!(b.lower, 1);
        assert_eq!(b.upper, 1);
        assert!(b.upper_certified);
        let cert = b.certificate.unwrap();
        assert_eq!(cert.inner_dim(), 1);
        assert!(cert.verify(&a));
        assert!(b.factorization.unwrap().residual <= 1e-9);
    }

    #[test]
    fn block_decomposition() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let c = m(&[&[2, 0, 1], &[1, 1, 0]]);
        assert_eq!(nnrank_block_decompose(&a.direct_sum(&c)), vec![a.clone(), c.clone()]);
        let i3 = nnrank_block_decompose(&NonnegativeMatrix::identity(3));
        assert_eq!(i3, vec![m(&[&[1]]); 3]);
        let ex = m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 1]]);
        assert_eq!(nnrank_block_decompose(&ex), vec![ex.clone()]);
        let sum = nnrank_bounds(&a.direct_sum(&c), &NnrankOptions::default());
        let (ba, bc) = (nnrank_bounds(&a, &NnrankOptions::default()), nnrank_bounds(&c, &NnrankOptions::default()));
        assert_eq!(sum.lower, ba.lower + bc.lower);
        assert_eq!(sum.certified_upper, ba.certified_upper + bc.certified_upper);
    }

    #[test]
    fn zero_matrix_bounds() {
        let b = nnrank_bounds(&NonnegativeMatrix::zeros(2, 3), &NnrankOptions::default());
        assert_eq!((b.lower, b.upper), (0, 0));
        assert!(b.upper_certified);
    }

    #[test]
    fn limit_denominator_matches_best_approximation() {
        let pi = Ratio::from_float(std::f64::consts::PI).unwrap();
        assert_eq!(limit_denominator(&pi, 10), rational(22, 7));
        assert_eq!(limit_denominator(&pi, 1000), rational(355, 113));
        let tiny = Ratio::from_float(1e-12).unwrap();
        assert_eq!(limit_denominator(&tiny, 1_000_000), int(0));
        assert_eq!(limit_denominator(&rational(1, 3), 5), rational(1, 3));
    }
}
