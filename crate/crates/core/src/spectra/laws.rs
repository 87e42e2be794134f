//! Seeded property harnesses for spectral points and for the restriction
//! preorder axioms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::cover::{fractional_cover, CoverOptions};
use crate::error::Result;
use crate::linalg::rank;
use crate::matrix::{format_rational, NonnegativeMatrix, Rational};
use crate::nnrank::{nnrank_upper, NnrankOptions};
use crate::random::{self, SeededRng};
use crate::spectra::monomial::{is_congruent, Congruence, MonomialTransform, DEFAULT_SEARCH_BUDGET};
use crate::spectra::witness::{compose_witness_product, compose_witness_sum, Restriction, RestrictionWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralPoint {
    Rank,
    FractionalCover,
}

impl SpectralPoint {
    pub fn name(&self) -> &'static str {
        match self {
            SpectralPoint::Rank => "rank",
            SpectralPoint::FractionalCover => "fractional_cover",
        }
    }

    pub fn evaluate(&self, a: &NonnegativeMatrix, cover: CoverOptions) -> Result<Rational> {
        match self {
            SpectralPoint::Rank => Ok(Rational::from_integer(BigInt::from(rank(a).rank))),
            SpectralPoint::FractionalCover => Ok(fractional_cover(a, cover)?.value),
        }
    }
}

impl std::str::FromStr for SpectralPoint {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(SpectralPoint::Rank),
            "fractional_cover" | "fractional-cover" | "F" | "f" => Ok(SpectralPoint::FractionalCover),
            other => Err(crate::Error::Parse(format!("unknown spectral point {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LawCheckOptions {
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub cover: CoverOptions,
    pub search_budget: u64,
}

impl Default for LawCheckOptions {
    fn default() -> Self {
        LawCheckOptions {
            trials: 100,
            seed: 0,
            max_dim: 4,
            cover: CoverOptions::default(),
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub law: String,
    pub trial: usize,
    pub matrices: Vec<NonnegativeMatrix>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LawReport {
    pub harness: String,
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    /// Passed checks per law.
    pub passed: BTreeMap<String, u64>,
    /// Checks not run per law, e.g. after a budget error.
    pub skipped: BTreeMap<String, u64>,
    pub violations: Vec<Counterexample>,
}

impl LawReport {
    fn new(harness: &str, opts: &LawCheckOptions) -> Self {
        LawReport {
            harness: harness.to_string(),
            trials: opts.trials,
            seed: opts.seed,
            max_dim: opts.max_dim,
            ..LawReport::default()
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, law: &str, trial: usize, outcome: Result<Option<(Vec<NonnegativeMatrix>, String)>>) {
        match outcome {
            Ok(None) => *self.passed.entry(law.to_string()).or_default() += 1,
            Ok(Some((matrices, detail))) => self.violations.push(Counterexample {
                law: law.to_string(),
                trial,
                matrices,
                detail,
            }),
            Err(_) => *self.skipped.entry(law.to_string()).or_default() += 1,
        }
    }

    fn merge(&mut self, other: LawReport) {
        for (k, v) in other.passed {
            *self.passed.entry(k).or_default() += v;
        }
        for (k, v) in other.skipped {
            *self.skipped.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
    }
}

type Check = Result<Option<(Vec<NonnegativeMatrix>, String)>>;

fn expect_eq(matrices: Vec<NonnegativeMatrix>, lhs: &Rational, rhs: &Rational) -> Check {
    Ok((lhs != rhs).then(|| (matrices, format!("{} != {}", format_rational(lhs), format_rational(rhs)))))
}

/// `φ(I_n) = n` for `n = 1..=max_n`.
pub fn normalization_check(point: SpectralPoint, max_n: usize, opts: &LawCheckOptions) -> LawReport {
    let mut report = LawReport::new(&format!("{}_normalization", point.name()), opts);
    for n in 1..=max_n {
        let id = NonnegativeMatrix::identity(n);
        let outcome = point
            .evaluate(&id, opts.cover)
            .and_then(|v| expect_eq(vec![id.clone()], &v, &Rational::from_integer(BigInt::from(n))));
        report.record("normalization", n, outcome);
    }
    report
}

/// Multiplicativity, additivity and monotonicity on random samples, plus
/// normalization for `n ≤ 6`.
pub fn spectral_point_check(point: SpectralPoint, opts: &LawCheckOptions) -> LawReport {
    let mut report = LawReport::new(point.name(), opts);
    let mut rng = random::rng(opts.seed);
    let eval = |a: &NonnegativeMatrix| point.evaluate(a, opts.cover);
    for trial in 0..opts.trials {
        let a = random::small_matrix(&mut rng, opts.max_dim);
        let b = random::small_matrix(&mut rng, opts.max_dim);
        let restriction = Restriction::sample(&mut rng, b.clone(), opts.max_dim);

        let (fa, fb) = (eval(&a), eval(&b));
        let (fa, fb) = match (fa, fb) {
            (Ok(x), Ok(y)) => (x, y),
            _ => {
                for law in ["multiplicativity", "additivity", "monotonicity"] {
                    report.record(law, trial, Err(crate::Error::Budget("operand".into())));
                }
                continue;
            }
        };
        let prod = eval(&a.kronecker(&b)).and_then(|v| expect_eq(vec![a.clone(), b.clone()], &v, &(&fa * &fb)));
        report.record("multiplicativity", trial, prod);
        let sum = eval(&a.direct_sum(&b)).and_then(|v| expect_eq(vec![a.clone(), b.clone()], &v, &(&fa + &fb)));
        report.record("additivity", trial, sum);
        let mono = eval(&restriction.smaller).map(|v| {
            (v > fb).then(|| {
                (
                    vec![b.clone(), restriction.witness.left.clone(), restriction.witness.right.clone()],
                    format!("φ(XBYᵀ) = {} > φ(B) = {}", format_rational(&v), format_rational(&fb)),
                )
            })
        });
        report.record("monotonicity", trial, mono);
    }
    report.merge(normalization_check(point, 6, opts));
    report
}

/// Row (and column) permutation taking `(A ⊕ A)^{⊗k}` to the direct sum of
/// `2^k` copies of `A^{⊗k}`: the block bits of each Kronecker digit are
/// collected into the copy index.
pub fn doubled_power_permutation(dim: usize, k: usize) -> Vec<usize> {
    let size = (2 * dim).pow(k as u32);
    let block = dim.pow(k as u32);
    (0..size)
        .map(|mut idx| {
            let mut digits = Vec::with_capacity(k);
            for _ in 0..k {
                digits.push(idx % (2 * dim));
                idx /= 2 * dim;
            }
            digits.reverse();
            let (mut copy, mut inner) = (0, 0);
            for d in digits {
                copy = copy * 2 + d / dim;
                inner = inner * dim + d % dim;
            }
            copy * block + inner
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoubledPowerCheck {
    pub explicit: bool,
    pub search: Congruence,
}

/// `(A ⊕ A)^{⊗k} ≅ ⊕_{2^k} A^{⊗k}`, checked with the explicit permutation
/// and independently by congruence search.
pub fn doubled_power_identity(a: &NonnegativeMatrix, k: usize, budget: u64) -> DoubledPowerCheck {
    let doubled = a.direct_sum(a);
    let lhs = (1..k).fold(doubled.clone(), |acc, _| acc.kronecker(&doubled));
    let power = (1..k).fold(a.clone(), |acc, _| acc.kronecker(a));
    let rhs = (1..1usize << k).fold(power.clone(), |acc, _| acc.direct_sum(&power));
    let rp = doubled_power_permutation(a.rows(), k);
    let cp = doubled_power_permutation(a.cols(), k);
    let unit = |p: Vec<usize>| {
        let n = p.len();
        MonomialTransform::new(p, vec![Rational::one(); n]).expect("bijection")
    };
    let explicit = crate::spectra::monomial::apply_congruence(&lhs, &unit(rp), &unit(cp)) == rhs;
    DoubledPowerCheck {
        explicit,
        search: is_congruent(&lhs, &rhs, budget),
    }
}

/// Checks the preorder axioms with explicit witnesses: identity ordering,
/// closure of witnesses under ⊕ and ⊗, `A ≤ I_r ⊗ B` from certified
/// factorizations, and the doubled-power identity at `k = 2`.
pub fn strassen_axiom_check(opts: &LawCheckOptions) -> LawReport {
    let mut report = LawReport::new("strassen_axioms", opts);
    let mut rng = random::rng(opts.seed);
    let nnrank_opts = NnrankOptions {
        cover: opts.cover,
        ..NnrankOptions::default()
    };
    for trial in 0..opts.trials {
        report.record("identity_order", trial, identity_order(&mut rng));

        let w1 = sample_restriction(&mut rng, opts.max_dim);
        let w2 = sample_restriction(&mut rng, opts.max_dim);
        let composed = |r: Result<Restriction>| -> Check {
            Ok(r.err().map(|e| (vec![w1.larger.clone(), w2.larger.clone()], e.to_string())))
        };
        report.record("witness_sum", trial, composed(compose_witness_sum(&w1, &w2)));
        report.record("witness_product", trial, composed(compose_witness_product(&w1, &w2)));

        let a = random::small_matrix(&mut rng, opts.max_dim);
        let b = random::small_nonzero_matrix(&mut rng, opts.max_dim);
        let bounds = nnrank_upper(&a, &nnrank_opts);
        let outcome = match bounds.certificate {
            Some(f) => {
                let target = NonnegativeMatrix::identity(f.inner_dim()).kronecker(&b);
                RestrictionWitness::from_factorization(&f, &b).map(|w| {
                    (!w.verify(&a, &target)).then(|| (vec![a.clone(), b.clone()], "factorization witness fails".to_string()))
                })
            }
            None => Err(crate::Error::Budget("no certified factorization".into())),
        };
        report.record("nnrank_restriction", trial, outcome);

        let density = rng.gen_range(0.3..1.0);
        let small = random::matrix(&mut rng, 2, 2, density);
        let check = doubled_power_identity(&small, 2, opts.search_budget);
        let outcome = match check.search {
            Congruence::Unknown => Err(crate::Error::Budget("congruence search".into())),
            Congruence::Congruent { .. } if check.explicit => Ok(None),
            _ => Ok(Some((vec![small.clone()], format!("explicit={} search={:?}", check.explicit, check.search)))),
        };
        report.record("doubled_power_identity", trial, outcome);
    }
    report
}

fn identity_order(rng: &mut SeededRng) -> Check {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=6);
    let (id_n, id_m) = (NonnegativeMatrix::identity(n), NonnegativeMatrix::identity(m));
    if n <= m {
        let w = RestrictionWitness::identity_embedding(n, m)?;
        Ok((!w.verify(&id_n, &id_m)).then(|| (vec![id_n, id_m], "embedding fails".to_string())))
    } else {
        // Any X I_m Yᵀ has rank at most m, so I_n with n > m is not below I_m.
        let r = rank(&id_n).rank;
        Ok((r <= m).then(|| (vec![id_n, id_m], format!("rank(I_{n}) = {r} does not exceed {m}"))))
    }
}

fn sample_restriction(rng: &mut SeededRng, max_dim: usize) -> Restriction {
    let b = random::small_matrix(rng, max_dim);
    Restriction::sample(rng, b, max_dim)
}
