//! Sandwich estimates for the asymptotic nonnegative rank and the asymptotic
//! subrank.
//!
//! Both rank and the fractional cover number are spectral points, so their
//! minimum bounds the asymptotic subrank from above and their maximum bounds
//! the asymptotic nonnegative rank from below. The other two ends come from
//! finite Kronecker powers: `γ(A^{⊗n})^{1/n}` from below and certified
//! factorizations of `A^{⊗n}` from above. Roots are taken as rational
//! approximations rounded in the safe direction and checked exactly.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cover::{fractional_cover, CoverOptions, CoverSolution};
use crate::error::{Error, Result};
use crate::linalg::{rank, RankResult};
use crate::matching::{subrank, MatchingOptions, MatchingResult};
use crate::matrix::{format_rational, NonnegativeMatrix, Rational, DEFAULT_CELL_BUDGET};
use crate::nnrank::{nnrank_bounds, nnrank_upper, ExactFactorization, NnrankOptions};
use crate::spectra::triangular::{orientation, support_diagonal, Orientation};

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub matching: MatchingOptions,
    pub nnrank: NnrankOptions,
    pub cover: CoverOptions,
    pub cell_budget: usize,
    /// Roots are approximated on the grid `2^-root_bits`.
    pub root_bits: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            matching: MatchingOptions::default(),
            nnrank: NnrankOptions::default(),
            cover: CoverOptions::default(),
            cell_budget: DEFAULT_CELL_BUDGET,
            root_bits: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerEvidence {
    pub n: usize,
    /// Size of a verified induced matching in `A^{⊗n}`.
    pub subrank: usize,
    pub subrank_exact: bool,
    /// Certified upper bound on the nonnegative rank of `A^{⊗n}`.
    pub nnrank_upper: usize,
    pub subrank_root: f64,
    pub nnrank_root: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangularEvidence {
    pub orientation: Orientation,
    pub support_diagonal: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AsymptoticSandwich {
    pub asynrank_lower: Rational,
    pub asynrank_upper: Rational,
    pub asympsubrank_lower: Rational,
    pub asympsubrank_upper: Rational,
    pub per_power: Vec<PowerEvidence>,
    pub rank: Option<RankResult>,
    pub fractional_cover: Option<CoverSolution>,
    pub factorization: Option<ExactFactorization>,
    /// Matching behind the best subrank lower bound, with its power.
    pub matching: Option<(usize, MatchingResult)>,
    pub triangular: Option<TriangularEvidence>,
    pub warnings: Vec<String>,
}

impl AsymptoticSandwich {
    fn zero() -> Self {
        AsymptoticSandwich {
            asynrank_lower: Rational::zero(),
            asynrank_upper: Rational::zero(),
            asympsubrank_lower: Rational::zero(),
            asympsubrank_upper: Rational::zero(),
            per_power: Vec::new(),
            rank: None,
            fractional_cover: None,
            factorization: None,
            matching: None,
            triangular: None,
            warnings: Vec::new(),
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.asympsubrank_lower <= self.asympsubrank_upper
            && self.asympsubrank_upper <= self.asynrank_lower
            && self.asynrank_lower <= self.asynrank_upper
    }

    pub fn to_json(&self) -> Value {
        let interval = |lo: &Rational, hi: &Rational| json!({"lower": format_rational(lo), "upper": format_rational(hi)});
        let per_power: Vec<Value> = self
            .per_power
            .iter()
            .map(|p| {
                json!({
                    "n": p.n,
                    "subrank_root": p.subrank_root,
                    "nnrank_root": p.nnrank_root,
                    "subrank": p.subrank,
                    "subrank_exact": p.subrank_exact,
                    "nnrank_upper": p.nnrank_upper,
                })
            })
            .collect();
        let certificates = json!({
            "rank": self.rank,
            "fractional_cover": self.fractional_cover,
            "factorization": self.factorization.as_ref().map(|f| json!({"w": f.w, "h": f.h})),
            "matching": self.matching.as_ref().map(|(n, m)| json!({"power": n, "cells": m.matching, "exact": m.exact})),
            "triangular": self.triangular,
        });
        json!({
            "asynrank": interval(&self.asynrank_lower, &self.asynrank_upper),
            "asympsubrank": interval(&self.asympsubrank_lower, &self.asympsubrank_upper),
            "per_power": per_power,
            "certificates": certificates,
        })
    }
}

/// Smallest multiple of `2^-bits` that is at least `u^{1/n}`; exact when `u`
/// is a perfect `n`-th power.
pub fn root_upper(u: &BigUint, n: u32, bits: u32) -> Rational {
    let r = u.nth_root(n);
    if Pow::pow(&r, n) == *u {
        return Rational::from_integer(BigInt::from(r));
    }
    let scaled = u << (bits as usize * n as usize);
    let mut s = scaled.nth_root(n);
    if Pow::pow(&s, n) < scaled {
        s += 1u32;
    }
    Rational::new(BigInt::from(s), BigInt::one() << bits as usize)
}

/// Largest multiple of `2^-bits` that is at most `u^{1/n}`; exact when `u`
/// is a perfect `n`-th power.
pub fn root_lower(u: &BigUint, n: u32, bits: u32) -> Rational {
    let r = u.nth_root(n);
    if Pow::pow(&r, n) == *u {
        return Rational::from_integer(BigInt::from(r));
    }
    let s = (u << (bits as usize * n as usize)).nth_root(n);
    Rational::new(BigInt::from(s), BigInt::one() << bits as usize)
}

pub fn asymptotic_report(a: &NonnegativeMatrix, max_power: usize, opts: &ReportOptions) -> Result<AsymptoticSandwich> {
    if max_power == 0 {
        return Err(Error::Precondition("max_power must be at least 1".into()));
    }
    if a.is_zero() {
        return Ok(AsymptoticSandwich::zero());
    }
    let mut warnings = Vec::new();
    let rank_result = rank(a);
    let r = Rational::from_integer(BigInt::from(rank_result.rank));
    let cover = fractional_cover(a, opts.cover)?;
    let f = cover.value.clone();
    let asynrank_lower = r.clone().max(f.clone());
    let asympsubrank_upper = r.min(f);

    let base = nnrank_bounds(a, &opts.nnrank);
    let base_factorization = base.certificate.clone();
    let base_upper = BigUint::from(base.certified_upper);

    let mut per_power = Vec::with_capacity(max_power);
    let mut asynrank_upper: Option<Rational> = None;
    let mut asympsubrank_lower: Option<Rational> = None;
    let mut best_matching: Option<(usize, MatchingResult)> = None;
    for n in 1..=max_power {
        let power = a.kron_power(n, opts.cell_budget)?;
        let matched = subrank(&power, opts.matching);
        if !matched.exact {
            warnings.push(format!("subrank search budget exhausted at power {n}; using the best matching found"));
        }
        let mut upper = Pow::pow(&base_upper, n as u32);
        if n > 1 {
            let direct = BigUint::from(nnrank_upper(&power, &opts.nnrank).certified_upper);
            upper = upper.min(direct);
        }
        let gamma = BigUint::from(matched.size);
        let lo = root_lower(&gamma, n as u32, opts.root_bits);
        let hi = root_upper(&upper, n as u32, opts.root_bits);
        per_power.push(PowerEvidence {
            n,
            subrank: matched.size,
            subrank_exact: matched.exact,
            nnrank_upper: upper.to_usize().unwrap_or(usize::MAX),
            subrank_root: (matched.size as f64).powf(1.0 / n as f64),
            nnrank_root: upper.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / n as f64),
        });
        if asympsubrank_lower.as_ref().is_none_or(|b| lo > *b) {
            asympsubrank_lower = Some(lo);
            best_matching = Some((n, matched));
        }
        if asynrank_upper.as_ref().is_none_or(|b| hi < *b) {
            asynrank_upper = Some(hi);
        }
    }
    let mut asympsubrank_lower = asympsubrank_lower.expect("max_power ≥ 1");
    let asynrank_upper = asynrank_upper.expect("max_power ≥ 1");

    let triangular = orientation(a).map(|o| TriangularEvidence {
        orientation: o,
        support_diagonal: support_diagonal(a),
    });
    if let Some(t) = &triangular {
        let d = Rational::from_integer(BigInt::from(t.support_diagonal.len()));
        if d > asympsubrank_lower {
            asympsubrank_lower = d;
        }
    }

    let sandwich = AsymptoticSandwich {
        asynrank_lower,
        asynrank_upper,
        asympsubrank_lower,
        asympsubrank_upper,
        per_power,
        rank: Some(rank_result),
        fractional_cover: Some(cover),
        factorization: base_factorization,
        matching: best_matching,
        triangular,
        warnings,
    };
    debug_assert!(sandwich.is_ordered(), "sandwich out of order: {sandwich:?}");
    Ok(sandwich)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;
    use crate::random;

    fn m(rows: &[&[i64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn roots_round_in_the_safe_direction() {
        let u = BigUint::from(10u32);
        let hi = root_upper(&u, 2, 20);
        let lo = root_lower(&u, 2, 20);
        assert!(&lo * &lo < int(10) && &hi * &hi > int(10));
        assert!(&hi - &lo <= Rational::new(BigInt::one(), BigInt::from(1 << 20)));
        assert_eq!(root_upper(&BigUint::from(81u32), 4, 20), int(3));
        assert_eq!(root_lower(&BigUint::from(81u32), 4, 20), int(3));
        assert_eq!(root_lower(&BigUint::zero(), 3, 20), int(0));
    }

    #[test]
    fn identity_sandwich_is_tight() {
        let s = asymptotic_report(&NonnegativeMatrix::identity(2), 3, &ReportOptions::default()).unwrap();
        for v in [&s.asynrank_lower, &s.asynrank_upper, &s.asympsubrank_lower, &s.asympsubrank_upper] {
            assert_eq!(*v, int(2));
        }
        assert_eq!(s.per_power.len(), 3);
        assert_eq!(s.per_power[2].subrank, 8);
    }

    #[test]
    fn example_matrix_asynrank_is_four() {
        let a = m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let s = asymptotic_report(&a, 2, &ReportOptions::default()).unwrap();
        assert_eq!(s.asynrank_lower, int(4));
        assert_eq!(s.asynrank_upper, int(4));
        assert_eq!(s.asympsubrank_upper, int(3));
        assert!(s.is_ordered());
        let json = s.to_json();
        assert_eq!(json["asynrank"]["lower"], "4");
        assert_eq!(json["per_power"][0]["n"], 1);
    }

    #[test]
    fn triangular_sandwiches_collapse() {
        let mut rng = random::rng(21);
        for (r, c) in [(2, 3), (3, 3), (4, 2)] {
            let a = random::triangular(&mut rng, r, c, 0.6);
            let s = asymptotic_report(&a, 1, &ReportOptions::default()).unwrap();
            let k = int(r.min(c) as i64);
            assert_eq!((&s.asympsubrank_lower, &s.asympsubrank_upper), (&k, &k));
            assert_eq!((&s.asynrank_lower, &s.asynrank_upper), (&k, &k));
        }
    }

    #[test]
    fn zero_matrix_gives_zero_sandwich() {
        let s = asymptotic_report(&NonnegativeMatrix::zeros(2, 3), 2, &ReportOptions::default()).unwrap();
        assert!(s.asynrank_upper.is_zero() && s.asympsubrank_lower.is_zero());
        assert!(s.per_power.is_empty());
    }

    #[test]
    fn oversized_power_is_a_budget_error() {
        let opts = ReportOptions {
            cell_budget: 100,
            ..ReportOptions::default()
        };
        let err = asymptotic_report(&NonnegativeMatrix::identity(4), 2, &opts).unwrap_err();
        assert!(err.is_budget());
    }
}
