//! Restriction witnesses: `A ≤ B` holds when `A = X B Yᵀ` for nonnegative
//! `X`, `Y`. Deciding the relation is a bilinear feasibility problem, so only
//! verification, composition and sampling are offered.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{NonnegativeMatrix, Rational};
use crate::nnrank::ExactFactorization;
use crate::random;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionWitness {
    /// `X`, of shape `rows(A) × rows(B)`.
    pub left: NonnegativeMatrix,
    /// `Y`, of shape `cols(A) × cols(B)`.
    pub right: NonnegativeMatrix,
}

impl RestrictionWitness {
    pub fn verify(&self, a: &NonnegativeMatrix, b: &NonnegativeMatrix) -> bool {
        self.left.shape() == (a.rows(), b.rows())
            && self.right.shape() == (a.cols(), b.cols())
            && b.sandwich(&self.left, &self.right).is_ok_and(|p| &p == a)
    }

    pub fn identity(a: &NonnegativeMatrix) -> Self {
        RestrictionWitness {
            left: NonnegativeMatrix::identity(a.rows()),
            right: NonnegativeMatrix::identity(a.cols()),
        }
    }

    /// `I_n ≤ I_m` for `n ≤ m` via `X = Y = [I_n 0]`.
    pub fn identity_embedding(n: usize, m: usize) -> Result<Self> {
        if n > m {
            return Err(Error::Precondition(format!("cannot embed I_{n} into I_{m}")));
        }
        let e = NonnegativeMatrix::from_fn(n, m, |i, j| if i == j { Rational::one() } else { Rational::zero() })
            .expect("0/1 entries");
        Ok(RestrictionWitness { left: e.clone(), right: e })
    }

    /// `A ≤ I_r ⊗ B` from `A = W H` and any positive entry `B[p][q]`:
    /// `X = W ⊗ e_pᵀ / B[p][q]`, `Y = Hᵀ ⊗ e_qᵀ`.
    pub fn from_factorization(f: &ExactFactorization, b: &NonnegativeMatrix) -> Result<Self> {
        let (p, q) = (0..b.rows())
            .flat_map(|i| (0..b.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| b.is_positive(i, j))
            .ok_or_else(|| Error::Precondition("target matrix must be nonzero".into()))?;
        let unit = |len: usize, at: usize, value: Rational| {
            NonnegativeMatrix::from_fn(1, len, |_, j| if j == at { value.clone() } else { Rational::zero() })
                .expect("nonnegative unit vector")
        };
        let left = f.w.kronecker(&unit(b.rows(), p, b.get(p, q).recip()));
        let right = f.h.transpose().kronecker(&unit(b.cols(), q, Rational::one()));
        Ok(RestrictionWitness { left, right })
    }
}

/// A witness together with the pair it binds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Restriction {
    pub smaller: NonnegativeMatrix,
    pub larger: NonnegativeMatrix,
    pub witness: RestrictionWitness,
}

impl Restriction {
    pub fn new(smaller: NonnegativeMatrix, larger: NonnegativeMatrix, witness: RestrictionWitness) -> Result<Self> {
        if !witness.verify(&smaller, &larger) {
            return Err(Error::Witness("X·B·Yᵀ does not reproduce A".into()));
        }
        Ok(Restriction { smaller, larger, witness })
    }

    /// Samples `X`, `Y` and sets `A = X B Yᵀ`.
    pub fn sample<R: Rng>(rng: &mut R, larger: NonnegativeMatrix, max_dim: usize) -> Self {
        let k = rng.gen_range(1..=max_dim);
        let l = rng.gen_range(1..=max_dim);
        let density = rng.gen_range(0.3..0.9);
        let left = random::matrix(rng, k, larger.rows(), density);
        let right = random::matrix(rng, l, larger.cols(), density);
        let smaller = larger.sandwich(&left, &right).expect("shapes agree by construction");
        Restriction {
            smaller,
            larger,
            witness: RestrictionWitness { left, right },
        }
    }
}

/// `A ⊕ C ≤ B ⊕ D` from `A ≤ B` and `C ≤ D`.
pub fn compose_witness_sum(w1: &Restriction, w2: &Restriction) -> Result<Restriction> {
    check_input(w1)?;
    check_input(w2)?;
    let witness = RestrictionWitness {
        left: w1.witness.left.direct_sum(&w2.witness.left),
        right: w1.witness.right.direct_sum(&w2.witness.right),
    };
    Restriction::new(
        w1.smaller.direct_sum(&w2.smaller),
        w1.larger.direct_sum(&w2.larger),
        witness,
    )
}

/// `A ⊗ C ≤ B ⊗ D` from `A ≤ B` and `C ≤ D`.
pub fn compose_witness_product(w1: &Restriction, w2: &Restriction) -> Result<Restriction> {
    check_input(w1)?;
    check_input(w2)?;
    let witness = RestrictionWitness {
        left: w1.witness.left.kronecker(&w2.witness.left),
        right: w1.witness.right.kronecker(&w2.witness.right),
    };
    Restriction::new(
        w1.smaller.kronecker(&w2.smaller),
        w1.larger.kronecker(&w2.larger),
        witness,
    )
}

fn check_input(w: &Restriction) -> Result<()> {
    if w.witness.verify(&w.smaller, &w.larger) {
        Ok(())
    } else {
        Err(Error::Witness("input witness does not verify".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;
    use crate::nnrank::{nnrank_bounds, NnrankOptions};

    fn m(rows: &[&[i64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn identity_witnesses_compose_to_identity_witnesses() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let c = m(&[&[4, 0, 1]]);
        let wa = Restriction::new(a.clone(), a.clone(), RestrictionWitness::identity(&a)).unwrap();
        let wc = Restriction::new(c.clone(), c.clone(), RestrictionWitness::identity(&c)).unwrap();
        let s = compose_witness_sum(&wa, &wc).unwrap();
        assert_eq!(s.witness, RestrictionWitness::identity(&a.direct_sum(&c)));
        let p = compose_witness_product(&wa, &wc).unwrap();
        assert_eq!(p.witness, RestrictionWitness::identity(&a.kronecker(&c)));
    }

    #[test]
    fn identity_embedding() {
        let w = RestrictionWitness::identity_embedding(2, 3).unwrap();
        assert_eq!(w.left, m(&[&[1, 0, 0], &[0, 1, 0]]));
        assert!(w.verify(&NonnegativeMatrix::identity(2), &NonnegativeMatrix::identity(3)));
        assert!(RestrictionWitness::identity_embedding(3, 2).is_err());
    }

    #[test]
    fn factorization_witnesses_compose_into_larger_identity() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let c = m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0]]);
        let opts = NnrankOptions::default();
        let fa = nnrank_bounds(&a, &opts).certificate.unwrap();
        let fc = nnrank_bounds(&c, &opts).certificate.unwrap();
        assert_eq!((fa.inner_dim(), fc.inner_dim()), (2, 3));
        let one = NonnegativeMatrix::identity(1);
        let wa = Restriction::new(a.clone(), NonnegativeMatrix::identity(2), RestrictionWitness::from_factorization(&fa, &one).unwrap()).unwrap();
        let wc = Restriction::new(c.clone(), NonnegativeMatrix::identity(3), RestrictionWitness::from_factorization(&fc, &one).unwrap()).unwrap();
        let p = compose_witness_product(&wa, &wc).unwrap();
        assert_eq!(p.larger, NonnegativeMatrix::identity(6));
        assert_eq!(p.smaller, a.kronecker(&c));
    }

    #[test]
    fn factorization_witness_through_nontrivial_target() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let f = ExactFactorization::trivial(&a);
        let b = m(&[&[0, 0], &[0, 5]]);
        let w = RestrictionWitness::from_factorization(&f, &b).unwrap();
        assert!(w.verify(&a, &NonnegativeMatrix::identity(f.inner_dim()).kronecker(&b)));
        assert!(RestrictionWitness::from_factorization(&f, &NonnegativeMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn sampled_witnesses_compose() {
        let mut rng = random::rng(3);
        for _ in 0..10 {
            let b = random::small_nonzero_matrix(&mut rng, 3);
            let d = random::small_nonzero_matrix(&mut rng, 3);
            let w1 = Restriction::sample(&mut rng, b, 3);
            let w2 = Restriction::sample(&mut rng, d, 3);
            compose_witness_sum(&w1, &w2).unwrap();
            compose_witness_product(&w1, &w2).unwrap();
        }
    }

    #[test]
    fn broken_witness_is_rejected() {
        let a = m(&[&[1]]);
        let mut w = Restriction::new(a.clone(), a.clone(), RestrictionWitness::identity(&a)).unwrap();
        w.witness.left = NonnegativeMatrix::from_rows(vec![vec![int(2)]]).unwrap();
        assert!(matches!(compose_witness_sum(&w, &w), Err(Error::Witness(_))));
    }
}
