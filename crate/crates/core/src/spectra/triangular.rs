//! Diagonal certificates inside Kronecker powers of triangular matrices.
//!
//! For `A` with `A[i][j] = 0` whenever `i > j` and `V = {i : A[i][i] > 0}`,
//! the digit strings over `V` in which every digit occurs `N/d` times index a
//! principal submatrix of `A^{⊗N}` that is diagonal with positive diagonal:
//! a nonzero product `Π A[s_k][t_k]` forces `s_k ≤ t_k` for every `k`, and
//! equal digit sums then force `s = t`. The transposed orientation works by
//! the same argument with the inequalities reversed.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::NonnegativeMatrix;

pub const DEFAULT_CERTIFICATE_CAP: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `A[i][j] = 0` for `i > j`.
    ZeroBelowDiagonal,
    /// `A[i][j] = 0` for `i < j`.
    ZeroAboveDiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularCertificate {
    /// Diagonal positions with a positive entry.
    pub support_diagonal: Vec<usize>,
    pub d: usize,
    pub power: usize,
    pub orientation: Orientation,
    /// Digit strings, most significant digit first.
    pub strings: Vec<Vec<usize>>,
    #[serde(serialize_with = "as_decimal")]
    pub count: BigUint,
    /// `count ≥ d^N / (N+1)^d`, checked exactly.
    pub bound_holds: bool,
    /// Row and column indices of the certified submatrix in `A^{⊗N}`, when
    /// they fit in 64 bits.
    pub row_indices: Option<Vec<u64>>,
    pub col_indices: Option<Vec<u64>>,
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn orientation(a: &NonnegativeMatrix) -> Option<Orientation> {
    let below = (0..a.rows()).all(|i| (0..a.cols().min(i)).all(|j| !a.is_positive(i, j)));
    if below {
        return Some(Orientation::ZeroBelowDiagonal);
    }
    let above = (0..a.rows()).all(|i| (i + 1..a.cols()).all(|j| !a.is_positive(i, j)));
    above.then_some(Orientation::ZeroAboveDiagonal)
}

/// `V = {i < min(m, n) : A[i][i] > 0}`.
pub fn support_diagonal(a: &NonnegativeMatrix) -> Vec<usize> {
    (0..a.rows().min(a.cols())).filter(|&i| a.is_positive(i, i)).collect()
}

pub fn multinomial(n: usize, parts: &[usize]) -> BigUint {
    let factorial = |k: usize| (1..=k).fold(BigUint::one(), |acc, x| acc * BigUint::from(x));
    parts.iter().fold(factorial(n), |acc, &p| acc / factorial(p))
}

pub fn triangular_certificate(a: &NonnegativeMatrix, power: usize) -> Result<TriangularCertificate> {
    triangular_certificate_capped(a, power, DEFAULT_CERTIFICATE_CAP)
}

pub fn triangular_certificate_capped(a: &NonnegativeMatrix, power: usize, cap: usize) -> Result<TriangularCertificate> {
    let orientation = orientation(a).ok_or_else(|| Error::Precondition("matrix is not triangular".into()))?;
    let v = support_diagonal(a);
    let d = v.len();
    if d == 0 {
        return Err(Error::Precondition("no positive diagonal entry".into()));
    }
    if power == 0 || !power.is_multiple_of(d) {
        return Err(Error::Precondition(format!("power {power} is not a positive multiple of {d}")));
    }
    let per_digit = power / d;
    let count = multinomial(power, &vec![per_digit; d]);
    if count > BigUint::from(cap) {
        return Err(Error::Budget(format!("{count} digit strings exceed the cap of {cap}")));
    }

    let mut strings = Vec::new();
    let mut remaining = vec![per_digit; d];
    let mut current = Vec::with_capacity(power);
    enumerate(&v, &mut remaining, &mut current, power, &mut strings);
    debug_assert_eq!(BigUint::from(strings.len()), count);

    for (x, s) in strings.iter().enumerate() {
        if !s.iter().all(|&k| a.is_positive(k, k)) {
            return Err(Error::Witness("diagonal entry of the certified block vanishes".into()));
        }
        for t in &strings[x + 1..] {
            if nonzero_product(a, s, t) || nonzero_product(a, t, s) {
                return Err(Error::Witness("off-diagonal entry of the certified block is nonzero".into()));
            }
        }
    }

    let lhs = &count * BigUint::from(power + 1).pow(d as u32);
    let bound_holds = lhs >= BigUint::from(d).pow(power as u32);
    Ok(TriangularCertificate {
        support_diagonal: v,
        d,
        power,
        orientation,
        row_indices: flat_indices(&strings, a.rows()),
        col_indices: flat_indices(&strings, a.cols()),
        strings,
        count,
        bound_holds,
    })
}

fn enumerate(v: &[usize], remaining: &mut [usize], current: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
    if current.len() == len {
        out.push(current.clone());
        return;
    }
    for p in 0..v.len() {
        if remaining[p] > 0 {
            remaining[p] -= 1;
            current.push(v[p]);
            enumerate(v, remaining, current, len, out);
            current.pop();
            remaining[p] += 1;
        }
    }
}

/// Entry of `A^{⊗N}` at row string `s`, column string `t`, up to a positive factor.
fn nonzero_product(a: &NonnegativeMatrix, s: &[usize], t: &[usize]) -> bool {
    s.iter().zip(t).all(|(&i, &j)| a.is_positive(i, j))
}

fn flat_indices(strings: &[Vec<usize>], base: usize) -> Option<Vec<u64>> {
    strings
        .iter()
        .map(|s| {
            s.iter()
                .try_fold(0u64, |acc, &digit| acc.checked_mul(base as u64)?.checked_add(digit as u64))
        })
        .collect()
}

impl TriangularCertificate {
    /// Re-checks the certificate against an explicitly formed power. Only
    /// usable for small powers.
    pub fn verify_materialized(&self, power_matrix: &NonnegativeMatrix) -> bool {
        let (Some(rows), Some(cols)) = (&self.row_indices, &self.col_indices) else {
            return false;
        };
        rows.iter().enumerate().all(|(x, &r)| {
            cols.iter().enumerate().all(|(y, &c)| {
                let (r, c) = (r as usize, c as usize);
                r < power_matrix.rows()
                    && c < power_matrix.cols()
                    && (power_matrix.is_positive(r, c) == (x == y))
            })
        })
    }
}
