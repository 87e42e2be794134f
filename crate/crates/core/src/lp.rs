//! Dense two-phase simplex over exact rationals.
//!
//! Variables are implicitly nonnegative. Pivoting follows Bland's rule
//! (lowest-index entering column, lowest-index leaving basic variable on
//! ratio ties), so the method terminates on degenerate programs and the
//! returned basis is deterministic.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    /// Objective value at `x`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }
}

/// Optimal basic solution with the matching dual vector.
///
/// Duals follow the sign convention of the stated sense: for a minimization,
/// `Ge` rows have `y ≥ 0` and `Le` rows `y ≤ 0`; for a maximization the signs
/// flip. In both cases `Σ rhs·y` equals `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(p, q)| !p.is_zero() && !q.is_zero())
        .fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

struct Tableau {
    /// Row-major, `width + 1` columns; the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize, objective: &mut [Rational]) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] -= d;
            }
        }
        if !objective[c].is_zero() {
            let f = objective[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                objective[j] -= d;
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Reduced-cost row `c - c_B B⁻¹ A`, with `-(c_B B⁻¹ b)` in the last slot.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = cost.to_vec();
        d.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[r].iter().enumerate() {
                if !v.is_zero() {
                    d[j] -= cb * v;
                }
            }
        }
        d
    }

    /// Minimizes `cost` over the current basis; columns with `allowed[j] == false` never enter.
    fn minimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Result<()> {
        let mut d = self.reduced_costs(cost);
        loop {
            let Some(enter) = (0..self.width).find(|&j| allowed[j] && d[j].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(r, enter, &mut d);
        }
    }
}

/// Solves `lp` exactly. Errors with [`Error::Infeasible`] or [`Error::Unbounded`].
pub fn solve_lp_exact(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars();
    let m = lp.constraints.len();
    if let Some(bad) = lp.constraints.iter().position(|c| c.coeffs.len() != n) {
        return Err(Error::Dimension(format!(
            "constraint {bad} has {} coefficients for {n} variables",
            lp.constraints[bad].coeffs.len()
        )));
    }

    // Normalize to nonnegative right-hand sides.
    let mut signs = Vec::with_capacity(m);
    let mut rels = Vec::with_capacity(m);
    for c in &lp.constraints {
        if c.rhs.is_negative() {
            signs.push(-Rational::one());
            rels.push(match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            });
        } else {
            signs.push(Rational::one());
            rels.push(c.relation);
        }
    }
    let slack_count = rels.iter().filter(|r| **r != Relation::Eq).count();
    let art_count = rels.iter().filter(|r| **r != Relation::Le).count();
    let width = n + slack_count + art_count;
    let mut artificial = vec![false; width];
    let mut initial = vec![0usize; m];
    let mut rows = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, n + slack_count);
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (j, v) in c.coeffs.iter().enumerate() {
            if !v.is_zero() {
                row[j] = v * &signs[i];
            }
        }
        row[width] = &c.rhs * &signs[i];
        match rels[i] {
            Relation::Le => {
                row[next_slack] = Rational::one();
                initial[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                artificial[next_art] = true;
                initial[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                artificial[next_art] = true;
                initial[i] = next_art;
                next_art += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis: initial.clone(),
        width,
        pivots: 0,
    };
    let mut live = vec![true; m];

    if art_count > 0 {
        let phase1: Vec<Rational> = artificial
            .iter()
            .map(|&a| if a { Rational::one() } else { Rational::zero() })
            .collect();
        t.minimize(&phase1, &vec![true; width])?;
        let infeasibility = t
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| artificial[b])
            .fold(Rational::zero(), |acc, (r, _)| acc + t.rhs(r));
        if infeasibility.is_positive() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out of the basis; rows without a usable pivot are redundant.
        for r in 0..m {
            if !artificial[t.basis[r]] {
                continue;
            }
            match (0..width).find(|&j| !artificial[j] && !t.rows[r][j].is_zero()) {
                Some(j) => {
                    let mut scratch = vec![Rational::zero(); width + 1];
                    t.pivot(r, j, &mut scratch);
                }
                None => live[r] = false,
            }
        }
        if live.iter().any(|l| !l) {
            let mut k = 0;
            t.rows.retain(|_| {
                k += 1;
                live[k - 1]
            });
            let mut k = 0;
            t.basis.retain(|_| {
                k += 1;
                live[k - 1]
            });
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = match lp.sense {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c,
        };
    }
    let allowed: Vec<bool> = artificial.iter().map(|a| !a).collect();
    t.minimize(&cost, &allowed)?;

    let mut x = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(r).clone();
        }
    }
    // y_i = Σ_r c_{B_r} (B⁻¹)_{r,i}; column `initial[i]` of the tableau holds B⁻¹ e_i.
    let mut duals = vec![Rational::zero(); m];
    for i in 0..m {
        let col = initial[i];
        let mut y = Rational::zero();
        for (r, &b) in t.basis.iter().enumerate() {
            let v = &t.rows[r][col];
            if !v.is_zero() && !cost[b].is_zero() {
                y += &cost[b] * v;
            }
        }
        y *= &signs[i];
        duals[i] = match lp.sense {
            Sense::Minimize => y,
            Sense::Maximize => -y,
        };
    }
    let value = lp.evaluate(&x);
    Ok(LpSolution {
        value,
        x,
        duals,
        pivots: t.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rational};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn dual_value(lp: &LinearProgram, s: &LpSolution) -> Rational {
        lp.constraints
            .iter()
            .zip(&s.duals)
            .fold(Rational::zero(), |acc, (c, y)| acc + &c.rhs * y)
    }

    #[test]
    fn single_lower_bound() {
        let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1]));
        lp.push(ints(&[1]), Relation::Ge, int(1));
        let s = solve_lp_exact(&lp).unwrap();
        assert_eq!(s.value, int(1));
        assert_eq!(s.duals, ints(&[1]));
    }

    #[test]
    fn identity_cover_primal() {
        // two diagonal cells, one singleton rectangle each
        let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1, 1]));
        lp.push(ints(&[1, 0]), Relation::Ge, int(1));
        lp.push(ints(&[0, 1]), Relation::Ge, int(1));
        let s = solve_lp_exact(&lp).unwrap();
        assert_eq!(s.value, int(2));
        assert_eq!(s.x, ints(&[1, 1]));
        assert_eq!(dual_value(&lp, &s), int(2));
    }

    #[test]
    fn classic_maximization_with_duals() {
        // max 3x + 5y; x <= 4; 2y <= 12; 3x + 2y <= 18  → 36 at (2, 6)
        let mut lp = LinearProgram::new(Sense::Maximize, ints(&[3, 5]));
        lp.push(ints(&[1, 0]), Relation::Le, int(4));
        lp.push(ints(&[0, 2]), Relation::Le, int(12));
        lp.push(ints(&[3, 2]), Relation::Le, int(18));
        let s = solve_lp_exact(&lp).unwrap();
        assert_eq!(s.value, int(36));
        assert_eq!(s.x, ints(&[2, 6]));
        assert_eq!(s.duals, vec![int(0), rational(3, 2), int(1)]);
        assert_eq!(dual_value(&lp, &s), int(36));
    }

    #[test]
    fn equality_negative_rhs_and_redundancy() {
        // min x + y; x + y = 2; -x - y = -2 (redundant); x - y >= -1
        let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1, 2]));
        lp.push(ints(&[1, 1]), Relation::Eq, int(2));
        lp.push(ints(&[-1, -1]), Relation::Eq, int(-2));
        lp.push(ints(&[1, -1]), Relation::Ge, int(-1));
        let s = solve_lp_exact(&lp).unwrap();
        assert!(lp.is_feasible(&s.x));
        assert_eq!(s.value, int(2));
        assert_eq!(dual_value(&lp, &s), s.value);
    }

    #[test]
    fn degenerate_program_terminates() {
        // Beale's cycling example; Bland's rule must terminate at value -1/20.
        let mut lp = LinearProgram::new(
            Sense::Minimize,
            vec![rational(-3, 4), int(150), rational(-1, 50), int(6)],
        );
        lp.push(vec![rational(1, 4), int(-60), rational(-1, 25), int(9)], Relation::Le, int(0));
        lp.push(vec![rational(1, 2), int(-90), rational(-1, 50), int(3)], Relation::Le, int(0));
        lp.push(ints(&[0, 0, 1, 0]), Relation::Le, int(1));
        let s = solve_lp_exact(&lp).unwrap();
        assert_eq!(s.value, rational(-1, 20));
        assert_eq!(dual_value(&lp, &s), s.value);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1]));
        lp.push(ints(&[1]), Relation::Le, int(1));
        lp.push(ints(&[1]), Relation::Ge, int(2));
        assert_eq!(solve_lp_exact(&lp), Err(Error::Infeasible));

        let mut lp = LinearProgram::new(Sense::Maximize, ints(&[1, 1]));
        lp.push(ints(&[1, -1]), Relation::Le, int(1));
        assert_eq!(solve_lp_exact(&lp), Err(Error::Unbounded));
    }
}
