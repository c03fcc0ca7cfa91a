//! Exact two-phase simplex over the rationals.
//!
//! Dense tableau, Bland's rule for both the entering and the leaving
//! variable, so the method terminates without cycling. Every pivot costs
//! one budget step.

use num_traits::{One, Signed, Zero};
use pairstab_algebra::{Budget, BudgetExceeded, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Minimize `objective · x` subject to the constraints. Variables are
/// nonnegative unless marked free.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    /// `x` is feasible and `x + s * ray` stays feasible for all `s >= 0`
    /// while the objective decreases without bound.
    Unbounded { x: Vec<Rational>, ray: Vec<Rational> },
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Adds `lo <= x[var] <= hi`.
    pub fn add_bounds(&mut self, var: usize, lo: Rational, hi: Rational) {
        let mut row = vec![Rational::zero(); self.num_vars];
        row[var] = Rational::one();
        self.add_constraint(row.clone(), Relation::Ge, lo);
        self.add_constraint(row, Relation::Le, hi);
    }

    pub fn solve(&self, budget: &mut Budget) -> Result<LpOutcome, BudgetExceeded> {
        // Structural columns: one per nonnegative variable, two per free one.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &f in &self.free {
            if f {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;

        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); structural];
            for (v, a) in c.coeffs.iter().enumerate() {
                let (p, n) = col_of[v];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a;
                }
            }
            let (row, rel, rhs) = if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (row.into_iter().map(|a| -a).collect(), flipped, -&c.rhs)
            } else {
                (row, c.relation, c.rhs.clone())
            };
            rows.push((row, rel, rhs));
        }

        let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let n = structural + slack_count + art_count;
        let first_art = structural + slack_count;

        let mut t = Tableau {
            rows: Vec::with_capacity(rows.len()),
            basis: Vec::with_capacity(rows.len()),
            n,
        };
        let (mut next_slack, mut next_art) = (structural, first_art);
        for (coeffs, rel, rhs) in rows {
            let mut row = coeffs;
            row.resize(n + 1, Rational::zero());
            row[n] = rhs;
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    t.basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    t.basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    t.basis.push(next_art);
                    next_art += 1;
                }
            }
            t.rows.push(row);
        }

        if art_count > 0 {
            let mut cost = vec![Rational::zero(); n];
            for c in cost.iter_mut().skip(first_art) {
                *c = Rational::one();
            }
            let allowed = vec![true; n];
            t.run(&cost, &allowed, budget)?;
            if t.objective_value(&cost).is_positive() {
                return Ok(LpOutcome::Infeasible);
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut i = 0;
            while i < t.rows.len() {
                if t.basis[i] >= first_art {
                    match (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                        Some(j) => {
                            budget.step()?;
                            t.pivot(i, j);
                            i += 1;
                        }
                        None => {
                            t.rows.remove(i);
                            t.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }

        let mut cost = vec![Rational::zero(); n];
        for (v, a) in self.objective.iter().enumerate() {
            let (p, neg) = col_of[v];
            cost[p] = a.clone();
            if let Some(neg) = neg {
                cost[neg] = -a;
            }
        }
        let allowed: Vec<bool> = (0..n).map(|j| j < first_art).collect();
        let unbounded_col = t.run(&cost, &allowed, budget)?;

        let full = t.solution();
        let project = |full: &[Rational]| -> Vec<Rational> {
            col_of
                .iter()
                .map(|&(p, neg)| match neg {
                    Some(neg) => &full[p] - &full[neg],
                    None => full[p].clone(),
                })
                .collect()
        };
        let x = project(&full);
        match unbounded_col {
            None => {
                let value = self
                    .objective
                    .iter()
                    .zip(&x)
                    .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
                Ok(LpOutcome::Optimal { x, value })
            }
            Some(j) => {
                let mut dir = vec![Rational::zero(); n];
                dir[j] = Rational::one();
                for (i, &b) in t.basis.iter().enumerate() {
                    dir[b] = -&t.rows[i][j];
                }
                Ok(LpOutcome::Unbounded {
                    x,
                    ray: project(&dir),
                })
            }
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for a in self.rows[r].iter_mut() {
            *a *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (a, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *a -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut rc = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                rc -= &cost[b] * &self.rows[i][j];
            }
        }
        rc
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * &self.rows[i][self.n])
    }

    /// Runs the simplex method; returns the entering column that proved
    /// unboundedness, if any.
    fn run(
        &mut self,
        cost: &[Rational],
        allowed: &[bool],
        budget: &mut Budget,
    ) -> Result<Option<usize>, BudgetExceeded> {
        loop {
            let entering = (0..self.n).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_negative()
            });
            let Some(j) = entering else {
                return Ok(None);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.n] / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Ok(Some(j));
            };
            budget.step()?;
            self.pivot(r, j);
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[i][self.n].clone();
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pairstab_algebra::rational;

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![q(-1), q(-1)]);
        lp.add_constraint(vec![q(1), q(2)], Relation::Le, q(4));
        lp.add_constraint(vec![q(3), q(1)], Relation::Le, q(6));
        match lp.solve(&mut Budget::unlimited()).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![rational(8, 5), rational(6, 5)]);
                assert_eq!(value, rational(-14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x s.t. x + y = 1, y <= 3, x free
        let mut lp = LinearProgram::new(2);
        lp.set_free(0);
        lp.set_objective(vec![q(1), q(0)]);
        lp.add_constraint(vec![q(1), q(1)], Relation::Eq, q(1));
        lp.add_constraint(vec![q(0), q(1)], Relation::Le, q(3));
        match lp.solve(&mut Budget::unlimited()).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(-2));
                assert_eq!(x, vec![q(-2), q(3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(vec![q(1)], Relation::Ge, q(2));
        lp.add_constraint(vec![q(1)], Relation::Le, q(1));
        assert_eq!(lp.solve(&mut Budget::unlimited()).unwrap(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![q(-1), q(0)]);
        lp.add_constraint(vec![q(1), q(-1)], Relation::Le, q(1));
        match lp.solve(&mut Budget::unlimited()).unwrap() {
            LpOutcome::Unbounded { x, ray } => {
                assert!(&x[0] - &x[1] <= q(1));
                assert!(ray[0].is_positive());
                assert!(&ray[0] - &ray[1] <= q(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![q(1), q(1)]);
        lp.add_constraint(vec![q(1), q(1)], Relation::Eq, q(2));
        lp.add_constraint(vec![q(2), q(2)], Relation::Eq, q(4));
        match lp.solve(&mut Budget::unlimited()).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_counts_pivots() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![q(-1), q(-1)]);
        lp.add_constraint(vec![q(1), q(2)], Relation::Le, q(4));
        lp.add_constraint(vec![q(3), q(1)], Relation::Le, q(6));
        assert!(lp.solve(&mut Budget::new(0)).is_err());
    }
}
