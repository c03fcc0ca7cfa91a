//! Finite sets of integer weights and exact polyhedral tests on their
//! convex hulls.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use pairstab_algebra::{Budget, Rational};

use crate::error::Result;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::util::{int, primitive_integer_vector, to_i64_vector};

/// A finite support of weights together with the vertices of its hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPolytope {
    support: Vec<Vec<i64>>,
    vertices: Vec<Vec<i64>>,
}

impl WeightPolytope {
    pub fn new(support: impl IntoIterator<Item = Vec<i64>>, budget: &mut Budget) -> Result<Self> {
        let support: Vec<Vec<i64>> = support.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut vertices = Vec::new();
        for (k, p) in support.iter().enumerate() {
            let others: Vec<Vec<i64>> = support
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, q)| q.clone())
                .collect();
            if others.is_empty() || convex_combination(&others, p, budget)?.is_none() {
                vertices.push(p.clone());
            }
        }
        Ok(WeightPolytope { support, vertices })
    }

    pub fn support(&self) -> &[Vec<i64>] {
        &self.support
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }
}

/// Coefficients `λ ≥ 0`, `Σλ = 1` with `Σ λ_j points[j] = target`, if any.
pub fn convex_combination(
    points: &[Vec<i64>],
    target: &[i64],
    budget: &mut Budget,
) -> Result<Option<Vec<Rational>>> {
    if points.is_empty() {
        return Ok(None);
    }
    let n = points.len();
    let mut lp = LinearProgram::new(n);
    lp.add_constraint(vec![Rational::one(); n], Relation::Eq, Rational::one());
    for (c, t) in target.iter().enumerate() {
        let row = points.iter().map(|p| int(p[c])).collect();
        lp.add_constraint(row, Relation::Eq, int(*t));
    }
    match lp.solve(budget)? {
        LpOutcome::Optimal { x, .. } => Ok(Some(x)),
        _ => Ok(None),
    }
}

/// An integer direction `a` with `⟨χ − target, a⟩ > 0` for every point
/// `χ`, i.e. `target` lies strictly below the hull in direction `a`.
/// `None` when `target` is in the hull.
pub fn separating_direction(
    points: &[Vec<i64>],
    target: &[i64],
    budget: &mut Budget,
) -> Result<Option<Vec<i64>>> {
    let k = target.len();
    // Variables a_1..a_k, then δ; maximize δ.
    let mut lp = LinearProgram::new(k + 1);
    for v in 0..=k {
        lp.set_free(v);
    }
    let mut obj = vec![Rational::zero(); k + 1];
    obj[k] = -Rational::one();
    lp.set_objective(obj);
    for p in points {
        let mut row: Vec<Rational> = p.iter().zip(target).map(|(a, b)| int(a - b)).collect();
        row.push(-Rational::one());
        lp.add_constraint(row, Relation::Ge, Rational::zero());
    }
    for v in 0..k {
        lp.add_bounds(v, -Rational::one(), Rational::one());
    }
    match lp.solve(budget)? {
        LpOutcome::Optimal { x, value } if value < Rational::zero() => {
            Ok(Some(to_i64_vector(&primitive_integer_vector(&x[..k]))?))
        }
        _ => Ok(None),
    }
}

/// `{a + b : a ∈ A, b ∈ B}`, sorted and deduplicated.
pub fn minkowski_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<i64>>());
        }
    }
    out.into_iter().collect()
}

/// The `k`-fold sumset of `a`; the 0-fold sumset is `{0}`.
pub fn sumset(a: &[Vec<i64>], k: u32, dim: usize) -> Vec<Vec<i64>> {
    let mut acc = vec![vec![0i64; dim]];
    for _ in 0..k {
        acc = minkowski_sum(&acc, a);
    }
    acc
}

/// Smallest value of `⟨χ, a⟩` over the points.
pub fn min_pairing(points: &[Vec<i64>], a: &[i64]) -> Option<i64> {
    points
        .iter()
        .map(|p| p.iter().zip(a).map(|(x, y)| x * y).sum())
        .min()
}
