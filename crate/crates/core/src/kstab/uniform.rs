//! Uniform stability on the toric family spanned by a finite crease set.
//!
//! The family is `f = ⟨α, x⟩ + Σ c_j max(0, ⟨n_j, x⟩ − o_j)` with `α` free
//! and `c ≥ 0`. Both `DF` and `∫f/vol` are linear in `(α, c)`, and `min f`
//! is attained at a vertex of the arrangement cut out on `P` by the creases.
//! For each such vertex `q` one LP minimizes `DF(f)` over the functions whose
//! minimum is at `q` and whose norm `∫f/vol − f(q)` is one; the smallest
//! optimum minus `ε` is the minimum of `DF − ε·norm` on the unit-norm slice.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pairstab_algebra::{Budget, Rational};
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::util::primitive_integer_vector;

use super::plfunction::{AffineFunction, PLFunction};
use super::polytope::{Point, Polytope};
use super::{toric_df, toric_minnorm};

/// The hyperplane `⟨normal, x⟩ = offset`, used through the hinge
/// `max(0, ⟨normal, x⟩ − offset)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crease {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Crease {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Crease { normal, offset }
    }

    fn level(&self) -> AffineFunction {
        AffineFunction::new(self.normal.clone(), -self.offset.clone())
    }

    fn hinge(&self) -> PLFunction {
        let zero = AffineFunction::new(vec![Rational::zero(); self.normal.len()], Rational::zero());
        PLFunction::new(vec![zero, self.level()]).expect("two pieces of equal dimension")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformVerdict {
    /// `DF ≥ ε·norm` on the whole family.
    HoldsOnFamily,
    /// The certificate has `DF < ε·norm`.
    FailsAtEpsilon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformReport {
    pub verdict: UniformVerdict,
    /// The minimizer, rescaled to integer data with minimum zero.
    pub function: PLFunction,
    pub df: Rational,
    pub minnorm: Rational,
    /// `min (DF − ε·norm)` over unit-norm members of the family; `None`
    /// when unbounded below.
    pub min_objective: Option<Rational>,
    /// Candidate minimum points with their LP optimum (`None` when the LP
    /// is infeasible).
    pub cases: Vec<(Point, Option<Rational>)>,
}

fn line_intersection(a: &AffineFunction, b: &AffineFunction) -> Option<Point> {
    // a.g · x = −a.c and b.g · x = −b.c
    let det = &a.grad[0] * &b.grad[1] - &a.grad[1] * &b.grad[0];
    if det.is_zero() {
        return None;
    }
    let (ra, rb) = (-&a.constant, -&b.constant);
    Some(vec![
        (&ra * &b.grad[1] - &rb * &a.grad[1]) / &det,
        (&a.grad[0] * &rb - &b.grad[0] * &ra) / det,
    ])
}

/// Vertices of the arrangement cut out on `P` by the creases, sorted.
fn candidate_points(p: &Polytope, creases: &[Crease]) -> Vec<Point> {
    let mut pts: Vec<Point> = p.vertices().to_vec();
    let levels: Vec<AffineFunction> = creases.iter().map(Crease::level).collect();
    if p.dim() == 1 {
        for l in &levels {
            pts.push(vec![-&l.constant / &l.grad[0]]);
        }
    } else {
        for l in &levels {
            for (a, b) in p.edges() {
                let (va, vb) = (l.eval(&a), l.eval(&b));
                if va.is_zero() || vb.is_zero() || va.is_positive() == vb.is_positive() {
                    continue;
                }
                let s = &va / (&va - &vb);
                pts.push(a.iter().zip(&b).map(|(x, y)| x + &s * (y - x)).collect());
            }
        }
        for i in 0..levels.len() {
            for j in i + 1..levels.len() {
                if let Some(x) = line_intersection(&levels[i], &levels[j]) {
                    pts.push(x);
                }
            }
        }
    }
    pts.retain(|x| p.contains(x));
    pts.sort();
    pts.dedup();
    pts
}

/// The family member with coefficients `(α, c)`, written as a max of
/// affine functions (one per subset of the creases with `c_j > 0`).
fn family_member(dim: usize, creases: &[Crease], coeffs: &[Rational]) -> Result<PLFunction> {
    let alpha = AffineFunction::new(coeffs[..dim].to_vec(), Rational::zero());
    let active: Vec<(usize, &Rational)> = coeffs[dim..]
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_positive())
        .collect();
    if active.len() > 16 {
        return Err(CoreError::InvalidFunction("too many active creases".into()));
    }
    let mut pieces = Vec::with_capacity(1 << active.len());
    for mask in 0u32..(1 << active.len()) {
        let mut piece = alpha.clone();
        for (k, (j, c)) in active.iter().enumerate() {
            if mask & (1 << k) != 0 {
                let l = creases[*j].level();
                for (g, n) in piece.grad.iter_mut().zip(&l.grad) {
                    *g += *c * n;
                }
                piece.constant += *c * &l.constant;
            }
        }
        pieces.push(piece);
    }
    PLFunction::new(pieces)
}

/// Searches the crease family for a member with `DF < ε·minnorm`.
pub fn toric_uniform_search(
    p: &Polytope,
    creases: &[Crease],
    epsilon: &Rational,
    budget: &mut Budget,
) -> Result<UniformReport> {
    let n = p.dim();
    for c in creases {
        if c.normal.len() != n {
            return Err(CoreError::DimensionMismatch {
                expected: n,
                found: c.normal.len(),
            });
        }
        if c.normal.iter().all(Zero::is_zero) {
            return Err(CoreError::InvalidFunction("crease with zero normal".into()));
        }
        let vals: Vec<Rational> = p.vertices().iter().map(|v| c.level().eval(v)).collect();
        if !vals.iter().any(|v| v.is_positive()) || !vals.iter().any(|v| v.is_negative()) {
            return Err(CoreError::InvalidFunction("crease does not cut the polytope".into()));
        }
    }
    if epsilon.is_negative() {
        return Err(CoreError::InvalidProblem("ε must be nonnegative".into()));
    }

    // Basis: coordinates x_1..x_n, then one hinge per crease.
    let mut basis: Vec<PLFunction> = (0..n)
        .map(|i| {
            let mut g = vec![Rational::zero(); n];
            g[i] = Rational::one();
            PLFunction::affine(g, Rational::zero())
        })
        .collect();
    basis.extend(creases.iter().map(Crease::hinge));
    let vol = p.volume();
    let df: Vec<Rational> = basis.iter().map(|f| toric_df(p, f)).collect::<Result<_>>()?;
    let mean: Vec<Rational> = basis
        .iter()
        .map(|f| Ok(f.integral(p)? / &vol))
        .collect::<Result<_>>()?;
    let candidates = candidate_points(p, creases);
    let values: Vec<Vec<Rational>> = candidates
        .iter()
        .map(|q| basis.iter().map(|f| f.eval(q)).collect())
        .collect();

    let nvars = basis.len();
    let outcomes: Vec<(std::result::Result<LpOutcome, _>, Budget)> = (0..candidates.len())
        .into_par_iter()
        .map(|qi| {
            let mut lp = LinearProgram::new(nvars);
            for i in 0..n {
                lp.set_free(i);
            }
            lp.set_objective(df.clone());
            let norm_row: Vec<Rational> = (0..nvars).map(|k| &mean[k] - &values[qi][k]).collect();
            lp.add_constraint(norm_row, Relation::Eq, Rational::one());
            for (qj, other) in values.iter().enumerate() {
                if qj != qi {
                    let row = (0..nvars).map(|k| &values[qi][k] - &other[k]).collect();
                    lp.add_constraint(row, Relation::Le, Rational::zero());
                }
            }
            let mut child = budget.child();
            (lp.solve(&mut child), child)
        })
        .collect();

    let mut cases = Vec::with_capacity(candidates.len());
    let mut best: Option<(Option<Rational>, Vec<Rational>, Option<Vec<Rational>>)> = None;
    for (q, (outcome, child)) in candidates.iter().zip(outcomes) {
        budget.absorb(&child)?;
        match outcome? {
            LpOutcome::Optimal { x, value } => {
                cases.push((q.clone(), Some(value.clone())));
                let better = match &best {
                    None => true,
                    Some((Some(b), ..)) => value < *b,
                    Some((None, ..)) => false,
                };
                if better {
                    best = Some((Some(value), x, None));
                }
            }
            LpOutcome::Unbounded { x, ray } => {
                cases.push((q.clone(), None));
                if !matches!(best, Some((None, ..))) {
                    best = Some((None, x, Some(ray)));
                }
            }
            LpOutcome::Infeasible => cases.push((q.clone(), None)),
        }
    }
    let Some((value, x, ray)) = best else {
        return Err(CoreError::EmptyFamily);
    };

    let certify = |coeffs: &[Rational]| -> Result<(PLFunction, Rational, Rational)> {
        let ints = primitive_integer_vector(coeffs);
        let scaled: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let f = family_member(n, creases, &scaled)?;
        let f = f.add_constant(&-f.minimum(p)?).pruned(p)?;
        let d = toric_df(p, &f)?;
        let m = toric_minnorm(p, &f)?;
        Ok((f, d, m))
    };

    let (function, df_value, minnorm) = match (&value, ray) {
        (Some(v), _) => {
            let (f, d, m) = certify(&x)?;
            if m.is_zero() || &d / &m != *v {
                return Err(CoreError::CertificateCheck(format!(
                    "minimizer {f} has DF/norm {d}/{m}, LP optimum {v}"
                )));
            }
            (f, d, m)
        }
        (None, Some(ray)) => {
            let mut t = Rational::one();
            let mut found = None;
            for _ in 0..64 {
                let point: Vec<Rational> = x.iter().zip(&ray).map(|(a, r)| a + &t * r).collect();
                let (f, d, m) = certify(&point)?;
                if &d - epsilon * &m < Rational::zero() {
                    found = Some((f, d, m));
                    break;
                }
                t *= Rational::from_integer(BigInt::from(2));
            }
            found.ok_or_else(|| {
                CoreError::CertificateCheck("unbounded LP without a verified certificate".into())
            })?
        }
        (None, None) => unreachable!("unbounded outcomes carry a ray"),
    };

    let exact = &df_value - epsilon * &minnorm;
    let verdict = if exact.is_negative() {
        UniformVerdict::FailsAtEpsilon
    } else {
        UniformVerdict::HoldsOnFamily
    };
    let min_objective = value.map(|v| v - epsilon);
    if let Some(obj) = &min_objective {
        if obj.is_negative() != exact.is_negative() {
            return Err(CoreError::CertificateCheck(
                "LP verdict and exact re-evaluation disagree".into(),
            ));
        }
    }
    Ok(UniformReport {
        verdict,
        function,
        df: df_value,
        minnorm,
        min_objective,
        cases,
    })
}
