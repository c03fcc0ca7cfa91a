//! Semistability and stability of pairs `[v:w] ∈ P(V ⊕ W)`.
//!
//! For torus groups every arc is equivalent to a one-parameter subgroup, so
//! the weight of `diag(t^a)` is `min_{supp w} ⟨χ,a⟩ − min_{supp v} ⟨χ,a⟩`
//! and all questions become exact polyhedral ones. Non-abelian groups get
//! the randomized [`sample_falsifier`].

mod binary;
mod falsify;

pub use binary::{binary_form_pair, classify_binary_form, BinaryFormReport, BinaryProbe};
pub use falsify::{sample_falsifier, Falsified};

use num_traits::Zero;
use pairstab_algebra::{Budget, Rational, Valuation};

use crate::arc::{arc_norm, deg_of_rep, mu_weight, Arc};
use crate::error::{CoreError, Result};
use crate::group::{GroupPresentation, Representation};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::util::{int, primitive_integer_vector, to_i64_vector};
use crate::weights::{convex_combination, min_pairing, separating_direction, sumset};

#[derive(Debug, Clone, PartialEq)]
pub struct Pair {
    group: GroupPresentation,
    v_rep: Representation,
    w_rep: Representation,
    v: Vec<Rational>,
    w: Vec<Rational>,
}

impl Pair {
    pub fn new(
        group: GroupPresentation,
        v_rep: Representation,
        w_rep: Representation,
        v: Vec<Rational>,
        w: Vec<Rational>,
    ) -> Result<Self> {
        for (rep, vec) in [(&v_rep, &v), (&w_rep, &w)] {
            if rep.dim() != vec.len() {
                return Err(CoreError::DimensionMismatch {
                    expected: rep.dim(),
                    found: vec.len(),
                });
            }
            if rep.group_size() != group.size() {
                return Err(CoreError::DimensionMismatch {
                    expected: group.size(),
                    found: rep.group_size(),
                });
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            return Err(CoreError::ZeroVector);
        }
        Ok(Pair {
            group,
            v_rep,
            w_rep,
            v,
            w,
        })
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn v_rep(&self) -> &Representation {
        &self.v_rep
    }

    pub fn w_rep(&self) -> &Representation {
        &self.w_rep
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn w(&self) -> &[Rational] {
        &self.w
    }

    pub fn w_is_zero(&self) -> bool {
        self.w.iter().all(|c| c.is_zero())
    }

    /// The same pair with both vectors rescaled.
    pub fn rescaled(&self, sv: &Rational, sw: &Rational) -> Result<Pair> {
        Pair::new(
            self.group.clone(),
            self.v_rep.clone(),
            self.w_rep.clone(),
            self.v.iter().map(|c| c * sv).collect(),
            self.w.iter().map(|c| c * sw).collect(),
        )
    }

    pub fn mu(&self, rho: &Arc) -> Result<Valuation> {
        mu_weight(&self.v_rep, &self.w_rep, &self.v, &self.w, rho)
    }

    /// Weight of the one-parameter subgroup `diag(t^a)`.
    pub fn mu_at(&self, exponents: &[i64]) -> Result<Valuation> {
        self.mu(&Arc::one_parameter(exponents))
    }

    pub fn norm_at(&self, exponents: &[i64]) -> Result<i64> {
        arc_norm(&self.v_rep, &self.v, &Arc::one_parameter(exponents))
    }

    fn support(rep: &Representation, vec: &[Rational]) -> Result<Vec<Vec<i64>>> {
        let weights = rep.diagonal_weights()?;
        let mut s: Vec<Vec<i64>> = weights
            .into_iter()
            .zip(vec)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, _)| w)
            .collect();
        s.sort();
        s.dedup();
        Ok(s)
    }

    /// Distinct weights of the nonzero coordinates of `v`.
    pub fn v_support(&self) -> Result<Vec<Vec<i64>>> {
        Pair::support(&self.v_rep, &self.v)
    }

    pub fn w_support(&self) -> Result<Vec<Vec<i64>>> {
        Pair::support(&self.w_rep, &self.w)
    }

    fn require_torus(&self) -> Result<()> {
        if self.group.is_torus() {
            Ok(())
        } else {
            Err(CoreError::NotTorus)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Semistable,
    Unstable,
    StableAt(u32),
    NotStableAt(u32),
    Unknown,
}

/// A point of `supp w` written as a convex combination of `supp v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexWitness {
    pub point: Vec<i64>,
    pub combination: Vec<(Vec<i64>, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// `w = 0`: nothing to check.
    Vacuous,
    /// Every weight of `w` lies in the hull of the weights of `v`.
    Containment(Vec<ConvexWitness>),
    /// A one-parameter subgroup of negative weight.
    Destabilizing { exponents: Vec<i64>, mu: i64 },
    /// A one-parameter subgroup with `(l+1)·μ < ‖·‖`.
    NormViolation {
        exponents: Vec<i64>,
        mu: i64,
        norm: i64,
        level: u32,
    },
    /// The stability inequality was checked on this many cones.
    Cones(usize),
    /// An arc of negative weight.
    Arc { arc: Arc, mu: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
}

/// Exact semistability for torus groups: `[v:w]` is semistable iff the hull
/// of `supp w` lies inside the hull of `supp v`.
pub fn torus_semistable(p: &Pair, budget: &mut Budget) -> Result<Verdict> {
    p.require_torus()?;
    let sv = p.v_support()?;
    let sw = p.w_support()?;
    if sw.is_empty() {
        return Ok(Verdict {
            status: Status::Semistable,
            certificate: Certificate::Vacuous,
        });
    }
    let mut witnesses = Vec::with_capacity(sw.len());
    for point in &sw {
        match convex_combination(&sv, point, budget)? {
            Some(lambda) => witnesses.push(ConvexWitness {
                point: point.clone(),
                combination: sv
                    .iter()
                    .cloned()
                    .zip(lambda)
                    .filter(|(_, l)| !l.is_zero())
                    .collect(),
            }),
            None => {
                let a = separating_direction(&sv, point, budget)?.ok_or_else(|| {
                    CoreError::CertificateCheck("no separating direction for an outside point".into())
                })?;
                let mu = match p.mu_at(&a)? {
                    Valuation::Finite(mu) if mu < 0 => mu,
                    other => {
                        return Err(CoreError::CertificateCheck(format!(
                            "separating direction {a:?} has weight {other}"
                        )))
                    }
                };
                return Ok(Verdict {
                    status: Status::Unstable,
                    certificate: Certificate::Destabilizing { exponents: a, mu },
                });
            }
        }
    }
    Ok(Verdict {
        status: Status::Semistable,
        certificate: Certificate::Containment(witnesses),
    })
}

/// `[e^{⊗d} ⊗ v^{⊗l} : w^{⊗(l+1)}]` on supports: the v-side carries the
/// weights `{d-fold sums of e_i} + (l-fold sums of supp v)` and the w-side
/// the `(l+1)`-fold sums of `supp w`, each coordinate set to 1.
pub fn associated_pair(p: &Pair, l: u32) -> Result<Pair> {
    let d = deg_of_rep(&p.v_rep)?;
    let m = p.group.size();
    let basis: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    let e_part = sumset(&basis, d, m);
    let v_part = crate::weights::minkowski_sum(&e_part, &sumset(&p.v_support()?, l, m));
    let sw = p.w_support()?;
    let w_part = if sw.is_empty() {
        Vec::new()
    } else {
        sumset(&sw, l + 1, m)
    };
    let ones = |n: usize| vec![int(1); n];
    let (nv, nw) = (v_part.len(), w_part.len());
    Pair::new(
        p.group.clone(),
        Representation::torus_weights(m, v_part)?,
        Representation::torus_weights(m, w_part)?,
        ones(nv),
        ones(nw),
    )
}

/// Semistability of the associated pair at level `l`.
pub fn torus_stable_at(p: &Pair, l: u32, budget: &mut Budget) -> Result<Verdict> {
    p.require_torus()?;
    let assoc = associated_pair(p, l)?;
    let v = torus_semistable(&assoc, budget)?;
    let status = match v.status {
        Status::Semistable => Status::StableAt(l),
        _ => Status::NotStableAt(l),
    };
    Ok(Verdict {
        status,
        certificate: v.certificate,
    })
}

/// Decides `(l+1)·μ(a) ≥ ‖a‖` for every exponent vector `a`, where
/// `‖a‖ = min_{supp v}⟨χ,a⟩ − d·min_i a_i`. Both sides are linear on each
/// cone fixing the minimizing weight of `w`, of `v`, and the minimizing
/// coordinate, so one LP per cone suffices.
pub fn dr_stable_at(p: &Pair, l: u32, budget: &mut Budget) -> Result<Verdict> {
    p.require_torus()?;
    let d = deg_of_rep(&p.v_rep)? as i64;
    let m = p.group.size();
    let sv = p.v_support()?;
    let sw = p.w_support()?;
    if sw.is_empty() {
        return Ok(Verdict {
            status: Status::StableAt(l),
            certificate: Certificate::Vacuous,
        });
    }
    let l1 = i64::from(l) + 1;
    let mut cones = 0;
    for jw in &sw {
        for jv in &sv {
            for i in 0..m {
                cones += 1;
                let mut lp = LinearProgram::new(m);
                for c in 0..m {
                    lp.set_free(c);
                    lp.add_bounds(c, int(-1), int(1));
                }
                let le = |lp: &mut LinearProgram, row: Vec<i64>| {
                    lp.add_constraint(row.into_iter().map(int).collect(), Relation::Le, int(0));
                };
                for other in &sw {
                    le(&mut lp, jw.iter().zip(other).map(|(a, b)| a - b).collect());
                }
                for other in &sv {
                    le(&mut lp, jv.iter().zip(other).map(|(a, b)| a - b).collect());
                }
                for k in 0..m {
                    let mut row = vec![0i64; m];
                    row[i] += 1;
                    row[k] -= 1;
                    le(&mut lp, row);
                }
                let g: Vec<Rational> = (0..m)
                    .map(|c| int(l1 * (jw[c] - jv[c]) - jv[c] + if c == i { d } else { 0 }))
                    .collect();
                lp.set_objective(g);
                let LpOutcome::Optimal { x, value } = lp.solve(budget)? else {
                    continue;
                };
                if value < Rational::zero() {
                    let a = to_i64_vector(&primitive_integer_vector(&x))?;
                    let mu = p.mu_at(&a)?.finite().ok_or_else(|| {
                        CoreError::CertificateCheck("infinite weight with w ≠ 0".into())
                    })?;
                    let norm = p.norm_at(&a)?;
                    if l1 * mu >= norm {
                        return Err(CoreError::CertificateCheck(format!(
                            "cone certificate {a:?} does not violate the inequality"
                        )));
                    }
                    return Ok(Verdict {
                        status: Status::NotStableAt(l),
                        certificate: Certificate::NormViolation {
                            exponents: a,
                            mu,
                            norm,
                            level: l,
                        },
                    });
                }
            }
        }
    }
    Ok(Verdict {
        status: Status::StableAt(l),
        certificate: Certificate::Cones(cones),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityCheck {
    AssociatedPair,
    NormInequality,
}

/// The least `l` in `1..=max_level` at which the chosen check succeeds,
/// with the verdicts for every level tried.
pub fn least_stable_level(
    p: &Pair,
    max_level: u32,
    check: StabilityCheck,
    budget: &mut Budget,
) -> Result<(Option<u32>, Vec<Verdict>)> {
    let mut verdicts = Vec::new();
    for l in 1..=max_level {
        let v = match check {
            StabilityCheck::AssociatedPair => torus_stable_at(p, l, budget)?,
            StabilityCheck::NormInequality => dr_stable_at(p, l, budget)?,
        };
        let ok = v.status == Status::StableAt(l);
        verdicts.push(v);
        if ok {
            return Ok((Some(l), verdicts));
        }
    }
    Ok((None, verdicts))
}

/// Recomputes a verdict's certificate against the pair (and level, for
/// stability verdicts). Containment witnesses are re-multiplied out;
/// destabilizers are re-evaluated as arcs.
pub fn check_certificate(p: &Pair, verdict: &Verdict) -> Result<bool> {
    let level = match verdict.status {
        Status::StableAt(l) | Status::NotStableAt(l) => Some(l),
        _ => None,
    };
    let target = match (verdict.status, &verdict.certificate) {
        (Status::StableAt(l) | Status::NotStableAt(l), Certificate::Containment(_))
        | (Status::StableAt(l) | Status::NotStableAt(l), Certificate::Destabilizing { .. }) => {
            associated_pair(p, l)?
        }
        _ => p.clone(),
    };
    Ok(match &verdict.certificate {
        Certificate::Vacuous => p.w_is_zero(),
        Certificate::Containment(ws) => {
            let sv = target.v_support()?;
            let sw = target.w_support()?;
            ws.len() == sw.len()
                && ws.iter().zip(&sw).all(|(w, pt)| {
                    let total: Rational = w.combination.iter().map(|(_, l)| l.clone()).sum();
                    let mut acc = vec![Rational::zero(); pt.len()];
                    for (chi, l) in &w.combination {
                        for (a, c) in acc.iter_mut().zip(chi) {
                            *a += l * int(*c);
                        }
                    }
                    &w.point == pt
                        && total == int(1)
                        && w.combination.iter().all(|(chi, l)| sv.contains(chi) && *l > Rational::zero())
                        && acc.iter().zip(pt).all(|(a, c)| *a == int(*c))
                })
        }
        Certificate::Destabilizing { exponents, mu } => {
            target.mu_at(exponents)? == Valuation::Finite(*mu) && *mu < 0
        }
        Certificate::NormViolation {
            exponents,
            mu,
            norm,
            level: l,
        } => {
            Some(*l) == level
                && p.mu_at(exponents)? == Valuation::Finite(*mu)
                && p.norm_at(exponents)? == *norm
                && (i64::from(*l) + 1) * mu < *norm
        }
        Certificate::Cones(_) => {
            let l = level.unwrap_or(1);
            dr_stable_at(p, l, &mut Budget::default())?.status == Status::StableAt(l)
        }
        Certificate::Arc { arc, mu } => {
            crate::arc::check_arc(&p.group, arc)? && p.mu(arc)? == Valuation::Finite(*mu) && *mu < 0
        }
    })
}

/// Brute-force minimum of the one-parameter weight over the box
/// `[-r, r]^k`, used as an independent check of the hull test.
pub fn brute_force_min_weight(p: &Pair, radius: i64) -> Result<Option<(Vec<i64>, i64)>> {
    let sv = p.v_support()?;
    let sw = p.w_support()?;
    if sw.is_empty() {
        return Ok(None);
    }
    let k = p.group.size();
    let mut best: Option<(Vec<i64>, i64)> = None;
    let mut a = vec![-radius; k];
    loop {
        let mu = min_pairing(&sw, &a).unwrap() - min_pairing(&sv, &a).unwrap();
        if best.as_ref().is_none_or(|(_, b)| mu < *b) {
            best = Some((a.clone(), mu));
        }
        let mut c = 0;
        loop {
            if c == k {
                return Ok(best);
            }
            a[c] += 1;
            if a[c] <= radius {
                break;
            }
            a[c] = -radius;
            c += 1;
        }
    }
}

#[cfg(test)]
mod tests;
