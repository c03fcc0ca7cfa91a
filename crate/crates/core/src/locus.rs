//! Degeneration loci by elimination.
//!
//! Given `G` acting on `Y` and a closed `Ŵ ⊆ Y`, the graph
//! `Γ = {(g, y₁, y₂) : y₂ = g·y₁}` projects to `Y × Y`; its closure `Z`
//! meets `Y × Ŵ` in a set whose first projection contains every point that
//! degenerates to `Ŵ`. The containment can be strict, so the report
//! compares the computed locus with per-point orbit-closure oracles.
//!
//! Projective problems are handled on affine cones: `y₂ ∝ g·y₁` becomes
//! the vanishing of 2×2 minors, and the irrelevant ideals are saturated
//! away.

use num_traits::Zero;
use pairstab_algebra::{Budget, Ideal, MultiPoly, Rational, Ring};
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::group::{GroupPresentation, Representation};
use crate::pairs::{torus_semistable, Pair, Status};

#[derive(Debug, Clone, PartialEq)]
pub struct ActionProblem {
    group: GroupPresentation,
    coords: Ring,
    y_ideal: Ideal,
    w_hat: Ideal,
    action: Vec<Vec<MultiPoly>>,
    projective: bool,
}

impl ActionProblem {
    /// `y_ideal` and `w_hat` live in `coords`; `action` is a square matrix
    /// over the group ring of the size of `coords`.
    pub fn new(
        group: GroupPresentation,
        coords: Ring,
        y_ideal: Ideal,
        w_hat: Ideal,
        action: Vec<Vec<MultiPoly>>,
        projective: bool,
        budget: &mut Budget,
    ) -> Result<Self> {
        let n = coords.len();
        if action.len() != n || action.iter().any(|r| r.len() != n) {
            return Err(CoreError::InvalidProblem(format!(
                "action matrix must be {n}×{n}"
            )));
        }
        if action.iter().flatten().any(|p| p.ring() != group.ring()) {
            return Err(CoreError::InvalidProblem(
                "action entries must be polynomials in the group variables".into(),
            ));
        }
        if y_ideal.ring() != &coords || w_hat.ring() != &coords {
            return Err(CoreError::InvalidProblem(
                "Y and Ŵ must be ideals in the coordinate ring".into(),
            ));
        }
        if let Some(clash) = coords.vars().iter().find(|v| group.ring().index_of(v).is_some()) {
            return Err(CoreError::InvalidProblem(format!(
                "coordinate '{clash}' clashes with a group variable"
            )));
        }
        if !w_hat.contains(&y_ideal, budget)? {
            return Err(CoreError::InvalidProblem("Ŵ is not contained in Y".into()));
        }
        Ok(ActionProblem {
            group,
            coords,
            y_ideal,
            w_hat,
            action,
            projective,
        })
    }

    /// The action of a representation; torus weights are turned into a
    /// diagonal matrix.
    pub fn with_representation(
        group: GroupPresentation,
        coords: Ring,
        y_ideal: Ideal,
        w_hat: Ideal,
        rep: &Representation,
        projective: bool,
        budget: &mut Budget,
    ) -> Result<Self> {
        let matrix = rep.action_matrix(&group)?;
        Self::new(group, coords, y_ideal, w_hat, matrix, projective, budget)
    }

    /// Builds a problem from polynomial strings: `y` and `w_hat` in the
    /// coordinate names, `action` in the group variables.
    pub fn parse<S: AsRef<str>>(
        group: GroupPresentation,
        coords: &[S],
        y: &[S],
        w_hat: &[S],
        action: &[Vec<S>],
        projective: bool,
        budget: &mut Budget,
    ) -> Result<Self> {
        let ring = Ring::new(coords.iter().map(|c| c.as_ref().to_string()))?;
        let y_ideal = Ideal::parse(&ring, y)?;
        let w_hat = Ideal::parse(&ring, w_hat)?.sum(&y_ideal)?;
        let matrix = action
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| MultiPoly::parse(e.as_ref(), group.ring()))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(group, ring, y_ideal, w_hat, matrix, projective, budget)
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn coords(&self) -> &Ring {
        &self.coords
    }

    pub fn y_ideal(&self) -> &Ideal {
        &self.y_ideal
    }

    pub fn w_hat(&self) -> &Ideal {
        &self.w_hat
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    fn copy_names(&self, suffix: &str) -> Vec<String> {
        self.coords.vars().iter().map(|v| format!("{v}_{suffix}")).collect()
    }

    /// Ring of `Z`: first copy `v_1`, then second copy `v_2`.
    pub fn pair_ring(&self) -> Result<Ring> {
        let mut names = self.copy_names("1");
        names.extend(self.copy_names("2"));
        Ok(Ring::new(names)?)
    }

    /// Ring of `Γ`: group variables, then both copies.
    fn graph_ring(&self) -> Result<Ring> {
        let mut names: Vec<String> = self.group.ring().vars().to_vec();
        names.extend(self.copy_names("1"));
        names.extend(self.copy_names("2"));
        Ok(Ring::new(names)?)
    }

    /// `A(g)·y` with `y` given as polynomials of `ring`.
    fn apply(&self, ring: &Ring, y: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        self.action
            .iter()
            .map(|row| {
                let mut acc = MultiPoly::zero(ring);
                for (a, yj) in row.iter().zip(y) {
                    acc = &acc + &(&a.embed(ring)? * yj);
                }
                Ok(acc)
            })
            .collect()
    }

    /// `z = u` (affine) or `z ∝ u` via the 2×2 minors (projective).
    fn incidence(&self, z: &[MultiPoly], u: &[MultiPoly]) -> Vec<MultiPoly> {
        if self.projective {
            let mut out = Vec::new();
            for k in 0..z.len() {
                for l in k + 1..z.len() {
                    out.push(&(&z[k] * &u[l]) - &(&z[l] * &u[k]));
                }
            }
            out
        } else {
            z.iter().zip(u).map(|(a, b)| a - b).collect()
        }
    }
}

fn shift_ideal(ideal: &Ideal, target: &Ring, offset: usize) -> Ideal {
    let mapping: Vec<usize> = (0..ideal.ring().len()).map(|i| offset + i).collect();
    ideal.map_vars(target, &mapping)
}

fn vars_at(ring: &Ring, offset: usize, n: usize) -> Vec<MultiPoly> {
    (offset..offset + n).map(|i| MultiPoly::var_at(ring, i)).collect()
}

fn irrelevant(ring: &Ring, offset: usize, n: usize) -> Result<Ideal> {
    Ok(Ideal::new(ring, vars_at(ring, offset, n))?)
}

/// The ideal of `Γ ⊂ G × Y × Y`.
pub fn graph_ideal(prob: &ActionProblem) -> Result<Ideal> {
    let ring = prob.graph_ring()?;
    let ng = prob.group.ring().len();
    let n = prob.coords.len();
    let mut gens: Vec<MultiPoly> = prob
        .group
        .relations()
        .generators()
        .iter()
        .map(|r| r.embed(&ring))
        .collect::<std::result::Result<_, _>>()?;
    gens.extend(shift_ideal(&prob.y_ideal, &ring, ng).generators().iter().cloned());
    let y1 = vars_at(&ring, ng, n);
    let y2 = vars_at(&ring, ng + n, n);
    let gy1 = prob.apply(&ring, &y1)?;
    gens.extend(prob.incidence(&y2, &gy1));
    Ok(Ideal::new(&ring, gens)?)
}

/// The ideal of `Z = closure of the projection of Γ to Y × Y`.
pub fn orbit_map_closure(prob: &ActionProblem, budget: &mut Budget) -> Result<Ideal> {
    let gamma = graph_ideal(prob)?;
    let det = prob.group.determinant().embed(gamma.ring())?;
    let saturated = gamma.saturate(&det, budget)?;
    let z = saturated.eliminate(prob.group.ring().vars(), budget)?;
    if !prob.projective {
        return Ok(z.reduced(budget)?);
    }
    let n = prob.coords.len();
    let ring = z.ring().clone();
    let z = z.saturate_by_ideal(&irrelevant(&ring, 0, n)?, budget)?;
    let z = z.saturate_by_ideal(&irrelevant(&ring, n, n)?, budget)?;
    Ok(z.reduced(budget)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub point: Vec<Rational>,
    /// The orbit closure of the point meets `Ŵ`.
    pub degenerates: bool,
    /// The point lies in the computed locus.
    pub in_locus: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocusReport {
    /// Ideal of the computed closed locus, in the coordinate ring.
    pub locus: Ideal,
    pub probes: Vec<ProbeResult>,
    /// Some probe is in the locus but does not degenerate.
    pub overapproximation: bool,
    /// Every degenerating probe is in the locus.
    pub sound: bool,
}

/// The closed set `σ(Z ∩ (Y × Ŵ))`, compared against the oracle on each
/// probe point.
pub fn degeneration_locus(
    prob: &ActionProblem,
    probes: &[Vec<Rational>],
    budget: &mut Budget,
) -> Result<LocusReport> {
    let z = orbit_map_closure(prob, budget)?;
    let ring = z.ring().clone();
    let n = prob.coords.len();
    let w2 = shift_ideal(&prob.w_hat, &ring, n);
    let mut s = z.sum(&w2)?;
    if prob.projective {
        s = s.saturate_by_ideal(&irrelevant(&ring, n, n)?, budget)?;
    }
    let mut e = s.eliminate(&prob.copy_names("2"), budget)?;
    if prob.projective {
        let r1 = e.ring().clone();
        e = e.saturate_by_ideal(&irrelevant(&r1, 0, n)?, budget)?;
    }
    let identity: Vec<usize> = (0..n).collect();
    let locus = e.map_vars(&prob.coords, &identity).reduced(budget)?;

    let outcomes: Vec<(Result<bool>, Budget)> = probes
        .par_iter()
        .map(|p| {
            let mut child = budget.child();
            (point_degenerates(prob, p, &mut child), child)
        })
        .collect();
    let mut results = Vec::with_capacity(probes.len());
    for (p, (degenerates, child)) in probes.iter().zip(outcomes) {
        budget.absorb(&child)?;
        results.push(ProbeResult {
            point: p.clone(),
            degenerates: degenerates?,
            in_locus: locus.vanishes_at(p),
        });
    }
    Ok(LocusReport {
        overapproximation: results.iter().any(|r| r.in_locus && !r.degenerates),
        sound: results.iter().all(|r| !r.degenerates || r.in_locus),
        locus,
        probes: results,
    })
}

/// Ideal of the closure of `G·y0` (the cone over it, projectively), in the
/// coordinate ring.
pub fn orbit_closure(prob: &ActionProblem, y0: &[Rational], budget: &mut Budget) -> Result<Ideal> {
    let n = prob.coords.len();
    if y0.len() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            found: y0.len(),
        });
    }
    if !prob.y_ideal.vanishes_at(y0) || (prob.projective && y0.iter().all(|c| c.is_zero())) {
        return Err(CoreError::PointNotOnY);
    }
    let mut names: Vec<String> = prob.group.ring().vars().to_vec();
    names.extend(prob.coords.vars().iter().cloned());
    let ring = Ring::new(names)?;
    let ng = prob.group.ring().len();
    let mut gens: Vec<MultiPoly> = prob
        .group
        .relations()
        .generators()
        .iter()
        .map(|r| r.embed(&ring))
        .collect::<std::result::Result<_, _>>()?;
    let point: Vec<MultiPoly> = y0
        .iter()
        .map(|c| MultiPoly::constant(&ring, c.clone()))
        .collect();
    let u = prob.apply(&ring, &point)?;
    gens.extend(prob.incidence(&vars_at(&ring, ng, n), &u));
    let graph = Ideal::new(&ring, gens)?;
    let det = prob.group.determinant().embed(&ring)?;
    let closure = graph
        .saturate(&det, budget)?
        .eliminate(prob.group.ring().vars(), budget)?;
    let identity: Vec<usize> = (0..n).collect();
    let mut closure = closure.map_vars(&prob.coords, &identity);
    if prob.projective {
        closure = closure.saturate_by_ideal(&irrelevant(&prob.coords, 0, n)?, budget)?;
    }
    Ok(closure.reduced(budget)?)
}

/// Whether the orbit closure of `y0` meets `Ŵ`.
pub fn point_degenerates(prob: &ActionProblem, y0: &[Rational], budget: &mut Budget) -> Result<bool> {
    let closure = orbit_closure(prob, y0, budget)?;
    let mut meet = closure.sum(&prob.w_hat)?;
    if prob.projective {
        let n = prob.coords.len();
        meet = meet.saturate_by_ideal(&irrelevant(&prob.coords, 0, n)?, budget)?;
    }
    Ok(meet.is_proper(budget)?)
}

/// A torus pair whose coordinates are polynomials in base parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFamily {
    pub group: GroupPresentation,
    pub v_rep: Representation,
    pub w_rep: Representation,
    pub base: Ring,
    pub v: Vec<MultiPoly>,
    pub w: Vec<MultiPoly>,
}

impl PairFamily {
    pub fn new(
        group: GroupPresentation,
        v_rep: Representation,
        w_rep: Representation,
        base: Ring,
        v: Vec<MultiPoly>,
        w: Vec<MultiPoly>,
    ) -> Result<Self> {
        if !group.is_torus() {
            return Err(CoreError::NotTorus);
        }
        for (rep, vec) in [(&v_rep, &v), (&w_rep, &w)] {
            if rep.dim() != vec.len() {
                return Err(CoreError::DimensionMismatch {
                    expected: rep.dim(),
                    found: vec.len(),
                });
            }
        }
        if v.iter().chain(&w).any(|p| p.ring() != &base) {
            return Err(CoreError::InvalidProblem(
                "family coordinates must be polynomials in the base ring".into(),
            ));
        }
        Ok(PairFamily {
            group,
            v_rep,
            w_rep,
            base,
            v,
            w,
        })
    }

    /// `Some(true)` when the fiber at `b` is not semistable; `None` when
    /// both vectors vanish and the fiber is not a point of `P(V ⊕ W)`.
    pub fn fiber_unstable(&self, b: &[Rational], budget: &mut Budget) -> Result<Option<bool>> {
        let v: Vec<Rational> = self.v.iter().map(|p| p.evaluate(b)).collect();
        let w: Vec<Rational> = self.w.iter().map(|p| p.evaluate(b)).collect();
        let v_zero = v.iter().all(|c| c.is_zero());
        let w_zero = w.iter().all(|c| c.is_zero());
        match (v_zero, w_zero) {
            (true, true) => Ok(None),
            (true, false) => Ok(Some(true)),
            _ => {
                let p = Pair::new(self.group.clone(), self.v_rep.clone(), self.w_rep.clone(), v, w)?;
                Ok(Some(torus_semistable(&p, budget)?.status == Status::Unstable))
            }
        }
    }
}

/// One piece of an unstable locus: the zero set of `ideal`, minus the zero
/// set of `excluded` when present.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusPiece {
    pub ideal: Ideal,
    pub excluded: Option<MultiPoly>,
    /// Indices (into `v` then `w`) of the coordinates vanishing on the piece.
    pub vanishing: Vec<usize>,
}

impl LocusPiece {
    pub fn contains(&self, b: &[Rational]) -> bool {
        self.ideal.vanishes_at(b) && self.excluded.as_ref().is_none_or(|h| !h.evaluate(b).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyLocus {
    pub pieces: Vec<LocusPiece>,
}

impl FamilyLocus {
    pub fn contains(&self, b: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StratumKind {
    Semistable,
    Unstable,
    Undefined,
}

/// The base points whose fiber is not semistable, by stratifying the base
/// according to which coordinates vanish.
///
/// Each stratum `{c_i = 0 for i ∈ S, c_j ≠ 0 otherwise}` has a constant
/// support pattern, so one torus test decides it. A piece is reported as
/// closed when every stratum in its closure is unstable (or has `v = w = 0`,
/// where no pair is defined); otherwise the nonvanishing condition is kept.
/// Pieces contained in a closed piece are dropped.
pub fn family_unstable_locus(fam: &PairFamily, budget: &mut Budget) -> Result<FamilyLocus> {
    let coords: Vec<&MultiPoly> = fam.v.iter().chain(&fam.w).collect();
    let nv = fam.v.len();
    let varying: Vec<usize> = (0..coords.len()).filter(|&i| !coords[i].is_constant()).collect();
    if varying.len() > 16 {
        return Err(CoreError::InvalidProblem("too many varying coordinates".into()));
    }
    let v_weights = fam.v_rep.diagonal_weights()?;
    let w_weights = fam.w_rep.diagonal_weights()?;

    let mut strata: Vec<(u32, Ideal, MultiPoly, StratumKind, Vec<usize>)> = Vec::new();
    for mask in 0u32..(1 << varying.len()) {
        let in_s = |k: usize| mask & (1 << k) != 0;
        let zero_gens: Vec<MultiPoly> = varying
            .iter()
            .enumerate()
            .filter(|(k, _)| in_s(*k))
            .map(|(_, &i)| coords[i].clone())
            .collect();
        let mut h = MultiPoly::one(&fam.base);
        for (k, &i) in varying.iter().enumerate() {
            if !in_s(k) {
                h = &h * coords[i];
            }
        }
        let closure = Ideal::new(&fam.base, zero_gens)?.saturate(&h, budget)?;
        if closure.is_unit(budget)? {
            continue;
        }
        let vanishing: Vec<usize> = (0..coords.len())
            .filter(|&i| match varying.iter().position(|&j| j == i) {
                Some(k) => in_s(k),
                None => coords[i].is_zero(),
            })
            .collect();
        let sv: Vec<Vec<i64>> = (0..nv)
            .filter(|i| !vanishing.contains(i))
            .map(|i| v_weights[i].clone())
            .collect();
        let sw: Vec<Vec<i64>> = (nv..coords.len())
            .filter(|i| !vanishing.contains(i))
            .map(|i| w_weights[i - nv].clone())
            .collect();
        let kind = match (sv.is_empty(), sw.is_empty()) {
            (true, true) => StratumKind::Undefined,
            (true, false) => StratumKind::Unstable,
            _ => {
                let rank = fam.group.size();
                let ones = |k: usize| vec![Rational::from_integer(1.into()); k];
                let p = Pair::new(
                    fam.group.clone(),
                    Representation::torus_weights(rank, sv.clone())?,
                    Representation::torus_weights(rank, sw.clone())?,
                    ones(sv.len()),
                    ones(sw.len()),
                )?;
                if torus_semistable(&p, budget)?.status == Status::Unstable {
                    StratumKind::Unstable
                } else {
                    StratumKind::Semistable
                }
            }
        };
        strata.push((mask, closure, h, kind, vanishing));
    }

    let mut pieces: Vec<LocusPiece> = Vec::new();
    for (mask, closure, h, kind, vanishing) in &strata {
        if *kind != StratumKind::Unstable {
            continue;
        }
        let closed = strata
            .iter()
            .filter(|(m2, ..)| m2 & mask == *mask)
            .all(|(_, _, _, k, _)| *k != StratumKind::Semistable);
        pieces.push(LocusPiece {
            ideal: closure.clone(),
            excluded: if closed || h.is_constant() {
                None
            } else {
                Some(h.clone())
            },
            vanishing: vanishing.clone(),
        });
    }

    let mut kept: Vec<LocusPiece> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let mut redundant = false;
        for (j, q) in pieces.iter().enumerate() {
            if i == j || q.excluded.is_some() {
                continue;
            }
            // V(p) ⊆ V(q) when q's ideal is contained in p's.
            if p.ideal.contains(&q.ideal, budget)? {
                let same = q.ideal.contains(&p.ideal, budget)? && p.excluded.is_none();
                if !same || j < i {
                    redundant = true;
                    break;
                }
            }
        }
        if !redundant {
            kept.push(p.clone());
        }
    }
    Ok(FamilyLocus { pieces: kept })
}

#[cfg(test)]
mod tests;
