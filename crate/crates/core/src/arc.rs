//! Arcs of a group and the weights they assign to vectors and pairs.
//!
//! An arc is an invertible matrix over the Laurent field, given here by
//! Laurent polynomial entries in `t`. Orders use the `t`-adic valuation:
//! `ord0` of a vector is the least valuation of its nonzero entries.

use std::fmt;

use num_traits::Zero;
use pairstab_algebra::matrix::{adjugate, determinant, mat_mul, mat_vec};
use pairstab_algebra::{LaurentFraction, LaurentPoly, Rational, Valuation};

use crate::error::{CoreError, Result};
use crate::group::{GroupPresentation, Representation};

#[derive(Clone, PartialEq)]
pub struct Arc {
    entries: Vec<Vec<LaurentPoly>>,
    det: LaurentPoly,
}

impl Arc {
    pub fn new(entries: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 || entries.iter().any(|r| r.len() != m) {
            return Err(CoreError::InvalidArc("matrix must be square and nonempty".into()));
        }
        let det = determinant(&entries);
        if det.is_zero() {
            return Err(CoreError::InvalidArc("determinant is zero".into()));
        }
        Ok(Arc { entries, det })
    }

    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(s.as_ref())).collect())
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
        Arc::new(entries)
    }

    pub fn identity(m: usize) -> Self {
        Arc::diagonal(vec![LaurentPoly::one(); m]).expect("identity is invertible")
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Result<Self> {
        let m = diag.len();
        let mut entries = vec![vec![LaurentPoly::zero(); m]; m];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i][i] = d;
        }
        Arc::new(entries)
    }

    /// The one-parameter subgroup `diag(t^a_1, …, t^a_m)`.
    pub fn one_parameter(exponents: &[i64]) -> Self {
        Arc::diagonal(exponents.iter().map(|&a| LaurentPoly::t_pow(a)).collect())
            .expect("monomial diagonal is invertible")
    }

    /// The elementary matrix `I + p E_ij` with `i != j`.
    pub fn elementary(m: usize, i: usize, j: usize, p: LaurentPoly) -> Self {
        assert_ne!(i, j, "elementary matrices are off-diagonal");
        let mut a = Arc::identity(m);
        a.entries[i][j] = p;
        a
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn det(&self) -> &LaurentPoly {
        &self.det
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, e)| i == j || e.is_zero()))
    }

    pub fn mul(&self, other: &Arc) -> Result<Arc> {
        if self.size() != other.size() {
            return Err(CoreError::DimensionMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Arc::new(mat_mul(&self.entries, &other.entries))
    }

    pub fn fractions(&self) -> Vec<Vec<LaurentFraction>> {
        self.entries
            .iter()
            .map(|r| r.iter().cloned().map(LaurentFraction::from).collect())
            .collect()
    }

    /// `adj(ρ) / det(ρ)`, exact over `Q(t)`.
    pub fn inverse(&self) -> Vec<Vec<LaurentFraction>> {
        let inv_det = LaurentFraction::from(self.det.clone())
            .inverse()
            .expect("arc determinant is nonzero");
        adjugate(&self.fractions())
            .into_iter()
            .map(|r| r.into_iter().map(|e| &e * &inv_det).collect())
            .collect()
    }

    /// Values of the group ring variables (entries, then `ginv`).
    pub fn coordinates(&self) -> Vec<LaurentFraction> {
        let mut vals: Vec<LaurentFraction> = self
            .entries
            .iter()
            .flat_map(|r| r.iter().cloned().map(LaurentFraction::from))
            .collect();
        vals.push(
            LaurentFraction::from(self.det.clone())
                .inverse()
                .expect("arc determinant is nonzero"),
        );
        vals
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arc{:?}", self.to_strings())
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn check_size(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(CoreError::DimensionMismatch { expected, found })
    }
}

/// Least valuation among the nonzero entries.
pub fn order(entries: &[LaurentFraction]) -> Result<i64> {
    entries
        .iter()
        .filter_map(|e| e.val().finite())
        .min()
        .ok_or(CoreError::ZeroVector)
}

/// True iff every defining equation of `group` vanishes at `rho`.
pub fn check_arc(group: &GroupPresentation, rho: &Arc) -> Result<bool> {
    check_size(group.size(), rho.size())?;
    let vals = rho.coordinates();
    Ok(group
        .relations()
        .generators()
        .iter()
        .all(|r| r.evaluate(&vals).is_zero()))
}

fn integral(m: &[Vec<LaurentFraction>]) -> bool {
    m.iter().flatten().all(|e| e.val() >= Valuation::Finite(0))
}

/// Two arcs are equivalent when `ρ⁻¹ρ'` and `ρ'ρ⁻¹` are both integral with
/// unit determinant over the power series ring.
pub fn arcs_equivalent(rho: &Arc, rho2: &Arc) -> Result<bool> {
    check_size(rho.size(), rho2.size())?;
    let inv = rho.inverse();
    let other = rho2.fractions();
    let ratio = LaurentFraction::new(rho2.det().clone(), rho.det().clone())?;
    Ok(ratio.val() == Valuation::Finite(0)
        && integral(&mat_mul(&inv, &other))
        && integral(&mat_mul(&other, &inv)))
}

/// `ρ.v`. Torus weights need a diagonal arc of the torus rank; matrix
/// actions are evaluated at the arc's entries (with `ginv = 1/det`).
pub fn act(rep: &Representation, rho: &Arc, v: &[Rational]) -> Result<Vec<LaurentFraction>> {
    check_size(rep.dim(), v.len())?;
    check_size(rep.group_size(), rho.size())?;
    match rep {
        Representation::TorusWeights { weights, .. } => {
            if !rho.is_diagonal() {
                return Err(CoreError::NotDiagonal);
            }
            let diag: Vec<&LaurentPoly> = (0..rho.size()).map(|i| &rho.entries[i][i]).collect();
            let mut out = Vec::with_capacity(v.len());
            for (chi, c) in weights.iter().zip(v) {
                let mut num = LaurentPoly::constant(c.clone());
                let mut den = LaurentPoly::one();
                for (d, &e) in diag.iter().zip(chi) {
                    if e > 0 {
                        num = &num * &d.pow(e as u32);
                    } else if e < 0 {
                        den = &den * &d.pow((-e) as u32);
                    }
                }
                out.push(LaurentFraction::new(num, den)?);
            }
            Ok(out)
        }
        Representation::MatrixAction { .. } => {
            let a = rep.matrix_at(&rho.coordinates());
            let v: Vec<LaurentFraction> = v
                .iter()
                .map(|c| LaurentFraction::from(LaurentPoly::constant(c.clone())))
                .collect();
            Ok(mat_vec(&a, &v))
        }
    }
}

/// Smallest `d` with every weight in `d·Δ_m`: the largest coordinate sum,
/// defined only when every weight is nonnegative and nonzero.
pub fn deg_of_rep(rep: &Representation) -> Result<u32> {
    let weights = rep.diagonal_weights().map_err(|_| CoreError::DegUndefined)?;
    let mut d = 0i64;
    for w in &weights {
        if w.iter().any(|&x| x < 0) || w.iter().all(|&x| x == 0) {
            return Err(CoreError::DegUndefined);
        }
        d = d.max(w.iter().sum());
    }
    if d == 0 {
        return Err(CoreError::DegUndefined);
    }
    Ok(d as u32)
}

/// `μ(ρ, [v:w]) = ord0(ρ.w) − ord0(ρ.v)`; infinite when `w = 0`.
pub fn mu_weight(
    v_rep: &Representation,
    w_rep: &Representation,
    v: &[Rational],
    w: &[Rational],
    rho: &Arc,
) -> Result<Valuation> {
    if v.iter().all(|c| c.is_zero()) {
        return Err(CoreError::ZeroVector);
    }
    let ov = order(&act(v_rep, rho, v)?)?;
    if w.iter().all(|c| c.is_zero()) {
        check_size(w_rep.dim(), w.len())?;
        return Ok(Valuation::Infinity);
    }
    let ow = order(&act(w_rep, rho, w)?)?;
    Ok(Valuation::Finite(ow - ov))
}

/// `‖(ρ,[v])‖ = ord0(ρ.v) − deg(V)·ord0(ρ)`, with `ρ` read as the vector of
/// its `m²` entries.
pub fn arc_norm(v_rep: &Representation, v: &[Rational], rho: &Arc) -> Result<i64> {
    let d = deg_of_rep(v_rep)? as i64;
    if v.iter().all(|c| c.is_zero()) {
        return Err(CoreError::ZeroVector);
    }
    let ov = order(&act(v_rep, rho, v)?)?;
    let entries: Vec<LaurentFraction> = rho.fractions().into_iter().flatten().collect();
    Ok(ov - d * order(&entries)?)
}

/// Valuations of the diagonal entries of a torus arc.
pub fn torus_arc_exponents(rho: &Arc) -> Result<Vec<i64>> {
    if !rho.is_diagonal() {
        return Err(CoreError::NotDiagonal);
    }
    (0..rho.size())
        .map(|i| {
            rho.entries[i][i]
                .val()
                .finite()
                .ok_or(CoreError::ZeroDiagonalEntry(i))
        })
        .collect()
}

/// Like [`torus_arc_exponents`] but also accepts a raw diagonal, so a zero
/// entry is reported rather than rejected by the arc constructor.
pub fn diagonal_exponents(diag: &[LaurentPoly]) -> Result<Vec<i64>> {
    diag.iter()
        .enumerate()
        .map(|(i, d)| d.val().finite().ok_or(CoreError::ZeroDiagonalEntry(i)))
        .collect()
}
