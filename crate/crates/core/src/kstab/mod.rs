//! Donaldson–Futaki invariants and norms of models.
//!
//! The invariants only need the leading Hilbert coefficients `(a0, a1)` of
//! the fiber and `(b0, b1)` of the degeneration. For toric models these come
//! from a polytope `P` and a convex piecewise-linear `f` on it:
//!
//! * `a0 = vol(P)`, `a1 = σ(∂P)/2` with the lattice boundary measure,
//! * `b0 = −∫_P f`, `b1 = −½ ∫_{∂P} f dσ`.
//!
//! With this sign choice affine functions on the interval and on the
//! standard simplex have `DF = 0`. The toric norm is `∫f/vol − min f`.

mod plfunction;
mod polytope;
mod uniform;

use num_traits::{One, Zero};
use pairstab_algebra::Rational;

use crate::error::{CoreError, Result};

pub use plfunction::{AffineFunction, Cell, PLFunction};
pub use polytope::{lattice_length, Point, Polytope};
pub use uniform::{toric_uniform_search, Crease, UniformReport, UniformVerdict};

/// `h⁰(X, kL) = a0 kⁿ + a1 kⁿ⁻¹ + …`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbCoeffs {
    pub a0: Rational,
    pub a1: Rational,
}

/// Numerical data of a model: `(b0, b1)` from the weight expansion, the
/// exponent `r`, the dimension `n` and optional intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelNumbers {
    pub b0: Rational,
    pub b1: Rational,
    pub r: Rational,
    pub n: u32,
    /// Model bundle against `n` copies of the pulled-back polarization.
    pub l_mix: Option<Rational>,
    /// Top self-intersection of the model bundle.
    pub l_top: Option<Rational>,
    /// `Lⁿ` on the fiber.
    pub l_n: Option<Rational>,
}

impl ModelNumbers {
    /// `r = 1`, `n = 1`, no intersection numbers.
    pub fn from_weights(b0: Rational, b1: Rational) -> Self {
        ModelNumbers {
            b0,
            b1,
            r: Rational::one(),
            n: 1,
            l_mix: None,
            l_top: None,
            l_n: None,
        }
    }
}

/// `(b0 a1 − b1 a0) / a0²`.
pub fn df_invariant(a: &HilbCoeffs, b: &ModelNumbers) -> Result<Rational> {
    if a.a0.is_zero() {
        return Err(CoreError::ZeroLeadingCoefficient);
    }
    Ok((&b.b0 * &a.a1 - &b.b1 * &a.a0) / (&a.a0 * &a.a0))
}

/// `ℓ_mix / ((n+1) Lⁿ) − ℓ_top / ((n+1) rⁿ Lⁿ)`.
pub fn model_norm(b: &ModelNumbers) -> Result<Rational> {
    let l_mix = b.l_mix.as_ref().ok_or(CoreError::MissingIntersectionData("l_mix"))?;
    let l_top = b.l_top.as_ref().ok_or(CoreError::MissingIntersectionData("l_top"))?;
    let l_n = b.l_n.as_ref().ok_or(CoreError::MissingIntersectionData("l_n"))?;
    if l_n.is_zero() {
        return Err(CoreError::MissingIntersectionData("l_n must be nonzero"));
    }
    if b.n == 0 || b.r <= Rational::zero() {
        return Err(CoreError::InvalidProblem("model needs n ≥ 1 and r > 0".into()));
    }
    let n1 = Rational::from_integer((b.n + 1).into());
    let rn = (0..b.n).fold(Rational::one(), |acc, _| acc * &b.r);
    Ok(l_mix / (&n1 * l_n) - l_top / (n1 * rn * l_n))
}

/// Leading Ehrhart coefficients: volume and half the lattice boundary
/// measure.
pub fn toric_hilb(p: &Polytope) -> HilbCoeffs {
    HilbCoeffs {
        a0: p.volume(),
        a1: p.boundary_measure() / Rational::from_integer(2.into()),
    }
}

/// The toric invariants together with the integrals they are built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDf {
    pub volume: Rational,
    pub boundary_measure: Rational,
    pub integral: Rational,
    pub boundary_integral: Rational,
    pub hilb: HilbCoeffs,
    pub b0: Rational,
    pub b1: Rational,
    pub df: Rational,
}

pub fn toric_df_report(p: &Polytope, f: &PLFunction) -> Result<ToricDf> {
    let hilb = toric_hilb(p);
    let integral = f.integral(p)?;
    let boundary_integral = f.boundary_integral(p)?;
    let b0 = -integral.clone();
    let b1 = -&boundary_integral / Rational::from_integer(2.into());
    let df = df_invariant(&hilb, &ModelNumbers::from_weights(b0.clone(), b1.clone()))?;
    Ok(ToricDf {
        volume: p.volume(),
        boundary_measure: p.boundary_measure(),
        integral,
        boundary_integral,
        hilb,
        b0,
        b1,
        df,
    })
}

pub fn toric_df(p: &Polytope, f: &PLFunction) -> Result<Rational> {
    Ok(toric_df_report(p, f)?.df)
}

/// `∫_P f / vol(P) − min_P f`.
pub fn toric_minnorm(p: &Polytope, f: &PLFunction) -> Result<Rational> {
    Ok(f.integral(p)? / p.volume() - f.minimum(p)?)
}

#[cfg(test)]
mod tests;
