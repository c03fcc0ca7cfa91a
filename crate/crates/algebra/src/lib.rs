//! Exact polynomial algebra over the rationals.
//!
//! This crate is the arithmetic substrate for the rest of the workspace:
//!
//! * [`LaurentPoly`] and [`LaurentFraction`]: elements of `Q(t)` viewed inside
//!   the Laurent field, with the `t`-adic valuation [`LaurentPoly::val`].
//! * [`MultiPoly`] over a named [`Ring`] of variables.
//! * [`Ideal`] with reduced Gröbner bases, elimination, saturation,
//!   intersection and membership, all under an explicit [`Budget`].
//! * A small text grammar for polynomials ([`MultiPoly::parse`],
//!   [`LaurentPoly::parse`]) whose printer round-trips.

#[macro_use]
mod macros;

mod budget;
mod error;
mod groebner;
mod ideal;
mod laurent;
pub mod matrix;
mod order;
mod parse;
mod poly;
mod rational;
mod valuation;

pub use budget::{Budget, BudgetExceeded};
pub use error::AlgebraError;
pub use groebner::satisfies_buchberger_criterion;
pub use ideal::Ideal;
pub use laurent::{ord0, LaurentFraction, LaurentPoly};
pub use order::MonomialOrder;
pub use poly::{Monomial, MultiPoly, Ring, Scalar};
pub use rational::{parse_rational, rational, Rational};
pub use valuation::Valuation;

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
