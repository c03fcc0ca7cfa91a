//! Stability of pairs, degeneration loci of group actions and
//! Donaldson–Futaki invariants of toric models.

pub mod arc;
pub mod error;
pub mod group;
pub mod kstab;
pub mod locus;
pub mod lp;
pub mod pairs;
pub mod sampling;
pub mod util;
pub mod weights;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
