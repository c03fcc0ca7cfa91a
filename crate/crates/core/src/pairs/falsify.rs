use pairstab_algebra::Valuation;

use crate::arc::{check_arc, Arc};
use crate::error::{CoreError, Result};
use crate::group::GroupKind;
use crate::sampling::ArcSampler;

use super::Pair;

#[derive(Debug, Clone, PartialEq)]
pub struct Falsified {
    pub arc: Arc,
    pub mu: i64,
    /// Zero-based index of the draw that produced the arc.
    pub draw: u64,
}

/// Draws up to `draws` arcs from [`ArcSampler`] and returns the first with
/// negative weight, re-verified before it is returned.
pub fn sample_falsifier(p: &Pair, draws: u64, seed: u64) -> Result<Option<Falsified>> {
    if let GroupKind::Custom(_) = p.group().kind() {
        return Err(CoreError::UnsupportedGroup(p.group().label()));
    }
    if p.w_is_zero() {
        return Ok(None);
    }
    let mut sampler = ArcSampler::new(seed);
    for draw in 0..draws {
        let arc = sampler.arc_for(p.group())?;
        if let Valuation::Finite(mu) = p.mu(&arc)? {
            if mu < 0 {
                let again = p.mu(&arc)?;
                if !check_arc(p.group(), &arc)? || again != Valuation::Finite(mu) {
                    return Err(CoreError::CertificateCheck(
                        "sampled arc failed re-verification".into(),
                    ));
                }
                return Ok(Some(Falsified { arc, mu, draw }));
            }
        }
    }
    Ok(None)
}
