//! Seeded random arcs.
//!
//! The distribution is fixed so that results are reproducible from the
//! seed: an arc is a product of one to three factors, each either a
//! diagonal matrix of powers `t^e` with `e ∈ [-2, 2]` or an elementary
//! matrix `I + p E_ij` whose entry `p` has one or two terms with degrees in
//! `[-2, 2]` and coefficients in `{-2, -1, 1, 2}`. Torus groups only draw
//! diagonal factors; for `SL(m)` the last exponent is minus the sum of the
//! others.

use pairstab_algebra::LaurentPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arc::Arc;
use crate::error::{CoreError, Result};
use crate::group::{GroupKind, GroupPresentation};
use crate::util::int;

pub struct ArcSampler {
    rng: ChaCha8Rng,
}

impl ArcSampler {
    pub fn new(seed: u64) -> Self {
        ArcSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coefficient(&mut self) -> i64 {
        [-2, -1, 1, 2][self.rng.gen_range(0..4)]
    }

    /// One or two terms, degrees in `[lo, hi]`, coefficients in
    /// `{-2, -1, 1, 2}`; never zero.
    pub fn small_laurent(&mut self, lo: i64, hi: i64) -> LaurentPoly {
        loop {
            let terms = self.rng.gen_range(1..=2);
            let p = LaurentPoly::from_terms(
                (0..terms).map(|_| (self.rng.gen_range(lo..=hi), int(self.coefficient()))),
            );
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn exponents(&mut self, m: usize, special: bool) -> Vec<i64> {
        let mut e: Vec<i64> = (0..m).map(|_| self.rng.gen_range(-2..=2)).collect();
        if special {
            let head: i64 = e[..m - 1].iter().sum();
            e[m - 1] = -head;
        }
        e
    }

    pub fn elementary(&mut self, m: usize) -> Arc {
        let i = self.rng.gen_range(0..m);
        let j = (i + self.rng.gen_range(1..m)) % m;
        Arc::elementary(m, i, j, self.small_laurent(-2, 2))
    }

    /// A random arc of `group` from the documented distribution.
    pub fn arc_for(&mut self, group: &GroupPresentation) -> Result<Arc> {
        let m = group.size();
        let (special, diagonal_only) = match group.kind() {
            GroupKind::Torus(_) => (false, true),
            GroupKind::SpecialLinear(_) => (true, m < 2),
            GroupKind::GeneralLinear(_) => (false, m < 2),
            GroupKind::Custom(_) => return Err(CoreError::UnsupportedGroup(group.label())),
        };
        let factors = self.rng.gen_range(1..=3);
        let mut arc = Arc::identity(m);
        for _ in 0..factors {
            let f = if diagonal_only || self.rng.gen_bool(0.5) {
                Arc::one_parameter(&self.exponents(m, special))
            } else {
                self.elementary(m)
            };
            arc = arc.mul(&f)?;
        }
        Ok(arc)
    }

    /// `diag(c_i t^{a_i} (1 + p_i))` with `p_i` a polynomial without
    /// constant term: a torus arc whose one-parameter part is `a`.
    pub fn unit_perturbed_torus_arc(&mut self, m: usize) -> (Arc, Vec<i64>) {
        let a = self.exponents(m, false);
        let diag = a
            .iter()
            .map(|&e| {
                let unit = &LaurentPoly::one() + &self.small_laurent(1, 3);
                let c = int(self.coefficient());
                unit.scale(&c).shift(e)
            })
            .collect();
        (Arc::diagonal(diag).expect("units times powers are invertible"), a)
    }

    /// A product of elementary matrices with polynomial (integral) entries
    /// and a diagonal of units: integral with integral inverse.
    pub fn integral_unit(&mut self, m: usize) -> Arc {
        let mut arc = Arc::diagonal(
            (0..m)
                .map(|_| &LaurentPoly::constant(int(self.coefficient())) + &self.small_laurent(1, 2))
                .collect(),
        )
        .expect("units are invertible");
        if m >= 2 {
            for _ in 0..self.rng.gen_range(1..=2) {
                let i = self.rng.gen_range(0..m);
                let j = (i + self.rng.gen_range(1..m)) % m;
                let e = Arc::elementary(m, i, j, self.small_laurent(0, 2));
                arc = arc.mul(&e).expect("same size");
            }
        }
        arc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{arcs_equivalent, check_arc, torus_arc_exponents};

    #[test]
    fn arcs_lie_in_their_groups() {
        let mut s = ArcSampler::new(7);
        for g in [
            GroupPresentation::special_linear(2).unwrap(),
            GroupPresentation::general_linear(3).unwrap(),
            GroupPresentation::torus(2).unwrap(),
        ] {
            for _ in 0..20 {
                let a = s.arc_for(&g).unwrap();
                assert!(check_arc(&g, &a).unwrap(), "{a:?} not in {}", g.label());
            }
        }
        let custom = GroupPresentation::custom(1, &["g1_1 - 1"]).unwrap();
        assert!(s.arc_for(&custom).is_err());
    }

    #[test]
    fn perturbed_torus_arcs_keep_their_exponents() {
        let mut s = ArcSampler::new(3);
        for _ in 0..20 {
            let (arc, a) = s.unit_perturbed_torus_arc(3);
            assert_eq!(torus_arc_exponents(&arc).unwrap(), a);
        }
    }

    #[test]
    fn integral_units_are_trivial() {
        let mut s = ArcSampler::new(11);
        for _ in 0..20 {
            let u = s.integral_unit(2);
            assert!(arcs_equivalent(&u, &Arc::identity(2)).unwrap(), "{u:?}");
        }
    }

    #[test]
    fn seeds_reproduce() {
        let g = GroupPresentation::special_linear(2).unwrap();
        let a: Vec<Arc> = {
            let mut s = ArcSampler::new(99);
            (0..5).map(|_| s.arc_for(&g).unwrap()).collect()
        };
        let b: Vec<Arc> = {
            let mut s = ArcSampler::new(99);
            (0..5).map(|_| s.arc_for(&g).unwrap()).collect()
        };
        assert_eq!(a, b);
    }
}
