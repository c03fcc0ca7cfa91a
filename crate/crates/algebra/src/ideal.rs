use std::fmt;

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::AlgebraError;
use crate::groebner::{reduced_groebner_basis, remainder};
use crate::order::MonomialOrder;
use crate::poly::{check_same_ring, MultiPoly, Ring};
use crate::rational::Rational;

/// A finitely generated ideal of a polynomial ring.
///
/// Operations returning an `Ideal` return it generated by its reduced
/// graded-reverse-lex Gröbner basis unless noted otherwise, so two results
/// describe the same ideal exactly when their generators agree.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<MultiPoly>) -> Result<Ideal, AlgebraError> {
        for g in &gens {
            check_same_ring(ring, g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Parses each generator against `ring`.
    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal, AlgebraError> {
        let gens = gens
            .iter()
            .map(|s| MultiPoly::parse(s.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vec![MultiPoly::one(ring)],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// No generators: the zero ideal (without computing a basis).
    pub fn has_no_generators(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Gröbner basis for `order`, returned as an ideal whose
    /// generators are that basis (sorted by increasing leading monomial).
    pub fn groebner(&self, order: MonomialOrder, budget: &mut Budget) -> Result<Ideal, AlgebraError> {
        let gens = reduced_groebner_basis(&self.gens, &self.ring, &order, budget)?;
        Ok(Ideal {
            ring: self.ring.clone(),
            gens,
        })
    }

    /// Reduced graded-reverse-lex basis.
    pub fn reduced(&self, budget: &mut Budget) -> Result<Ideal, AlgebraError> {
        self.groebner(MonomialOrder::GrevLex, budget)
    }

    pub fn is_unit(&self, budget: &mut Budget) -> Result<bool, AlgebraError> {
        if self.gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Ok(true);
        }
        let gb = self.reduced(budget)?;
        Ok(gb.gens.len() == 1 && gb.gens[0].is_constant())
    }

    /// Whether the ideal is proper, i.e. its zero set over the algebraic
    /// closure is nonempty.
    pub fn is_proper(&self, budget: &mut Budget) -> Result<bool, AlgebraError> {
        Ok(!self.is_unit(budget)?)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Ideal membership via the remainder against a Gröbner basis.
    pub fn member(&self, f: &MultiPoly, budget: &mut Budget) -> Result<bool, AlgebraError> {
        check_same_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        let gb = self.reduced(budget)?;
        Ok(remainder(f, &gb.gens, &MonomialOrder::GrevLex).is_zero())
    }

    /// Normal form of `f` modulo the ideal (graded reverse lex).
    pub fn normal_form(&self, f: &MultiPoly, budget: &mut Budget) -> Result<MultiPoly, AlgebraError> {
        check_same_ring(&self.ring, f.ring())?;
        let gb = self.reduced(budget)?;
        Ok(remainder(f, &gb.gens, &MonomialOrder::GrevLex))
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains(&self, other: &Ideal, budget: &mut Budget) -> Result<bool, AlgebraError> {
        check_same_ring(&self.ring, &other.ring)?;
        let gb = self.reduced(budget)?;
        Ok(other
            .gens
            .iter()
            .all(|g| remainder(g, &gb.gens, &MonomialOrder::GrevLex).is_zero()))
    }

    pub fn equals(&self, other: &Ideal, budget: &mut Budget) -> Result<bool, AlgebraError> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.reduced(budget)?.gens == other.reduced(budget)?.gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal {
            ring: self.ring.clone(),
            gens,
        })
    }

    pub fn with_generator(&self, f: MultiPoly) -> Result<Ideal, AlgebraError> {
        check_same_ring(&self.ring, f.ring())?;
        let mut gens = self.gens.clone();
        if !f.is_zero() {
            gens.push(f);
        }
        Ok(Ideal {
            ring: self.ring.clone(),
            gens,
        })
    }

    /// The same generators in a ring containing all variables of this one.
    pub fn embed(&self, target: &Ring) -> Result<Ideal, AlgebraError> {
        Ideal::new(
            target,
            self.gens.iter().map(|g| g.embed(target)).collect::<Result<_, _>>()?,
        )
    }

    /// The same generators with variable `i` sent to `mapping[i]` of `target`.
    pub fn map_vars(&self, target: &Ring, mapping: &[usize]) -> Ideal {
        Ideal {
            ring: target.clone(),
            gens: self
                .gens
                .iter()
                .map(|g| g.map_vars(target, mapping))
                .filter(|g| !g.is_zero())
                .collect(),
        }
    }

    /// `I ∩ Q[remaining variables]`, returned in the ring of the remaining
    /// variables (original order). Computed with a block order that puts the
    /// dropped variables first, keeping basis elements free of them.
    pub fn eliminate<S: AsRef<str>>(&self, drop: &[S], budget: &mut Budget) -> Result<Ideal, AlgebraError> {
        let mut drop_idx = Vec::new();
        for d in drop {
            let idx = self
                .ring
                .index_of(d.as_ref())
                .ok_or_else(|| AlgebraError::UnknownVariable {
                    name: d.as_ref().to_string(),
                    position: 0,
                })?;
            if !drop_idx.contains(&idx) {
                drop_idx.push(idx);
            }
        }
        let keep_idx: Vec<usize> = (0..self.ring.len()).filter(|i| !drop_idx.contains(i)).collect();
        let keep_ring = Ring::new(keep_idx.iter().map(|&i| self.ring.vars()[i].clone()))?;
        if drop_idx.is_empty() {
            return self.reduced(budget);
        }

        let order_vars: Vec<String> = drop_idx
            .iter()
            .chain(keep_idx.iter())
            .map(|&i| self.ring.vars()[i].clone())
            .collect();
        let block_ring = Ring::new(order_vars)?;
        let mut mapping = vec![0usize; self.ring.len()];
        for (pos, &i) in drop_idx.iter().chain(keep_idx.iter()).enumerate() {
            mapping[i] = pos;
        }
        let moved = self.map_vars(&block_ring, &mapping);
        let gb = moved.groebner(MonomialOrder::Block(drop_idx.len()), budget)?;

        let k = drop_idx.len();
        let back: Vec<usize> = (0..block_ring.len()).map(|p| p.saturating_sub(k)).collect();
        let gens = gb
            .gens
            .iter()
            .filter(|g| (0..k).all(|v| !g.uses_var(v)))
            .map(|g| g.map_vars(&keep_ring, &back))
            .collect();
        Ok(Ideal {
            ring: keep_ring,
            gens,
        })
    }

    /// `(I : f^∞)`: adjoin `z`, add `1 - z f`, eliminate `z`.
    pub fn saturate(&self, f: &MultiPoly, budget: &mut Budget) -> Result<Ideal, AlgebraError> {
        check_same_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if f.is_constant() {
            return self.reduced(budget);
        }
        let z = self.ring.fresh_name("sat_");
        let big = self.ring.extended(std::slice::from_ref(&z), true)?;
        let mut gens: Vec<MultiPoly> = self
            .gens
            .iter()
            .map(|g| g.embed(&big))
            .collect::<Result<_, _>>()?;
        let zf = &MultiPoly::var_at(&big, 0) * &f.embed(&big)?;
        gens.push(&MultiPoly::one(&big) - &zf);
        Ideal::new(&big, gens)?.eliminate(&[z], budget)
    }

    /// `(I : J^∞)` as the intersection of the saturations by the generators
    /// of `J`.
    pub fn saturate_by_ideal(&self, j: &Ideal, budget: &mut Budget) -> Result<Ideal, AlgebraError> {
        check_same_ring(&self.ring, &j.ring)?;
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let s = self.saturate(g, budget)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s, budget)?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            // J = 0: every element multiplies 0^k into I.
            None => Ok(Ideal::unit(&self.ring)),
        }
    }

    /// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal, budget: &mut Budget) -> Result<Ideal, AlgebraError> {
        check_same_ring(&self.ring, &other.ring)?;
        let t = self.ring.fresh_name("int_");
        let big = self.ring.extended(std::slice::from_ref(&t), true)?;
        let tv = MultiPoly::var_at(&big, 0);
        let one_minus_t = &MultiPoly::one(&big) - &tv;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&tv * &g.embed(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&big)?);
        }
        Ideal::new(&big, gens)?.eliminate(&[t], budget)
    }

    /// Whether every generator vanishes at the rational point.
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.gens.iter().all(|g| g.evaluate(point).is_zero())
    }

    /// Product of two ideals.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The ideal generated by all variables of the listed names.
    pub fn generated_by_vars<S: AsRef<str>>(ring: &Ring, names: &[S]) -> Result<Ideal, AlgebraError> {
        let gens = names
            .iter()
            .map(|n| MultiPoly::var(ring, n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in [{}]", self, self.ring)
    }
}
