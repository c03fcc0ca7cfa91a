use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::laurent::write_coeff_term;
use crate::order::MonomialOrder;
use crate::parse::parse_terms;
use crate::rational::Rational;

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u32>;

/// A commutative ring containing the rationals, into which polynomials can
/// be evaluated.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// An ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Ring, AlgebraError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(AlgebraError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Ring { vars: vars.into() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A variable name of the form `{stem}{k}` not already in the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        (0..)
            .map(|k| format!("{stem}{k}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }

    /// This ring with extra variables appended (or prepended).
    pub fn extended(&self, extra: &[String], prepend: bool) -> Result<Ring, AlgebraError> {
        let mut vars: Vec<String> = Vec::new();
        if prepend {
            vars.extend(extra.iter().cloned());
            vars.extend(self.vars.iter().cloned());
        } else {
            vars.extend(self.vars.iter().cloned());
            vars.extend(extra.iter().cloned());
        }
        Ring::new(vars)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.vars.join(","))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vars.join(","))
    }
}

pub(crate) fn check_same_ring(a: &Ring, b: &Ring) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

/// A multivariate polynomial with rational coefficients over a [`Ring`].
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        MultiPoly::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        MultiPoly::term(ring, vec![0; ring.len()], c)
    }

    pub fn term(ring: &Ring, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.len(), ring.len(), "monomial length must match the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable at position `idx`.
    pub fn var_at(ring: &Ring, idx: usize) -> Self {
        let mut mono = vec![0; ring.len()];
        mono[idx] = 1;
        MultiPoly::term(ring, mono, Rational::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, AlgebraError> {
        let idx = ring.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
            name: name.to_string(),
            position: 0,
        })?;
        Ok(MultiPoly::var_at(ring, idx))
    }

    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut out = MultiPoly::zero(ring);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        debug_assert_eq!(mono.len(), self.ring.len());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &[u32]) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m[idx] > 0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Leading `(monomial, coefficient)` under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// The polynomial divided by its leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Evaluates at `values` (one per ring variable) in any [`Scalar`] ring.
    pub fn evaluate<T: Scalar>(&self, values: &[T]) -> T {
        assert_eq!(values.len(), self.ring.len(), "one value per variable");
        let mut powers: Vec<Vec<T>> = values.iter().map(|v| vec![T::one(), v.clone()]).collect();
        let mut acc = T::zero();
        for (mono, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap().clone() * values[i].clone();
                    table.push(next);
                }
                t = t * table[e as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring,
    /// which becomes the ring of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut out = MultiPoly::zero(&target);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&target), p.clone()])
            .collect();
        for (mono, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &images[i];
                    table.push(next);
                }
                t = &t * &table[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `mapping[i]`.
    pub fn map_vars(&self, target: &Ring, mapping: &[usize]) -> MultiPoly {
        assert_eq!(mapping.len(), self.ring.len());
        let mut out = MultiPoly::zero(target);
        for (mono, c) in &self.terms {
            let mut m = vec![0u32; target.len()];
            for (i, &e) in mono.iter().enumerate() {
                m[mapping[i]] += e;
            }
            out.add_term(m, c.clone());
        }
        out
    }

    /// Moves the polynomial into a ring containing all of its ring's variable
    /// names.
    pub fn embed(&self, target: &Ring) -> Result<MultiPoly, AlgebraError> {
        let mapping = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target.index_of(v).ok_or_else(|| AlgebraError::UnknownVariable {
                    name: v.clone(),
                    position: 0,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.map_vars(target, &mapping))
    }

    /// Moves the polynomial into a smaller ring; fails if a variable of the
    /// polynomial is missing from `target`.
    pub fn restrict(&self, target: &Ring) -> Result<MultiPoly, AlgebraError> {
        let mut out = MultiPoly::zero(target);
        for (mono, c) in &self.terms {
            let mut m = vec![0u32; target.len()];
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.ring.vars()[i];
                let j = target.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
                    name: name.clone(),
                    position: 0,
                })?;
                m[j] = e;
            }
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    /// Parses `text` with variables resolved against `ring`.
    pub fn parse(text: &str, ring: &Ring) -> Result<MultiPoly, AlgebraError> {
        let mut out = MultiPoly::zero(ring);
        for term in parse_terms(text)? {
            let mut mono = vec![0u32; ring.len()];
            for f in &term.factors {
                let idx = ring.index_of(&f.name).ok_or_else(|| AlgebraError::UnknownVariable {
                    name: f.name.clone(),
                    position: f.position,
                })?;
                if f.exponent < 0 {
                    return Err(AlgebraError::Syntax {
                        position: f.position,
                        message: format!("negative exponent on '{}'", f.name),
                    });
                }
                mono[idx] += f.exponent as u32;
            }
            out.add_term(mono, term.coeff);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in multiplication");
        let mut out = MultiPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

forward_binop!(MultiPoly, Add, add);
forward_binop!(MultiPoly, Sub, sub);
forward_binop!(MultiPoly, Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

/// Canonical form: terms in decreasing graded-reverse-lex order,
/// e.g. `3/2*x^2*y - t + 1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        let order = MonomialOrder::GrevLex;
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let factors: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        self.ring.vars()[j].clone()
                    } else {
                        format!("{}^{}", self.ring.vars()[j], e)
                    }
                })
                .collect();
            write_coeff_term(f, i == 0, c, &factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in [{}]", self, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> Ring {
        Ring::new(vars.iter().copied()).unwrap()
    }

    #[test]
    fn parse_evident_polynomial() {
        let r = ring(&["x", "y", "t"]);
        let p = MultiPoly::parse("3/2*x^2*y - t", &r).unwrap();
        assert_eq!(p.coeff(&[2, 1, 0]), rational(3, 2));
        assert_eq!(p.coeff(&[0, 0, 1]), rational(-1, 1));
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "3/2*x^2*y - t");
    }

    #[test]
    fn parse_errors() {
        let r = ring(&["x", "y"]);
        assert!(matches!(
            MultiPoly::parse("x^^2", &r),
            Err(AlgebraError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            MultiPoly::parse("x + z", &r),
            Err(AlgebraError::UnknownVariable { position: 4, .. })
        ));
        assert!(MultiPoly::parse("x^-1", &r).is_err());
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(["x", "x"]).is_err());
        assert!(Ring::new(["1x"]).is_err());
        assert_eq!(ring(&["z0", "z1"]).fresh_name("z"), "z2");
    }

    #[test]
    fn substitution_and_evaluation() {
        let r = ring(&["x", "y"]);
        let s = ring(&["u"]);
        let p = MultiPoly::parse("x^2 - y", &r).unwrap();
        let u = MultiPoly::var(&s, "u").unwrap();
        let q = p.substitute(&[u.clone(), &u * &u]);
        assert!(q.is_zero());
        let v = p.evaluate(&[rational(3, 1), rational(1, 2)]);
        assert_eq!(v, rational(17, 2));
    }

    #[test]
    fn embed_and_restrict() {
        let r = ring(&["x", "y"]);
        let big = ring(&["a", "y", "x"]);
        let p = MultiPoly::parse("x*y^2 + 2", &r).unwrap();
        let e = p.embed(&big).unwrap();
        assert_eq!(e.to_string(), "y^2*x + 2");
        assert_eq!(e.restrict(&r).unwrap(), p);
        let a = MultiPoly::var(&big, "a").unwrap();
        assert!(a.restrict(&r).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(
            |ts| {
                let r = Ring::new(["x", "y", "z"]).unwrap();
                MultiPoly::from_terms(
                    &r,
                    ts.into_iter()
                        .map(|((a, b, c), n, d)| (vec![a, b, c], rational(n, d))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let back = MultiPoly::parse(&p.to_string(), p.ring()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn evaluation_is_a_ring_map(p in arb_poly(), q in arb_poly(), a in -3i64..4, b in -3i64..4) {
            let pt = [rational(a, 1), rational(b, 2), rational(1, 3)];
            prop_assert_eq!((&p * &q).evaluate(&pt), p.evaluate(&pt) * q.evaluate(&pt));
        }
    }
}
