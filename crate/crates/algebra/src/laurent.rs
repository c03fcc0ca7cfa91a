use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::parse::parse_terms;
use crate::poly::Scalar;
use crate::rational::Rational;
use crate::valuation::Valuation;

/// A Laurent polynomial in the single variable `t` with rational coefficients.
///
/// Only nonzero coefficients are stored, so the zero polynomial is the empty
/// map and structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        LaurentPoly::monomial(Rational::one(), exp)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `t`-adic valuation: the smallest exponent with a nonzero
    /// coefficient, or `+infinity` for the zero polynomial.
    pub fn val(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&e) => Valuation::Finite(e),
            None => Valuation::Infinity,
        }
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the lowest-order term.
    pub fn lowest_coeff(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some((c, e))` if the polynomial is the single term `c t^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    /// A unit of the Laurent polynomial ring, i.e. a nonzero monomial.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    /// Inverse inside the Laurent polynomial ring, when it exists.
    pub fn inverse(&self) -> Option<LaurentPoly> {
        self.as_monomial()
            .map(|(c, e)| LaurentPoly::monomial(c.recip(), -e))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at a nonzero rational `t` (or any `t` when no negative powers occur).
    pub fn eval(&self, t: &Rational) -> Result<Rational, AlgebraError> {
        if t.is_zero() && self.terms.keys().any(|&e| e < 0) {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(t.clone(), *e as usize)
            } else {
                num_traits::pow(t.recip(), (-*e) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Parses a Laurent polynomial in `t`; exponents may be negative.
    pub fn parse(text: &str) -> Result<LaurentPoly, AlgebraError> {
        LaurentPoly::parse_in(text, "t")
    }

    /// Parses a Laurent polynomial in the named variable.
    pub fn parse_in(text: &str, var: &str) -> Result<LaurentPoly, AlgebraError> {
        let mut out = LaurentPoly::zero();
        for term in parse_terms(text)? {
            let mut exp = 0i64;
            for f in &term.factors {
                if f.name != var {
                    return Err(AlgebraError::UnknownVariable {
                        name: f.name.clone(),
                        position: f.position,
                    });
                }
                exp += f.exponent;
            }
            out.add_term(exp, term.coeff);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

forward_binop!(LaurentPoly, Add, add);
forward_binop!(LaurentPoly, Sub, sub);
forward_binop!(LaurentPoly, Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Scalar for LaurentPoly {
    fn from_rational(q: &Rational) -> Self {
        LaurentPoly::constant(q.clone())
    }
}

impl From<Rational> for LaurentPoly {
    fn from(q: Rational) -> Self {
        LaurentPoly::constant(q)
    }
}

pub(crate) fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Rational,
    factors: &str,
) -> fmt::Result {
    let negative = coeff.is_negative();
    let abs = coeff.abs();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{factors}")
    } else {
        write!(f, "{abs}*{factors}")
    }
}

/// Highest power first, e.g. `t^2 - 3/2*t + 1 + t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let factor = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            write_coeff_term(f, i == 0, c, &factor)?;
        }
        Ok(())
    }
}

/// `ord_0` of a vector of Laurent polynomials: the minimum valuation over
/// the entries that are not identically zero.
pub fn ord0(entries: &[LaurentPoly]) -> Result<i64, AlgebraError> {
    entries
        .iter()
        .filter_map(|e| e.val().finite())
        .min()
        .ok_or(AlgebraError::ZeroVector)
}

/// A quotient of two Laurent polynomials: an element of `Q(t)`, embedded in
/// the Laurent series field.
///
/// Arcs are Laurent polynomial matrices, but their inverses and the inverse
/// determinant are generally not; this type carries them exactly, and its
/// valuation `val(num) - val(den)` is what every order computation needs.
#[derive(Clone, Debug)]
pub struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(LaurentFraction { num, den }.normalized())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentFraction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return LaurentFraction::from_poly(LaurentPoly::zero());
        }
        match self.den.inverse() {
            Some(inv) => LaurentFraction::from_poly(&self.num * &inv),
            None => self,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// The fraction as a Laurent polynomial, when its denominator is a unit.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den == LaurentPoly::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn val(&self) -> Valuation {
        match (self.num.val(), self.den.val()) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => Valuation::Infinity,
        }
    }

    pub fn inverse(&self) -> Option<LaurentFraction> {
        if self.num.is_zero() {
            None
        } else {
            Some(
                LaurentFraction {
                    num: self.den.clone(),
                    den: self.num.clone(),
                }
                .normalized(),
            )
        }
    }
}

impl PartialEq for LaurentFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for LaurentFraction {}

impl<'a> Add<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn add(self, rhs: &'a LaurentFraction) -> LaurentFraction {
        if self.den == rhs.den {
            return LaurentFraction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        LaurentFraction {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn sub(self, rhs: &'a LaurentFraction) -> LaurentFraction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn mul(self, rhs: &'a LaurentFraction) -> LaurentFraction {
        LaurentFraction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

forward_binop!(LaurentFraction, Add, add);
forward_binop!(LaurentFraction, Sub, sub);
forward_binop!(LaurentFraction, Mul, mul);

impl Neg for LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        LaurentFraction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        -self.clone()
    }
}

impl Zero for LaurentFraction {
    fn zero() -> Self {
        LaurentFraction::from_poly(LaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for LaurentFraction {
    fn one() -> Self {
        LaurentFraction::from_poly(LaurentPoly::one())
    }
}

impl Scalar for LaurentFraction {
    fn from_rational(q: &Rational) -> Self {
        LaurentFraction::from_poly(LaurentPoly::constant(q.clone()))
    }
}

impl From<LaurentPoly> for LaurentFraction {
    fn from(p: LaurentPoly) -> Self {
        LaurentFraction::from_poly(p)
    }
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(lp("t^2 + t^5").val(), Valuation::Finite(2));
        assert_eq!(lp("3*t^-2 + 1").val(), Valuation::Finite(-2));
        assert_eq!(LaurentPoly::zero().val(), Valuation::Infinity);
    }

    #[test]
    fn ord0_examples() {
        assert_eq!(ord0(&[lp("t"), lp("t^-1")]).unwrap(), -1);
        assert_eq!(ord0(&[lp("0"), lp("t^3")]).unwrap(), 3);
        assert_eq!(
            ord0(&[LaurentPoly::zero(), LaurentPoly::zero()]),
            Err(AlgebraError::ZeroVector)
        );
    }

    #[test]
    fn parse_negative_exponents() {
        let p = lp("t^-3 + 1");
        assert_eq!(p.val(), Valuation::Finite(-3));
        assert_eq!(p.to_string(), "1 + t^-3");
        assert_eq!(lp("-t^2 + 3/2*t - 1").to_string(), "-t^2 + 3/2*t - 1");
        assert!(LaurentPoly::parse("x^2").is_err());
    }

    #[test]
    fn fraction_normalizes_monomial_denominators() {
        let f = LaurentFraction::new(lp("t^2 + t^3"), lp("2*t")).unwrap();
        assert_eq!(f.as_poly(), Some(&lp("1/2*t + 1/2*t^2")));
        let g = LaurentFraction::new(lp("t"), lp("1 + t")).unwrap();
        assert!(g.as_poly().is_none());
        assert_eq!(g.val(), Valuation::Finite(1));
        assert_eq!(g.inverse().unwrap().val(), Valuation::Finite(-1));
        let h = &g * &LaurentFraction::from_poly(lp("1 + t"));
        assert_eq!(h, LaurentFraction::from_poly(lp("t")));
    }

    #[test]
    fn eval_at_rational() {
        assert_eq!(lp("t + t^-1").eval(&rational(2, 1)).unwrap(), rational(5, 2));
        assert!(lp("t^-1").eval(&rational(0, 1)).is_err());
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -3i64..4), 0..4).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, rational(c, 1))))
        })
    }

    proptest! {
        #[test]
        fn valuation_is_multiplicative(f in arb_laurent(), g in arb_laurent()) {
            prop_assert_eq!((&f * &g).val(), f.val() + g.val());
        }

        #[test]
        fn valuation_is_ultrametric(f in arb_laurent(), g in arb_laurent()) {
            prop_assert!((&f + &g).val() >= f.val().min(g.val()));
        }

        #[test]
        fn print_parse_round_trip(f in arb_laurent()) {
            prop_assert_eq!(LaurentPoly::parse(&f.to_string()).unwrap(), f);
        }
    }
}
