use std::fmt;
use std::ops::{Add, Sub};

/// An integer extended by `+infinity`, the value group of the `t`-adic
/// valuation together with the valuation of zero.
///
/// `Finite(_) < Infinity`, so `min` over valuations behaves as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl From<i64> for Valuation {
    fn from(v: i64) -> Self {
        Valuation::Finite(v)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl Add<i64> for Valuation {
    type Output = Valuation;
    fn add(self, rhs: i64) -> Valuation {
        self + Valuation::Finite(rhs)
    }
}

impl Sub<i64> for Valuation {
    type Output = Valuation;
    fn sub(self, rhs: i64) -> Valuation {
        self + Valuation::Finite(-rhs)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_largest() {
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinity);
        assert_eq!(
            [Valuation::Infinity, Valuation::Finite(3)].iter().min(),
            Some(&Valuation::Finite(3))
        );
        assert_eq!(Valuation::Finite(2) + Valuation::Infinity, Valuation::Infinity);
        assert_eq!(Valuation::Infinity.to_string(), "+inf");
    }
}
