use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::AlgebraError;

pub type Rational = BigRational;

/// Shorthand for `n/d` as an exact rational. Panics on `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let s = text.trim();
    let bad = |message: &str| AlgebraError::Syntax {
        position: 0,
        message: format!("{message}: '{s}'"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num.parse().map_err(|_| bad("invalid rational"))?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad("invalid rational"))?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_in_lowest_terms() {
        assert_eq!(parse_rational("6/4").unwrap(), rational(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), rational(-3, 1));
        assert_eq!(parse_rational("1/-2").unwrap(), rational(-1, 2));
        assert_eq!(rational(3, 2).to_string(), "3/2");
        assert_eq!(rational(4, 2).to_string(), "2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }
}
