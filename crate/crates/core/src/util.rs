use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use pairstab_algebra::Rational;

use crate::error::{CoreError, Result};

/// Scales a rational vector by a positive factor to coprime integers.
/// The zero vector maps to itself.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn to_i64_vector(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| CoreError::CertificateCheck("integer out of range".into()))
        })
        .collect()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
