//! Binary forms of degree `d` as pairs `[f : 1]` under `SL(2)`.
//!
//! The exact torus test only sees roots at `0` and `∞`. A root of
//! multiplicity greater than `d/2` is unique, hence rational, so it is
//! enough to also probe the translates `x ↦ x + αy` for each rational root
//! `α`, which move that root to `0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use pairstab_algebra::{Budget, LaurentPoly, Rational, Valuation};

use crate::arc::{mu_weight, Arc};
use crate::error::{CoreError, Result};
use crate::group::{GroupPresentation, Representation};
use crate::util::int;

use super::{torus_semistable, Certificate, Pair, Status, Verdict};

/// `f = Σ c_i x^i y^(d-i)` under the rank-one torus `diag(s, s⁻¹)` of
/// `SL(2)`: coordinate `i` has weight `2i − d`; `W` is trivial with `w = 1`.
pub fn binary_form_pair(coeffs: &[Rational]) -> Result<Pair> {
    let d = coeffs.len() as i64 - 1;
    if d < 1 {
        return Err(CoreError::InvalidProblem("binary form needs degree at least 1".into()));
    }
    let v_rep = Representation::torus_weights(1, (0..=d).map(|i| vec![2 * i - d]).collect())?;
    let w_rep = Representation::torus_weights(1, vec![vec![0]])?;
    Pair::new(
        GroupPresentation::torus(1)?,
        v_rep,
        w_rep,
        coeffs.to_vec(),
        vec![int(1)],
    )
}

/// Coefficients of `f(x + αy, y)`.
pub fn translate(coeffs: &[Rational], alpha: &Rational) -> Vec<Rational> {
    let n = coeffs.len();
    let mut out = vec![Rational::zero(); n];
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (x + αy)^i = Σ_k C(i,k) α^(i-k) x^k y^(i-k)
        let mut binom = BigInt::one();
        for k in (0..=i).rev() {
            let pow = pow_rational(alpha, (i - k) as u32);
            out[k] += c * Rational::from_integer(binom.clone()) * pow;
            if k > 0 {
                binom = binom * BigInt::from(k) / BigInt::from(i - k + 1);
            }
        }
    }
    out
}

fn pow_rational(a: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            out.push(&n / &i);
        }
        i += 1;
    }
    out
}

/// Distinct rational roots of `Σ c_i x^i`, ascending.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let Some(high) = ints.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = BTreeSet::new();
    if low > 0 {
        roots.insert(Rational::zero());
    }
    let eval = |x: &Rational| -> bool {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
            .is_zero()
    };
    for p in divisors(&ints[low]) {
        for q in divisors(&ints[high]) {
            for sign in [1, -1] {
                let x = Rational::new(BigInt::from(sign) * &p, q.clone());
                if eval(&x) {
                    roots.insert(x);
                }
            }
        }
    }
    roots.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryProbe {
    /// The form was probed after `x ↦ x + αy`.
    pub alpha: Rational,
    pub translated: Vec<Rational>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryFormReport {
    pub status: Status,
    pub probes: Vec<BinaryProbe>,
    /// An `SL(2)` arc with its weight on `[f : 1]`, computed through the
    /// `Sym^d` action.
    pub destabilizer: Option<(Arc, i64)>,
}

/// Semistability of a binary form under `SL(2)` by torus probes at the
/// identity and at every rational root.
pub fn classify_binary_form(coeffs: &[Rational], budget: &mut Budget) -> Result<BinaryFormReport> {
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(CoreError::ZeroVector);
    }
    let d = coeffs.len() as u32 - 1;
    let mut alphas = vec![Rational::zero()];
    alphas.extend(rational_roots(coeffs).into_iter().filter(|a| !a.is_zero()));
    let mut probes = Vec::new();
    let mut destabilizer = None;
    for alpha in alphas {
        let translated = translate(coeffs, &alpha);
        let verdict = torus_semistable(&binary_form_pair(&translated)?, budget)?;
        if destabilizer.is_none() {
            if let Certificate::Destabilizing { exponents, mu } = &verdict.certificate {
                let a = exponents[0];
                let g = Arc::parse(&[
                    vec!["1".to_string(), "0".to_string()],
                    vec![alpha.to_string(), "1".to_string()],
                ])?;
                let torus = Arc::diagonal(vec![LaurentPoly::t_pow(a), LaurentPoly::t_pow(-a)])?;
                let rho = torus.mul(&g)?;
                let sl2 = GroupPresentation::special_linear(2)?;
                let sym = Representation::symmetric_power(&sl2, d)?;
                let check = mu_weight(&sym, &Representation::trivial(&sl2), coeffs, &[int(1)], &rho)?;
                if check != Valuation::Finite(*mu) {
                    return Err(CoreError::CertificateCheck(format!(
                        "SL(2) arc weight {check} differs from torus weight {mu}"
                    )));
                }
                destabilizer = Some((rho, *mu));
            }
        }
        probes.push(BinaryProbe {
            alpha,
            translated,
            verdict,
        });
    }
    let status = if destabilizer.is_some() {
        Status::Unstable
    } else {
        Status::Semistable
    };
    Ok(BinaryFormReport {
        status,
        probes,
        destabilizer,
    })
}
