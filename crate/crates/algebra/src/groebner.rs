//! Buchberger's algorithm on a term-list representation.
//!
//! Polynomials are kept as vectors of `(monomial, coefficient)` sorted in
//! decreasing order for a fixed [`MonomialOrder`]; multiplying by a monomial
//! preserves that order, so reduction steps are linear merges.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::budget::{Budget, BudgetExceeded};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, MultiPoly, Ring};
use crate::rational::Rational;

pub(crate) type TermList = Vec<(Monomial, Rational)>;

pub(crate) fn to_terms(p: &MultiPoly, order: &MonomialOrder) -> TermList {
    let mut t: TermList = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

pub(crate) fn from_terms(t: TermList, ring: &Ring) -> MultiPoly {
    MultiPoly::from_terms(ring, t)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn make_monic(mut p: TermList) -> TermList {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in p.iter_mut() {
                *c *= &inv;
            }
        }
    }
    p
}

/// `p - c * x^shift * g`, where the leading terms are known to cancel when
/// `skip_heads` is set.
fn sub_scaled(
    p: &[(Monomial, Rational)],
    c: &Rational,
    shift: &[u32],
    g: &[(Monomial, Rational)],
    order: &MonomialOrder,
    skip_heads: bool,
) -> TermList {
    let start = usize::from(skip_heads);
    let p = &p[start.min(p.len())..];
    let g = &g[start.min(g.len())..];
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| -> Monomial { g[k].0.iter().zip(shift).map(|(a, b)| a + b).collect() };
    let mut gm = if j < g.len() { Some(shifted(0)) } else { None };
    while i < p.len() || gm.is_some() {
        let ord = match (&gm, i < p.len()) {
            (Some(m), true) => order.cmp(&p[i].0, m),
            (Some(_), false) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let m = gm.take().unwrap();
                out.push((m, -(c * &g[j].1)));
                j += 1;
                gm = if j < g.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let m = gm.take().unwrap();
                let v = &p[i].1 - c * &g[j].1;
                if !v.is_zero() {
                    out.push((m, v));
                }
                i += 1;
                j += 1;
                gm = if j < g.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out
}

/// Full normal form of `p` with respect to `basis` (every term reduced).
pub(crate) fn normal_form(p: TermList, basis: &[TermList], order: &MonomialOrder) -> TermList {
    let mut p = p;
    let mut rem: TermList = Vec::new();
    while let Some((m, c)) = p.first() {
        let divisor = basis
            .iter()
            .find(|g| !g.is_empty() && divides(&g[0].0, m));
        match divisor {
            Some(g) => {
                let shift: Monomial = m.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                let coef = c / &g[0].1;
                p = sub_scaled(&p, &coef, &shift, g, order, true);
            }
            None => {
                rem.push(p.remove(0));
            }
        }
    }
    rem
}

fn s_polynomial(f: &TermList, g: &TermList, order: &MonomialOrder) -> TermList {
    let l = lcm(&f[0].0, &g[0].0);
    let sf: Monomial = l.iter().zip(&f[0].0).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
    // Both inputs are monic: S = x^sf f - x^sg g.
    let left: TermList = f
        .iter()
        .map(|(m, c)| (m.iter().zip(&sf).map(|(a, b)| a + b).collect(), c.clone()))
        .collect();
    sub_scaled(&left, &Rational::one(), &sg, g, order, true)
}

/// Buchberger's algorithm with the coprimality and chain criteria and the
/// normal selection strategy (smallest lcm first). Each S-polynomial
/// reduction costs one budget step. Returns a (non-reduced) Gröbner basis
/// of monic polynomials.
fn buchberger(
    gens: Vec<TermList>,
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<TermList>, BudgetExceeded> {
    let mut basis: Vec<TermList> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push = |basis: &mut Vec<TermList>, pending: &mut BTreeSet<(usize, usize)>, g: TermList| {
        let k = basis.len();
        basis.push(make_monic(g));
        for i in 0..k {
            pending.insert((i, k));
        }
    };

    for g in gens {
        let g = normal_form(g, &basis, order);
        if !g.is_empty() {
            push(&mut basis, &mut pending, g);
        }
    }

    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lcm(&basis[a.0][0].0, &basis[a.1][0].0);
                let lb = lcm(&basis[b.0][0].0, &basis[b.1][0].0);
                order.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));

        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k][0].0, &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        budget.step()?;
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(s, &basis, order);
        if !r.is_empty() {
            push(&mut basis, &mut pending, r);
        }
    }
    Ok(basis)
}

/// Minimalizes and inter-reduces a Gröbner basis. The result is sorted by
/// increasing leading monomial and is unique for the ideal and order.
fn reduce_basis(mut basis: Vec<TermList>, order: &MonomialOrder) -> Vec<TermList> {
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<TermList> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h[0].0, &g[0].0)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<TermList> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = minimal[i][0].clone();
        let tail = normal_form(minimal[i][1..].to_vec(), &others, order);
        let mut g = vec![head];
        g.extend(tail);
        out.push(make_monic(g));
    }
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub(crate) fn reduced_groebner_basis(
    gens: &[MultiPoly],
    ring: &Ring,
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<MultiPoly>, BudgetExceeded> {
    let lists: Vec<TermList> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_terms(g, order))
        .collect();
    let basis = buchberger(lists, order, budget)?;
    Ok(reduce_basis(basis, order)
        .into_iter()
        .map(|t| from_terms(t, ring))
        .collect())
}

/// Remainder of `f` on division by `basis` (assumed to be a Gröbner basis
/// for `order` when a canonical remainder is wanted).
pub(crate) fn remainder(f: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let lists: Vec<TermList> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| make_monic(to_terms(g, order)))
        .collect();
    from_terms(normal_form(to_terms(f, order), &lists, order), f.ring())
}

/// Buchberger's criterion: every S-polynomial of `basis` reduces to zero
/// against `basis`. True exactly when `basis` is a Gröbner basis for `order`.
pub fn satisfies_buchberger_criterion(basis: &[MultiPoly], order: &MonomialOrder) -> bool {
    let lists: Vec<TermList> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| make_monic(to_terms(g, order)))
        .collect();
    for i in 0..lists.len() {
        for j in i + 1..lists.len() {
            let s = s_polynomial(&lists[i], &lists[j], order);
            if !normal_form(s, &lists, order).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &ring()).unwrap()
    }

    #[test]
    fn sub_scaled_cancels_heads() {
        let o = MonomialOrder::GrevLex;
        let f = to_terms(&p("x*y + z"), &o);
        let g = to_terms(&p("x + 1"), &o);
        let r = sub_scaled(&f, &Rational::one(), &[0, 1, 0], &g, &o, true);
        assert_eq!(from_terms(r, &ring()), p("z - y"));
    }

    #[test]
    fn twisted_cubic_lex() {
        let mut b = Budget::unlimited();
        let gb = reduced_groebner_basis(
            &[p("x^2 - y"), p("x^3 - z")],
            &ring(),
            &MonomialOrder::Lex,
            &mut b,
        )
        .unwrap();
        assert!(gb.contains(&p("y^3 - z^2")));
        assert!(satisfies_buchberger_criterion(&gb, &MonomialOrder::Lex));
    }

    #[test]
    fn criterion_detects_non_basis() {
        assert!(!satisfies_buchberger_criterion(
            &[p("x^2 - y"), p("x^3 - z")],
            &MonomialOrder::Lex
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = Budget::new(0);
        let r = reduced_groebner_basis(
            &[p("x^2 - y"), p("x^3 - z")],
            &ring(),
            &MonomialOrder::Lex,
            &mut b,
        );
        assert_eq!(r, Err(BudgetExceeded { limit: 0 }));
    }
}
