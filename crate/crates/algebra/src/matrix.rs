//! Square matrices over any [`Scalar`] ring, stored as row vectors.

use crate::poly::Scalar;

/// Determinant by cofactor expansion along the first row. Intended for the
/// small matrices (size at most 5 or so) that arise as group embeddings.
pub fn determinant<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    match n {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {
            let mut acc = T::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let term = m[0][j].clone() * determinant(&minor(m, 0, j));
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// The matrix with row `r` and column `c` removed.
pub fn minor<T: Scalar>(m: &[Vec<T>], r: usize, c: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Adjugate (transposed cofactor matrix): `m * adj(m) = det(m) * I`.
pub fn adjugate<T: Scalar>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![T::one()]];
    }
    let mut adj = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = determinant(&minor(m, i, j));
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

pub fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![T::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = T::zero();
            for l in 0..k {
                if a[i][l].is_zero() || b[l][j].is_zero() {
                    continue;
                }
                acc = acc + a[i][l].clone() * b[l][j].clone();
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_vec<T: Scalar>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}
