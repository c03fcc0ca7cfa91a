//! Linear algebraic groups presented inside `GL(m)`, and their
//! representations.
//!
//! A group of size `m` lives in the ring with variables `g1_1, …, gm_m`
//! (the matrix entries, row-major) followed by `ginv`, the inverse of the
//! determinant. The relation `ginv * det - 1` is always a generator.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use pairstab_algebra::matrix::{determinant, identity, mat_mul};
use pairstab_algebra::{Ideal, LaurentFraction, MultiPoly, Rational, Ring, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};
use crate::util::int;

pub const INVERSE_DET: &str = "ginv";

pub fn entry_name(i: usize, j: usize) -> String {
    format!("g{}_{}", i + 1, j + 1)
}

/// Scalars in which a group point can be written down, including the
/// inverse of its determinant.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for LaurentFraction {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Torus(usize),
    SpecialLinear(usize),
    GeneralLinear(usize),
    Custom(usize),
}

#[derive(Clone, PartialEq)]
pub struct GroupPresentation {
    kind: GroupKind,
    ring: Ring,
    relations: Ideal,
}

fn group_ring(m: usize) -> Ring {
    let mut names: Vec<String> = (0..m)
        .flat_map(|i| (0..m).map(move |j| entry_name(i, j)))
        .collect();
    names.push(INVERSE_DET.to_string());
    Ring::new(names).expect("group variable names are valid")
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(n - 1) {
        for pos in 0..n {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            // Inserting the largest element at `pos` adds n-1-pos inversions.
            let parity = (n - 1 - pos) % 2 == 0;
            out.push((p, even == parity));
        }
    }
    out
}

fn det_poly(ring: &Ring, m: usize) -> MultiPoly {
    let mut det = MultiPoly::zero(ring);
    for (perm, even) in permutations(m) {
        let mut mono = vec![0u32; ring.len()];
        for (i, &j) in perm.iter().enumerate() {
            mono[i * m + j] += 1;
        }
        let c = if even { int(1) } else { int(-1) };
        det = &det + &MultiPoly::term(ring, mono, c);
    }
    det
}

impl GroupPresentation {
    fn build(kind: GroupKind, m: usize, extra: Vec<MultiPoly>) -> Result<Self> {
        if m == 0 {
            return Err(CoreError::InvalidProblem("group size must be positive".into()));
        }
        let ring = group_ring(m);
        let det = det_poly(&ring, m);
        let ginv = MultiPoly::var_at(&ring, m * m);
        let mut gens = vec![&(&ginv * &det) - &MultiPoly::one(&ring)];
        gens.extend(extra);
        let relations = Ideal::new(&ring, gens)?;
        Ok(GroupPresentation {
            kind,
            ring,
            relations,
        })
    }

    /// The diagonal torus `(C*)^k ⊂ GL(k)`.
    pub fn torus(k: usize) -> Result<Self> {
        let ring = group_ring(k.max(1));
        let off: Vec<MultiPoly> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| MultiPoly::var_at(&ring, i * k + j))
            .collect();
        Self::build(GroupKind::Torus(k), k, off)
    }

    pub fn special_linear(m: usize) -> Result<Self> {
        let ring = group_ring(m.max(1));
        let det = det_poly(&ring, m);
        Self::build(GroupKind::SpecialLinear(m), m, vec![&det - &MultiPoly::one(&ring)])
    }

    pub fn general_linear(m: usize) -> Result<Self> {
        Self::build(GroupKind::GeneralLinear(m), m, Vec::new())
    }

    /// A closed subgroup of `GL(m)` cut out by `relations`, written in the
    /// entry variables `g1_1, …` and `ginv`.
    pub fn custom<S: AsRef<str>>(m: usize, relations: &[S]) -> Result<Self> {
        let ring = group_ring(m.max(1));
        let extra = relations
            .iter()
            .map(|r| MultiPoly::parse(r.as_ref(), &ring))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::build(GroupKind::Custom(m), m, extra)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        match self.kind {
            GroupKind::Torus(m)
            | GroupKind::SpecialLinear(m)
            | GroupKind::GeneralLinear(m)
            | GroupKind::Custom(m) => m,
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.kind, GroupKind::Torus(_))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn determinant(&self) -> MultiPoly {
        det_poly(&self.ring, self.size())
    }

    pub fn entry_var(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly::var_at(&self.ring, i * self.size() + j)
    }

    pub fn label(&self) -> String {
        match self.kind {
            GroupKind::Torus(k) => format!("torus({k})"),
            GroupKind::SpecialLinear(m) => format!("SL({m})"),
            GroupKind::GeneralLinear(m) => format!("GL({m})"),
            GroupKind::Custom(m) => format!("custom({m})"),
        }
    }

    /// Values of the group ring variables at a matrix, or `None` when the
    /// matrix is singular.
    pub fn coordinates<T: Field>(&self, g: &[Vec<T>]) -> Option<Vec<T>> {
        let inv = determinant(g).inv()?;
        let mut vals: Vec<T> = g.iter().flat_map(|row| row.iter().cloned()).collect();
        vals.push(inv);
        Some(vals)
    }

    /// True when `g` is an invertible matrix satisfying every relation.
    pub fn contains<T: Field>(&self, g: &[Vec<T>]) -> bool {
        if g.len() != self.size() || g.iter().any(|r| r.len() != self.size()) {
            return false;
        }
        match self.coordinates(g) {
            Some(vals) => self
                .relations
                .generators()
                .iter()
                .all(|r| r.evaluate(&vals).is_zero()),
            None => false,
        }
    }

    /// Reproducible rational points of the group, used to spot-check
    /// representations. Custom groups only offer the identity.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<Vec<Rational>>> {
        let m = self.size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nonzero = |rng: &mut ChaCha8Rng| -> Rational {
            let n = loop {
                let n = rng.gen_range(-3i64..=3);
                if n != 0 {
                    break n;
                }
            };
            let d = rng.gen_range(1i64..=2);
            Rational::new(n.into(), d.into())
        };
        let mut out = Vec::new();
        for _ in 0..count {
            let g = match self.kind {
                GroupKind::Torus(_) => {
                    let mut g = identity::<Rational>(m);
                    for (i, row) in g.iter_mut().enumerate() {
                        row[i] = nonzero(&mut rng);
                    }
                    g
                }
                GroupKind::SpecialLinear(_) => {
                    let mut g = identity::<Rational>(m);
                    for _ in 0..3 {
                        let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
                        let mut e = identity::<Rational>(m);
                        if i == j {
                            if m < 2 {
                                continue;
                            }
                            let a = nonzero(&mut rng);
                            let k = (i + 1) % m;
                            e[k][k] = a.recip();
                            e[i][i] = a;
                        } else {
                            e[i][j] = int(rng.gen_range(-2i64..=2));
                        }
                        g = mat_mul(&g, &e);
                    }
                    g
                }
                GroupKind::GeneralLinear(_) => loop {
                    let g: Vec<Vec<Rational>> = (0..m)
                        .map(|_| (0..m).map(|_| int(rng.gen_range(-2i64..=2))).collect())
                        .collect();
                    if !determinant(&g).is_zero() {
                        break g;
                    }
                },
                GroupKind::Custom(_) => identity::<Rational>(m),
            };
            out.push(g);
        }
        out
    }
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label(), self.relations)
    }
}

/// A finite-dimensional representation of a group.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    /// Coordinate `i` has torus weight `weights[i] ∈ Z^rank`.
    TorusWeights { rank: usize, weights: Vec<Vec<i64>> },
    /// `g · y = A(g) y` with `A` a matrix of polynomials in the group ring.
    MatrixAction {
        group_size: usize,
        matrix: Vec<Vec<MultiPoly>>,
    },
}

impl Representation {
    pub fn torus_weights(rank: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(CoreError::DimensionMismatch {
                expected: rank,
                found: w.len(),
            });
        }
        Ok(Representation::TorusWeights { rank, weights })
    }

    /// A matrix action, spot-checked to be a homomorphism on three pairs of
    /// sampled group points and to send the identity to the identity.
    pub fn matrix_action(group: &GroupPresentation, matrix: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(CoreError::InvalidRepresentation(
                "action matrix must be square and nonempty".into(),
            ));
        }
        if matrix.iter().flatten().any(|p| p.ring() != group.ring()) {
            return Err(CoreError::InvalidRepresentation(
                "action entries must be polynomials in the group variables".into(),
            ));
        }
        let rep = Representation::MatrixAction {
            group_size: group.size(),
            matrix,
        };
        let m = group.size();
        let at = |g: &[Vec<Rational>]| rep.matrix_at(&group.coordinates(g).unwrap());
        if at(&identity::<Rational>(m)) != identity::<Rational>(n) {
            return Err(CoreError::InvalidRepresentation(
                "identity does not act as the identity".into(),
            ));
        }
        let pts = group.sample_points(6, 0x5eed);
        for pair in pts.chunks(2) {
            if let [g, h] = pair {
                let gh = mat_mul(g, h);
                if at(&gh) != mat_mul(&at(g), &at(h)) {
                    return Err(CoreError::InvalidRepresentation(
                        "action is not multiplicative on sampled group points".into(),
                    ));
                }
            }
        }
        Ok(rep)
    }

    pub fn trivial(group: &GroupPresentation) -> Self {
        Representation::MatrixAction {
            group_size: group.size(),
            matrix: vec![vec![MultiPoly::one(group.ring())]],
        }
    }

    /// `g · y = g y` on column vectors.
    pub fn standard(group: &GroupPresentation) -> Self {
        let m = group.size();
        Representation::MatrixAction {
            group_size: m,
            matrix: (0..m)
                .map(|i| (0..m).map(|j| group.entry_var(i, j)).collect())
                .collect(),
        }
    }

    /// `Sym^d` of the standard representation of a size-2 group, on
    /// coefficient vectors in the basis `x^i y^(d-i)`, `i = 0..=d`, with
    /// `g · x = g11 x + g21 y` and `g · y = g12 x + g22 y`. The basis vector
    /// `x^i y^(d-i)` has diagonal weight `(i, d-i)`.
    pub fn symmetric_power(group: &GroupPresentation, d: u32) -> Result<Self> {
        if group.size() != 2 {
            return Err(CoreError::InvalidRepresentation(
                "symmetric powers need a group of size 2".into(),
            ));
        }
        let base = group.ring();
        let nb = base.len();
        let ring = base.extended(&["sym_x".to_string(), "sym_y".to_string()], false)?;
        let lift = |p: &MultiPoly| p.embed(&ring);
        let x = MultiPoly::var_at(&ring, nb);
        let y = MultiPoly::var_at(&ring, nb + 1);
        let gx = &(&lift(&group.entry_var(0, 0))? * &x) + &(&lift(&group.entry_var(1, 0))? * &y);
        let gy = &(&lift(&group.entry_var(0, 1))? * &x) + &(&lift(&group.entry_var(1, 1))? * &y);
        let n = d as usize + 1;
        let mut matrix = vec![vec![MultiPoly::zero(base); n]; n];
        for i in 0..n {
            let image = &gx.pow(i as u32) * &gy.pow(d - i as u32);
            for (mono, c) in image.terms() {
                let k = mono[nb] as usize;
                let coeff = MultiPoly::term(base, mono[..nb].to_vec(), c.clone());
                matrix[k][i] = &matrix[k][i] + &coeff;
            }
        }
        Ok(Representation::MatrixAction {
            group_size: 2,
            matrix,
        })
    }

    /// The action as a matrix over the ring of `group`. Torus weights
    /// become diagonal monomials, with negative powers written through the
    /// inverse determinant.
    pub fn action_matrix(&self, group: &GroupPresentation) -> Result<Vec<Vec<MultiPoly>>> {
        match self {
            Representation::MatrixAction { matrix, .. } => {
                if matrix.iter().flatten().any(|p| p.ring() != group.ring()) {
                    return Err(CoreError::InvalidRepresentation(
                        "action entries must be polynomials in the group variables".into(),
                    ));
                }
                Ok(matrix.clone())
            }
            Representation::TorusWeights { rank, weights } => {
                if !group.is_torus() || group.size() != *rank {
                    return Err(CoreError::NotTorus);
                }
                let n = weights.len();
                let mut matrix = vec![vec![MultiPoly::zero(group.ring()); n]; n];
                for (i, w) in weights.iter().enumerate() {
                    let shift = w.iter().map(|&e| (-e).max(0)).max().unwrap_or(0);
                    let mut mono = vec![0u32; group.ring().len()];
                    for (k, &e) in w.iter().enumerate() {
                        mono[k * rank + k] = (e + shift) as u32;
                    }
                    mono[rank * rank] = shift as u32;
                    matrix[i][i] = MultiPoly::term(group.ring(), mono, Rational::one());
                }
                Ok(matrix)
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Representation::TorusWeights { weights, .. } => weights.len(),
            Representation::MatrixAction { matrix, .. } => matrix.len(),
        }
    }

    /// Size `m` of the ambient `GL(m)` (the torus rank for weight lists).
    pub fn group_size(&self) -> usize {
        match self {
            Representation::TorusWeights { rank, .. } => *rank,
            Representation::MatrixAction { group_size, .. } => *group_size,
        }
    }

    /// The action matrix evaluated at group ring coordinates.
    pub fn matrix_at<T: Field>(&self, coords: &[T]) -> Vec<Vec<T>> {
        match self {
            Representation::MatrixAction { matrix, .. } => matrix
                .iter()
                .map(|row| row.iter().map(|p| p.evaluate(coords)).collect())
                .collect(),
            Representation::TorusWeights { .. } => {
                panic!("matrix_at is only defined for matrix actions")
            }
        }
    }

    /// Weights of the coordinates under the diagonal torus of `GL(m)`.
    /// Fails when that torus does not act diagonally in these coordinates.
    pub fn diagonal_weights(&self) -> Result<Vec<Vec<i64>>> {
        match self {
            Representation::TorusWeights { weights, .. } => Ok(weights.clone()),
            Representation::MatrixAction { group_size, matrix } => {
                let m = *group_size;
                let restrict = |p: &MultiPoly| -> BTreeMap<Vec<i64>, Rational> {
                    let mut acc: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
                    for (mono, c) in p.terms() {
                        let off_diagonal = (0..m * m).any(|k| k / m != k % m && mono[k] > 0);
                        if off_diagonal {
                            continue;
                        }
                        let ginv = mono[m * m] as i64;
                        let w: Vec<i64> = (0..m).map(|i| mono[i * m + i] as i64 - ginv).collect();
                        *acc.entry(w).or_insert_with(Rational::zero) += c;
                    }
                    acc.retain(|_, c| !c.is_zero());
                    acc
                };
                let not_diag = || {
                    CoreError::InvalidRepresentation(
                        "the diagonal torus does not act diagonally on these coordinates".into(),
                    )
                };
                let mut out = Vec::with_capacity(matrix.len());
                for (i, row) in matrix.iter().enumerate() {
                    for (j, p) in row.iter().enumerate() {
                        let r = restrict(p);
                        if i == j {
                            if r.len() != 1 || !r.values().all(|c| c.is_one()) {
                                return Err(not_diag());
                            }
                            out.push(r.into_keys().next().unwrap());
                        } else if !r.is_empty() {
                            return Err(not_diag());
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}
