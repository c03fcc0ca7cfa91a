use std::fmt;

use num_traits::{One, Signed, Zero};
use pairstab_algebra::Rational;

use crate::error::{CoreError, Result};

use super::polytope::{lattice_length, polygon_area, polygon_centroid, Point, Polytope};

/// `x ↦ ⟨grad, x⟩ + constant`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineFunction {
    pub grad: Vec<Rational>,
    pub constant: Rational,
}

impl AffineFunction {
    pub fn new(grad: Vec<Rational>, constant: Rational) -> Self {
        AffineFunction { grad, constant }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.grad
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (g, c)| acc + g * c)
    }

    pub fn sub(&self, other: &AffineFunction) -> AffineFunction {
        AffineFunction {
            grad: self.grad.iter().zip(&other.grad).map(|(a, b)| a - b).collect(),
            constant: &self.constant - &other.constant,
        }
    }

    fn is_constant(&self) -> bool {
        self.grad.iter().all(Zero::is_zero)
    }
}

/// A convex piecewise-linear function `f = max_j ℓ_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct PLFunction {
    dim: usize,
    pieces: Vec<AffineFunction>,
}

/// A cell of the subdivision of `P` on which one piece is maximal.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Interval(Rational, Rational),
    Polygon(Vec<Point>),
}

impl Cell {
    pub fn measure(&self) -> Rational {
        match self {
            Cell::Interval(a, b) => b - a,
            Cell::Polygon(p) => polygon_area(p),
        }
    }

    pub fn vertices(&self) -> Vec<Point> {
        match self {
            Cell::Interval(a, b) => vec![vec![a.clone()], vec![b.clone()]],
            Cell::Polygon(p) => p.clone(),
        }
    }

    /// `∫ ℓ` over the cell: measure times the value at the centroid.
    fn integrate(&self, l: &AffineFunction) -> Rational {
        let m = self.measure();
        if m.is_zero() {
            return m;
        }
        let centroid = match self {
            Cell::Interval(a, b) => vec![(a + b) / Rational::from_integer(2.into())],
            Cell::Polygon(p) => polygon_centroid(p),
        };
        m * l.eval(&centroid)
    }
}

/// Keeps the part of a convex polygon where `l ≥ 0` (Sutherland–Hodgman
/// against one half-plane).
fn clip_polygon(poly: &[Point], l: &AffineFunction) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        let (vp, vq) = (l.eval(p), l.eval(q));
        if !vp.is_negative() {
            out.push(p.clone());
        }
        if (vp.is_negative() && vq.is_positive()) || (vp.is_positive() && vq.is_negative()) {
            let s = &vp / (&vp - &vq);
            out.push(p.iter().zip(q).map(|(a, b)| a + &s * (b - a)).collect());
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn clip_interval(lo: Rational, hi: Rational, l: &AffineFunction) -> Option<(Rational, Rational)> {
    let g = &l.grad[0];
    if g.is_zero() {
        return (!l.constant.is_negative()).then_some((lo, hi));
    }
    let root = -&l.constant / g;
    let (lo, hi) = if g.is_positive() {
        (lo.max(root), hi)
    } else {
        (lo, hi.min(root))
    };
    (lo <= hi).then_some((lo, hi))
}

impl PLFunction {
    pub fn new(pieces: Vec<AffineFunction>) -> Result<Self> {
        let Some(dim) = pieces.first().map(|p| p.grad.len()) else {
            return Err(CoreError::InvalidFunction("no affine pieces".into()));
        };
        if pieces.iter().any(|p| p.grad.len() != dim) {
            return Err(CoreError::InvalidFunction("pieces of mixed dimension".into()));
        }
        Ok(PLFunction { dim, pieces })
    }

    pub fn affine(grad: Vec<Rational>, constant: Rational) -> Self {
        PLFunction {
            dim: grad.len(),
            pieces: vec![AffineFunction::new(grad, constant)],
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        PLFunction::affine(vec![Rational::zero(); dim], c)
    }

    /// Pieces given as integer `(gradient, constant)` pairs.
    pub fn from_integers(pieces: &[(Vec<i64>, i64)]) -> Result<Self> {
        let q = |n: i64| Rational::from_integer(n.into());
        PLFunction::new(
            pieces
                .iter()
                .map(|(g, c)| AffineFunction::new(g.iter().map(|&x| q(x)).collect(), q(*c)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[AffineFunction] {
        &self.pieces
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.pieces.iter().map(|p| p.eval(x)).max().expect("nonempty")
    }

    fn check_dim(&self, p: &Polytope) -> Result<()> {
        if p.dim() != self.dim {
            return Err(CoreError::DimensionMismatch {
                expected: p.dim(),
                found: self.dim,
            });
        }
        Ok(())
    }

    /// The region of `P` where piece `j` is the active one. Where two
    /// pieces coincide identically, the one with the smaller index wins.
    pub fn cell(&self, p: &Polytope, j: usize) -> Result<Option<Cell>> {
        self.check_dim(p)?;
        let lj = &self.pieces[j];
        let mut cell = match p.dim() {
            1 => Cell::Interval(p.vertices()[0][0].clone(), p.vertices()[1][0].clone()),
            _ => Cell::Polygon(p.vertices().to_vec()),
        };
        for (k, lk) in self.pieces.iter().enumerate() {
            if k == j {
                continue;
            }
            let diff = lj.sub(lk);
            if diff.is_constant() && diff.constant.is_zero() {
                if k < j {
                    return Ok(None);
                }
                continue;
            }
            cell = match cell {
                Cell::Interval(lo, hi) => match clip_interval(lo, hi, &diff) {
                    Some((lo, hi)) => Cell::Interval(lo, hi),
                    None => return Ok(None),
                },
                Cell::Polygon(poly) => {
                    let clipped = clip_polygon(&poly, &diff);
                    if clipped.is_empty() {
                        return Ok(None);
                    }
                    Cell::Polygon(clipped)
                }
            };
        }
        Ok(Some(cell))
    }

    /// Cells of positive measure, with the index of their active piece.
    pub fn cells(&self, p: &Polytope) -> Result<Vec<(usize, Cell)>> {
        let mut out = Vec::new();
        for j in 0..self.pieces.len() {
            if let Some(c) = self.cell(p, j)? {
                if c.measure().is_positive() {
                    out.push((j, c));
                }
            }
        }
        Ok(out)
    }

    /// Drops the pieces that are active only on a set of measure zero.
    pub fn pruned(&self, p: &Polytope) -> Result<PLFunction> {
        let cells = self.cells(p)?;
        if cells.is_empty() {
            return Err(CoreError::InvalidFunction("no piece is active on the polytope".into()));
        }
        Ok(PLFunction {
            dim: self.dim,
            pieces: cells.iter().map(|(j, _)| self.pieces[*j].clone()).collect(),
        })
    }

    /// `∫_P f`.
    pub fn integral(&self, p: &Polytope) -> Result<Rational> {
        Ok(self
            .cells(p)?
            .iter()
            .map(|(j, c)| c.integrate(&self.pieces[*j]))
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    /// `∫_{∂P} f dσ` with the lattice-normalized boundary measure.
    pub fn boundary_integral(&self, p: &Polytope) -> Result<Rational> {
        self.check_dim(p)?;
        if p.dim() == 1 {
            return Ok(self.eval(&p.vertices()[0]) + self.eval(&p.vertices()[1]));
        }
        let mut total = Rational::zero();
        for (a, b) in p.edges() {
            // f(a + s(b − a)) on s ∈ [0, 1], integrated in s.
            let restricted = PLFunction {
                dim: 1,
                pieces: self
                    .pieces
                    .iter()
                    .map(|l| {
                        let slope = l.grad.iter().zip(a.iter().zip(&b)).fold(
                            Rational::zero(),
                            |acc, (g, (x, y))| acc + g * (y - x),
                        );
                        AffineFunction::new(vec![slope], l.eval(&a))
                    })
                    .collect(),
            };
            let unit = Polytope::interval(Rational::zero(), Rational::one())?;
            total += lattice_length(&a, &b) * restricted.integral(&unit)?;
        }
        Ok(total)
    }

    /// `min_P f`, attained at a vertex of some cell.
    pub fn minimum(&self, p: &Polytope) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for (_, c) in self.cells(p)? {
            for v in c.vertices() {
                let val = self.eval(&v);
                if best.as_ref().is_none_or(|b| val < *b) {
                    best = Some(val);
                }
            }
        }
        best.ok_or_else(|| CoreError::InvalidFunction("no piece is active on the polytope".into()))
    }

    pub fn scale(&self, c: &Rational) -> Result<PLFunction> {
        if c.is_negative() {
            return Err(CoreError::InvalidFunction("negative multiples are not convex".into()));
        }
        Ok(PLFunction {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|l| AffineFunction::new(l.grad.iter().map(|g| g * c).collect(), &l.constant * c))
                .collect(),
        })
    }

    /// `f + g` as the max over all pairwise sums of pieces.
    pub fn add(&self, other: &PLFunction) -> Result<PLFunction> {
        if self.dim != other.dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                pieces.push(AffineFunction::new(
                    a.grad.iter().zip(&b.grad).map(|(x, y)| x + y).collect(),
                    &a.constant + &b.constant,
                ));
            }
        }
        pieces.sort();
        pieces.dedup();
        Ok(PLFunction { dim: self.dim, pieces })
    }

    pub fn add_constant(&self, c: &Rational) -> PLFunction {
        PLFunction {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|l| AffineFunction::new(l.grad.clone(), &l.constant + c))
                .collect(),
        }
    }

    /// `f ∘ T⁻¹` for `T(x) = A x + b`, given `A⁻¹`: gradients become
    /// `A⁻ᵀ ∇ℓ` and constants `c − ⟨A⁻ᵀ ∇ℓ, b⟩`.
    pub fn pushforward(&self, a_inv: &[Vec<Rational>], b: &[Rational]) -> PLFunction {
        let n = self.dim;
        PLFunction {
            dim: n,
            pieces: self
                .pieces
                .iter()
                .map(|l| {
                    let grad: Vec<Rational> = (0..n)
                        .map(|i| (0..n).fold(Rational::zero(), |acc, k| acc + &a_inv[k][i] * &l.grad[k]))
                        .collect();
                    let shift = grad.iter().zip(b).fold(Rational::zero(), |acc, (g, x)| acc + g * x);
                    AffineFunction::new(grad, &l.constant - shift)
                })
                .collect(),
        }
    }
}

impl fmt::Display for AffineFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y"];
        let mut first = true;
        for (i, g) in self.grad.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let var = names.get(i).map_or_else(|| format!("x{}", i + 1), |s| s.to_string());
            let mag = g.abs();
            let sign = match (first, g.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            if mag.is_one() {
                write!(f, "{sign}{var}")?;
            } else {
                write!(f, "{sign}{mag}*{var}")?;
            }
            first = false;
        }
        if first {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { " - " } else { " + " };
            write!(f, "{sign}{}", self.constant.abs())?;
        }
        Ok(())
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.len() == 1 {
            return write!(f, "{}", self.pieces[0]);
        }
        let parts: Vec<String> = self.pieces.iter().map(ToString::to_string).collect();
        write!(f, "max({})", parts.join(", "))
    }
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
