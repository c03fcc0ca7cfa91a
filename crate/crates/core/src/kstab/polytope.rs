use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use pairstab_algebra::Rational;

use crate::error::{CoreError, Result};

pub type Point = Vec<Rational>;

/// A full-dimensional rational polytope in dimension 1 or 2. In dimension 2
/// the vertices are the hull vertices in counterclockwise order, starting
/// from the lexicographically smallest; in dimension 1 they are the two
/// endpoints in increasing order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counterclockwise hull without collinear points (monotone chain).
fn hull_2d(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl Polytope {
    /// The convex hull of `points`, which must all have dimension 1 or all
    /// dimension 2.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let Some(dim) = points.first().map(Vec::len) else {
            return Err(CoreError::DegeneratePolytope("no points".into()));
        };
        if points.iter().any(|p| p.len() != dim) {
            return Err(CoreError::DegeneratePolytope("points of mixed dimension".into()));
        }
        match dim {
            1 => {
                let lo = points.iter().min().unwrap().clone();
                let hi = points.iter().max().unwrap().clone();
                if lo == hi {
                    return Err(CoreError::DegeneratePolytope("interval of length zero".into()));
                }
                Ok(Polytope {
                    dim,
                    vertices: vec![lo, hi],
                })
            }
            2 => {
                let vertices = hull_2d(points);
                if vertices.len() < 3 {
                    return Err(CoreError::DegeneratePolytope("polygon has no interior".into()));
                }
                Ok(Polytope { dim, vertices })
            }
            d => Err(CoreError::DegeneratePolytope(format!(
                "dimension {d} is not supported"
            ))),
        }
    }

    pub fn interval(a: Rational, b: Rational) -> Result<Self> {
        Polytope::new(vec![vec![a], vec![b]])
    }

    pub fn from_integers(points: &[Vec<i64>]) -> Result<Self> {
        Polytope::new(
            points
                .iter()
                .map(|p| p.iter().map(|&c| Rational::from_integer(c.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Boundary edges in counterclockwise order (empty in dimension 1).
    pub fn edges(&self) -> Vec<(Point, Point)> {
        if self.dim == 1 {
            return Vec::new();
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    /// Euclidean length or area.
    pub fn volume(&self) -> Rational {
        match self.dim {
            1 => &self.vertices[1][0] - &self.vertices[0][0],
            _ => polygon_area(&self.vertices),
        }
    }

    /// Lattice-normalized boundary measure: endpoints count 1 each in
    /// dimension 1, edges count their lattice length in dimension 2.
    pub fn boundary_measure(&self) -> Rational {
        match self.dim {
            1 => Rational::from_integer(2.into()),
            _ => self
                .edges()
                .iter()
                .map(|(a, b)| lattice_length(a, b))
                .fold(Rational::zero(), |acc, l| acc + l),
        }
    }

    /// Whether `p` lies in the closed polytope.
    pub fn contains(&self, p: &[Rational]) -> bool {
        match self.dim {
            1 => self.vertices[0][0] <= p[0] && p[0] <= self.vertices[1][0],
            _ => self
                .edges()
                .iter()
                .all(|(a, b)| !cross(a, b, &p.to_vec()).is_negative()),
        }
    }

    /// The image under `x ↦ A x + b`; `A` must be invertible.
    pub fn transform(&self, a: &[Vec<Rational>], b: &[Rational]) -> Result<Polytope> {
        Polytope::new(self.vertices.iter().map(|v| affine_image(a, b, v)).collect())
    }
}

pub(crate) fn affine_image(a: &[Vec<Rational>], b: &[Rational], v: &[Rational]) -> Point {
    a.iter()
        .zip(b)
        .map(|(row, bi)| row.iter().zip(v).fold(bi.clone(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Signed shoelace area; positive for counterclockwise polygons.
pub(crate) fn polygon_area(poly: &[Point]) -> Rational {
    let n = poly.len();
    let mut twice = Rational::zero();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        twice += &p[0] * &q[1] - &q[0] * &p[1];
    }
    twice / Rational::from_integer(2.into())
}

/// Area centroid of a polygon of nonzero area.
pub(crate) fn polygon_centroid(poly: &[Point]) -> Point {
    let n = poly.len();
    let mut cx = Rational::zero();
    let mut cy = Rational::zero();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        let w = &p[0] * &q[1] - &q[0] * &p[1];
        cx += (&p[0] + &q[0]) * &w;
        cy += (&p[1] + &q[1]) * &w;
    }
    let six_area = polygon_area(poly) * Rational::from_integer(6.into());
    vec![cx / &six_area, cy / six_area]
}

/// Lattice length of the segment `[a, b]`: the factor `λ` with
/// `b − a = λ u` for a primitive integer vector `u`.
pub fn lattice_length(a: &[Rational], b: &[Rational]) -> Rational {
    let d: Vec<Rational> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let lcm = d.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let g = d
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    Rational::new(g, lcm)
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "({})", coords.join(", "))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
