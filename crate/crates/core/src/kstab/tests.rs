use super::*;
use crate::util::int;
use num_traits::{Signed, Zero};
use pairstab_algebra::{rational, Budget};
use proptest::prelude::*;

fn interval() -> Polytope {
    Polytope::interval(int(0), int(1)).unwrap()
}

fn simplex() -> Polytope {
    Polytope::from_integers(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap()
}

fn wide_triangle() -> Polytope {
    Polytope::from_integers(&[vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap()
}

fn square() -> Polytope {
    Polytope::from_integers(&[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap()
}

fn crease_fn() -> PLFunction {
    PLFunction::from_integers(&[(vec![0], 0), (vec![2], -1)]).unwrap()
}

fn hilb(a0: Rational, a1: Rational) -> HilbCoeffs {
    HilbCoeffs { a0, a1 }
}

/// Lattice points of `k·P` for a lattice polygon or interval, by brute
/// force over a bounding box.
fn lattice_count(p: &Polytope, k: i64) -> i64 {
    let kq = int(k);
    let scaled: Vec<Vec<Rational>> = p.vertices().iter().map(|v| v.iter().map(|c| c * &kq).collect()).collect();
    let kp = Polytope::new(scaled).unwrap();
    let lo: Vec<i64> = (0..p.dim())
        .map(|i| kp.vertices().iter().map(|v| v[i].floor().to_integer()).min().unwrap().try_into().unwrap())
        .collect();
    let hi: Vec<i64> = (0..p.dim())
        .map(|i| kp.vertices().iter().map(|v| v[i].ceil().to_integer()).max().unwrap().try_into().unwrap())
        .collect();
    let mut count = 0;
    if p.dim() == 1 {
        for x in lo[0]..=hi[0] {
            count += kp.contains(&[int(x)]) as i64;
        }
    } else {
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                count += kp.contains(&[int(x), int(y)]) as i64;
            }
        }
    }
    count
}

#[test]
fn df_examples() {
    let b = ModelNumbers::from_weights(rational(-1, 4), rational(-1, 2));
    assert_eq!(df_invariant(&hilb(int(1), int(1)), &b).unwrap(), rational(1, 4));
    let zero = ModelNumbers::from_weights(int(0), int(0));
    assert_eq!(df_invariant(&hilb(int(3), int(2)), &zero).unwrap(), int(0));
    assert_eq!(
        df_invariant(&hilb(int(0), int(1)), &b),
        Err(CoreError::ZeroLeadingCoefficient)
    );
}

#[test]
fn model_norm_examples() {
    let with = |mix: i64, top: i64, ln: i64, n: u32, r: i64| ModelNumbers {
        l_mix: Some(int(mix)),
        l_top: Some(int(top)),
        l_n: Some(int(ln)),
        n,
        r: int(r),
        ..ModelNumbers::from_weights(int(0), int(0))
    };
    assert_eq!(model_norm(&with(5, 5, 3, 2, 1)).unwrap(), int(0));
    assert_eq!(model_norm(&with(3, 1, 1, 1, 1)).unwrap(), int(1));
    assert_eq!(model_norm(&with(0, -2, 2, 1, 2)).unwrap(), rational(1, 4));
    let missing = ModelNumbers::from_weights(int(0), int(0));
    assert!(matches!(model_norm(&missing), Err(CoreError::MissingIntersectionData(_))));
}

#[test]
fn hilbert_examples() {
    assert_eq!(toric_hilb(&interval()), hilb(int(1), int(1)));
    assert_eq!(toric_hilb(&simplex()), hilb(rational(1, 2), rational(3, 2)));
    assert_eq!(toric_hilb(&square()), hilb(int(1), int(2)));
    assert_eq!(toric_hilb(&wide_triangle()), hilb(int(1), int(2)));
    assert!(matches!(
        Polytope::from_integers(&[vec![0, 0], vec![1, 1], vec![2, 2]]),
        Err(CoreError::DegeneratePolytope(_))
    ));
    assert!(matches!(Polytope::interval(int(1), int(1)), Err(CoreError::DegeneratePolytope(_))));
}

#[test]
fn hilbert_coefficients_match_lattice_counts() {
    let extra = Polytope::from_integers(&[vec![0, 0], vec![3, 1], vec![1, 2], vec![-1, 1]]).unwrap();
    let segment = Polytope::interval(int(-1), int(2)).unwrap();
    for p in [interval(), simplex(), square(), wide_triangle(), extra, segment] {
        let h = toric_hilb(&p);
        let residues: Vec<Rational> = (1..=6)
            .map(|k| {
                let kq = int(k);
                let main = if p.dim() == 1 { &h.a0 * &kq + &h.a1 } else { &h.a0 * &kq * &kq + &h.a1 * &kq };
                int(lattice_count(&p, k)) - main
            })
            .collect();
        assert!(residues.windows(2).all(|w| w[0] == w[1]), "{p}: {residues:?}");
    }
}

#[test]
fn toric_df_examples() {
    let r = toric_df_report(&interval(), &crease_fn()).unwrap();
    assert_eq!(r.integral, rational(1, 4));
    assert_eq!(r.boundary_integral, int(1));
    assert_eq!(r.df, rational(1, 4));

    for p in [interval(), simplex(), wide_triangle(), square()] {
        let c = PLFunction::constant(p.dim(), rational(7, 3));
        assert_eq!(toric_df(&p, &c).unwrap(), int(0));
    }

    let x = PLFunction::from_integers(&[(vec![1, 0], 0)]).unwrap();
    let r = toric_df_report(&simplex(), &x).unwrap();
    assert_eq!((r.b0.clone(), r.b1.clone()), (rational(-1, 6), rational(-1, 2)));
    assert_eq!(r.df, int(0));

    let r = toric_df_report(&wide_triangle(), &x).unwrap();
    assert_eq!(r.integral, rational(2, 3));
    assert_eq!(r.boundary_integral, int(3));
    assert_eq!(r.df, rational(1, 6));
}

#[test]
fn minnorm_examples() {
    assert_eq!(toric_minnorm(&interval(), &PLFunction::constant(1, int(4))).unwrap(), int(0));
    assert_eq!(toric_minnorm(&interval(), &crease_fn()).unwrap(), rational(1, 4));
    let x = PLFunction::from_integers(&[(vec![1], 0)]).unwrap();
    assert_eq!(toric_minnorm(&interval(), &x).unwrap(), rational(1, 2));
    let tent = PLFunction::from_integers(&[(vec![1, 0], 0), (vec![-1, 0], 1)]).unwrap();
    assert_eq!(tent.minimum(&square()).unwrap(), rational(1, 2));
}

#[test]
fn identical_pieces_are_resolved_by_index() {
    let f = PLFunction::from_integers(&[(vec![1], 0), (vec![1], 0), (vec![0], 0)]).unwrap();
    assert!(f.cell(&interval(), 1).unwrap().is_none());
    assert_eq!(f.pruned(&interval()).unwrap().pieces().len(), 1);
    assert_eq!(f.integral(&interval()).unwrap(), rational(1, 2));
}

#[test]
fn uniform_search_examples() {
    let mut b = Budget::unlimited();
    let half = [Crease::new(vec![int(1)], rational(1, 2))];
    let r = toric_uniform_search(&interval(), &half, &int(0), &mut b).unwrap();
    assert_eq!(r.verdict, UniformVerdict::HoldsOnFamily);
    assert_eq!(r.min_objective, Some(int(0)));
    assert_eq!(r.df, int(0));
    assert_eq!(r.function.pieces().len(), 1);

    for eps in [rational(1, 10), rational(1, 1000), int(3)] {
        let r = toric_uniform_search(&interval(), &half, &eps, &mut b).unwrap();
        assert_eq!(r.verdict, UniformVerdict::FailsAtEpsilon);
        assert_eq!(r.function, PLFunction::from_integers(&[(vec![1], 0)]).unwrap());
        assert_eq!((r.df.clone(), r.minnorm.clone()), (int(0), rational(1, 2)));
    }

    let r = toric_uniform_search(&wide_triangle(), &[], &int(0), &mut b).unwrap();
    assert_eq!(r.verdict, UniformVerdict::FailsAtEpsilon);
    assert_eq!(r.function.pieces().len(), 1);
    assert_eq!(r.df, rational(-1, 6));
    assert_eq!(toric_df(&wide_triangle(), &r.function).unwrap(), rational(-1, 6));
    let flipped = PLFunction::from_integers(&[(vec![-1, 0], 2)]).unwrap();
    assert_eq!(toric_df(&wide_triangle(), &flipped).unwrap(), rational(-1, 6));

    let r = toric_uniform_search(&simplex(), &[], &int(0), &mut b).unwrap();
    assert_eq!(r.verdict, UniformVerdict::HoldsOnFamily);

    let outside = [Crease::new(vec![int(1)], int(5))];
    assert!(toric_uniform_search(&interval(), &outside, &int(0), &mut b).is_err());
}

#[test]
fn uniform_search_with_two_dimensional_creases() {
    let mut b = Budget::unlimited();
    let creases = [
        Crease::new(vec![int(1), int(0)], rational(1, 2)),
        Crease::new(vec![int(1), int(1)], int(1)),
    ];
    let eps = rational(1, 5);
    let r = toric_uniform_search(&square(), &creases, &eps, &mut b).unwrap();
    let d = toric_df(&square(), &r.function).unwrap();
    let m = toric_minnorm(&square(), &r.function).unwrap();
    assert_eq!((d.clone(), m.clone()), (r.df.clone(), r.minnorm.clone()));
    assert_eq!(r.verdict == UniformVerdict::FailsAtEpsilon, d - &eps * m < int(0));
    assert_eq!(r.function.minimum(&square()).unwrap(), int(0));
}

fn piece_strategy(dim: usize) -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-3i64..=3, dim), -3i64..=3)
}

fn function_strategy(dim: usize) -> impl Strategy<Value = PLFunction> {
    prop::collection::vec(piece_strategy(dim), 1..5).prop_map(|p| PLFunction::from_integers(&p).unwrap())
}

fn polygon_strategy() -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3..7)
        .prop_filter_map("full-dimensional", |pts| Polytope::from_integers(&pts).ok())
}

fn unimodular_strategy() -> impl Strategy<Value = ([[i64; 2]; 2], [i64; 2])> {
    (
        prop::array::uniform4(-2i64..=2),
        prop::array::uniform2(-3i64..=3),
    )
        .prop_filter_map("unimodular", |(m, b)| {
            let det = m[0] * m[3] - m[1] * m[2];
            (det.abs() == 1).then_some(([[m[0], m[1]], [m[2], m[3]]], b))
        })
}

fn rat_matrix(m: &[[i64; 2]; 2]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn inverse(m: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] * det, -m[0][1] * det], [-m[1][0] * det, m[0][0] * det]]
}

/// Trapezoid rule; exact for piecewise-linear `f` when every breakpoint
/// is a grid point.
fn interval_riemann(f: &PLFunction, lo: i64, hi: i64, steps: i64) -> Rational {
    let h = rational(hi - lo, steps);
    let mut total = Rational::zero();
    for i in 0..steps {
        let a = int(lo) + &h * int(i);
        let b = &a + &h;
        total += (f.eval(&[a]) + f.eval(&[b])) * &h / int(2);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn df_is_linear(p in polygon_strategy(), f in function_strategy(2), g in function_strategy(2), a in 0i64..4, c in 0i64..4) {
        let lhs = toric_df(&p, &f.scale(&int(a)).unwrap().add(&g.scale(&int(c)).unwrap()).unwrap()).unwrap();
        let rhs = toric_df(&p, &f).unwrap() * int(a) + toric_df(&p, &g).unwrap() * int(c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constants_do_not_change_df(p in polygon_strategy(), f in function_strategy(2), c in -5i64..5) {
        prop_assert_eq!(toric_df(&p, &PLFunction::constant(2, int(c))).unwrap(), int(0));
        prop_assert_eq!(toric_df(&p, &f.add_constant(&int(c))).unwrap(), toric_df(&p, &f).unwrap());
    }

    #[test]
    fn lattice_invariance(p in polygon_strategy(), f in function_strategy(2), (m, b) in unimodular_strategy()) {
        let a = rat_matrix(&m);
        let shift = vec![int(b[0]), int(b[1])];
        let q = p.transform(&a, &shift).unwrap();
        let g = f.pushforward(&rat_matrix(&inverse(&m)), &shift);
        prop_assert_eq!(toric_hilb(&q), toric_hilb(&p));
        prop_assert_eq!(toric_df(&q, &g).unwrap(), toric_df(&p, &f).unwrap());
        prop_assert_eq!(toric_minnorm(&q, &g).unwrap(), toric_minnorm(&p, &f).unwrap());
        for v in p.vertices() {
            let image = super::polytope::affine_image(&a, &shift, v);
            prop_assert_eq!(g.eval(&image), f.eval(v));
        }
    }

    #[test]
    fn minnorm_vanishes_only_on_constants(p in polygon_strategy(), f in function_strategy(2)) {
        let m = toric_minnorm(&p, &f).unwrap();
        prop_assert!(m >= int(0));
        let values: Vec<Rational> = p.vertices().iter().map(|v| f.eval(v)).collect();
        let constant = values.windows(2).all(|w| w[0] == w[1]) && f.minimum(&p).unwrap() == values[0];
        prop_assert_eq!(m.is_zero(), constant);
    }

    #[test]
    fn interval_integrals_match_quadrature(f in function_strategy(1), lo in -3i64..0, len in 1i64..4) {
        let p = Polytope::interval(int(lo), int(lo + len)).unwrap();
        // Breakpoints of integer pieces with gradients in [-3, 3] lie on a
        // grid of step 1/lcm(1..=6).
        let quad = interval_riemann(&f, lo, lo + len, 60 * len);
        prop_assert_eq!(f.integral(&p).unwrap(), quad);
    }

    #[test]
    fn cells_tile_the_polytope(p in polygon_strategy(), f in function_strategy(2)) {
        let total = f.cells(&p).unwrap().iter().map(|(_, c)| c.measure()).fold(Rational::zero(), |a, b| a + b);
        prop_assert_eq!(total, p.volume());
    }

    #[test]
    fn uniform_certificates_verify(p in polygon_strategy(), eps in 0i64..3) {
        let mut b = Budget::unlimited();
        let eps = rational(eps, 4);
        let r = toric_uniform_search(&p, &[], &eps, &mut b).unwrap();
        let d = toric_df(&p, &r.function).unwrap();
        let m = toric_minnorm(&p, &r.function).unwrap();
        prop_assert!(m.is_positive());
        prop_assert_eq!(r.verdict == UniformVerdict::FailsAtEpsilon, d - eps * m < int(0));
    }
}
