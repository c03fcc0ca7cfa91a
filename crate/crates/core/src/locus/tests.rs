use super::*;
use crate::util::int;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn budget() -> Budget {
    Budget::new(2_000_000)
}

/// `C*` acting on `A²` (or `P¹`) with weights `(a, -b)`.
fn hyperbolic(a: u32, b: u32, projective: bool, w_hat: &[&str]) -> ActionProblem {
    let torus = GroupPresentation::torus(1).unwrap();
    let ga = format!("g1_1^{a}");
    let gb = format!("ginv^{b}");
    ActionProblem::parse(
        torus,
        &["x", "y"],
        &[],
        w_hat,
        &[vec![ga.as_str(), "0"], vec!["0", gb.as_str()]],
        projective,
        &mut budget(),
    )
    .unwrap()
}

fn scaling() -> ActionProblem {
    let gl1 = GroupPresentation::general_linear(1).unwrap();
    ActionProblem::parse(gl1, &["x"], &[], &["x"], &[vec!["g1_1"]], false, &mut budget()).unwrap()
}

fn trivial(coords: &[&str], w_hat: &[&str]) -> ActionProblem {
    let group = GroupPresentation::custom(1, &["g1_1 - 1"]).unwrap();
    let n = coords.len();
    let action: Vec<Vec<&str>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { "1" } else { "0" }).collect())
        .collect();
    ActionProblem::parse(group, coords, &[], w_hat, &action, false, &mut budget()).unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(ring, gens).unwrap()
}

fn grid() -> Vec<Vec<Rational>> {
    let mut pts = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            pts.push(q(&[a, b]));
        }
    }
    pts
}

#[test]
fn graph_ideals() {
    let prob = hyperbolic(1, 1, false, &["x", "y"]);
    let g = graph_ideal(&prob).unwrap();
    let want = ideal(g.ring(), &["x_2 - g1_1*x_1", "y_2 - ginv*y_1", "g1_1*ginv - 1"]);
    assert!(g.equals(&want, &mut budget()).unwrap());

    let t = graph_ideal(&trivial(&["y"], &["y"])).unwrap();
    let want = ideal(t.ring(), &["y_2 - y_1", "g1_1 - 1", "ginv - 1"]);
    assert!(t.equals(&want, &mut budget()).unwrap());

    let s = graph_ideal(&scaling()).unwrap();
    let want = ideal(s.ring(), &["x_2 - g1_1*x_1", "g1_1*ginv - 1"]);
    assert!(s.equals(&want, &mut budget()).unwrap());
}

#[test]
fn orbit_map_closures() {
    let mut b = budget();
    let prob = hyperbolic(1, 1, false, &["x", "y"]);
    let z = orbit_map_closure(&prob, &mut b).unwrap();
    assert_eq!(z.generator_strings(), vec!["x_1*y_1 - x_2*y_2"]);

    let prob = trivial(&["x", "y"], &["x", "y"]);
    let z = orbit_map_closure(&prob, &mut b).unwrap();
    assert!(z.equals(&ideal(z.ring(), &["x_2 - x_1", "y_2 - y_1"]), &mut b).unwrap());

    let z = orbit_map_closure(&scaling(), &mut b).unwrap();
    assert!(z.is_zero_ideal());
}

#[test]
fn nullcone_is_recovered() {
    let mut b = budget();
    let prob = hyperbolic(1, 1, false, &["x", "y"]);
    let report = degeneration_locus(&prob, &grid(), &mut b).unwrap();
    assert_eq!(report.locus.generator_strings(), vec!["x*y"]);
    assert!(report.sound);
    assert!(!report.overapproximation);
    for p in &report.probes {
        let on_axes = p.point[0].is_zero() || p.point[1].is_zero();
        assert_eq!(p.degenerates, on_axes, "{:?}", p.point);
        assert_eq!(p.in_locus, on_axes);
    }
}

#[test]
fn scaling_degenerates_everywhere() {
    let mut b = budget();
    let pts: Vec<Vec<Rational>> = (-2..=2).map(|x| q(&[x])).collect();
    let report = degeneration_locus(&scaling(), &pts, &mut b).unwrap();
    assert!(report.locus.is_zero_ideal());
    assert!(report.probes.iter().all(|p| p.degenerates && p.in_locus));
    assert!(!report.overapproximation);
}

#[test]
fn projective_line_is_overapproximated() {
    let mut b = budget();
    let prob = hyperbolic(1, 1, true, &["x"]);
    let probes = vec![q(&[1, 0]), q(&[0, 1]), q(&[1, 1])];
    let report = degeneration_locus(&prob, &probes, &mut b).unwrap();
    assert!(report.locus.is_zero_ideal());
    let verdicts: Vec<bool> = report.probes.iter().map(|p| p.degenerates).collect();
    assert_eq!(verdicts, vec![false, true, true]);
    assert!(report.probes.iter().all(|p| p.in_locus));
    assert!(report.overapproximation);
    assert!(report.sound);
}

#[test]
fn point_oracle_examples() {
    let mut b = budget();
    let prob = hyperbolic(1, 1, false, &["x", "y"]);
    assert!(!point_degenerates(&prob, &q(&[1, 1]), &mut b).unwrap());
    assert!(point_degenerates(&prob, &q(&[1, 0]), &mut b).unwrap());
    assert!(point_degenerates(&prob, &q(&[0, 0]), &mut b).unwrap());
    let closure = orbit_closure(&prob, &q(&[1, 1]), &mut b).unwrap();
    assert_eq!(closure.generator_strings(), vec!["x*y - 1"]);

    let on_curve = ActionProblem::parse(
        GroupPresentation::torus(1).unwrap(),
        &["x", "y"],
        &["x*y - 1"],
        &["x - 1"],
        &[vec!["g1_1", "0"], vec!["0", "ginv"]],
        false,
        &mut b,
    )
    .unwrap();
    assert_eq!(
        point_degenerates(&on_curve, &q(&[1, 0]), &mut b),
        Err(CoreError::PointNotOnY)
    );
    let point = vec![int(2), pairstab_algebra::rational(1, 2)];
    assert!(point_degenerates(&on_curve, &point, &mut b).unwrap());
}

#[test]
fn invalid_problems_are_rejected() {
    let torus = GroupPresentation::torus(1).unwrap();
    let ring = Ring::new(["x", "y"]).unwrap();
    let y = ideal(&ring, &["x*y - 1"]);
    let w = ideal(&ring, &["x"]);
    let diag = Representation::torus_weights(1, vec![vec![1], vec![-1]]).unwrap();
    let err = ActionProblem::with_representation(torus.clone(), ring.clone(), y, w, &diag, false, &mut budget());
    assert!(matches!(err, Err(CoreError::InvalidProblem(_))));
    let err = ActionProblem::parse(torus, &["x"], &[], &["x"], &[vec!["g1_1", "0"]], false, &mut budget());
    assert!(matches!(err, Err(CoreError::InvalidProblem(_))));
}

#[test]
fn trivial_group_locus_is_w_hat() {
    let mut b = budget();
    let prob = trivial(&["x", "y"], &["x^2 - y", "y*x"]);
    let report = degeneration_locus(&prob, &grid(), &mut b).unwrap();
    assert!(report.locus.equals(prob.w_hat(), &mut b).unwrap());
    assert!(report.probes.iter().all(|p| p.degenerates == p.in_locus));
}

#[test]
fn orbit_map_closure_contains_incidence() {
    let mut b = budget();
    let problems = [
        hyperbolic(1, 1, false, &["x"]),
        hyperbolic(2, 1, false, &["x"]),
        scaling(),
        ActionProblem::with_representation(
            GroupPresentation::special_linear(2).unwrap(),
            Ring::new(["a", "c"]).unwrap(),
            Ideal::zero(&Ring::new(["a", "c"]).unwrap()),
            ideal(&Ring::new(["a", "c"]).unwrap(), &["a", "c"]),
            &Representation::standard(&GroupPresentation::special_linear(2).unwrap()),
            false,
            &mut b,
        )
        .unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for prob in &problems {
        let z = orbit_map_closure(prob, &mut b).unwrap();
        let n = prob.coords().len();
        let matrix: Representation = Representation::MatrixAction {
            group_size: prob.group().size(),
            matrix: prob.action.clone(),
        };
        for g in prob.group().sample_points(6, 17) {
            let coords = prob.group().coordinates(&g).unwrap();
            let a = matrix.matrix_at(&coords);
            let y1: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
            let y2 = pairstab_algebra::matrix::mat_vec(&a, &y1);
            let point: Vec<Rational> = y1.into_iter().chain(y2).collect();
            assert!(z.vanishes_at(&point), "{point:?} not on Z");
        }
    }
}

fn family(v: &[&str], w: &[&str], v_weights: Vec<Vec<i64>>, w_weights: Vec<Vec<i64>>, base: &[&str]) -> PairFamily {
    let ring = Ring::new(base.iter().copied()).unwrap();
    let parse = |s: &[&str]| -> Vec<MultiPoly> { s.iter().map(|e| MultiPoly::parse(e, &ring).unwrap()).collect() };
    PairFamily::new(
        GroupPresentation::torus(v_weights[0].len()).unwrap(),
        Representation::torus_weights(v_weights[0].len(), v_weights).unwrap(),
        Representation::torus_weights(w_weights[0].len(), w_weights).unwrap(),
        ring.clone(),
        parse(v),
        parse(w),
    )
    .unwrap()
}

fn seeded_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Vec<Rational>> = (0..count)
        .map(|_| {
            (0..n)
                .map(|_| pairstab_algebra::rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
                .collect()
        })
        .collect();
    pts.push(vec![int(0); n]);
    pts
}

fn agrees_with_fibers(fam: &PairFamily, locus: &FamilyLocus, seed: u64) {
    let mut b = budget();
    for p in seeded_points(fam.base.len(), 20, seed) {
        if let Some(unstable) = fam.fiber_unstable(&p, &mut b).unwrap() {
            assert_eq!(locus.contains(&p), unstable, "fiber at {p:?}");
        }
    }
}

#[test]
fn family_examples() {
    let mut b = budget();
    let fam = family(&["b", "1"], &["1"], vec![vec![0], vec![2]], vec![vec![1]], &["b"]);
    let locus = family_unstable_locus(&fam, &mut b).unwrap();
    assert_eq!(locus.pieces.len(), 1);
    assert_eq!(locus.pieces[0].ideal.generator_strings(), vec!["b"]);
    assert_eq!(locus.pieces[0].excluded, None);
    agrees_with_fibers(&fam, &locus, 1);

    let stable = family(&["1", "1"], &["1"], vec![vec![0], vec![2]], vec![vec![1]], &["b"]);
    assert!(family_unstable_locus(&stable, &mut b).unwrap().pieces.is_empty());

    let unstable = family(&["1"], &["1"], vec![vec![2]], vec![vec![0]], &["b"]);
    let locus = family_unstable_locus(&unstable, &mut b).unwrap();
    assert_eq!(locus.pieces.len(), 1);
    assert!(locus.pieces[0].ideal.is_zero_ideal());

    let err = PairFamily::new(
        GroupPresentation::special_linear(2).unwrap(),
        Representation::torus_weights(1, vec![vec![0]]).unwrap(),
        Representation::torus_weights(1, vec![vec![0]]).unwrap(),
        Ring::new(["b"]).unwrap(),
        vec![MultiPoly::one(&Ring::new(["b"]).unwrap())],
        vec![MultiPoly::one(&Ring::new(["b"]).unwrap())],
    );
    assert_eq!(err, Err(CoreError::NotTorus));
}

#[test]
fn family_pieces_can_be_locally_closed() {
    let mut b = budget();
    // At a = 0 the fiber is unstable unless c also vanishes, where the
    // weight-2 coordinate drops out and 1 is no longer needed.
    let fam = family(&["a", "1", "c"], &["1", "c"], vec![vec![0], vec![2], vec![2]], vec![vec![1], vec![3]], &["a", "c"]);
    let locus = family_unstable_locus(&fam, &mut b).unwrap();
    agrees_with_fibers(&fam, &locus, 2);

    let two = family(&["a", "1", "a - c"], &["1"], vec![vec![0], vec![2], vec![-2]], vec![vec![1]], &["a", "c"]);
    let locus = family_unstable_locus(&two, &mut b).unwrap();
    agrees_with_fibers(&two, &locus, 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn locus_is_sound(a in 1u32..=2, c in 1u32..=2, x in -2i64..=2, y in -2i64..=2) {
        let prob = hyperbolic(a, c, false, &["x", "y"]);
        let mut b = budget();
        let report = degeneration_locus(&prob, &[q(&[x, y])], &mut b).unwrap();
        prop_assert!(report.sound);
        prop_assert_eq!(report.probes[0].degenerates, x == 0 || y == 0);
    }

    #[test]
    fn families_agree_with_fibers(
        wv in prop::collection::vec(-3i64..=3, 2..4),
        ww in prop::collection::vec(-3i64..=3, 1..3),
        lin in prop::collection::vec(-2i64..=2, 2),
        seed in 0u64..1000,
    ) {
        // Coordinate 0 of v is `lin0 * a + lin1`; the rest are constant.
        let sign = if lin[1] < 0 { "-" } else { "+" };
        let mut v: Vec<String> = vec![format!("{}*a {sign} {}", lin[0], lin[1].abs())];
        v.extend((1..wv.len()).map(|_| "1".to_string()));
        let w: Vec<String> = ww.iter().map(|_| "a + 1".to_string()).collect();
        let v: Vec<&str> = v.iter().map(String::as_str).collect();
        let w: Vec<&str> = w.iter().map(String::as_str).collect();
        let fam = family(
            &v,
            &w,
            wv.iter().map(|&e| vec![e]).collect(),
            ww.iter().map(|&e| vec![e]).collect(),
            &["a"],
        );
        let mut b = budget();
        let locus = family_unstable_locus(&fam, &mut b).unwrap();
        for p in seeded_points(1, 20, seed).into_iter().chain([q(&[-1])]) {
            if let Some(unstable) = fam.fiber_unstable(&p, &mut b).unwrap() {
                prop_assert_eq!(locus.contains(&p), unstable);
            }
        }
    }
}
