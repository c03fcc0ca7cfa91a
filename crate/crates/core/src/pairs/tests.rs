use super::*;
use crate::weights::WeightPolytope;
use proptest::prelude::*;

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn torus_pair(rank: usize, v: &[(Vec<i64>, i64)], w: &[(Vec<i64>, i64)]) -> Pair {
    let vr = Representation::torus_weights(rank, v.iter().map(|(c, _)| c.clone()).collect()).unwrap();
    let wr = Representation::torus_weights(rank, w.iter().map(|(c, _)| c.clone()).collect()).unwrap();
    Pair::new(
        GroupPresentation::torus(rank).unwrap(),
        vr,
        wr,
        v.iter().map(|(_, x)| int(*x)).collect(),
        w.iter().map(|(_, x)| int(*x)).collect(),
    )
    .unwrap()
}

fn sym4_pair(v: &[Vec<i64>], w: &[Vec<i64>]) -> Pair {
    torus_pair(
        2,
        &v.iter().map(|c| (c.clone(), 1)).collect::<Vec<_>>(),
        &w.iter().map(|c| (c.clone(), 1)).collect::<Vec<_>>(),
    )
}

#[test]
fn semistable_examples() {
    let mut b = Budget::unlimited();
    let p = torus_pair(1, &[(vec![0], 1), (vec![2], 1)], &[(vec![1], 1)]);
    let v = torus_semistable(&p, &mut b).unwrap();
    assert_eq!(v.status, Status::Semistable);
    assert!(check_certificate(&p, &v).unwrap());
    for a in -3..=3 {
        assert!(p.mu_at(&[a]).unwrap() >= Valuation::Finite(0));
    }

    let p = torus_pair(1, &[(vec![2], 1)], &[(vec![0], 1)]);
    let v = torus_semistable(&p, &mut b).unwrap();
    assert_eq!(v.status, Status::Unstable);
    assert_eq!(
        v.certificate,
        Certificate::Destabilizing {
            exponents: vec![1],
            mu: -2
        }
    );
    assert!(check_certificate(&p, &v).unwrap());

    let p = torus_pair(1, &[(vec![2], 1)], &[(vec![0], 0)]);
    let v = torus_semistable(&p, &mut b).unwrap();
    assert_eq!(v.status, Status::Semistable);
    assert_eq!(v.certificate, Certificate::Vacuous);
}

#[test]
fn non_torus_groups_are_rejected() {
    let sl = GroupPresentation::special_linear(2).unwrap();
    let p = Pair::new(
        sl.clone(),
        Representation::standard(&sl),
        Representation::trivial(&sl),
        q(&[1, 0]),
        q(&[1]),
    )
    .unwrap();
    let mut b = Budget::unlimited();
    assert_eq!(torus_semistable(&p, &mut b), Err(CoreError::NotTorus));
    assert_eq!(dr_stable_at(&p, 1, &mut b), Err(CoreError::NotTorus));
}

#[test]
fn associated_pair_examples() {
    let mut b = Budget::unlimited();
    let p = sym4_pair(&[vec![3, 1], vec![1, 3]], &[vec![2, 2]]);
    let a = associated_pair(&p, 1).unwrap();
    let hull = WeightPolytope::new(a.v_support().unwrap(), &mut b).unwrap();
    assert_eq!(hull.vertices(), &[vec![1, 7], vec![7, 1]]);
    assert_eq!(a.w_support().unwrap(), vec![vec![4, 4]]);

    let single = sym4_pair(&[vec![3, 1]], &[vec![2, 2]]);
    for l in 1..4 {
        let a = associated_pair(&single, l).unwrap();
        let hull = WeightPolytope::new(a.v_support().unwrap(), &mut b).unwrap();
        let shift = |e: Vec<i64>| vec![e[0] + 3 * l as i64, e[1] + l as i64];
        assert_eq!(hull.vertices(), &[shift(vec![0, 4]), shift(vec![4, 0])]);
    }
}

#[test]
fn stability_examples() {
    let mut b = Budget::unlimited();
    let stable = sym4_pair(&[vec![3, 1], vec![1, 3]], &[vec![2, 2]]);
    let unstable = sym4_pair(&[vec![3, 1], vec![1, 3]], &[vec![4, 0]]);
    let flat = sym4_pair(&[vec![2, 2]], &[vec![2, 2]]);
    for l in 1..=5 {
        let v = torus_stable_at(&stable, l, &mut b).unwrap();
        assert_eq!(v.status, Status::StableAt(l));
        assert!(check_certificate(&stable, &v).unwrap());
        let v = dr_stable_at(&stable, l, &mut b).unwrap();
        assert_eq!(v.status, Status::StableAt(l));

        let v = torus_stable_at(&unstable, l, &mut b).unwrap();
        assert_eq!(v.status, Status::NotStableAt(l));
        assert!(check_certificate(&unstable, &v).unwrap());

        let v = dr_stable_at(&flat, l, &mut b).unwrap();
        assert_eq!(v.status, Status::NotStableAt(l));
        assert!(check_certificate(&flat, &v).unwrap());
    }
    assert_eq!(torus_semistable(&flat, &mut b).unwrap().status, Status::Semistable);
    let zero_w = torus_pair(2, &[(vec![2, 2], 1)], &[(vec![2, 2], 0)]);
    let v = dr_stable_at(&zero_w, 3, &mut b).unwrap();
    assert_eq!(v.status, Status::StableAt(3));
    assert_eq!(v.certificate, Certificate::Vacuous);
    let (level, _) =
        least_stable_level(&stable, 5, StabilityCheck::NormInequality, &mut b).unwrap();
    assert_eq!(level, Some(1));
    let (level, tried) =
        least_stable_level(&flat, 5, StabilityCheck::NormInequality, &mut b).unwrap();
    assert_eq!(level, None);
    assert_eq!(tried.len(), 5);
}

#[test]
fn falsifier_examples() {
    let sl = GroupPresentation::special_linear(2).unwrap();
    let sym = Representation::symmetric_power(&sl, 4).unwrap();
    let x3y = Pair::new(
        sl.clone(),
        sym.clone(),
        Representation::trivial(&sl),
        q(&[0, 0, 0, 1, 0]),
        q(&[1]),
    )
    .unwrap();
    let hit = sample_falsifier(&x3y, 200, 1).unwrap().expect("destabilizer");
    assert!(hit.mu < 0);
    assert_eq!(x3y.mu(&hit.arc).unwrap(), Valuation::Finite(hit.mu));

    let x2y2 = binary_form_pair(&q(&[0, 0, 1, 0, 0])).unwrap();
    assert!(sample_falsifier(&x2y2, 300, 1).unwrap().is_none());
    for a in -5..=5 {
        assert_eq!(x2y2.mu_at(&[a]).unwrap(), Valuation::Finite(0));
    }

    let zero_w = x3y.rescaled(&int(1), &int(0)).unwrap();
    assert!(sample_falsifier(&zero_w, 1000, 1).unwrap().is_none());

    let custom = GroupPresentation::custom(1, &["g1_1 - 1"]).unwrap();
    let p = Pair::new(
        custom.clone(),
        Representation::trivial(&custom),
        Representation::trivial(&custom),
        q(&[1]),
        q(&[1]),
    )
    .unwrap();
    assert!(matches!(
        sample_falsifier(&p, 10, 0),
        Err(CoreError::UnsupportedGroup(_))
    ));
}

fn weight_strategy(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
}

fn pair_strategy() -> impl Strategy<Value = Pair> {
    (1usize..=2)
        .prop_flat_map(|rank| {
            (
                Just(rank),
                prop::collection::vec((weight_strategy(rank), -2i64..=2), 1..5),
                prop::collection::vec((weight_strategy(rank), -2i64..=2), 1..4),
            )
        })
        .prop_filter_map("v must be nonzero", |(rank, mut v, w)| {
            if v.iter().all(|(_, c)| *c == 0) {
                v[0].1 = 1;
            }
            let p = torus_pair(rank, &v, &w);
            Some(p)
        })
}

fn nonneg_pair_strategy() -> impl Strategy<Value = Pair> {
    (
        prop::collection::vec((prop::collection::vec(0i64..=4, 2), 1i64..=2), 1..4),
        prop::collection::vec((prop::collection::vec(0i64..=4, 2), 0i64..=2), 1..3),
    )
        .prop_filter_map("weights must be nonzero", |(v, w)| {
            if v.iter().chain(&w).any(|(c, _)| c.iter().all(|&x| x == 0)) {
                return None;
            }
            Some(torus_pair(2, &v, &w))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_test_matches_brute_force(p in pair_strategy()) {
        let mut b = Budget::unlimited();
        let v = torus_semistable(&p, &mut b).unwrap();
        prop_assert!(check_certificate(&p, &v).unwrap());
        match brute_force_min_weight(&p, 5).unwrap() {
            None => prop_assert_eq!(v.status, Status::Semistable),
            Some((_, mu)) => prop_assert_eq!(v.status == Status::Semistable, mu >= 0),
        }
    }

    #[test]
    fn verdicts_are_projective(p in pair_strategy(), sv in 1i64..4, sw in 1i64..4, neg in any::<bool>()) {
        let mut b = Budget::unlimited();
        let sv = if neg { int(-sv) } else { int(sv) };
        let scaled = p.rescaled(&sv, &int(sw)).unwrap();
        prop_assert_eq!(
            torus_semistable(&p, &mut b).unwrap().status,
            torus_semistable(&scaled, &mut b).unwrap().status
        );
    }

    #[test]
    fn norm_inequality_implies_associated_pair(p in nonneg_pair_strategy(), l in 1u32..=3) {
        let mut b = Budget::unlimited();
        let dr = dr_stable_at(&p, l, &mut b).unwrap();
        prop_assert!(check_certificate(&p, &dr).unwrap());
        let assoc = torus_stable_at(&p, l, &mut b).unwrap();
        prop_assert!(check_certificate(&p, &assoc).unwrap());
        if dr.status == Status::StableAt(l) {
            prop_assert_eq!(assoc.status, Status::StableAt(l));
        }
    }

    #[test]
    fn weights_are_additive_under_tensor(
        v1 in prop::collection::vec(-3i64..=3, 1..3),
        w1 in prop::collection::vec(-3i64..=3, 1..3),
        v2 in prop::collection::vec(-3i64..=3, 1..3),
        w2 in prop::collection::vec(-3i64..=3, 1..3),
        a in -3i64..=3,
    ) {
        let mk = |v: &[i64], w: &[i64]| {
            torus_pair(
                1,
                &v.iter().map(|&c| (vec![c], 1)).collect::<Vec<_>>(),
                &w.iter().map(|&c| (vec![c], 1)).collect::<Vec<_>>(),
            )
        };
        let sum = |x: &[i64], y: &[i64]| -> Vec<i64> {
            x.iter().flat_map(|p| y.iter().map(move |q| p + q)).collect()
        };
        let p1 = mk(&v1, &w1);
        let p2 = mk(&v2, &w2);
        let tensor = mk(&sum(&v1, &v2), &sum(&w1, &w2));
        let lhs = tensor.mu_at(&[a]).unwrap();
        let rhs = p1.mu_at(&[a]).unwrap() + p2.mu_at(&[a]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
