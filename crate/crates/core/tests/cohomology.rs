use hilbext_core::cohomology::*;
use hilbext_core::group::FiniteAbelianGroup;
use proptest::prelude::*;

fn group(orders: &[usize]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(orders.to_vec()).unwrap()
}

/// Every action of a group of order ≤ 4 on one or two circle factors.
fn small_actions() -> Vec<CenterAction> {
    let mut out = Vec::new();
    for orders in [vec![2], vec![3], vec![4], vec![2, 2]] {
        let g = group(&orders);
        out.push(CenterAction::trivial(g.clone(), 1));
        let rank = orders.len();
        for mask in 0..(1usize << rank) {
            let gens: Vec<Vec<usize>> = (0..rank)
                .map(|i| if mask >> i & 1 == 1 { vec![1, 0] } else { vec![0, 1] })
                .collect();
            if let Ok(a) = CenterAction::from_generators(g.clone(), 2, &gens) {
                out.push(a);
            }
        }
    }
    out
}

#[test]
fn snf_route_matches_oracle_on_all_small_actions() {
    let actions = small_actions();
    assert!(actions.len() >= 10);
    for action in actions {
        let fast = h2_compute(&action).unwrap();
        let slow = h2_oracle(&action).unwrap();
        assert_eq!(fast, slow, "{:?} m={}", action.group().cyclic_orders(), action.m());
    }
}

#[test]
fn schur_multipliers_up_to_order_16() {
    let groups: Vec<Vec<usize>> = (2..=16)
        .map(|n| vec![n])
        .chain(
            [
                vec![2, 2],
                vec![2, 3],
                vec![2, 4],
                vec![2, 6],
                vec![3, 3],
                vec![2, 8],
                vec![4, 4],
                vec![2, 2, 2],
                vec![2, 2, 4],
                vec![2, 2, 2, 2],
                vec![2, 2, 3],
                vec![3, 5],
            ],
        )
        .collect();
    for orders in groups {
        let action = CenterAction::trivial(group(&orders), 1);
        assert_eq!(h2_compute(&action).unwrap(), schur_multiplier(&orders), "{orders:?}");
    }
    assert_eq!(schur_multiplier(&[2, 2, 2]).invariant_factors, vec![2, 2, 2]);
    assert_eq!(schur_multiplier(&[4, 4]).invariant_factors, vec![4]);
}

#[test]
fn named_examples() {
    for n in 2..=6 {
        assert!(h2_compute(&CenterAction::trivial(group(&[n]), 1)).unwrap().is_trivial());
    }
    assert_eq!(h2_compute(&CenterAction::trivial(group(&[2, 2]), 1)).unwrap().invariant_factors, vec![2]);
    let swap = CenterAction::from_generators(group(&[2]), 2, &[vec![1, 0]]).unwrap();
    assert!(h2_compute(&swap).unwrap().is_trivial());
    // Two independent circles under a trivial Z₂×Z₂ action.
    let two = CenterAction::trivial(group(&[2, 2]), 2);
    assert_eq!(h2_compute(&two).unwrap().invariant_factors, vec![2, 2]);
}

fn action_strategy() -> impl Strategy<Value = CenterAction> {
    prop::sample::select(small_actions())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundaries_are_cocycles(action in action_strategy(), seed in any::<u64>(), modulus in 2i64..13) {
        use rand::{Rng, SeedableRng};
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let z = CentralCochain::from_fn(&action, 1, modulus, |args| {
            (0..action.m()).map(|_| if args[0] == 0 { 0 } else { r.gen_range(0..modulus) }).collect()
        }).unwrap();
        let d = z.coboundary().unwrap();
        prop_assert!(is_central_cocycle(&d));
        let w = solve_coboundary(&d).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(w.coboundary().unwrap().same_class_values(&d));
    }

    #[test]
    fn twisting_by_a_coboundary_keeps_the_class(action in action_strategy(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = action.group().clone();
        if g.cyclic_orders() != [2, 2] || !action.is_trivial() {
            return Ok(());
        }
        let pauli = CentralCochain::from_fn(&action, 2, 4, |args| {
            let (a, b) = (g.element_at(args[0]), g.element_at(args[1]));
            vec![2 * ((a[1] * b[0]) % 2) as i64; action.m()]
        }).unwrap();
        let z = CentralCochain::from_fn(&action, 1, 4, |args| {
            (0..action.m()).map(|_| if args[0] == 0 { 0 } else { r.gen_range(0..4) }).collect()
        }).unwrap();
        let shifted = pauli.add(&z.coboundary().unwrap()).unwrap();
        let diff = shifted.sub(&pauli).unwrap();
        prop_assert!(coboundary_solve(&diff).unwrap().is_some());
        prop_assert!(coboundary_solve(&pauli).unwrap().is_none());
    }
}
