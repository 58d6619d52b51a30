mod common;

use common::*;
use hilbext_core::algebra::{Automorphism, BlockAlgebra, CentralUnitary};
use hilbext_core::cohomology::{CentralCochain, is_central_cocycle};
use hilbext_core::error::Error;
use hilbext_core::extension::{permutators_from_extension, ExtensionContext};
use hilbext_core::theta::*;

#[test]
fn validate_examples() {
    let r = validate_theta(s1().theta()).unwrap();
    assert!(r.injective);
    assert!(r.kernel.len() == 1);

    let inner = theta(&[2, 2], &[2], |a| {
        vec![
            Automorphism::new(a, vec![0], vec![sigma_x()]).unwrap(),
            Automorphism::new(a, vec![0], vec![sigma_z()]).unwrap(),
        ]
    });
    let r = validate_theta(&inner).unwrap();
    assert!(!r.injective);
    assert_eq!(r.kernel.len(), 4);

    let r = validate_theta(s3().theta()).unwrap();
    assert!(r.injective);
}

#[test]
fn validate_rejects_non_homomorphic_classes() {
    // Z₃ cannot act by a transposition on two blocks.
    let algebra = BlockAlgebra::new(vec![1, 1]).unwrap();
    let swap = Automorphism::permutation(&algebra, vec![1, 0]).unwrap();
    let t = ThetaData::new(group(&[3]), algebra.clone(), vec![Automorphism::identity(&algebra), swap.clone(), swap])
        .unwrap();
    assert!(matches!(validate_theta(&t), Err(Error::Validation(_))));
}

#[test]
fn omega_examples() {
    let ctx = s1();
    let one = ctx.algebra().identity();
    for a in 0..2 {
        for b in 0..2 {
            assert!(ctx.omega().get(a, b).max_diff(&one) <= 1e-12);
        }
    }
    // β_{(0,1)}β_{(1,0)} and β_{(1,0)}β_{(0,1)} differ by the anticommutation
    // of σx and σz, which on M₂ is a central sign.
    let t = pauli_theta();
    let omega = omega_from_representatives(&t).unwrap();
    let g = t.group();
    let (e1, e2) = (g.index_of(&[1, 0]).unwrap(), g.index_of(&[0, 1]).unwrap());
    let q = omega.get(e2, e1) * &omega.get(e1, e2).adjoint();
    assert!(q.as_central_unitary(1e-12).is_some());
}

#[test]
fn pauli_and_lifting_cocycles_pass() {
    for (name, ctx) in scenarios() {
        let report = verify_generalized_cocycle(ctx.theta(), ctx.omega(), 1e-12);
        assert!(report.passed(), "{name}: {:?}", report.violations().collect::<Vec<_>>());
        assert!(gamma_obstruction(ctx.theta(), ctx.omega()).unwrap().is_trivial(1e-12), "{name}");
    }
}

#[test]
fn flipped_phase_names_the_triple() {
    let ctx = s2b();
    let mut omega = ctx.omega().clone();
    let g = ctx.group();
    let (a, b) = (g.index_of(&[1, 0]).unwrap(), g.index_of(&[1, 1]).unwrap());
    omega.set(a, b, omega.get(a, b).scale(c(-1.0, 0.0)));
    let report = verify_generalized_cocycle(ctx.theta(), &omega, 1e-12);
    assert!(!report.passed());
    let cocycle = report.get("cocycle").unwrap();
    assert!(!cocycle.passed());
    assert!(cocycle.violations[0].contains("cocycle equation fails at ("));
    assert!(ExtensionContext::new(ctx.theta().clone(), omega).is_err());
}

#[test]
fn gamma_tracks_a_central_perturbation() {
    // ω' = ν·ω shifts γ by δν for a central 2-cochain ν.
    let ctx = s3();
    let action = ctx.theta().center_action().unwrap();
    let nu = CentralCochain::from_fn(&action, 2, 4, |args| {
        if args[0] == 1 && args[1] == 1 { vec![1, 0] } else { vec![0, 0] }
    })
    .unwrap();
    let omega = ctx.omega().times_central(|a, b| nu.unitary(&[a, b]));
    let gamma = gamma_obstruction(ctx.theta(), &omega).unwrap();
    let exact = gamma.to_cochain(&action).unwrap().with_modulus(4).unwrap();
    let delta = {
        // δν through a one-degree-higher cochain of the same modulus.
        let n = ctx.order();
        let mut expected = CentralCochain::zero(&action, 3, 4);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let ab = ctx.group().mul_index(a, b);
                    let bc = ctx.group().mul_index(b, cc);
                    let z = nu
                        .unitary(&[a, b])
                        .mul(&nu.unitary(&[ab, cc]))
                        .mul(&ctx.theta().beta(a).apply_central(&nu.unitary(&[b, cc])).inverse())
                        .mul(&nu.unitary(&[a, bc]).inverse());
                    let v: Vec<i64> = z
                        .phases
                        .iter()
                        .map(|p| hilbext_core::cohomology::snap_phase(*p, 4).0)
                        .collect();
                    expected.set(&[a, b, cc], &v);
                }
            }
        }
        expected
    };
    assert_eq!(exact.entries(), delta.entries());
    assert!(!gamma.is_trivial(1e-6));
}

#[test]
fn repair_removes_a_coboundary_obstruction() {
    let ctx = s3();
    let action = ctx.theta().center_action().unwrap();
    let nu = CentralCochain::from_fn(&action, 2, 4, |args| {
        if args == [1, 1] { vec![1, 3] } else { vec![0, 0] }
    })
    .unwrap();
    let broken = ctx.omega().times_central(|a, b| nu.unitary(&[a, b]));
    match repair_omega(ctx.theta(), &broken, 1e-12).unwrap() {
        Repair::Repaired { omega, .. } => {
            assert!(verify_generalized_cocycle(ctx.theta(), &omega, 1e-12).passed());
        }
        other => panic!("expected a repair, got {other:?}"),
    }
    assert_eq!(repair_omega(ctx.theta(), ctx.omega(), 1e-12).unwrap(), Repair::AlreadyCocycle);
}

#[test]
fn twisting_by_a_central_cocycle_stays_a_cocycle() {
    for (name, ctx) in scenarios() {
        let action = ctx.theta().center_action().unwrap();
        if ctx.group().cyclic_orders() != [2, 2] || !action.is_trivial() {
            continue;
        }
        let lambda = pauli_lambda(&action);
        assert!(is_central_cocycle(&lambda));
        let omega = ctx.omega().twisted(&lambda).unwrap();
        assert!(verify_generalized_cocycle(ctx.theta(), &omega, 1e-12).passed(), "{name}");
        // The quotient of the two cocycles is central and a cocycle again.
        let q = CentralCochain::from_unitaries(&action, 2, 2, |args| {
            (omega.get(args[0], args[1]) * &ctx.omega().get(args[0], args[1]).adjoint())
                .as_central_unitary(1e-12)
                .unwrap()
        })
        .unwrap();
        assert!(is_central_cocycle(&q));
        assert_eq!(q.entries(), lambda.entries());
    }
}

#[test]
fn permutator_examples() {
    let m2 = BlockAlgebra::new(vec![2]).unwrap();
    let ax = Automorphism::new(&m2, vec![0], vec![sigma_x()]).unwrap();
    let az = Automorphism::new(&m2, vec![0], vec![sigma_z()]).unwrap();
    let one = m2.identity();
    // Commuting and equal arguments.
    let (r, _) = equivalent_mod_center(&permutator(&ax, &ax).unwrap().value, &one, 1e-12);
    assert!(r <= 1e-12);
    let id = Automorphism::identity(&m2);
    let (r, _) = equivalent_mod_center(&permutator(&id, &az).unwrap().value, &one, 1e-12);
    assert!(r <= 1e-12);
    // ad σx, ad σz: the commutator is ad(σxσzσxσz) = ad(−𝟙) = id.
    let eps = permutator(&ax, &az).unwrap().value;
    let (r, z) = equivalent_mod_center(&eps, &one.scale(c(-1.0, 0.0)), 1e-12);
    assert!(r <= 1e-12 && z.is_some());
    // Outer commutators have no permutator.
    let a2 = BlockAlgebra::new(vec![1, 1, 1]).unwrap();
    let p = Automorphism::permutation(&a2, vec![1, 0, 2]).unwrap();
    let q = Automorphism::permutation(&a2, vec![0, 2, 1]).unwrap();
    assert!(matches!(permutator(&p, &q), Err(Error::NoSolution(_))));
}

#[test]
fn permutator_relations_hold_on_canonical_families() {
    for (name, ctx) in scenarios() {
        let family = canonical_family(ctx.theta());
        let v = verify_permutator_relations(ctx.algebra(), &family, 1e-10).unwrap();
        assert!(v.passed(), "{name}: {:?}", v.violations().collect::<Vec<_>>());
    }
    // ℂ⁴ is commutative: every permutator is 𝟙.
    let ctx = s4();
    let one = ctx.algebra().identity();
    for a in canonical_family(ctx.theta()) {
        for b in canonical_family(ctx.theta()) {
            assert!(permutator(&a, &b).unwrap().value.max_diff(&one) <= 1e-12);
        }
    }
}

#[test]
fn lifting_certificates() {
    let ctx = s1();
    let ones = vec![ctx.algebra().identity(); 2];
    let v = verify_lifting_certificate(ctx.theta(), ctx.omega(), &ones, 1e-12).unwrap();
    assert!(v.is_lifting);

    let ctx = s2a();
    let ones = vec![ctx.algebra().identity(); 4];
    assert!(verify_lifting_certificate(ctx.theta(), ctx.omega(), &ones, 1e-12).unwrap().is_lifting);

    // A certificate that twists one generator by a non-central diagonal
    // unitary breaks the homomorphism property on the square of that generator.
    let g = ctx.group();
    let e1 = g.index_of(&[1, 0]).unwrap();
    let mut v = ones.clone();
    v[e1] = ctx.algebra().from_rows(&[vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)]]).unwrap();
    let verdict = verify_lifting_certificate(ctx.theta(), ctx.omega(), &v, 1e-12).unwrap();
    assert!(!verdict.is_lifting);
    let (x, y) = verdict.failing_pair.unwrap();
    assert!(x == vec![1, 0] || y == vec![1, 0]);

    let mut bad = ones;
    bad[0] = ctx.algebra().scalar(c(0.0, 1.0));
    assert!(matches!(
        verify_lifting_certificate(ctx.theta(), ctx.omega(), &bad, 1e-12),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn lifting_search_respects_capacity() {
    let ctx = s2a();
    let cands = vec![ctx.algebra().identity()];
    assert!(search_lifting(ctx.theta(), ctx.omega(), &cands, 10, 1e-12).unwrap().is_some());
    let many = vec![ctx.algebra().identity(); 10];
    assert!(matches!(
        search_lifting(ctx.theta(), ctx.omega(), &many, 100, 1e-12),
        Err(Error::Capacity { .. })
    ));
}

fn dr_system(ctx: &ExtensionContext) -> DrSystem {
    DrSystem {
        eps: permutators_from_cocycle(ctx.omega()),
        omega: ctx.omega().clone(),
        regauged: None,
        omega0: Some(ctx.omega().clone()),
    }
}

#[test]
fn dr_pauli_system_is_exact() {
    let ctx = s2b();
    let sys = dr_system(&ctx);
    let one = ctx.algebra().identity();
    let minus = one.scale(c(-1.0, 0.0));
    for e in &sys.eps {
        assert!(e.max_diff(&one) <= 1e-12 || e.max_diff(&minus) <= 1e-12);
    }
    assert!(sys.eps.iter().any(|e| e.max_diff(&minus) <= 1e-12));
    let v = verify_dr_permutator_system(ctx.theta(), &sys, 1e-12).unwrap();
    assert!(v.passed(), "{:?}", v.violations().collect::<Vec<_>>());

    // The same table read off inside the extension.
    let units: Vec<_> = (0..ctx.order()).map(|c| ctx.basis_unitary(c)).collect();
    let inside = permutators_from_extension(&ctx, &units).unwrap();
    for (a, b) in inside.iter().zip(&sys.eps) {
        assert!(a.max_diff(b) <= 1e-12);
    }
}

#[test]
fn dr_naturality_under_regauging() {
    let ctx = s2b();
    let mut r = rng(11);
    let n = ctx.order();
    let mut gauge: Vec<_> = (0..n).map(|_| ctx.algebra().random_unitary(&mut r)).collect();
    gauge[0] = ctx.algebra().identity();
    // V'_χ = A_χ U_χ realizes β' = ad(A_χ)β_χ inside the same extension.
    let units: Vec<_> = (0..n).map(|c| ctx.monomial(gauge[c].clone(), c)).collect();
    let eps_prime = permutators_from_extension(&ctx, &units).unwrap();
    let mut sys = dr_system(&ctx);
    sys.regauged = Some((gauge, eps_prime));
    let v = verify_dr_permutator_system(ctx.theta(), &sys, 1e-10).unwrap();
    assert!(v.passed(), "{:?}", v.violations().collect::<Vec<_>>());
}

#[test]
fn dr_trivial_and_faulty_systems() {
    let ctx = z3_m2();
    let v = verify_dr_permutator_system(ctx.theta(), &dr_system(&ctx), 1e-12).unwrap();
    assert!(v.passed());

    let ctx = s2b();
    let mut sys = dr_system(&ctx);
    let g = ctx.group();
    let (a, b) = (g.index_of(&[1, 0]).unwrap(), g.index_of(&[0, 1]).unwrap());
    let n = ctx.order();
    sys.eps[a * n + b] = sys.eps[a * n + b].scale(c(-1.0, 0.0));
    let v = verify_dr_permutator_system(ctx.theta(), &sys, 1e-12).unwrap();
    assert!(!v.get("antisymmetry").unwrap().passed());

    assert!(matches!(
        verify_dr_permutator_system(s3().theta(), &dr_system(&s3()), 1e-12),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn regauged_systems_agree_on_obstruction() {
    let mut r = rng(5);
    for (name, ctx) in scenarios() {
        for _ in 0..5 {
            let mut gauge: Vec<_> = (0..ctx.order()).map(|_| ctx.algebra().random_unitary(&mut r)).collect();
            gauge[0] = ctx.algebra().identity();
            let t = ctx.theta().regauged(&gauge).unwrap();
            let moved = transport_omega(ctx.theta(), ctx.omega(), &gauge);
            let v = verify_generalized_cocycle(&t, &moved, 1e-10);
            assert!(v.passed(), "{name}: {:?}", v.violations().collect::<Vec<_>>());

            // A freshly solved table differs by central phases q, so its
            // obstruction is exactly the coboundary of q.
            let solved = omega_from_representatives(&t).unwrap();
            let n = t.order();
            let q = |a: usize, b: usize| {
                (solved.get(a, b) * &moved.get(a, b).adjoint()).as_central_unitary(1e-10).unwrap()
            };
            let gamma = gamma_obstruction(&t, &solved).unwrap();
            let g = t.group();
            for a in 0..n {
                for b in 0..n {
                    for cc in 0..n {
                        let (ab, bc) = (g.mul_index(a, b), g.mul_index(b, cc));
                        let dq = q(a, b)
                            .mul(&q(ab, cc))
                            .mul(&t.beta(a).apply_central(&q(b, cc)).inverse())
                            .mul(&q(a, bc).inverse());
                        assert!(gamma.get(a, b, cc).max_diff(&dq) <= 1e-10, "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn permutator_class_is_gauge_invariant() {
    let mut r = rng(9);
    let ctx = s3();
    let family = canonical_family(ctx.theta());
    for a in &family {
        for b in &family {
            let e = permutator(a, b).unwrap().value;
            let z: CentralUnitary = ctx.algebra().random_central_unitary(&mut r);
            let shifted = e.multiply_central(&z);
            let (res, _) = equivalent_mod_center(&e, &shifted, 1e-12);
            assert!(res <= 1e-12);
        }
    }
}
