mod common;

use common::*;
use hilbext_core::algebra::{AlgebraElement, CentralUnitary};
use hilbext_core::cohomology::{coboundary_solve, CentralCochain};
use hilbext_core::error::Error;
use hilbext_core::extension::*;
use hilbext_core::representation::{center_dimension, represent};
use num_complex::Complex64;

const SAMPLES: usize = 100;

fn alg_norm(a: &AlgebraElement) -> f64 {
    a.norm()
}

#[test]
fn unit_and_algebra_products() {
    let mut r = rng(1);
    for (name, ctx) in scenarios() {
        let a = ctx.algebra().random_element(&mut r);
        let b = ctx.algebra().random_element(&mut r);
        let ab = ext_mul(&ctx, &ctx.from_algebra(a.clone()), &ctx.from_algebra(b.clone())).unwrap();
        assert!(ab.max_diff(&ctx.from_algebra(&a * &b)) <= 1e-14, "{name}");
        let f = ctx.random_element(&mut r);
        assert!(ext_mul(&ctx, &ctx.one(), &f).unwrap().max_diff(&f) <= 1e-14);
        assert!(ext_mul(&ctx, &f, &ctx.one()).unwrap().max_diff(&f) <= 1e-14);
    }
}

#[test]
fn explicit_inverse_of_basis_unitaries() {
    for (name, ctx) in scenarios() {
        for chi in 0..ctx.order() {
            let u = ctx.basis_unitary(chi);
            let inv = basis_inverse(&ctx, chi);
            assert!(ext_mul(&ctx, &u, &inv).unwrap().max_diff(&ctx.one()) <= 1e-12, "{name}");
            assert!(ext_mul(&ctx, &inv, &u).unwrap().max_diff(&ctx.one()) <= 1e-12, "{name}");
            assert!(ext_star(&ctx, &u).max_diff(&inv) <= 1e-12, "{name}");
        }
    }
}

/// `(p,q)U₀ + (r,s)U₁ ↦ [[p, r], [s, q]]`.
fn s1_matrix(f: &ExtensionElement) -> [[Complex64; 2]; 2] {
    let (a0, a1) = (f.coefficient(0), f.coefficient(1));
    [[a0.block(0)[(0, 0)], a1.block(0)[(0, 0)]], [a1.block(1)[(0, 0)], a0.block(1)[(0, 0)]]]
}

fn mat_mul(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0., 0.); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    out
}

#[test]
fn s1_matches_two_by_two_matrices() {
    let ctx = s1();
    let mut r = rng(2);
    for _ in 0..SAMPLES {
        let f = ctx.random_element(&mut r);
        let g = ctx.random_element(&mut r);
        let lhs = s1_matrix(&ext_mul(&ctx, &f, &g).unwrap());
        let rhs = mat_mul(s1_matrix(&f), s1_matrix(&g));
        for i in 0..2 {
            for j in 0..2 {
                assert!((lhs[i][j] - rhs[i][j]).norm() <= 1e-12);
            }
        }
        let star = s1_matrix(&ext_star(&ctx, &f));
        let m = s1_matrix(&f);
        for i in 0..2 {
            for j in 0..2 {
                assert!((star[i][j] - m[j][i].conj()).norm() <= 1e-12);
            }
        }
    }
    assert_eq!(ctx.dimension(), 4);
}

#[test]
fn associativity_and_involution() {
    let mut r = rng(3);
    for (name, ctx) in scenarios() {
        for chi in 0..ctx.order() {
            let u = ctx.basis_unitary(chi);
            let us = ext_star(&ctx, &u);
            assert!(ext_mul(&ctx, &us, &u).unwrap().max_diff(&ctx.one()) <= 1e-12, "{name}");
            assert!(ext_mul(&ctx, &u, &us).unwrap().max_diff(&ctx.one()) <= 1e-12, "{name}");
            assert!(ext_star(&ctx, &us).max_diff(&u) <= 1e-12, "{name}");
            let a = ctx.algebra().random_element(&mut r);
            // (U_χ A)* = A* U_χ*
            let lhs = ext_star(&ctx, &ext_mul(&ctx, &u, &ctx.from_algebra(a.clone())).unwrap());
            let rhs = ext_mul(&ctx, &ctx.from_algebra(a.adjoint()), &us).unwrap();
            assert!(lhs.max_diff(&rhs) <= 1e-12, "{name}");
            for psi in 0..ctx.order() {
                let v = ctx.basis_unitary(psi);
                let lhs = ext_star(&ctx, &ext_mul(&ctx, &u, &v).unwrap());
                let rhs = ext_mul(&ctx, &ext_star(&ctx, &v), &us).unwrap();
                assert!(lhs.max_diff(&rhs) <= 1e-12, "{name}");
            }
        }
        for _ in 0..SAMPLES {
            let f1 = ctx.random_element(&mut r);
            let f2 = ctx.random_element(&mut r);
            let f3 = ctx.random_element(&mut r);
            let left = ext_mul(&ctx, &ext_mul(&ctx, &f1, &f2).unwrap(), &f3).unwrap();
            let right = ext_mul(&ctx, &f1, &ext_mul(&ctx, &f2, &f3).unwrap()).unwrap();
            assert!(cstar_norm(&ctx, &left.sub(&right)) <= 1e-10, "{name}");
            assert!(ext_star(&ctx, &ext_star(&ctx, &f1)).max_diff(&f1) <= 1e-12, "{name}");
            let lhs = ext_star(&ctx, &ext_mul(&ctx, &f1, &f2).unwrap());
            let rhs = ext_mul(&ctx, &ext_star(&ctx, &f2), &ext_star(&ctx, &f1)).unwrap();
            assert!(lhs.max_diff(&rhs) <= 1e-10, "{name}");
        }
    }
}

#[test]
fn pauli_star_is_the_represented_inverse() {
    let ctx = scalar(true);
    let chi = ctx.group().index_of(&[1, 0]).unwrap();
    let u = represent(&ctx, &ctx.basis_unitary(chi));
    let star = represent(&ctx, &ext_star(&ctx, &ctx.basis_unitary(chi)));
    let inv = u.clone().try_inverse().unwrap();
    assert!((star - inv).iter().all(|z| z.norm() <= 1e-12));
}

#[test]
fn group_action() {
    let mut r = rng(4);
    let ctx = s1();
    let a = ctx.algebra().random_element(&mut r);
    let f = ctx.monomial(a.clone(), 1);
    assert!(ext_act(&ctx, 1, &f).max_diff(&f.scale(c(-1., 0.))) <= 1e-15);
    let z4 = context(theta(&[4], &[1], |al| vec![hilbext_core::Automorphism::identity(al)]));
    let f = z4.basis_unitary(1);
    assert!(ext_act(&z4, 1, &f).max_diff(&f.scale(c(0., 1.))) <= 1e-15);

    for (name, ctx) in scenarios() {
        let n = ctx.group().order();
        for _ in 0..10 {
            let f1 = ctx.random_element(&mut r);
            let f2 = ctx.random_element(&mut r);
            for g in 0..n {
                let lhs = ext_act(&ctx, g, &ext_mul(&ctx, &f1, &f2).unwrap());
                let rhs = ext_mul(&ctx, &ext_act(&ctx, g, &f1), &ext_act(&ctx, g, &f2)).unwrap();
                assert!(lhs.max_diff(&rhs) <= 1e-12, "{name}");
                let lhs = ext_act(&ctx, g, &ext_star(&ctx, &f1));
                let rhs = ext_star(&ctx, &ext_act(&ctx, g, &f1));
                assert!(lhs.max_diff(&rhs) <= 1e-12, "{name}");
                for h in 0..n {
                    let gh = ctx.group().mul_index(g, h);
                    let lhs = ext_act(&ctx, g, &ext_act(&ctx, h, &f1));
                    assert!(lhs.max_diff(&ext_act(&ctx, gh, &f1)) <= 1e-12, "{name}");
                }
            }
            // Fixed points: averaging over G lands in A.
            let avg = spectral_projection(&ctx, 0, &f1);
            assert!((1..n).all(|c| avg.coefficient(c).max_abs() <= 1e-12), "{name}");
            for g in 0..n {
                assert!(ext_act(&ctx, g, &avg).max_diff(&avg) <= 1e-12);
            }
        }
    }
}

#[test]
fn spectral_projections_two_routes() {
    let mut r = rng(5);
    for (name, ctx) in scenarios() {
        for chi in 0..ctx.order() {
            let u = ctx.basis_unitary(chi);
            assert!(spectral_projection(&ctx, chi, &u).max_diff(&u) <= 1e-12, "{name}");
        }
        for _ in 0..SAMPLES {
            let f = ctx.random_element(&mut r);
            let mut sum = ctx.zero();
            for chi in 0..ctx.order() {
                let avg = spectral_projection(&ctx, chi, &f);
                let ext = spectral_component(&ctx, chi, &f);
                assert!(avg.max_diff(&ext) <= 1e-12, "{name}");
                let twice = spectral_projection(&ctx, chi, &avg);
                assert!(twice.max_diff(&avg) <= 1e-12, "{name}");
                sum = sum.add(&avg);
            }
            assert!(sum.max_diff(&f) <= 1e-12, "{name}");
        }
    }
}

#[test]
fn inner_product_identities() {
    let mut r = rng(6);
    for (name, ctx) in scenarios() {
        for chi in 0..ctx.order() {
            let u = ctx.basis_unitary(chi);
            assert!(inner_product(&ctx, &u, &u).max_diff(&ctx.algebra().identity()) <= 1e-12);
        }
        let a = ctx.algebra().random_element(&mut r);
        let b = ctx.algebra().random_element(&mut r);
        let ip = inner_product(&ctx, &ctx.from_algebra(a.clone()), &ctx.from_algebra(b.clone()));
        assert!(ip.max_diff(&(&a.adjoint() * &b)) <= 1e-14);
        for _ in 0..SAMPLES {
            let f1 = ctx.random_element(&mut r);
            let f2 = ctx.random_element(&mut r);
            let ip = inner_product(&ctx, &f1, &f2);
            let via_product = spectral_projection(&ctx, 0, &ext_mul(&ctx, &ext_star(&ctx, &f1), &f2).unwrap());
            assert!(ctx.from_algebra(ip.clone()).max_diff(&via_product) <= 1e-12, "{name}");
            assert!(ip.adjoint().max_diff(&inner_product(&ctx, &f2, &f1)) <= 1e-12, "{name}");
            for g in 0..ctx.group().order() {
                let moved = inner_product(&ctx, &ext_act(&ctx, g, &f1), &ext_act(&ctx, g, &f2));
                assert!(moved.max_diff(&ip) <= 1e-12, "{name}");
            }
            assert!(min_eigenvalue(&inner_product(&ctx, &f1, &f1)) >= -1e-12, "{name}");
        }
        assert!(inner_product(&ctx, &ctx.zero(), &ctx.zero()).is_zero(0.0));
    }
}

#[test]
fn norms_two_routes() {
    let mut r = rng(7);
    for (name, ctx) in scenarios() {
        let gram = module_gram_matrix(&ctx);
        for chi in 0..ctx.order() {
            assert!((cstar_norm(&ctx, &ctx.basis_unitary(chi)) - 1.0).abs() <= 1e-12);
        }
        assert!((hilbert_module_norm_oracle(&ctx, &ctx.one()).unwrap() - 1.0).abs() <= 1e-12);
        let a = ctx.algebra().random_element(&mut r);
        assert!((cstar_norm(&ctx, &ctx.from_algebra(a.clone())) - alg_norm(&a)).abs() <= 1e-12 * alg_norm(&a).max(1.0));
        for _ in 0..SAMPLES {
            let f = ctx.random_element(&mut r);
            let n = cstar_norm(&ctx, &f);
            let oracle = hilbert_module_norm_with_gram(&ctx, &f, &gram).unwrap();
            assert!((n - oracle).abs() <= 1e-10 * n.max(1.0), "{name}: {n} vs {oracle}");
            let ff = ext_mul(&ctx, &ext_star(&ctx, &f), &f).unwrap();
            assert!((cstar_norm(&ctx, &ff) - n * n).abs() <= 1e-10 * (n * n).max(1.0), "{name}");
            for g in 0..ctx.group().order() {
                let moved = cstar_norm(&ctx, &ext_act(&ctx, g, &f));
                assert!((moved - n).abs() <= 1e-10 * n.max(1.0), "{name}");
            }
        }
    }
    let ctx = s1();
    let f = ctx.basis_unitary(0).add(&ctx.basis_unitary(1));
    assert!((cstar_norm(&ctx, &f) - 2.0).abs() <= 1e-12);
}

fn random_exact_z(ctx: &ExtensionContext, modulus: i64, seed: u64) -> CentralCochain {
    use rand::Rng;
    let mut r = rng(seed);
    let action = ctx.theta().center_action().unwrap();
    CentralCochain::from_fn(&action, 1, modulus, |args| {
        (0..action.m())
            .map(|_| if args[0] == 0 { 0 } else { r.gen_range(0..modulus) })
            .collect()
    })
    .unwrap()
}

fn z_unitaries(z: &CentralCochain, n: usize) -> Vec<CentralUnitary> {
    (0..n).map(|c| z.unitary(&[c])).collect()
}

/// `ω₂ = (∂Z)⁻¹·ω₁`, so that `ω₁ = ∂Z·ω₂`.
fn perturbed(ctx: &ExtensionContext, z: &[CentralUnitary]) -> ExtensionContext {
    let omega = ctx
        .omega()
        .times_central(|a, b| central_coboundary(ctx.theta(), z, a, b).inverse());
    ExtensionContext::new(ctx.theta().clone(), omega).unwrap()
}

#[test]
fn module_isomorphism_suites() {
    let mut r = rng(8);
    for (name, ctx) in scenarios() {
        let ones = vec![CentralUnitary::one(ctx.algebra().num_blocks()); ctx.order()];
        let (_, v) = build_module_isomorphism(&ctx, &ctx, &ones, &mut r, 20, 1e-10).unwrap();
        assert!(v.passed(), "{name}");

        let zc = random_exact_z(&ctx, 6, 100);
        let z = z_unitaries(&zc, ctx.order());
        let target = perturbed(&ctx, &z);
        let (iso, v) = build_module_isomorphism(&ctx, &target, &z, &mut r, 20, 1e-10).unwrap();
        assert!(v.passed(), "{name}: {:?}", v.violations().collect::<Vec<_>>());
        assert_eq!(v.checks.len(), 5);

        // Exact round trip through the generator images.
        let images: Vec<_> = (0..ctx.order()).map(|c| iso.apply(&ctx.basis_unitary(c))).collect();
        let back = extract_coboundary(&ctx, &target, &images, 1e-10).unwrap();
        let action = ctx.theta().center_action().unwrap();
        let snapped = CentralCochain::from_unitaries(&action, 1, 6, |args| back[args[0]].clone()).unwrap();
        assert_eq!(snapped.entries(), zc.entries(), "{name}");

        // Wrong target: the precondition names a pair.
        let err = build_module_isomorphism(&ctx, &ctx, &z, &mut r, 1, 1e-10);
        if z.iter().any(|p| p.max_diff(&ones[0]) > 0.0) {
            if let Err(e) = err {
                assert!(matches!(e, Error::Precondition(_)));
            }
        }
    }
}

#[test]
fn extract_examples() {
    let ctx = s1();
    let ids: Vec<_> = (0..2).map(|c| ctx.basis_unitary(c)).collect();
    let z = extract_coboundary(&ctx, &ctx, &ids, 1e-12).unwrap();
    assert!(z.iter().all(|p| p.max_diff(&CentralUnitary::one(2)) <= 1e-12));

    let flipped = vec![ctx.basis_unitary(0), ctx.basis_unitary(1).scale(c(-1., 0.))];
    let z = extract_coboundary(&ctx, &ctx, &flipped, 1e-12).unwrap();
    assert!(z[1].max_diff(&CentralUnitary::new(vec![c(-1., 0.), c(-1., 0.)]).unwrap()) <= 1e-12);

    let ctx = s2a();
    let mut bad: Vec<_> = (0..4).map(|c| ctx.basis_unitary(c)).collect();
    let sx = ctx.algebra().element(vec![sigma_x()]).unwrap();
    bad[1] = ctx.monomial(sx, 1);
    match extract_coboundary(&ctx, &ctx, &bad, 1e-12) {
        Err(Error::Validation(msg)) => assert!(msg.contains("not an A-module isomorphism")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pauli_and_trivial_are_not_isomorphic() {
    for (trivial, pauli, dims) in [
        (scalar(false), scalar(true), (4, 1)),
        (m2_identity(false), m2_identity(true), (4, 1)),
        (s2a(), s2b(), (1, 4)),
    ] {
        let lambda = pauli_lambda(&trivial.theta().center_action().unwrap());
        assert!(coboundary_solve(&lambda).unwrap().is_none());
        assert_eq!(center_dimension(&trivial, 1e-9), dims.0);
        assert_eq!(center_dimension(&pauli, 1e-9), dims.1);
    }
}

#[test]
fn structure_constants_reproduce_products() {
    let ctx = s3();
    let table = structure_constants(&ctx).unwrap();
    let basis = ctx.basis();
    let mut r = rng(12);
    let f = ctx.random_element(&mut r);
    let g = ctx.random_element(&mut r);
    let (x, y) = (ctx.coordinates(&f), ctx.coordinates(&g));
    let mut prod = vec![Complex64::new(0., 0.); basis.len()];
    for &(a, b, cidx, v) in &table {
        prod[cidx] += x[a] * y[b] * v;
    }
    let direct = ctx.coordinates(&ext_mul(&ctx, &f, &g).unwrap());
    for (p, d) in prod.iter().zip(&direct) {
        assert!((p - d).norm() <= 1e-12);
    }
    assert_eq!(ctx.dimension(), 16);
}
