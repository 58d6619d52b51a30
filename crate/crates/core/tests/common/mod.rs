#![allow(dead_code)]

use hilbext_core::algebra::{Automorphism, BlockAlgebra};
use hilbext_core::cohomology::{CenterAction, CentralCochain};
use hilbext_core::extension::ExtensionContext;
use hilbext_core::group::FiniteAbelianGroup;
use hilbext_core::linalg::CMatrix;
use hilbext_core::theta::{omega_from_representatives, OmegaTable, ThetaData};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sigma_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

pub fn eye(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn group(orders: &[usize]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(orders.to_vec()).unwrap()
}

pub fn theta(orders: &[usize], dims: &[usize], gens: impl Fn(&BlockAlgebra) -> Vec<Automorphism>) -> ThetaData {
    let algebra = BlockAlgebra::new(dims.to_vec()).unwrap();
    let generators = gens(&algebra);
    ThetaData::from_generators(group(orders), algebra, &generators).unwrap()
}

pub fn context(theta: ThetaData) -> ExtensionContext {
    let omega = omega_from_representatives(&theta).unwrap();
    ExtensionContext::new(theta, omega).unwrap()
}

/// `λ((a₁,a₂),(b₁,b₂)) = a₂b₁ mod 2`, the Pauli class on `Z₂×Z₂`.
pub fn pauli_lambda(action: &CenterAction) -> CentralCochain {
    let g = action.group().clone();
    let m = action.m();
    CentralCochain::from_fn(action, 2, 2, |args| {
        let (a, b) = (g.element_at(args[0]), g.element_at(args[1]));
        vec![((a[1] * b[0]) % 2) as i64; m]
    })
    .unwrap()
}

pub fn twisted(ctx: &ExtensionContext, lambda: &CentralCochain) -> ExtensionContext {
    let omega = ctx.omega().twisted(lambda).unwrap();
    ExtensionContext::new(ctx.theta().clone(), omega).unwrap()
}

/// `ℂ²`, `Z₂` acting by the swap.
pub fn s1() -> ExtensionContext {
    context(theta(&[2], &[1, 1], |a| vec![Automorphism::permutation(a, vec![1, 0]).unwrap()]))
}

/// `M₂`, `Z₂×Z₂` with `e₁ ↦ ad σz`, `e₂ ↦ ad σx`.
pub fn pauli_theta() -> ThetaData {
    theta(&[2, 2], &[2], |a| {
        vec![
            Automorphism::new(a, vec![0], vec![sigma_z()]).unwrap(),
            Automorphism::new(a, vec![0], vec![sigma_x()]).unwrap(),
        ]
    })
}

pub fn s2a() -> ExtensionContext {
    context(pauli_theta())
}

pub fn s2b() -> ExtensionContext {
    let ctx = s2a();
    let lambda = pauli_lambda(&ctx.theta().center_action().unwrap());
    twisted(&ctx, &lambda)
}

/// `M₂` with `β ≡ id` over `Z₂×Z₂`, untwisted or Pauli-twisted.
pub fn m2_identity(pauli: bool) -> ExtensionContext {
    let ctx = context(theta(&[2, 2], &[2], |a| vec![Automorphism::identity(a); 2]));
    if pauli {
        let lambda = pauli_lambda(&ctx.theta().center_action().unwrap());
        twisted(&ctx, &lambda)
    } else {
        ctx
    }
}

/// `A = ℂ`, `Z₂×Z₂`, untwisted or Pauli-twisted.
pub fn scalar(pauli: bool) -> ExtensionContext {
    let ctx = context(theta(&[2, 2], &[1], |a| vec![Automorphism::identity(a); 2]));
    if pauli {
        let lambda = pauli_lambda(&ctx.theta().center_action().unwrap());
        twisted(&ctx, &lambda)
    } else {
        ctx
    }
}

/// `M₂⊕M₂`, `Z₂` swapping the blocks with unitaries `(σx, 𝟙)`.
pub fn s3() -> ExtensionContext {
    context(theta(&[2], &[2, 2], |a| {
        vec![Automorphism::new(a, vec![1, 0], vec![sigma_x(), eye(2)]).unwrap()]
    }))
}

/// `ℂ⁴`, `Z₂×Z₂` permuting the minimal projections regularly.
pub fn s4() -> ExtensionContext {
    let g = group(&[2, 2]);
    let shift = |e: [usize; 2]| -> Vec<usize> {
        (0..4)
            .map(|i| {
                let x = g.element_at(i);
                g.index_of(&[(x[0] + e[0]) % 2, (x[1] + e[1]) % 2]).unwrap()
            })
            .collect()
    };
    context(theta(&[2, 2], &[1, 1, 1, 1], |a| {
        vec![
            Automorphism::permutation(a, shift([1, 0])).unwrap(),
            Automorphism::permutation(a, shift([0, 1])).unwrap(),
        ]
    }))
}

/// `M₂`, `Z₃` acting by `ad diag(1, e^{2πi/3})`.
pub fn z3_m2() -> ExtensionContext {
    let w = hilbext_core::group::root_of_unity(1, 3);
    let u = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), w]);
    context(theta(&[3], &[2], |a| vec![Automorphism::new(a, vec![0], vec![u.clone()]).unwrap()]))
}

pub fn scenarios() -> Vec<(&'static str, ExtensionContext)> {
    vec![
        ("s1", s1()),
        ("s2a", s2a()),
        ("s2b", s2b()),
        ("scalar", scalar(false)),
        ("scalar-pauli", scalar(true)),
        ("s3", s3()),
        ("s4", s4()),
        ("z3-m2", z3_m2()),
    ]
}

pub fn trivial_omega(theta: &ThetaData) -> OmegaTable {
    OmegaTable::trivial(theta)
}
