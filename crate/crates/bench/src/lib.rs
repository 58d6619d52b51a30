//! Fixtures shared by the benchmarks.

use hilbext_core::algebra::{Automorphism, BlockAlgebra};
use hilbext_core::cohomology::CentralCochain;
use hilbext_core::extension::ExtensionContext;
use hilbext_core::group::FiniteAbelianGroup;
use hilbext_core::theta::{omega_from_representatives, ThetaData};

/// `M_d` with the trivial action of `Z_n`.
pub fn matrix_trivial(n: usize, d: usize) -> ExtensionContext {
    let group = FiniteAbelianGroup::new(vec![n]).expect("group");
    let algebra = BlockAlgebra::new(vec![d]).expect("algebra");
    let theta = ThetaData::from_generators(group, algebra.clone(), &[Automorphism::identity(&algebra)])
        .expect("representatives");
    let omega = omega_from_representatives(&theta).expect("omega");
    ExtensionContext::new(theta, omega).expect("cocycle")
}

/// `ℂ^{n}` with `Z_n` rotating the minimal projections.
pub fn rotation(n: usize) -> ExtensionContext {
    let group = FiniteAbelianGroup::new(vec![n]).expect("group");
    let algebra = BlockAlgebra::new(vec![1; n]).expect("algebra");
    let shift = Automorphism::permutation(&algebra, (0..n).map(|i| (i + 1) % n).collect()).expect("shift");
    let theta = ThetaData::from_generators(group, algebra, &[shift]).expect("representatives");
    let omega = omega_from_representatives(&theta).expect("omega");
    ExtensionContext::new(theta, omega).expect("cocycle")
}

/// `M_d` with the trivial action of `Z₂×Z₂` twisted by the Pauli cocycle.
pub fn pauli(d: usize) -> ExtensionContext {
    let group = FiniteAbelianGroup::new(vec![2, 2]).expect("group");
    let algebra = BlockAlgebra::new(vec![d]).expect("algebra");
    let id = Automorphism::identity(&algebra);
    let theta = ThetaData::from_generators(group.clone(), algebra, &[id.clone(), id]).expect("representatives");
    let action = theta.center_action().expect("center action");
    let lambda = CentralCochain::from_fn(&action, 2, 2, |args| {
        let (a, b) = (group.element_at(args[0]), group.element_at(args[1]));
        vec![((a[1] * b[0]) % 2) as i64]
    })
    .expect("cocycle");
    let omega = omega_from_representatives(&theta).expect("omega").twisted(&lambda).expect("twist");
    ExtensionContext::new(theta, omega).expect("cocycle")
}
