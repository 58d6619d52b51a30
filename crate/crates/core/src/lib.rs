//! Construction and verification of Hilbert C*-extensions of
//! finite-dimensional C*-algebras by finite abelian dual group actions.
//!
//! The workflow mirrors the objects involved:
//!
//! * [`group`]: the finite abelian group `X`, its dual `G`, the pairing.
//! * [`algebra`]: block algebras `A = ⊕ M_{dᵢ}`, automorphisms, intertwiners.
//! * [`theta`]: outer actions `Θ: X → Out A` via representatives `β_χ`,
//!   the `U(A)`-valued table `ω`, its obstruction `γ` and permutators.
//! * [`cohomology`]: exact `U(Z)`-valued cochains and `H²(X, U(Z))`.
//! * [`extension`]: the extension algebra `F = ⊕_χ A U_χ` with product,
//!   involution, `G`-action, inner product and C*-norm.
//! * [`representation`]: the regular representation on `ℓ²(X, H)`.

pub mod algebra;
pub mod check;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod group;
pub mod linalg;
pub mod representation;
pub mod theta;

pub use algebra::{Automorphism, AlgebraElement, BlockAlgebra, CentralUnitary};
pub use check::{Check, Verification};
pub use cohomology::{CenterAction, CentralCochain, CohomologyGroup};
pub use error::{Error, Result};
pub use extension::{ExtensionContext, ExtensionElement, ModuleIsomorphism};
pub use group::{Character, Element, FiniteAbelianGroup};
pub use representation::{BaseRep, RegularRep};
pub use theta::{DrSystem, GammaCochain, OmegaTable, ThetaData};


