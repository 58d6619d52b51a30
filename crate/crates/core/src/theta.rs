//! Outer actions `Θ: X → Out A` given by representatives `β_χ`, the
//! `U(A)`-valued table `ω` with `β_{χ₁}∘β_{χ₂} = ad ω(χ₁,χ₂) ∘ β_{χ₁χ₂}`,
//! its obstruction `γ`, permutators, lifting certificates and the exact
//! permutator system available when the center is trivial.
//!
//! Group elements are addressed by enumeration index throughout; tables are
//! row-major in that order.

use serde::Serialize;

use crate::algebra::{
    compose_outer, solve_inner_cocycle, AlgebraElement, Automorphism, BlockAlgebra,
    CentralUnitary, VALIDATION_TOL,
};
use crate::check::{Check, Verification};
use crate::cohomology::{solve_coboundary, CenterAction, CentralCochain};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteAbelianGroup};

/// Default residual bound for the cocycle and permutator identities.
pub const COCYCLE_TOL: f64 = 1e-12;

/// Largest root-of-unity order tried when reading `γ` as exact phases.
pub const MAX_PHASE_GRID: i64 = 720;

/// `(X, A, χ ↦ β_χ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaData {
    group: FiniteAbelianGroup,
    algebra: BlockAlgebra,
    representatives: Vec<Automorphism>,
}

impl ThetaData {
    /// One representative per group element, in enumeration order.
    pub fn new(
        group: FiniteAbelianGroup,
        algebra: BlockAlgebra,
        representatives: Vec<Automorphism>,
    ) -> Result<Self> {
        if representatives.len() != group.order() {
            return Err(Error::Structural(format!(
                "{} representatives for a group of order {}",
                representatives.len(),
                group.order()
            )));
        }
        let dims = algebra.block_dims();
        for (i, b) in representatives.iter().enumerate() {
            let shapes: Vec<usize> = b.block_unitaries().iter().map(|w| w.nrows()).collect();
            if shapes != dims {
                return Err(Error::Structural(format!(
                    "representative {i} acts on blocks {shapes:?}, algebra has {dims:?}"
                )));
            }
        }
        Ok(Self {
            group,
            algebra,
            representatives,
        })
    }

    /// `β_χ = β_{e₁}^{x₁} ∘ … ∘ β_{e_k}^{x_k}` from one automorphism per
    /// cyclic factor.
    pub fn from_generators(
        group: FiniteAbelianGroup,
        algebra: BlockAlgebra,
        generators: &[Automorphism],
    ) -> Result<Self> {
        if generators.len() != group.rank() {
            return Err(Error::Structural(format!(
                "need {} generators, got {}",
                group.rank(),
                generators.len()
            )));
        }
        let reps = (0..group.order())
            .map(|idx| {
                let x = group.element_at(idx);
                let mut beta = Automorphism::identity(&algebra);
                for (g, &power) in generators.iter().zip(&x) {
                    for _ in 0..power {
                        beta = beta.compose(g);
                    }
                }
                beta
            })
            .collect();
        Self::new(group, algebra, reps)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn beta(&self, chi: usize) -> &Automorphism {
        &self.representatives[chi]
    }

    pub fn representatives(&self) -> &[Automorphism] {
        &self.representatives
    }

    /// How `X` acts on `U(Z)` through the outer classes.
    pub fn center_action(&self) -> Result<CenterAction> {
        CenterAction::new(
            self.group.clone(),
            self.algebra.num_blocks(),
            self.representatives.iter().map(|b| b.outer_class().to_vec()).collect(),
        )
    }

    /// The system `β'_χ = ad(A_χ) ∘ β_χ`; `A_ι` must be `𝟙` to keep `β'_ι = id`.
    pub fn regauged(&self, unitaries: &[AlgebraElement]) -> Result<Self> {
        if unitaries.len() != self.order() {
            return Err(Error::Structural("one unitary per group element required".into()));
        }
        let reps = self
            .representatives
            .iter()
            .zip(unitaries)
            .map(|(b, u)| Automorphism::inner(u).compose(b))
            .collect();
        Self::new(self.group.clone(), self.algebra.clone(), reps)
    }
}

/// The table `ω'(χ₁,χ₂) = A_{χ₁}·β_{χ₁}(A_{χ₂})·ω(χ₁,χ₂)·A_{χ₁χ₂}*` that goes
/// with [`ThetaData::regauged`]; a cocycle whenever `ω` is one.
pub fn transport_omega(theta: &ThetaData, omega: &OmegaTable, unitaries: &[AlgebraElement]) -> OmegaTable {
    let g = &theta.group;
    OmegaTable::from_fn(theta.order(), |a, b| {
        let ab = g.mul_index(a, b);
        &(&(&unitaries[a] * &theta.beta(a).apply(&unitaries[b])) * omega.get(a, b)) * &unitaries[ab].adjoint()
    })
}

/// Outcome of [`validate_theta`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    /// Characters whose representative is inner.
    pub kernel: Vec<Element>,
    pub injective: bool,
}

/// `β_ι = id` and `χ ↦ outer_class(β_χ)` is a homomorphism.
pub fn validate_theta(theta: &ThetaData) -> Result<ThetaReport> {
    let g = &theta.group;
    let n = g.order();
    let id_diff = theta.beta(0).extensional_diff(&Automorphism::identity(&theta.algebra), &theta.algebra);
    if id_diff > VALIDATION_TOL {
        return Err(Error::Validation(format!(
            "representative of the identity is not the identity (deviation {id_diff:.3e})"
        )));
    }
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let composed = compose_outer(theta.beta(a).outer_class(), theta.beta(b).outer_class());
            if composed != theta.beta(g.mul_index(a, b)).outer_class() {
                bad.push(format!("({:?}, {:?})", g.element_at(a), g.element_at(b)));
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::Validation(format!(
            "outer classes are not a homomorphism at {}",
            bad.join(", ")
        )));
    }
    let kernel: Vec<Element> = (0..n)
        .filter(|&c| theta.beta(c).is_inner())
        .map(|c| g.element_at(c))
        .collect();
    Ok(ThetaReport {
        injective: kernel.len() == 1,
        kernel,
    })
}

/// `(χ₁, χ₂) ↦ ω(χ₁, χ₂) ∈ U(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaTable {
    order: usize,
    entries: Vec<AlgebraElement>,
}

impl OmegaTable {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> AlgebraElement) -> Self {
        let entries = (0..order * order).map(|k| f(k / order, k % order)).collect();
        Self { order, entries }
    }

    /// `ω ≡ 𝟙`.
    pub fn trivial(theta: &ThetaData) -> Self {
        let one = theta.algebra.identity();
        Self::from_fn(theta.order(), |_, _| one.clone())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> &AlgebraElement {
        &self.entries[a * self.order + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: AlgebraElement) {
        self.entries[a * self.order + b] = value;
    }

    /// `(λ·ω)(χ₁,χ₂) = λ(χ₁,χ₂)·ω(χ₁,χ₂)`.
    pub fn twisted(&self, lambda: &CentralCochain) -> Result<Self> {
        if lambda.degree() != 2 || lambda.group().order() != self.order {
            return Err(Error::Structural("twist must be a 2-cochain on the same group".into()));
        }
        Ok(Self::from_fn(self.order, |a, b| {
            self.get(a, b).multiply_central(&lambda.unitary(&[a, b]))
        }))
    }

    /// Pointwise `ω(χ₁,χ₂)·z(χ₁,χ₂)` for an arbitrary central table.
    pub fn times_central(&self, z: impl Fn(usize, usize) -> CentralUnitary) -> Self {
        Self::from_fn(self.order, |a, b| self.get(a, b).multiply_central(&z(a, b)))
    }
}

/// `ω(χ₁,χ₂) = solve_inner_cocycle(β_{χ₁}∘β_{χ₂}, β_{χ₁χ₂})`, boundary
/// entries forced to `𝟙`.
pub fn omega_from_representatives(theta: &ThetaData) -> Result<OmegaTable> {
    let g = &theta.group;
    let n = g.order();
    let one = theta.algebra.identity();
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            if a == 0 || b == 0 {
                entries.push(one.clone());
                continue;
            }
            let lhs = theta.beta(a).compose(theta.beta(b));
            let u = solve_inner_cocycle(&lhs, theta.beta(g.mul_index(a, b))).map_err(|e| {
                Error::Inconsistent(format!(
                    "no implementing unitary for ({:?}, {:?}): {e}",
                    g.element_at(a),
                    g.element_at(b)
                ))
            })?;
            entries.push(u);
        }
    }
    Ok(OmegaTable { order: n, entries })
}

/// `(χ₁,χ₂,χ₃) ↦ γ(χ₁,χ₂,χ₃) ∈ U(Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaCochain {
    order: usize,
    entries: Vec<CentralUnitary>,
}

impl GammaCochain {
    pub fn get(&self, a: usize, b: usize, c: usize) -> &CentralUnitary {
        &self.entries[(a * self.order + b) * self.order + c]
    }

    /// Largest `|γ − 1|` over all triples and blocks.
    pub fn max_deviation(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|z| z.phases.iter().map(|p| (p - 1.0).norm()))
            .fold(0.0, f64::max)
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }

    /// Exact phases on the smallest grid that carries them.
    pub fn to_cochain(&self, action: &CenterAction) -> Result<CentralCochain> {
        CentralCochain::from_unitaries_auto(action, 3, MAX_PHASE_GRID, |args| {
            self.get(args[0], args[1], args[2]).clone()
        })
    }
}

/// `γ = ω(χ₁,χ₂)ω(χ₁χ₂,χ₃)[β_{χ₁}(ω(χ₂,χ₃))ω(χ₁,χ₂χ₃)]⁻¹`, required central.
pub fn gamma_obstruction(theta: &ThetaData, omega: &OmegaTable) -> Result<GammaCochain> {
    let g = &theta.group;
    let n = g.order();
    let mut entries = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab = g.mul_index(a, b);
                let bc = g.mul_index(b, c);
                let lhs = omega.get(a, b) * omega.get(ab, c);
                let rhs = &theta.beta(a).apply(omega.get(b, c)) * omega.get(a, bc);
                let q = &lhs * &rhs.adjoint();
                let z = q.as_central_unitary(VALIDATION_TOL).ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "obstruction at ({:?}, {:?}, {:?}) is not central (defect {:.3e}); \
                         the table does not satisfy the intertwining relation",
                        g.element_at(a),
                        g.element_at(b),
                        g.element_at(c),
                        q.central_defect().max(q.unitarity_defect())
                    ))
                })?;
                entries.push(z);
            }
        }
    }
    Ok(GammaCochain { order: n, entries })
}

fn triple_name(g: &FiniteAbelianGroup, a: usize, b: usize, c: usize) -> String {
    format!("({:?}, {:?}, {:?})", g.element_at(a), g.element_at(b), g.element_at(c))
}

fn pair_name(g: &FiniteAbelianGroup, a: usize, b: usize) -> String {
    format!("({:?}, {:?})", g.element_at(a), g.element_at(b))
}

/// Unitarity, intertwining, boundary and cocycle conditions, plus the
/// skew relation `ad(ω(χ₁,χ₂)ω(χ₂,χ₁)⁻¹) = β_{χ₁}β_{χ₂}β_{χ₁}⁻¹β_{χ₂}⁻¹`.
pub fn verify_generalized_cocycle(theta: &ThetaData, omega: &OmegaTable, tol: f64) -> Verification {
    let g = &theta.group;
    let n = g.order();
    let algebra = &theta.algebra;
    let units = algebra.matrix_units();
    let one = algebra.identity();
    let mut out = Verification::default();
    if omega.order != n {
        let mut c = Check::new("shape", 0.0);
        c.fail(format!("table of order {} for a group of order {n}", omega.order));
        out.push(c);
        return out;
    }

    let mut unitarity = Check::new("unitarity", tol);
    let mut intertwining = Check::new("intertwining", tol);
    let mut boundary = Check::new("boundary", tol);
    let mut skew = Check::new("skew", tol);
    for a in 0..n {
        for b in 0..n {
            let w = omega.get(a, b);
            unitarity.record(w.unitarity_defect(), || format!("ω{} not unitary", pair_name(g, a, b)));
            if a == 0 || b == 0 {
                boundary.record(w.max_diff(&one), || format!("ω{} ≠ 𝟙", pair_name(g, a, b)));
            }
            let ab = g.mul_index(a, b);
            let lhs = theta.beta(a).compose(theta.beta(b));
            let res = units
                .iter()
                .map(|e| (w * &theta.beta(ab).apply(e)).max_diff(&(&lhs.apply(e) * w)))
                .fold(0.0, f64::max);
            intertwining.record(res, || {
                format!("ω{} does not intertwine", pair_name(g, a, b))
            });
            let comm = theta
                .beta(a)
                .compose(theta.beta(b))
                .compose(&theta.beta(a).inverse())
                .compose(&theta.beta(b).inverse());
            let implementer = w * &omega.get(b, a).adjoint();
            let res = units
                .iter()
                .map(|e| {
                    let via_ad = &(&implementer * e) * &implementer.adjoint();
                    via_ad.max_diff(&comm.apply(e))
                })
                .fold(0.0, f64::max);
            skew.record(res, || format!("skew relation fails at {}", pair_name(g, a, b)));
        }
    }

    let mut cocycle = Check::new("cocycle", tol);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab = g.mul_index(a, b);
                let bc = g.mul_index(b, c);
                let lhs = omega.get(a, b) * omega.get(ab, c);
                let rhs = &theta.beta(a).apply(omega.get(b, c)) * omega.get(a, bc);
                cocycle.record(lhs.max_diff(&rhs), || {
                    format!("cocycle equation fails at {}", triple_name(g, a, b, c))
                });
            }
        }
    }
    for c in [unitarity, intertwining, boundary, cocycle, skew] {
        out.push(c);
    }
    out
}

/// What [`repair_omega`] could do about a nontrivial obstruction.
#[derive(Debug, Clone, PartialEq)]
pub enum Repair {
    /// `γ ≡ 𝟙` already.
    AlreadyCocycle,
    /// `γ = δν` for the returned central 2-cochain `ν`; `ν⁻¹·ω` is a cocycle.
    Repaired { omega: OmegaTable, nu: CentralCochain },
    /// `γ` has exact phases but is not a coboundary.
    Obstructed { gamma: CentralCochain },
    /// `γ` is not on a root-of-unity grid.
    Undecided { reason: String },
}

/// Remove the obstruction by a central rescaling of `ω` when `γ` is a
/// 3-coboundary: `ω' = ν⁻¹·ω` has obstruction `γ − δν`.
pub fn repair_omega(theta: &ThetaData, omega: &OmegaTable, tol: f64) -> Result<Repair> {
    let gamma = gamma_obstruction(theta, omega)?;
    if gamma.is_trivial(tol) {
        return Ok(Repair::AlreadyCocycle);
    }
    let action = theta.center_action()?;
    let exact = match gamma.to_cochain(&action) {
        Ok(c) => c,
        Err(Error::Undecidable(reason)) => return Ok(Repair::Undecided { reason }),
        Err(e) => return Err(e),
    };
    match solve_coboundary(&exact)? {
        None => Ok(Repair::Obstructed { gamma: exact }),
        Some(nu) => {
            let repaired = omega.times_central(|a, b| nu.unitary(&[a, b]).inverse());
            Ok(Repair::Repaired { omega: repaired, nu })
        }
    }
}

/// `ε(γ₁, γ₂)` with `ad ε = γ₁γ₂γ₁⁻¹γ₂⁻¹`; meaningful modulo `U(Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Permutator {
    pub value: AlgebraElement,
}

pub fn permutator(g1: &Automorphism, g2: &Automorphism) -> Result<Permutator> {
    let comm = g1.compose(g2).compose(&g1.inverse()).compose(&g2.inverse());
    let id: Vec<usize> = (0..g1.num_blocks()).collect();
    if comm.outer_class() != id.as_slice() {
        return Err(Error::NoSolution(format!(
            "commutator has outer class {:?}, not inner",
            comm.outer_class()
        )));
    }
    let identity = identity_like(g1);
    Ok(Permutator {
        value: solve_inner_cocycle(&comm, &identity)?,
    })
}

/// `l ≡ r mod U(Z)`: returns the residual of `q = l·r*` being a central
/// unitary, and `q` itself when it is.
pub fn equivalent_mod_center(
    l: &AlgebraElement,
    r: &AlgebraElement,
    tol: f64,
) -> (f64, Option<CentralUnitary>) {
    let q = l * &r.adjoint();
    let residual = q.central_defect().max(q.unitarity_defect());
    let z = if residual <= tol { q.as_central_unitary(tol.max(VALIDATION_TOL)) } else { None };
    (residual, z)
}

/// `{β_χ} ∪ {β_{χ₁}∘β_{χ₂}}`, the automorphism family on which permutator
/// relations are checked exhaustively.
pub fn canonical_family(theta: &ThetaData) -> Vec<Automorphism> {
    let n = theta.order();
    let mut family: Vec<Automorphism> = theta.representatives.clone();
    for a in 1..n {
        for b in 1..n {
            family.push(theta.beta(a).compose(theta.beta(b)));
        }
    }
    family
}

fn count_nontrivial(z: &Option<CentralUnitary>, tol: f64) -> bool {
    z.as_ref()
        .map(|z| z.phases.iter().any(|p| (p - 1.0).norm() > tol))
        .unwrap_or(false)
}

/// The four permutator relations modulo `U(Z)` over all pairs/triples of
/// `family`; naturality uses the unitary intertwiners
/// `A = solve_inner_cocycle(γ', γ) ∈ (γ, γ')` between members of equal
/// outer class.
pub fn verify_permutator_relations(
    algebra: &BlockAlgebra,
    family: &[Automorphism],
    tol: f64,
) -> Result<Verification> {
    let id = Automorphism::identity(algebra);
    let one = algebra.identity();
    let k = family.len();
    let mut eps = Vec::with_capacity(k * k);
    for a in family {
        for b in family {
            eps.push(permutator(a, b)?.value);
        }
    }
    let e = |i: usize, j: usize| &eps[i * k + j];
    let mut out = Verification::default();

    let mut anti = Check::new("antisymmetry", tol);
    let mut unit = Check::new("unit", tol);
    let mut nontrivial = 0usize;
    for (i, gamma) in family.iter().enumerate() {
        let (r, _) = equivalent_mod_center(&permutator(&id, gamma)?.value, &one, tol);
        unit.record(r, || format!("ε(ι, γ{i}) ≢ 𝟙"));
        let (r, _) = equivalent_mod_center(&permutator(gamma, &id)?.value, &one, tol);
        unit.record(r, || format!("ε(γ{i}, ι) ≢ 𝟙"));
        for j in 0..k {
            let (r, z) = equivalent_mod_center(&(e(i, j) * e(j, i)), &one, tol);
            anti.record(r, || format!("ε(γ{i}, γ{j})ε(γ{j}, γ{i}) ≢ 𝟙"));
            nontrivial += count_nontrivial(&z, tol) as usize;
        }
    }

    let mut composition = Check::new("composition", tol);
    for i in 0..k {
        for j in 0..k {
            let prod = family[i].compose(&family[j]);
            for l in 0..k {
                let lhs = &family[i].apply(e(j, l)) * e(i, l);
                let rhs = permutator(&prod, &family[l])?.value;
                let (r, z) = equivalent_mod_center(&lhs, &rhs, tol);
                composition.record(r, || format!("composition fails at (γ{i}, γ{j}, γ{l})"));
                nontrivial += count_nontrivial(&z, tol) as usize;
            }
        }
    }

    let mut naturality = Check::new("naturality", tol);
    let same_class = |i: usize, j: usize| family[i].outer_class() == family[j].outer_class();
    for i in 0..k {
        for i2 in (0..k).filter(|&i2| same_class(i, i2)) {
            let a = solve_inner_cocycle(&family[i2], &family[i])?;
            for j in 0..k {
                for j2 in (0..k).filter(|&j2| same_class(j, j2)) {
                    let b = solve_inner_cocycle(&family[j2], &family[j])?;
                    let lhs = &(&a * &family[i].apply(&b)) * e(i, j);
                    let rhs = &(e(i2, j2) * &b) * &family[j].apply(&a);
                    let (r, z) = equivalent_mod_center(&lhs, &rhs, tol);
                    naturality.record(r, || {
                        format!("naturality fails for (γ{i}→γ{i2}, γ{j}→γ{j2})")
                    });
                    nontrivial += count_nontrivial(&z, tol) as usize;
                }
            }
        }
    }
    if nontrivial > 0 {
        naturality.note(format!("{nontrivial} relations hold only up to a nontrivial central unitary"));
    }
    for c in [anti, unit, composition, naturality] {
        out.push(c);
    }
    Ok(out)
}

/// Verdict of [`verify_lifting_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingVerdict {
    pub is_lifting: bool,
    /// First pair at which `χ ↦ ad(V_χ)∘β_χ` fails to be multiplicative.
    pub failing_pair: Option<(Element, Element)>,
}

/// Does `χ ↦ ad(V_χ)∘β_χ` define a homomorphism `X → aut A`?
///
/// Checked twice: directly on automorphisms, and through the criterion
/// `ω(χ₁,χ₂) ≡ β_{χ₁}(V_{χ₂})* V_{χ₁}* V_{χ₁χ₂} mod U(Z)`. The two must agree.
pub fn verify_lifting_certificate(
    theta: &ThetaData,
    omega: &OmegaTable,
    v: &[AlgebraElement],
    tol: f64,
) -> Result<LiftingVerdict> {
    let g = &theta.group;
    let n = g.order();
    let algebra = &theta.algebra;
    if v.len() != n {
        return Err(Error::Structural(format!("{} certificate entries for order {n}", v.len())));
    }
    if v[0].max_diff(&algebra.identity()) > tol {
        return Err(Error::Precondition("certificate must satisfy V_ι = 𝟙".into()));
    }
    if let Some(i) = (0..n).find(|&i| !v[i].is_unitary(VALIDATION_TOL)) {
        return Err(Error::Precondition(format!(
            "certificate entry at {:?} is not unitary",
            g.element_at(i)
        )));
    }
    let lifted: Vec<Automorphism> = (0..n)
        .map(|i| Automorphism::inner(&v[i]).compose(theta.beta(i)))
        .collect();
    let mut hom_fail = None;
    let mut lemma_fail = None;
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul_index(a, b);
            let diff = lifted[a].compose(&lifted[b]).extensional_diff(&lifted[ab], algebra);
            if diff > tol.max(VALIDATION_TOL) && hom_fail.is_none() {
                hom_fail = Some((a, b));
            }
            let form = &(&theta.beta(a).apply(&v[b]).adjoint() * &v[a].adjoint()) * &v[ab];
            let (r, _) = equivalent_mod_center(omega.get(a, b), &form, tol.max(VALIDATION_TOL));
            if r > tol.max(VALIDATION_TOL) && lemma_fail.is_none() {
                lemma_fail = Some((a, b));
            }
        }
    }
    if hom_fail.is_some() != lemma_fail.is_some() {
        return Err(Error::Inconsistent(format!(
            "homomorphism check ({hom_fail:?}) and cocycle-form check ({lemma_fail:?}) disagree"
        )));
    }
    Ok(LiftingVerdict {
        is_lifting: hom_fail.is_none(),
        failing_pair: hom_fail.map(|(a, b)| (g.element_at(a), g.element_at(b))),
    })
}

/// Try every assignment `χ ↦ V_χ` (`χ ≠ ι`) from a finite candidate set.
pub fn search_lifting(
    theta: &ThetaData,
    omega: &OmegaTable,
    candidates: &[AlgebraElement],
    capacity: usize,
    tol: f64,
) -> Result<Option<Vec<AlgebraElement>>> {
    let n = theta.order();
    let total = (candidates.len() as u128).checked_pow((n - 1) as u32).unwrap_or(u128::MAX);
    if total > capacity as u128 {
        return Err(Error::Capacity {
            what: "lifting search assignments",
            actual: usize::try_from(total).unwrap_or(usize::MAX),
            bound: capacity,
        });
    }
    let mut choice = vec![0usize; n - 1];
    loop {
        let mut v = vec![theta.algebra.identity()];
        v.extend(choice.iter().map(|&c| candidates[c].clone()));
        if verify_lifting_certificate(theta, omega, &v, tol)?.is_lifting {
            return Ok(Some(v));
        }
        // Odometer over the candidate indices.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(None);
            }
            choice[pos] += 1;
            if choice[pos] < candidates.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Permutator data for the trivial-center relations, indexed by the
/// representatives: `eps[χ₁·n + χ₂] = ε(β_{χ₁}, β_{χ₂})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DrSystem {
    pub eps: Vec<AlgebraElement>,
    /// The table relating `β_{χ₁}∘β_{χ₂}` to `β_{χ₁χ₂}` used to express
    /// `ε(β_{χ₁}β_{χ₂}, ·)` through the representatives.
    pub omega: OmegaTable,
    /// A regauged system `β'_χ = ad(A_χ)β_χ` with its permutators.
    pub regauged: Option<(Vec<AlgebraElement>, Vec<AlgebraElement>)>,
    /// A generalized 2-cocycle whose skew part should reproduce `ε`.
    pub omega0: Option<OmegaTable>,
}

/// The permutator relations with exact equality on a factor `A = M_d`.
pub fn verify_dr_permutator_system(
    theta: &ThetaData,
    system: &DrSystem,
    tol: f64,
) -> Result<Verification> {
    let algebra = &theta.algebra;
    if !algebra.is_factor() {
        return Err(Error::Precondition(format!(
            "exact permutator relations need a trivial center, algebra has {} blocks",
            algebra.num_blocks()
        )));
    }
    let g = &theta.group;
    let n = g.order();
    if system.eps.len() != n * n {
        return Err(Error::Structural(format!("ε table needs {} entries", n * n)));
    }
    let one = algebra.identity();
    let eps = |a: usize, b: usize| &system.eps[a * n + b];
    let omega = &system.omega;
    let mut out = Verification::default();

    let mut implements = Check::new("implements-commutator", tol);
    let mut anti = Check::new("antisymmetry", tol);
    let mut unit = Check::new("unit", tol);
    for a in 0..n {
        unit.record(eps(0, a).max_diff(&one), || format!("ε(ι, {:?}) ≠ 𝟙", g.element_at(a)));
        unit.record(eps(a, 0).max_diff(&one), || format!("ε({:?}, ι) ≠ 𝟙", g.element_at(a)));
        for b in 0..n {
            anti.record((eps(a, b) * eps(b, a)).max_diff(&one), || {
                format!("ε{}ε{} ≠ 𝟙", pair_name(g, a, b), pair_name(g, b, a))
            });
            let comm = theta
                .beta(a)
                .compose(theta.beta(b))
                .compose(&theta.beta(a).inverse())
                .compose(&theta.beta(b).inverse());
            let res = algebra
                .matrix_units()
                .iter()
                .map(|e| {
                    let w = eps(a, b);
                    (&(w * e) * &w.adjoint()).max_diff(&comm.apply(e))
                })
                .fold(0.0, f64::max);
            implements.record(res, || format!("ad ε{} is not the commutator", pair_name(g, a, b)));
        }
    }

    // ε(β₁β₂, β₃) = ω(1,2) ε(12,3) β₃(ω(1,2))*.
    let mut composition = Check::new("composition", tol);
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul_index(a, b);
            let w = omega.get(a, b);
            for c in 0..n {
                let lhs = &theta.beta(a).apply(eps(b, c)) * eps(a, c);
                let rhs = &(w * eps(ab, c)) * &theta.beta(c).apply(w).adjoint();
                composition.record(lhs.max_diff(&rhs), || {
                    format!("composition fails at {}", triple_name(g, a, b, c))
                });
            }
        }
    }
    for c in [implements, anti, unit, composition] {
        out.push(c);
    }

    if let Some((regauge, eps_prime)) = &system.regauged {
        let mut nat = Check::new("naturality", tol);
        if regauge.len() != n || eps_prime.len() != n * n {
            nat.fail("regauged data has the wrong size");
        } else {
            for a in 0..n {
                for b in 0..n {
                    let (ua, ub) = (&regauge[a], &regauge[b]);
                    let lhs = &(ua * &theta.beta(a).apply(ub)) * eps(a, b);
                    let rhs = &(&eps_prime[a * n + b] * ub) * &theta.beta(b).apply(ua);
                    nat.record(lhs.max_diff(&rhs), || {
                        format!("naturality fails at {}", pair_name(g, a, b))
                    });
                }
            }
        }
        out.push(nat);
    }

    if let Some(w0) = &system.omega0 {
        let mut skew = Check::new("skew-cocycle", tol);
        for a in 0..n {
            for b in 0..n {
                let lhs = w0.get(a, b) * &w0.get(b, a).adjoint();
                skew.record(lhs.max_diff(eps(a, b)), || {
                    format!("ω₀{}ω₀{}⁻¹ ≠ ε", pair_name(g, a, b), pair_name(g, b, a))
                });
            }
        }
        out.push(skew);
    }
    Ok(out)
}

/// `ε(β_{χ₁}, β_{χ₂}) := ω(χ₁,χ₂)ω(χ₂,χ₁)⁻¹`, the permutator table an
/// extension built from `ω` realizes.
pub fn permutators_from_cocycle(omega: &OmegaTable) -> Vec<AlgebraElement> {
    let n = omega.order;
    (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            omega.get(a, b) * &omega.get(b, a).adjoint()
        })
        .collect()
}

/// The identity automorphism of the algebra `like` acts on.
fn identity_like(like: &Automorphism) -> Automorphism {
    let dims: Vec<usize> = like.block_unitaries().iter().map(|w| w.nrows()).collect();
    Automorphism::identity(&BlockAlgebra::new(dims).expect("dimensions taken from an automorphism"))
}
