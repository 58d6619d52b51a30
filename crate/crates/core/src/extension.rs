//! The extension algebra `F = ⊕_χ A·U_χ` built from `(β, ω)`.
//!
//! `U_{χ₁}U_{χ₂} = ω(χ₁,χ₂)U_{χ₁χ₂}`, `U_χ A = β_χ(A)U_χ`,
//! `U_χ* = ω(χ⁻¹,χ)*U_{χ⁻¹}`, and `G` acts by `α_g(AU_χ) = χ(g)AU_χ`.
//! With `X` finite and `A` finite-dimensional the algebraic span is already
//! complete, so no closure is taken.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{AlgebraElement, BlockAlgebra, CentralUnitary, VALIDATION_TOL};
use crate::check::{Check, Verification};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::linalg::{self, CMatrix, ZERO};
use crate::representation;
use crate::theta::{verify_generalized_cocycle, OmegaTable, ThetaData, COCYCLE_TOL};

/// A verified pair `(β_X, ω)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionContext {
    theta: ThetaData,
    omega: OmegaTable,
}

/// `F = Σ_χ A_χ U_χ`, one coefficient per group element in enumeration
/// order (absent terms are zero).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionElement {
    coefficients: Vec<AlgebraElement>,
}

impl ExtensionContext {
    /// Refuses tables that are not generalized 2-cocycles for `theta`.
    pub fn new(theta: ThetaData, omega: OmegaTable) -> Result<Self> {
        let report = verify_generalized_cocycle(&theta, &omega, COCYCLE_TOL.max(1e-10));
        if !report.passed() {
            let first: Vec<String> = report
                .violations()
                .take(3)
                .map(|(name, what)| format!("{name}: {what}"))
                .collect();
            return Err(Error::Validation(format!(
                "ω is not a generalized 2-cocycle: {}",
                first.join("; ")
            )));
        }
        Ok(Self { theta, omega })
    }

    /// Skip verification; products are then not associative in general.
    pub fn new_unchecked(theta: ThetaData, omega: OmegaTable) -> Self {
        Self { theta, omega }
    }

    pub fn theta(&self) -> &ThetaData {
        &self.theta
    }

    pub fn omega(&self) -> &OmegaTable {
        &self.omega
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.theta.group()
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        self.theta.algebra()
    }

    pub fn order(&self) -> usize {
        self.theta.order()
    }

    /// `|X| · dim A`.
    pub fn dimension(&self) -> usize {
        self.order() * self.algebra().dimension()
    }

    pub fn zero(&self) -> ExtensionElement {
        ExtensionElement {
            coefficients: vec![self.algebra().zero(); self.order()],
        }
    }

    pub fn one(&self) -> ExtensionElement {
        self.monomial(self.algebra().identity(), 0)
    }

    /// `A ∈ A ⊂ F`.
    pub fn from_algebra(&self, a: AlgebraElement) -> ExtensionElement {
        self.monomial(a, 0)
    }

    /// `A·U_χ`.
    pub fn monomial(&self, a: AlgebraElement, chi: usize) -> ExtensionElement {
        let mut f = self.zero();
        f.coefficients[chi] = a;
        f
    }

    /// The basis unitary `U_χ`.
    pub fn basis_unitary(&self, chi: usize) -> ExtensionElement {
        self.monomial(self.algebra().identity(), chi)
    }

    pub fn from_coefficients(&self, coefficients: Vec<AlgebraElement>) -> Result<ExtensionElement> {
        if coefficients.len() != self.order() {
            return Err(Error::Structural(format!(
                "{} coefficients for a group of order {}",
                coefficients.len(),
                self.order()
            )));
        }
        for c in &coefficients {
            self.algebra().check(c)?;
        }
        Ok(ExtensionElement { coefficients })
    }

    /// `E^{(k)}_{ij}·U_χ`, χ-major, then matrix units in algebra order.
    pub fn basis(&self) -> Vec<ExtensionElement> {
        let units = self.algebra().matrix_units();
        (0..self.order())
            .flat_map(|chi| units.iter().map(move |e| (chi, e.clone())))
            .map(|(chi, e)| self.monomial(e, chi))
            .collect()
    }

    /// Coordinates in [`Self::basis`].
    pub fn coordinates(&self, f: &ExtensionElement) -> Vec<Complex64> {
        f.coefficients
            .iter()
            .flat_map(|a| self.algebra().coordinates(a))
            .collect()
    }

    pub fn from_basis_coordinates(&self, coords: &[Complex64]) -> ExtensionElement {
        let d = self.algebra().dimension();
        ExtensionElement {
            coefficients: coords.chunks(d).map(|c| self.algebra().from_coordinates(c)).collect(),
        }
    }

    /// Every coefficient drawn with [`BlockAlgebra::random_element`].
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtensionElement {
        ExtensionElement {
            coefficients: (0..self.order()).map(|_| self.algebra().random_element(rng)).collect(),
        }
    }

    fn check(&self, f: &ExtensionElement) -> Result<()> {
        if f.coefficients.len() != self.order() {
            return Err(Error::Structural(format!(
                "element with {} coefficients used in an extension of order {}",
                f.coefficients.len(),
                self.order()
            )));
        }
        for c in &f.coefficients {
            self.algebra().check(c)?;
        }
        Ok(())
    }
}

impl ExtensionElement {
    pub fn coefficient(&self, chi: usize) -> &AlgebraElement {
        &self.coefficients[chi]
    }

    pub fn coefficients(&self) -> &[AlgebraElement] {
        &self.coefficients
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coefficients.len())
            .filter(|&c| !self.coefficients[c].is_zero(0.0))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Largest coefficient entry difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.max_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coefficients.iter().all(|a| a.is_zero(tol))
    }

    /// `N(F)`, the number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.support().len()
    }
}

/// Coefficient of `χ` in `F₁F₂` is `Σ_{χ₁χ₂=χ} A_{χ₁}·β_{χ₁}(B_{χ₂})·ω(χ₁,χ₂)`.
pub fn ext_mul(
    ctx: &ExtensionContext,
    f1: &ExtensionElement,
    f2: &ExtensionElement,
) -> Result<ExtensionElement> {
    ctx.check(f1)?;
    ctx.check(f2)?;
    let g = ctx.group();
    let mut out = ctx.zero();
    for a in f1.support() {
        let beta = ctx.theta.beta(a);
        for b in f2.support() {
            let term = &(f1.coefficient(a) * &beta.apply(f2.coefficient(b))) * ctx.omega.get(a, b);
            let c = g.mul_index(a, b);
            out.coefficients[c] = &out.coefficients[c] + &term;
        }
    }
    Ok(out)
}

/// `(A U_χ)* = ω(χ⁻¹,χ)*·β_{χ⁻¹}(A*)·U_{χ⁻¹}`.
pub fn ext_star(ctx: &ExtensionContext, f: &ExtensionElement) -> ExtensionElement {
    let g = ctx.group();
    let mut out = ctx.zero();
    for chi in f.support() {
        let inv = g.inv_index(chi);
        let coeff = &ctx.omega.get(inv, chi).adjoint()
            * &ctx.theta.beta(inv).apply(&f.coefficient(chi).adjoint());
        out.coefficients[inv] = coeff;
    }
    out
}

/// `α_g(Σ A_χ U_χ) = Σ χ(g) A_χ U_χ`; `g` is an element index of `G`.
pub fn ext_act(ctx: &ExtensionContext, g: usize, f: &ExtensionElement) -> ExtensionElement {
    let group = ctx.group();
    ExtensionElement {
        coefficients: f
            .coefficients
            .iter()
            .enumerate()
            .map(|(chi, a)| a.scale(group.pairing_index(chi, g)))
            .collect(),
    }
}

/// `Π_χ F = |G|⁻¹ Σ_g conj(χ(g))·α_g(F)`.
pub fn spectral_projection(ctx: &ExtensionContext, chi: usize, f: &ExtensionElement) -> ExtensionElement {
    let group = ctx.group();
    let n = group.order();
    let mut acc = ctx.zero();
    for g in 0..n {
        let w = group.pairing_index(chi, g).conj();
        acc = acc.add(&ext_act(ctx, g, f).scale(w));
    }
    acc.scale(Complex64::new(1.0 / n as f64, 0.0))
}

/// `A_χ U_χ`, read off the coefficients.
pub fn spectral_component(ctx: &ExtensionContext, chi: usize, f: &ExtensionElement) -> ExtensionElement {
    ctx.monomial(f.coefficient(chi).clone(), chi)
}

/// `⟨F₁,F₂⟩ = Σ_χ β_χ⁻¹(A_χ* B_χ)`.
pub fn inner_product(ctx: &ExtensionContext, f1: &ExtensionElement, f2: &ExtensionElement) -> AlgebraElement {
    let mut acc = ctx.algebra().zero();
    for chi in 0..ctx.order() {
        let prod = &f1.coefficient(chi).adjoint() * f2.coefficient(chi);
        acc = &acc + &ctx.theta.beta(chi).inverse().apply(&prod);
    }
    acc
}

/// `‖F‖_*`, the operator norm of the regular representation.
pub fn cstar_norm(ctx: &ExtensionContext, f: &ExtensionElement) -> f64 {
    representation::rep_operator_norm(&representation::represent(ctx, f))
}

/// `φ₀(A) = (Σᵢ tr Aᵢ) / D`, a faithful state on `A`.
pub fn normalized_trace(a: &AlgebraElement) -> Complex64 {
    let d: usize = a.blocks().iter().map(|b| b.nrows()).sum();
    a.blocks().iter().map(|b| b.trace()).sum::<Complex64>() / d as f64
}

/// Gram matrix `G_ab = φ₀(⟨e_a, e_b⟩)` of the extension basis.
pub fn module_gram_matrix(ctx: &ExtensionContext) -> CMatrix {
    let basis = ctx.basis();
    let n = basis.len();
    CMatrix::from_fn(n, n, |a, b| normalized_trace(&inner_product(ctx, &basis[a], &basis[b])))
}

/// `‖ρ(F)‖` for left multiplication on `F` with the inner product
/// `φ₀(⟨X, Y⟩)`: `‖L* M L^{-*}‖` where `G = LL*` and `M` is the matrix of
/// `X ↦ FX` in the extension basis.
pub fn hilbert_module_norm_oracle(ctx: &ExtensionContext, f: &ExtensionElement) -> Result<f64> {
    let gram = module_gram_matrix(ctx);
    hilbert_module_norm_with_gram(ctx, f, &gram)
}

/// As [`hilbert_module_norm_oracle`] with a precomputed Gram matrix.
pub fn hilbert_module_norm_with_gram(
    ctx: &ExtensionContext,
    f: &ExtensionElement,
    gram: &CMatrix,
) -> Result<f64> {
    let basis = ctx.basis();
    let n = basis.len();
    let mut m = CMatrix::zeros(n, n);
    for (b, e) in basis.iter().enumerate() {
        let img = ctx.coordinates(&ext_mul(ctx, f, e)?);
        for (a, v) in img.into_iter().enumerate() {
            m[(a, b)] = v;
        }
    }
    let chol = gram
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Inconsistent("module Gram matrix is not positive definite".into()))?;
    let l = chol.l();
    let lt = l.adjoint();
    let lt_inv = lt
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Inconsistent("Cholesky factor is singular".into()))?;
    Ok(linalg::operator_norm(&(&lt * &m * &lt_inv)))
}

/// `A`-module isomorphism `Φ(AU_χ) = A·Z(χ)·V_χ` from `source` onto `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleIsomorphism {
    pub source: ExtensionContext,
    pub target: ExtensionContext,
    pub one_cochain: Vec<CentralUnitary>,
}

impl ModuleIsomorphism {
    pub fn apply(&self, f: &ExtensionElement) -> ExtensionElement {
        ExtensionElement {
            coefficients: f
                .coefficients
                .iter()
                .zip(&self.one_cochain)
                .map(|(a, z)| a.multiply_central(z))
                .collect(),
        }
    }
}

/// Same group, algebra and representatives `β_χ`.
pub fn same_data(a: &ExtensionContext, b: &ExtensionContext) -> bool {
    a.group() == b.group()
        && a.algebra() == b.algebra()
        && a
            .theta
            .representatives()
            .iter()
            .zip(b.theta.representatives())
            .all(|(x, y)| x.extensional_diff(y, a.algebra()) <= VALIDATION_TOL)
}

/// `∂Z(χ₁,χ₂) = Z(χ₁)·β_{χ₁}(Z(χ₂))·Z(χ₁χ₂)⁻¹`.
pub fn central_coboundary(theta: &ThetaData, z: &[CentralUnitary], a: usize, b: usize) -> CentralUnitary {
    let ab = theta.group().mul_index(a, b);
    z[a].mul(&theta.beta(a).apply_central(&z[b])).mul(&z[ab].inverse())
}

/// Build `Φ` for `ω₁ = ∂Z·ω₂` and run the five verification suites on the
/// basis and on `samples` random elements.
pub fn build_module_isomorphism<R: Rng + ?Sized>(
    source: &ExtensionContext,
    target: &ExtensionContext,
    z: &[CentralUnitary],
    rng: &mut R,
    samples: usize,
    tol: f64,
) -> Result<(ModuleIsomorphism, Verification)> {
    if !same_data(source, target) {
        return Err(Error::Precondition(
            "extensions do not share the algebra, group and representatives".into(),
        ));
    }
    let n = source.order();
    let m = source.algebra().num_blocks();
    if z.len() != n || z.iter().any(|p| p.phases.len() != m) {
        return Err(Error::Structural("one central unitary per group element required".into()));
    }
    if z[0].max_diff(&CentralUnitary::one(m)) > tol {
        return Err(Error::Precondition("Z(ι) must be 𝟙".into()));
    }
    let g = source.group();
    for a in 0..n {
        for b in 0..n {
            let expected = target.omega.get(a, b).multiply_central(&central_coboundary(&source.theta, z, a, b));
            let diff = expected.max_diff(source.omega.get(a, b));
            if diff > tol {
                return Err(Error::Precondition(format!(
                    "ω₁ ≠ ∂Z·ω₂ at ({:?}, {:?}) (deviation {diff:.3e})",
                    g.element_at(a),
                    g.element_at(b)
                )));
            }
        }
    }
    let iso = ModuleIsomorphism {
        source: source.clone(),
        target: target.clone(),
        one_cochain: z.to_vec(),
    };
    let verification = verify_module_isomorphism(&iso, rng, samples, tol)?;
    Ok((iso, verification))
}

/// Identity on `A`, multiplicative, *-preserving, equivariant, and
/// inner-product preserving (hence isometric).
pub fn verify_module_isomorphism<R: Rng + ?Sized>(
    iso: &ModuleIsomorphism,
    rng: &mut R,
    samples: usize,
    tol: f64,
) -> Result<Verification> {
    let (src, dst) = (&iso.source, &iso.target);
    let mut elements = src.basis();
    elements.extend((0..samples).map(|_| src.random_element(rng)));

    let mut identity = Check::new("identity-on-A", tol);
    for a in src.algebra().matrix_units() {
        let f = src.from_algebra(a);
        identity.record(iso.apply(&f).max_diff(&f), || "Φ moves an element of A".into());
    }

    let mut mult = Check::new("multiplicative", tol);
    let mut star = Check::new("star", tol);
    let mut equiv = Check::new("equivariant", tol);
    let mut inner = Check::new("inner-product", tol);
    let n_g = src.order();
    for (i, f1) in elements.iter().enumerate() {
        let f2 = &elements[(i * 7 + 3) % elements.len()];
        let lhs = iso.apply(&ext_mul(src, f1, f2)?);
        let rhs = ext_mul(dst, &iso.apply(f1), &iso.apply(f2))?;
        mult.record(lhs.max_diff(&rhs), || format!("Φ(F₁F₂) ≠ Φ(F₁)Φ(F₂) on sample {i}"));
        star.record(
            iso.apply(&ext_star(src, f1)).max_diff(&ext_star(dst, &iso.apply(f1))),
            || format!("Φ(F*) ≠ Φ(F)* on sample {i}"),
        );
        for g in 0..n_g {
            let lhs = iso.apply(&ext_act(src, g, f1));
            let rhs = ext_act(dst, g, &iso.apply(f1));
            equiv.record(lhs.max_diff(&rhs), || format!("Φ∘α_g ≠ α_g∘Φ on sample {i}"));
        }
        let before = inner_product(src, f1, f2);
        let after = inner_product(dst, &iso.apply(f1), &iso.apply(f2));
        inner.record(before.max_diff(&after), || format!("⟨·,·⟩ not preserved on sample {i}"));
        if i >= src.dimension() {
            let (a, b) = (cstar_norm(src, f1), cstar_norm(dst, &iso.apply(f1)));
            inner.record((a - b).abs() / a.max(1.0), || format!("norm not preserved on sample {i}"));
        }
    }
    let mut out = Verification::default();
    for c in [identity, mult, star, equiv, inner] {
        out.push(c);
    }
    Ok(out)
}

/// `Z(χ) := Φ(U_χ)·V_χ*` from the images `Φ(U_χ)` in the target; checks
/// that each value is a central unitary and that `ω₁ = ∂Z·ω₂`.
pub fn extract_coboundary(
    source: &ExtensionContext,
    target: &ExtensionContext,
    images: &[ExtensionElement],
    tol: f64,
) -> Result<Vec<CentralUnitary>> {
    let n = source.order();
    if images.len() != n {
        return Err(Error::Structural(format!("{} images for order {n}", images.len())));
    }
    let g = source.group();
    let mut z = Vec::with_capacity(n);
    for (chi, img) in images.iter().enumerate() {
        let prod = ext_mul(target, img, &ext_star(target, &target.basis_unitary(chi)))?;
        let off_support = (1..n).map(|c| prod.coefficient(c).max_abs()).fold(0.0, f64::max);
        let value = prod.coefficient(0);
        let central = value.as_central_unitary(tol.max(VALIDATION_TOL));
        match central {
            Some(c) if off_support <= tol => z.push(c),
            _ => {
                return Err(Error::Validation(format!(
                    "not an A-module isomorphism: Φ(U_χ)V_χ* at {:?} is not a central unitary",
                    g.element_at(chi)
                )))
            }
        }
    }
    let m = source.algebra().num_blocks();
    if z[0].max_diff(&CentralUnitary::one(m)) > tol {
        return Err(Error::Validation("not an A-module isomorphism: Z(ι) ≠ 𝟙".into()));
    }
    for a in 0..n {
        for b in 0..n {
            let expected = target.omega.get(a, b).multiply_central(&central_coboundary(&source.theta, &z, a, b));
            let diff = expected.max_diff(source.omega.get(a, b));
            if diff > tol {
                return Err(Error::Validation(format!(
                    "extracted Z violates ω₁ = ∂Z·ω₂ at ({:?}, {:?}) (deviation {diff:.3e})",
                    g.element_at(a),
                    g.element_at(b)
                )));
            }
        }
    }
    Ok(z)
}

/// Nonzero structure constants `e_a·e_b = Σ_c C^c_{ab} e_c` of the basis.
pub fn structure_constants(ctx: &ExtensionContext) -> Result<Vec<(usize, usize, usize, Complex64)>> {
    let basis = ctx.basis();
    let mut out = Vec::new();
    for (a, ea) in basis.iter().enumerate() {
        for (b, eb) in basis.iter().enumerate() {
            let prod = ctx.coordinates(&ext_mul(ctx, ea, eb)?);
            for (c, v) in prod.into_iter().enumerate() {
                if v != ZERO {
                    out.push((a, b, c, v));
                }
            }
        }
    }
    Ok(out)
}

/// `U_χ⁻¹ = β_{χ⁻¹}(ω(χ,χ⁻¹)*)·U_{χ⁻¹}`.
pub fn basis_inverse(ctx: &ExtensionContext, chi: usize) -> ExtensionElement {
    let inv = ctx.group().inv_index(chi);
    let coeff = ctx.theta.beta(inv).apply(&ctx.omega.get(chi, inv).adjoint());
    ctx.monomial(coeff, inv)
}

/// Permutators `ε(β_{χ₁}, β_{χ₂}) = U_{χ₁}U_{χ₂}U_{χ₁}⁻¹U_{χ₂}⁻¹` computed
/// inside the extension; each lies in `A`.
pub fn permutators_from_extension(ctx: &ExtensionContext, units: &[ExtensionElement]) -> Result<Vec<AlgebraElement>> {
    let n = ctx.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (ua, ub) = (&units[a], &units[b]);
            let p = ext_mul(ctx, &ext_mul(ctx, ua, ub)?, &ext_mul(ctx, &ext_star(ctx, ua), &ext_star(ctx, ub))?)?;
            let stray = (1..n).map(|c| p.coefficient(c).max_abs()).fold(0.0, f64::max);
            if stray > VALIDATION_TOL {
                return Err(Error::Inconsistent("permutator left the fixed-point algebra".into()));
            }
            out.push(p.coefficient(0).clone());
        }
    }
    Ok(out)
}

/// `⟨F, F⟩` as a positive matrix: smallest eigenvalue of its dense form.
pub fn min_eigenvalue(a: &AlgebraElement) -> f64 {
    let h = a.to_dense();
    let herm = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    herm.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// The identity `Σ_χ Π_χ = id` and `Π_χ(U_χ) = U_χ`, used by reports.
pub fn decomposition_residual(ctx: &ExtensionContext, f: &ExtensionElement) -> f64 {
    let mut acc = ctx.zero();
    for chi in 0..ctx.order() {
        acc = acc.add(&spectral_projection(ctx, chi, f));
    }
    let mut res = acc.max_diff(f);
    for chi in 0..ctx.order() {
        let u = ctx.basis_unitary(chi);
        res = res.max(spectral_projection(ctx, chi, &u).max_diff(&u));
    }
    res
}

