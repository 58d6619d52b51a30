//! The regular representation `Φ` of `F` on `K = ℓ²(X, H)`.
//!
//! `(Φ(A)f)(ψ) = π(β_{ψ⁻¹}(A)) f(ψ)` and
//! `(Φ(U_χ)f)(ψ) = π(ω(ψ⁻¹,χ)) f(χ⁻¹ψ)`. Rows and columns are indexed by
//! `ψ·D + h` with `ψ` in group enumeration order.

use nalgebra::SVD;

use crate::algebra::{relative_commutant, AlgebraElement};
use crate::check::{Check, Verification};
use crate::extension::{cstar_norm, ext_act, ext_star, ExtensionContext, ExtensionElement};
use crate::linalg::{self, CMatrix};

/// Faithful representation `π` of `A` used to build `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseRep {
    /// `H = ⊕ᵢ ℂ^{dᵢ}` with blocks on the diagonal.
    #[default]
    Identity,
    /// `π ⊕ π` on `H ⊕ H`.
    Doubled,
}

impl BaseRep {
    pub fn dimension(self, ctx: &ExtensionContext) -> usize {
        let d = ctx.algebra().total_dim();
        match self {
            BaseRep::Identity => d,
            BaseRep::Doubled => 2 * d,
        }
    }

    pub fn apply(self, a: &AlgebraElement) -> CMatrix {
        let dense = a.to_dense();
        match self {
            BaseRep::Identity => dense,
            BaseRep::Doubled => {
                let d = dense.nrows();
                let mut out = CMatrix::zeros(2 * d, 2 * d);
                out.view_mut((0, 0), (d, d)).copy_from(&dense);
                out.view_mut((d, d), (d, d)).copy_from(&dense);
                out
            }
        }
    }
}

/// `Φ(F)` together with the data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularRep {
    pub base_rep: BaseRep,
    pub matrix: CMatrix,
}

impl RegularRep {
    pub fn operator_norm(&self) -> f64 {
        rep_operator_norm(&self.matrix)
    }
}

pub fn represent(ctx: &ExtensionContext, f: &ExtensionElement) -> CMatrix {
    represent_with(ctx, f, BaseRep::Identity)
}

/// `Φ(F)` for the chosen `π`; block `(ψ, χ⁻¹ψ)` of `Φ(A_χ U_χ)` is
/// `π(β_{ψ⁻¹}(A_χ))·π(ω(ψ⁻¹,χ))`.
pub fn represent_with(ctx: &ExtensionContext, f: &ExtensionElement, base: BaseRep) -> CMatrix {
    let g = ctx.group();
    let n = ctx.order();
    let d = base.dimension(ctx);
    let mut out = CMatrix::zeros(n * d, n * d);
    for chi in f.support() {
        let a = f.coefficient(chi);
        let chi_inv = g.inv_index(chi);
        for psi in 0..n {
            let psi_inv = g.inv_index(psi);
            let col = g.mul_index(chi_inv, psi);
            let coeff = &ctx.theta().beta(psi_inv).apply(a) * ctx.omega().get(psi_inv, chi);
            let block = base.apply(&coeff);
            let mut view = out.view_mut((psi * d, col * d), (d, d));
            view += &block;
        }
    }
    out
}

pub fn regular_rep(ctx: &ExtensionContext, f: &ExtensionElement, base: BaseRep) -> RegularRep {
    RegularRep {
        base_rep: base,
        matrix: represent_with(ctx, f, base),
    }
}

/// Largest singular value.
pub fn rep_operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let svd = SVD::new(m.clone(), false, false);
    svd.singular_values.iter().cloned().fold(0.0, f64::max)
}

/// `max_g ‖Φ(α_g F)‖`.
pub fn sup_norm(ctx: &ExtensionContext, f: &ExtensionElement) -> f64 {
    (0..ctx.group().order())
        .map(|g| rep_operator_norm(&represent(ctx, &ext_act(ctx, g, f))))
        .fold(0.0, f64::max)
}

/// `C_F = N(F)^{1/2}·(Σ_χ ‖A_χ‖²)^{1/2}`.
pub fn lemma_bound(f: &ExtensionElement) -> f64 {
    let n = f.term_count() as f64;
    let s: f64 = f.coefficients().iter().map(|a| a.norm().powi(2)).sum();
    n.sqrt() * s.sqrt()
}

/// Sup norm, regular-representation norm and the intrinsic norm agree, and
/// every `‖Φ(α_g F)‖` respects the term-count bound.
pub fn verify_teo3(ctx: &ExtensionContext, samples: &[ExtensionElement], tol: f64) -> Verification {
    let mut sup = Check::new("sup-norm", tol);
    let mut regular = Check::new("regular-norm", tol);
    let mut bound = Check::new("lemma-bound", tol);
    for (i, f) in samples.iter().enumerate() {
        let star = cstar_norm(ctx, f);
        let scale = star.max(1.0);
        sup.record((sup_norm(ctx, f) - star).abs() / scale, || {
            format!("sample {i}: sup norm differs from ‖F‖_*")
        });
        let reg = rep_operator_norm(&represent_with(ctx, f, BaseRep::Doubled));
        regular.record((reg - star).abs() / scale, || {
            format!("sample {i}: ‖Φ(F)‖ under π⊕π differs from ‖F‖_*")
        });
        let c = lemma_bound(f);
        for g in 0..ctx.group().order() {
            let v = rep_operator_norm(&represent(ctx, &ext_act(ctx, g, f)));
            bound.record((v - c).max(0.0), || format!("sample {i}: ‖Φ(α_g F)‖ exceeds C_F"));
        }
    }
    let mut out = Verification::default();
    out.push(sup);
    out.push(regular);
    out.push(bound);
    out
}

/// `Φ(U₁)Φ(U₂) = Φ(ω(1,2))Φ(U₁₂)`, `Φ(U_χ)Φ(A) = Φ(β_χ(A))Φ(U_χ)` on the
/// matrix units of `A`, and `Φ(U_χ*) = Φ(U_χ)*`.
pub fn verify_homomorphism_relations(ctx: &ExtensionContext, tol: f64) -> Verification {
    let g = ctx.group();
    let n = ctx.order();
    let units: Vec<CMatrix> = (0..n).map(|c| represent(ctx, &ctx.basis_unitary(c))).collect();
    let mut cocycle = Check::new("unitary-product", tol);
    let mut covariance = Check::new("covariance", tol);
    let mut adjoint = Check::new("adjoint", tol);
    for a in 0..n {
        for b in 0..n {
            let lhs = &units[a] * &units[b];
            let omega = represent(ctx, &ctx.from_algebra(ctx.omega().get(a, b).clone()));
            let rhs = omega * &units[g.mul_index(a, b)];
            cocycle.record(linalg::max_abs(&(lhs - rhs)), || {
                format!("Φ(U)Φ(U) ≠ Φ(ω)Φ(U) at {:?}, {:?}", g.element_at(a), g.element_at(b))
            });
        }
        for e in ctx.algebra().matrix_units() {
            let lhs = &units[a] * represent(ctx, &ctx.from_algebra(e.clone()));
            let rhs = represent(ctx, &ctx.from_algebra(ctx.theta().beta(a).apply(&e))) * &units[a];
            covariance.record(linalg::max_abs(&(lhs - rhs)), || {
                format!("Φ(U_χ)Φ(A) ≠ Φ(β_χ(A))Φ(U_χ) at {:?}", g.element_at(a))
            });
        }
        let star = represent(ctx, &ext_star(ctx, &ctx.basis_unitary(a)));
        adjoint.record(linalg::max_abs(&(star - units[a].adjoint())), || {
            format!("Φ(U_χ*) ≠ Φ(U_χ)* at {:?}", g.element_at(a))
        });
    }
    let mut out = Verification::default();
    out.push(cocycle);
    out.push(covariance);
    out.push(adjoint);
    out
}

/// Represented images of the extension basis.
fn basis_images(ctx: &ExtensionContext) -> Vec<CMatrix> {
    ctx.basis().iter().map(|e| represent(ctx, e)).collect()
}

/// Rank of the represented basis; `Φ` is injective iff this is `|X|·dim A`.
pub fn faithfulness_rank(ctx: &ExtensionContext, tol: f64) -> usize {
    let images = basis_images(ctx);
    let rows = images.first().map_or(0, |m| m.len());
    let stacked = CMatrix::from_fn(rows, images.len(), |r, c| images[c][r]);
    linalg::rank(&stacked, tol)
}

/// `dim Z(Φ(F))`, computed as the commutant of the represented basis inside
/// its own span.
pub fn center_dimension(ctx: &ExtensionContext, tol: f64) -> usize {
    let images = basis_images(ctx);
    relative_commutant(&images, &images, tol).len()
}

/// `dim A^c ∩ F`, the relative commutant of `A` in `F`.
pub fn relative_commutant_dimension(ctx: &ExtensionContext, tol: f64) -> usize {
    let ambient = basis_images(ctx);
    let generators: Vec<CMatrix> = ctx
        .algebra()
        .matrix_units()
        .into_iter()
        .map(|e| represent(ctx, &ctx.from_algebra(e)))
        .collect();
    relative_commutant(&ambient, &generators, tol).len()
}

/// Write `m` as `"rows cols"` followed by one `"re im"` line per entry in
/// row-major order.
pub fn dense_matrix_text(m: &CMatrix) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            // adding 0.0 turns -0.0 into 0.0 so dumps are stable
            out.push_str(&format!("{:.17e} {:.17e}\n", v.re + 0.0, v.im + 0.0));
        }
    }
    out
}

/// Largest `‖Φ(F)‖ / C_F` over the given elements, for reports.
pub fn bound_ratio(ctx: &ExtensionContext, samples: &[ExtensionElement]) -> f64 {
    samples
        .iter()
        .filter(|f| f.term_count() > 0)
        .map(|f| rep_operator_norm(&represent(ctx, f)) / lemma_bound(f))
        .fold(0.0, f64::max)
}
