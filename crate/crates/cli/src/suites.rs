//! Sampled verification suites over a constructed extension.

use hilbext_core::check::{Check, Verification};
use hilbext_core::extension::*;
use hilbext_core::representation::{lemma_bound, represent, rep_operator_norm, sup_norm};
use rand::Rng;

/// Associativity, involution identities, basis unitarity, fixed points and
/// the two routes to `Π_χ`.
pub fn algebra_suite<R: Rng + ?Sized>(ctx: &ExtensionContext, rng: &mut R, samples: usize, tol: f64) -> Verification {
    let n = ctx.order();
    let mut assoc = Check::new("associativity", tol);
    let mut invol = Check::new("involution", tol);
    let mut unitary = Check::new("basis-unitarity", tol);
    let mut fixed = Check::new("fixed-points", tol);
    let mut spectral = Check::new("spectral-projection", tol);

    let one = ctx.one();
    for chi in 0..n {
        let u = ctx.basis_unitary(chi);
        let us = ext_star(ctx, &u);
        let r = ext_mul(ctx, &us, &u).expect("same context").max_diff(&one)
            .max(ext_mul(ctx, &u, &us).expect("same context").max_diff(&one));
        unitary.record(r, || format!("U_χ not unitary at index {chi}"));
        invol.record(ext_star(ctx, &us).max_diff(&u), || format!("(U*)* ≠ U at index {chi}"));
        for psi in 0..n {
            let v = ctx.basis_unitary(psi);
            let lhs = ext_star(ctx, &ext_mul(ctx, &u, &v).expect("same context"));
            let rhs = ext_mul(ctx, &ext_star(ctx, &v), &us).expect("same context");
            invol.record(lhs.max_diff(&rhs), || format!("(U₁U₂)* ≠ U₂*U₁* at indices {chi}, {psi}"));
        }
    }

    for i in 0..samples {
        let f1 = ctx.random_element(rng);
        let f2 = ctx.random_element(rng);
        let f3 = ctx.random_element(rng);
        let left = ext_mul(ctx, &ext_mul(ctx, &f1, &f2).expect("same context"), &f3).expect("same context");
        let right = ext_mul(ctx, &f1, &ext_mul(ctx, &f2, &f3).expect("same context")).expect("same context");
        assoc.record(cstar_norm(ctx, &left.sub(&right)), || format!("sample {i}: (F₁F₂)F₃ ≠ F₁(F₂F₃)"));

        invol.record(ext_star(ctx, &ext_star(ctx, &f1)).max_diff(&f1), || format!("sample {i}: (F*)* ≠ F"));
        let lhs = ext_star(ctx, &ext_mul(ctx, &f1, &f2).expect("same context"));
        let rhs = ext_mul(ctx, &ext_star(ctx, &f2), &ext_star(ctx, &f1)).expect("same context");
        invol.record(lhs.max_diff(&rhs), || format!("sample {i}: (F₁F₂)* ≠ F₂*F₁*"));
        let chi = i % n;
        let a = ctx.algebra().random_element(rng);
        let u = ctx.basis_unitary(chi);
        let lhs = ext_star(ctx, &ext_mul(ctx, &u, &ctx.from_algebra(a.clone())).expect("same context"));
        let rhs = ext_mul(ctx, &ctx.from_algebra(a.adjoint()), &ext_star(ctx, &u)).expect("same context");
        invol.record(lhs.max_diff(&rhs), || format!("sample {i}: (U_χA)* ≠ A*U_χ*"));

        // Averaging over G lands in A and is fixed by every α_g.
        let avg = spectral_projection(ctx, 0, &f1);
        let stray = (1..n).map(|c| avg.coefficient(c).max_abs()).fold(0.0, f64::max);
        let moved = (0..ctx.group().order())
            .map(|g| ext_act(ctx, g, &avg).max_diff(&avg))
            .fold(0.0, f64::max);
        fixed.record(stray.max(moved), || format!("sample {i}: fixed-point projection leaves A"));

        let mut sum = ctx.zero();
        let mut worst = 0.0f64;
        for chi in 0..n {
            let p = spectral_projection(ctx, chi, &f1);
            worst = worst.max(p.max_diff(&spectral_component(ctx, chi, &f1)));
            sum = sum.add(&p);
        }
        worst = worst.max(sum.max_diff(&f1));
        spectral.record(worst, || format!("sample {i}: averaging and extraction disagree"));
    }
    let mut out = Verification::default();
    for c in [assoc, invol, unitary, fixed, spectral] {
        out.push(c);
    }
    out
}

/// `⟨F₁,F₂⟩ = Π_ι(F₁*F₂)`, hermiticity, `G`-invariance and positivity.
pub fn inner_product_suite<R: Rng + ?Sized>(
    ctx: &ExtensionContext,
    rng: &mut R,
    samples: usize,
    tol: f64,
) -> Verification {
    let mut identity = Check::new("identity", tol);
    let mut invariance = Check::new("g-invariance", tol);
    let mut hermitian = Check::new("hermitian", tol);
    let mut positive = Check::new("positivity", tol);
    for i in 0..samples {
        let f1 = ctx.random_element(rng);
        let f2 = ctx.random_element(rng);
        let ip = inner_product(ctx, &f1, &f2);
        let via = spectral_projection(ctx, 0, &ext_mul(ctx, &ext_star(ctx, &f1), &f2).expect("same context"));
        identity.record(ctx.from_algebra(ip.clone()).max_diff(&via), || {
            format!("sample {i}: ⟨F₁,F₂⟩ ≠ Π_ι(F₁*F₂)")
        });
        let moved = (0..ctx.group().order())
            .map(|g| inner_product(ctx, &ext_act(ctx, g, &f1), &ext_act(ctx, g, &f2)).max_diff(&ip))
            .fold(0.0, f64::max);
        invariance.record(moved, || format!("sample {i}: ⟨α_g F₁, α_g F₂⟩ ≠ ⟨F₁,F₂⟩"));
        hermitian.record(ip.adjoint().max_diff(&inner_product(ctx, &f2, &f1)), || {
            format!("sample {i}: ⟨F₁,F₂⟩* ≠ ⟨F₂,F₁⟩")
        });
        let lowest = min_eigenvalue(&inner_product(ctx, &f1, &f1));
        positive.record((-lowest).max(0.0), || format!("sample {i}: ⟨F,F⟩ has a negative eigenvalue"));
    }
    let mut out = Verification::default();
    for c in [identity, invariance, hermitian, positive] {
        out.push(c);
    }
    out
}

/// Measured norms of one element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub cstar: f64,
    pub oracle: f64,
    pub sup: f64,
    pub bound: f64,
    /// `max_g ‖Φ(α_g F)‖`, compared with `bound`.
    pub worst_orbit: f64,
}

pub fn norms(ctx: &ExtensionContext, f: &ExtensionElement, gram: &hilbext_core::linalg::CMatrix) -> Norms {
    let cstar = cstar_norm(ctx, f);
    let oracle = hilbert_module_norm_with_gram(ctx, f, gram).unwrap_or(f64::NAN);
    let sup = sup_norm(ctx, f);
    let worst_orbit = (0..ctx.group().order())
        .map(|g| rep_operator_norm(&represent(ctx, &ext_act(ctx, g, f))))
        .fold(0.0, f64::max);
    Norms {
        cstar,
        oracle,
        sup,
        bound: lemma_bound(f),
        worst_orbit,
    }
}

/// `‖F‖_* = sup_g ‖Φ(α_g F)‖ = ‖ρ(F)‖` relatively, `C*`-identity, and the
/// term-count bound with absolute slack.
pub fn norm_suite(ctx: &ExtensionContext, elements: &[ExtensionElement], tol: f64) -> Verification {
    let gram = module_gram_matrix(ctx);
    let mut sup = Check::new("sup-vs-cstar", tol);
    let mut oracle = Check::new("oracle-vs-cstar", tol);
    let mut cstar_id = Check::new("cstar-identity", tol);
    let mut bound = Check::new("lemma-bound", tol);
    for (i, f) in elements.iter().enumerate() {
        let n = norms(ctx, f, &gram);
        let scale = n.cstar.max(1.0);
        sup.record((n.sup - n.cstar).abs() / scale, || format!("element {i}: sup norm {} vs {}", n.sup, n.cstar));
        oracle.record((n.oracle - n.cstar).abs() / scale, || {
            format!("element {i}: module norm {} vs {}", n.oracle, n.cstar)
        });
        let ff = ext_mul(ctx, &ext_star(ctx, f), f).expect("same context");
        let sq = n.cstar * n.cstar;
        cstar_id.record((cstar_norm(ctx, &ff) - sq).abs() / sq.max(1.0), || {
            format!("element {i}: ‖F*F‖ ≠ ‖F‖²")
        });
        bound.record((n.worst_orbit - n.bound).max(0.0), || {
            format!("element {i}: ‖Φ(α_g F)‖ = {} exceeds C_F = {}", n.worst_orbit, n.bound)
        });
    }
    let mut out = Verification::default();
    for c in [sup, oracle, cstar_id, bound] {
        out.push(c);
    }
    out
}
