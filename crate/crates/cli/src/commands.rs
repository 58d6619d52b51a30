//! The six workbench commands. Each returns a [`Report`]; exports are
//! written when an export directory is given.

use std::fs;
use std::path::{Path, PathBuf};

use hilbext_core::algebra::CentralUnitary;
use hilbext_core::check::{Check, Verification};
use hilbext_core::cohomology::{
    coboundary_solve, h2_compute, h2_oracle, is_central_cocycle, schur_multiplier, CenterAction,
    CentralCochain, CohomologyGroup, ORACLE_MAX_M, ORACLE_MAX_ORDER,
};
use hilbext_core::extension::{
    build_module_isomorphism, extract_coboundary, same_data, structure_constants, ExtensionContext, ExtensionElement,
};
use hilbext_core::group::FiniteAbelianGroup;
use hilbext_core::representation::{
    center_dimension, dense_matrix_text, faithfulness_rank, relative_commutant_dimension, represent,
    verify_homomorphism_relations,
};
use hilbext_core::theta::{
    canonical_family, gamma_obstruction, permutators_from_cocycle, repair_omega, validate_theta,
    verify_dr_permutator_system, verify_generalized_cocycle, verify_lifting_certificate,
    verify_permutator_relations, DrSystem, Repair,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::CliError;
use crate::report::{Format, Report};
use crate::scenario::{algebra_element, one_cochain, show, RawMatrix, RawOneCochainValue, Scenario};
use crate::suites::{algebra_suite, inner_product_suite, norm_suite, norms};

/// Residual bound for identities that hold exactly up to rounding.
pub const EXACT_TOL: f64 = 1e-12;
/// Residual bound for sampled and spectral computations.
pub const NUMERIC_TOL: f64 = 1e-10;
/// Rank threshold for commutant and faithfulness computations.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    /// Overrides both default tolerances when set.
    pub tolerance: Option<f64>,
    pub samples: usize,
    pub export: Option<PathBuf>,
    pub format: Format,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            seed: 0,
            tolerance: None,
            samples: 100,
            export: None,
            format: Format::Text,
            timings: false,
        }
    }
}

impl Options {
    pub fn exact_tol(&self) -> f64 {
        self.tolerance.unwrap_or(EXACT_TOL)
    }

    pub fn numeric_tol(&self) -> f64 {
        self.tolerance.unwrap_or(NUMERIC_TOL)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn failed(name: &str, tol: f64, why: String) -> Verification {
    let mut c = Check::new(name, tol);
    c.fail(why);
    let mut v = Verification::default();
    v.push(c);
    v
}

fn describe(sc: &Scenario, r: &mut Report) {
    r.fact("group", format!("{:?}", sc.group().cyclic_orders()));
    r.fact("algebra.blocks", format!("{:?}", sc.algebra().block_dims()));
    r.fact("omega.source", format!("{:?}", sc.omega_source));
    if let Some(t) = &sc.twist {
        r.fact("omega.twist", t);
    }
}

pub fn validate(sc: &Scenario, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("validate", Some(&sc.name), opts.seed, opts.timings);
    describe(sc, &mut r);
    let (exact, numeric) = (opts.exact_tol(), opts.numeric_tol());

    match validate_theta(&sc.theta) {
        Ok(rep) => {
            r.verdict("theta.outer-action", true, "");
            r.fact("theta.injective", rep.injective);
            let kernel: Vec<String> = rep.kernel.iter().map(show).collect();
            r.fact("theta.kernel", kernel.join(" "));
            r.expect("injective", sc.expected.injective, rep.injective);
        }
        Err(e) => r.verdict("theta.outer-action", false, e.to_string()),
    }

    r.stage("cocycle", || verify_generalized_cocycle(&sc.theta, &sc.omega, exact));

    match gamma_obstruction(&sc.theta, &sc.omega) {
        Ok(gamma) => {
            let mut c = Check::new("gamma", exact);
            c.record(gamma.max_deviation(), || "γ is not identically 𝟙".into());
            if !c.passed() {
                let verdict = match repair_omega(&sc.theta, &sc.omega, exact) {
                    Ok(Repair::Repaired { .. }) => "γ is a coboundary; `omega.repair = true` removes it".into(),
                    Ok(Repair::Obstructed { .. }) => "γ is not a coboundary: no extension over these representatives".into(),
                    Ok(Repair::Undecided { reason }) => format!("undecided: {reason}"),
                    Ok(Repair::AlreadyCocycle) => String::new(),
                    Err(e) => e.to_string(),
                };
                c.note(verdict);
            }
            r.push_check("obstruction", &c, None);
        }
        Err(e) => r.verdict("obstruction.gamma", false, e.to_string()),
    }

    let family = canonical_family(&sc.theta);
    r.stage("permutator", || {
        verify_permutator_relations(sc.algebra(), &family, numeric)
            .unwrap_or_else(|e| failed("relations", numeric, e.to_string()))
    });
    if sc.algebra().is_factor() {
        let eps = permutators_from_cocycle(&sc.omega);
        let minus = sc.algebra().identity().scale((-1.0).into());
        let count = eps.iter().filter(|e| e.max_diff(&minus) <= exact).count();
        r.fact("permutator.minus_one_entries", count);
        let system = DrSystem {
            eps,
            omega: sc.omega.clone(),
            regauged: None,
            omega0: Some(sc.omega.clone()),
        };
        r.stage("permutator-exact", || {
            verify_dr_permutator_system(&sc.theta, &system, exact)
                .unwrap_or_else(|e| failed("relations", exact, e.to_string()))
        });
    }

    for cert in &sc.liftings {
        let name = format!("lifting.{}", cert.name);
        match verify_lifting_certificate(&sc.theta, &sc.omega, &cert.values, numeric) {
            Ok(v) => {
                let found = match &v.failing_pair {
                    None => "is a lifting".to_string(),
                    Some((a, b)) => format!("not a lifting: fails at ({}, {})", show(a), show(b)),
                };
                let ok = cert.expect.is_none_or(|e| e == v.is_lifting);
                r.verdict(name, ok, found);
            }
            Err(e) => r.verdict(name, false, e.to_string()),
        }
    }
    if sc.negative {
        r.note("scenario is marked negative: failing checks are intended");
    }
    export_report(opts, &r)?;
    Ok(r)
}

/// The verified extension of a scenario, or a refusal naming `validate`.
pub fn context(sc: &Scenario, opts: &Options) -> Result<ExtensionContext, CliError> {
    let v = verify_generalized_cocycle(&sc.theta, &sc.omega, opts.exact_tol());
    if !v.passed() {
        let first = v.violations().next().map(|(n, w)| format!("{n}: {w}")).unwrap_or_default();
        return Err(CliError::Refused(format!(
            "scenario {} does not define a generalized 2-cocycle ({first}); run `hilbext validate` for details",
            sc.name
        )));
    }
    Ok(ExtensionContext::new_unchecked(sc.theta.clone(), sc.omega.clone()))
}

pub fn construct(sc: &Scenario, opts: &Options) -> Result<Report, CliError> {
    let ctx = context(sc, opts)?;
    let mut r = Report::new("construct", Some(&sc.name), opts.seed, opts.timings);
    describe(sc, &mut r);
    let numeric = opts.numeric_tol();
    let mut rng = opts.rng();

    let dim = ctx.dimension();
    let center = center_dimension(&ctx, RANK_TOL);
    let commutant = relative_commutant_dimension(&ctx, RANK_TOL);
    let z_dim = sc.algebra().num_blocks();
    r.fact("dimension", dim);
    r.fact("center_dimension", center);
    r.fact("relative_commutant_dimension", commutant);
    r.fact("algebra_center_dimension", z_dim);
    r.fact("relative_commutant_is_center", commutant == z_dim);
    r.expect("dimension", sc.expected.dimension, dim);
    r.expect("center_dimension", sc.expected.center_dimension, center);
    r.expect("relative_commutant_dimension", sc.expected.relative_commutant_dimension, commutant);

    r.stage("representation", || verify_homomorphism_relations(&ctx, numeric));
    let rank = faithfulness_rank(&ctx, RANK_TOL);
    r.verdict(
        "representation.faithful",
        rank == dim,
        if rank == dim { String::new() } else { format!("rank {rank} < {dim}") },
    );
    r.stage("extension", || algebra_suite(&ctx, &mut rng, opts.samples, numeric));
    r.stage("inner-product", || inner_product_suite(&ctx, &mut rng, opts.samples, numeric));

    if let Some(dir) = &opts.export {
        export_construction(dir, &ctx)?;
    }
    export_report(opts, &r)?;
    Ok(r)
}

/// `structure_constants.txt` and one dense dump per represented basis
/// element and basis unitary.
fn export_construction(dir: &Path, ctx: &ExtensionContext) -> Result<(), CliError> {
    fs::create_dir_all(dir.join("represented"))?;
    let mut text = String::from(
        "# e_a = E_a(chi) U_chi, a = chi * dim(A) + unit, units block-major and row-major\n# a b c re im\n",
    );
    for (a, b, c, v) in structure_constants(ctx)? {
        text.push_str(&format!("{a} {b} {c} {:.17e} {:.17e}\n", v.re + 0.0, v.im + 0.0));
    }
    fs::write(dir.join("structure_constants.txt"), text)?;
    for (k, e) in ctx.basis().iter().enumerate() {
        fs::write(
            dir.join("represented").join(format!("basis_{k:04}.txt")),
            dense_matrix_text(&represent(ctx, e)),
        )?;
    }
    let g = ctx.group();
    for chi in 0..ctx.order() {
        let label: Vec<String> = g.element_at(chi).iter().map(|v| v.to_string()).collect();
        fs::write(
            dir.join("represented").join(format!("unitary_{}.txt", label.join("-"))),
            dense_matrix_text(&represent(ctx, &ctx.basis_unitary(chi))),
        )?;
    }
    Ok(())
}

/// `trivial`, `swap` (every generator swaps two circles), or explicit
/// per-generator permutations such as `1,0;1,0`.
pub fn parse_action(group: &FiniteAbelianGroup, spec: &str, m: usize) -> Result<CenterAction, CliError> {
    let rank = group.rank();
    let perms: Vec<Vec<usize>> = match spec {
        "trivial" => return Ok(CenterAction::trivial(group.clone(), m)),
        "swap" => {
            if m != 2 {
                return Err(CliError::Input("--action swap needs --m 2".into()));
            }
            vec![vec![1, 0]; rank]
        }
        explicit => explicit
            .split(';')
            .map(|p| {
                p.split(',')
                    .map(|v| v.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Input(format!("--action: cannot read permutation {p:?}")))
            })
            .collect::<Result<_, _>>()?,
    };
    CenterAction::from_generators(group.clone(), m, &perms).map_err(|e| CliError::Input(format!("--action: {e}")))
}

pub fn cohomology(orders: &[usize], action: &str, m: usize, opts: &Options) -> Result<Report, CliError> {
    let group = FiniteAbelianGroup::new(orders.to_vec()).map_err(|e| CliError::Input(format!("--group: {e}")))?;
    let action = parse_action(&group, action, m)?;
    let mut r = Report::new("cohomology", None, opts.seed, opts.timings);
    r.fact("group", format!("{orders:?}"));
    r.fact("m", m);
    r.fact("action.trivial", action.is_trivial());
    let h2 = h2_compute(&action)?;
    r.fact("h2", &h2);
    r.fact("h2.invariant_factors", format!("{:?}", h2.invariant_factors));
    r.fact("h2.order", h2.order());

    if group.order() <= ORACLE_MAX_ORDER && m <= ORACLE_MAX_M {
        let oracle = h2_oracle(&action)?;
        let ok = oracle == h2;
        r.verdict("oracle", ok, if ok { String::new() } else { format!("oracle gives {oracle}") });
    } else {
        r.note("exhaustive oracle skipped: outside its size bounds");
    }
    if action.is_trivial() {
        let one = schur_multiplier(orders);
        let factors: Vec<u64> = (0..m).flat_map(|_| one.invariant_factors.iter().copied()).collect();
        let expected = CohomologyGroup::from_cyclic(&factors);
        let ok = expected == h2;
        r.verdict("schur", ok, if ok { String::new() } else { format!("closed form gives {expected}") });
    }
    export_report(opts, &r)?;
    Ok(r)
}

fn z_unitaries(z: &CentralCochain) -> Vec<CentralUnitary> {
    (0..z.group().order()).map(|c| z.unitary(&[c])).collect()
}

pub fn classify(sc: &Scenario, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("classify", Some(&sc.name), opts.seed, opts.timings);
    describe(sc, &mut r);
    let numeric = opts.numeric_tol();
    let mut rng = opts.rng();

    let mut exact: Vec<(&str, &CentralCochain)> = Vec::new();
    for c in &sc.cocycles {
        match &c.cochain {
            Ok(l) => {
                let ok = is_central_cocycle(l);
                r.verdict(format!("cocycle.{}", c.name), ok, if ok { "" } else { "δλ ≠ 0" });
                if ok {
                    exact.push((&c.name, l));
                }
            }
            Err(reason) => r.fact(format!("undecidable.{}", c.name), reason),
        }
    }

    // classes[k] = (representative, members with their witnesses)
    type Members = Vec<(usize, Option<CentralCochain>)>;
    let mut classes: Vec<(usize, Members)> = Vec::new();
    for (i, (_, lambda)) in exact.iter().enumerate() {
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            let diff = lambda.sub(exact[*rep].1)?;
            if let Some(z) = coboundary_solve(&diff)? {
                members.push((i, Some(z)));
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((i, vec![(i, None)]));
        }
    }
    r.fact("classes", classes.len());

    for (k, (rep, members)) in classes.iter().enumerate() {
        let names: Vec<&str> = members.iter().map(|(i, _)| exact[*i].0).collect();
        r.fact(format!("class.{k}.members"), names.join(" "));
        let build = |lambda: &CentralCochain| -> Result<ExtensionContext, CliError> {
            let omega = sc.base_omega.twisted(lambda)?;
            Ok(ExtensionContext::new(sc.theta.clone(), omega)?)
        };
        let target = match build(exact[*rep].1) {
            Ok(ctx) => ctx,
            Err(e) => {
                r.verdict(format!("class.{k}.extension"), false, e.to_string());
                continue;
            }
        };
        r.fact(format!("class.{k}.center_dimension"), center_dimension(&target, RANK_TOL));
        for (i, witness) in members {
            let Some(z) = witness else { continue };
            let source = build(exact[*i].1)?;
            let name = format!("iso.{}", exact[*i].0);
            match build_module_isomorphism(&source, &target, &z_unitaries(z), &mut rng, 10, numeric) {
                Ok((_, v)) => {
                    r.stage(&name, || v);
                }
                Err(e) => r.verdict(name, false, e.to_string()),
            }
        }
    }
    export_report(opts, &r)?;
    Ok(r)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZFile {
    modulus: i64,
    #[serde(default)]
    value: Vec<RawOneCochainValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    element: Vec<usize>,
    blocks: Vec<RawMatrix>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    #[serde(default)]
    term: Vec<RawTerm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImage {
    element: Vec<usize>,
    #[serde(default)]
    term: Vec<RawTerm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImagesFile {
    #[serde(default)]
    image: Vec<RawImage>,
}

fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn element_from_terms(ctx: &ExtensionContext, terms: &[RawTerm], field: &str) -> Result<ExtensionElement, String> {
    let mut f = ctx.zero();
    for (i, t) in terms.iter().enumerate() {
        let chi = ctx.group().index_of(&t.element).map_err(|e| format!("{field}[{i}].element: {e}"))?;
        let a = algebra_element(ctx.algebra(), &t.blocks, &format!("{field}[{i}].blocks"))?;
        f = f.add(&ctx.monomial(a, chi));
    }
    Ok(f)
}

/// Read `Σ A_χ U_χ` from a file of `[[term]]` tables.
pub fn load_element(ctx: &ExtensionContext, path: &Path) -> Result<ExtensionElement, CliError> {
    let file: ElementFile = read_toml(path)?;
    element_from_terms(ctx, &file.term, "term").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn iso(
    source: &Scenario,
    target: &Scenario,
    z_file: Option<&Path>,
    images_file: Option<&Path>,
    opts: &Options,
) -> Result<Report, CliError> {
    let label = format!("{} -> {}", source.name, target.name);
    let mut r = Report::new("iso", Some(&label), opts.seed, opts.timings);
    let numeric = opts.numeric_tol();
    let src = context(source, opts)?;
    let dst = context(target, opts)?;
    let action = source.center_action();
    if !same_data(&src, &dst) {
        r.verdict(
            "iso.precondition",
            false,
            "scenarios do not share the algebra, group and representatives",
        );
        export_report(opts, &r)?;
        return Ok(r);
    }

    if let Some(path) = images_file {
        let file: ImagesFile = read_toml(path)?;
        let mut images: Vec<ExtensionElement> = (0..dst.order()).map(|c| dst.basis_unitary(c)).collect();
        for (i, img) in file.image.iter().enumerate() {
            let chi = dst
                .group()
                .index_of(&img.element)
                .map_err(|e| CliError::Input(format!("{}: image[{i}]: {e}", path.display())))?;
            images[chi] = element_from_terms(&dst, &img.term, &format!("image[{i}].term"))
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        match extract_coboundary(&src, &dst, &images, numeric) {
            Ok(z) => {
                r.verdict("extract", true, "");
                for (chi, p) in z.iter().enumerate() {
                    r.fact(format!("Z{}", show(&src.group().element_at(chi))), phases(p));
                }
            }
            Err(e) => r.verdict("extract", false, e.to_string()),
        }
        export_report(opts, &r)?;
        return Ok(r);
    }

    let z = match z_file {
        Some(path) => {
            let file: ZFile = read_toml(path)?;
            if file.modulus < 1 {
                return Err(CliError::Input(format!("{}: modulus must be positive", path.display())));
            }
            let z = one_cochain(&action, file.modulus, &file.value, "value")
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            r.fact("witness", "from file");
            Some(z)
        }
        None => find_witness(source, target, &action, &mut r, numeric),
    };
    if let Some(z) = z {
        let mut rng = opts.rng();
        match build_module_isomorphism(&src, &dst, &z_unitaries(&z), &mut rng, opts.samples, numeric) {
            Ok((_, v)) => {
                r.stage("iso", || v);
            }
            Err(e) => r.verdict("iso.precondition", false, e.to_string()),
        }
    }
    export_report(opts, &r)?;
    Ok(r)
}

/// `Z` with `∂Z = ω₁ω₂⁻¹`, recorded as a check.
fn find_witness(
    source: &Scenario,
    target: &Scenario,
    action: &CenterAction,
    r: &mut Report,
    tol: f64,
) -> Option<CentralCochain> {
    let n = source.group().order();
    let mut quotient = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let q = source.omega.get(a, b) * &target.omega.get(a, b).adjoint();
            match q.as_central_unitary(tol) {
                Some(z) => quotient.push(z),
                None => {
                    let g = source.group();
                    r.verdict(
                        "iso.witness",
                        false,
                        format!(
                            "no coboundary witness: ω₁ω₂⁻¹ is not central at ({}, {})",
                            show(&g.element_at(a)),
                            show(&g.element_at(b))
                        ),
                    );
                    return None;
                }
            }
        }
    }
    let lambda = match CentralCochain::from_unitaries_auto(action, 2, 720, |args| quotient[args[0] * n + args[1]].clone()) {
        Ok(l) => l,
        Err(e) => {
            r.verdict("iso.witness", false, format!("undecidable: {e}"));
            return None;
        }
    };
    match coboundary_solve(&lambda) {
        Ok(Some(z)) => {
            r.verdict("iso.witness", true, "");
            Some(z)
        }
        Ok(None) => {
            r.verdict("iso.witness", false, "no coboundary witness: ω₁ω₂⁻¹ is not a coboundary");
            None
        }
        Err(e) => {
            r.verdict("iso.witness", false, format!("no coboundary witness: {e}"));
            None
        }
    }
}

fn phases(z: &CentralUnitary) -> String {
    let parts: Vec<String> = z
        .phases
        .iter()
        .map(|p| format!("{:.12}{:+.12}i", p.re + 0.0, p.im + 0.0))
        .collect();
    parts.join(" ")
}

pub fn norm(sc: &Scenario, element: Option<&Path>, opts: &Options) -> Result<Report, CliError> {
    let ctx = context(sc, opts)?;
    let mut r = Report::new("norm", Some(&sc.name), opts.seed, opts.timings);
    let numeric = opts.numeric_tol();
    let elements: Vec<ExtensionElement> = match element {
        Some(path) => {
            let f = load_element(&ctx, path)?;
            let gram = hilbext_core::extension::module_gram_matrix(&ctx);
            let n = norms(&ctx, &f, &gram);
            r.fact("cstar_norm", format!("{:.12}", n.cstar));
            r.fact("module_norm", format!("{:.12}", n.oracle));
            r.fact("sup_norm", format!("{:.12}", n.sup));
            r.fact("lemma_bound", format!("{:.12}", n.bound));
            vec![f]
        }
        None => {
            let mut rng = opts.rng();
            let mut v: Vec<ExtensionElement> = (0..ctx.order()).map(|c| ctx.basis_unitary(c)).collect();
            v.extend((0..opts.samples).map(|_| ctx.random_element(&mut rng)));
            v
        }
    };
    r.fact("elements", elements.len());
    r.stage("norm", || norm_suite(&ctx, &elements, numeric));
    export_report(opts, &r)?;
    Ok(r)
}

fn export_report(opts: &Options, r: &Report) -> Result<(), CliError> {
    if let Some(dir) = &opts.export {
        fs::create_dir_all(dir)?;
        let file = dir.join(format!("{}.{}", r.command, opts.format.extension()));
        fs::write(file, r.render(opts.format))?;
    }
    Ok(())
}
