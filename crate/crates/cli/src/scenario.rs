//! Scenario files: a TOML description of `(X, A, β_X)` plus optional
//! `ω` overrides, central cocycles, lifting certificates and expected values.

use std::path::{Path, PathBuf};

use hilbext_core::algebra::{AlgebraElement, Automorphism, BlockAlgebra};
use hilbext_core::cohomology::{CenterAction, CentralCochain};
use hilbext_core::group::{Element, FiniteAbelianGroup};
use hilbext_core::linalg::CMatrix;
use hilbext_core::theta::{omega_from_representatives, repair_omega, OmegaTable, Repair, ThetaData};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::CliError;
use crate::parse::parse_complex;

/// A matrix written as rows of complex-number strings.
pub type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    #[serde(default)]
    description: String,
    #[serde(default)]
    negative: bool,
    group: RawGroup,
    algebra: RawAlgebra,
    action: RawAction,
    #[serde(default)]
    omega: RawOmega,
    #[serde(default)]
    twist: Option<String>,
    #[serde(default)]
    cocycle: Vec<RawCocycle>,
    #[serde(default)]
    lifting: Vec<RawLifting>,
    #[serde(default)]
    expected: Expected,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    orders: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    blocks: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    #[serde(default = "default_decomposition")]
    decomposition: String,
    generator: Vec<RawGenerator>,
}

fn default_decomposition() -> String {
    "coordinate-powers".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    element: Vec<usize>,
    perm: Vec<usize>,
    #[serde(default)]
    unitaries: Option<Vec<RawMatrix>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOmega {
    #[serde(default)]
    repair: bool,
    #[serde(default)]
    entry: Vec<RawOmegaEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOmegaEntry {
    pair: [Vec<usize>; 2],
    #[serde(default)]
    scale: Option<String>,
    #[serde(default)]
    blocks: Option<Vec<RawMatrix>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycle {
    name: String,
    #[serde(default)]
    builtin: Option<String>,
    #[serde(default)]
    modulus: Option<i64>,
    /// Values given as integers modulo `modulus`.
    #[serde(default)]
    value: Vec<RawCocycleValue>,
    /// Values given as complex phases, read onto the smallest grid.
    #[serde(default)]
    phase: Vec<RawCocyclePhase>,
    /// Add the coboundary of this 1-cochain (integers modulo `modulus`).
    #[serde(default)]
    plus_coboundary: Vec<RawOneCochainValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycleValue {
    args: [Vec<usize>; 2],
    value: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocyclePhase {
    args: [Vec<usize>; 2],
    phases: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOneCochainValue {
    pub element: Vec<usize>,
    pub value: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLifting {
    name: String,
    #[serde(default)]
    expect: Option<bool>,
    #[serde(default)]
    value: Vec<RawLiftingValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLiftingValue {
    element: Vec<usize>,
    blocks: Vec<RawMatrix>,
}

/// Values a scenario promises; each becomes a check.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub dimension: Option<usize>,
    pub center_dimension: Option<usize>,
    pub relative_commutant_dimension: Option<usize>,
    pub injective: Option<bool>,
    pub h2: Option<Vec<u64>>,
}

/// A named central 2-cocycle, or why it could not be read exactly.
#[derive(Debug, Clone)]
pub struct NamedCocycle {
    pub name: String,
    pub cochain: Result<CentralCochain, String>,
}

#[derive(Debug, Clone)]
pub struct LiftingCertificate {
    pub name: String,
    pub values: Vec<AlgebraElement>,
    pub expect: Option<bool>,
}

/// How the `ω` table was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaSource {
    Computed,
    Overridden { entries: usize },
    Repaired,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub path: PathBuf,
    pub negative: bool,
    pub theta: ThetaData,
    pub omega: OmegaTable,
    /// `ω` before any twist or entry override.
    pub base_omega: OmegaTable,
    pub omega_source: OmegaSource,
    pub twist: Option<String>,
    pub cocycles: Vec<NamedCocycle>,
    pub liftings: Vec<LiftingCertificate>,
    pub expected: Expected,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let raw: RawScenario = toml::from_str(text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        build(raw, path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.theta.group()
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        self.theta.algebra()
    }

    pub fn center_action(&self) -> CenterAction {
        self.theta
            .center_action()
            .expect("outer classes are checked when the scenario is loaded")
    }
}

fn build(raw: RawScenario, path: &Path) -> Result<Scenario, String> {
    let group = FiniteAbelianGroup::new(raw.group.orders.clone()).map_err(|e| format!("group.orders: {e}"))?;
    let algebra = BlockAlgebra::new(raw.algebra.blocks.clone()).map_err(|e| format!("algebra.blocks: {e}"))?;
    if raw.action.decomposition != "coordinate-powers" {
        return Err(format!(
            "action.decomposition: unsupported word decomposition {:?} (only \"coordinate-powers\")",
            raw.action.decomposition
        ));
    }
    let generators = generators(&raw.action.generator, &group, &algebra)?;
    let theta = ThetaData::from_generators(group.clone(), algebra.clone(), &generators)
        .map_err(|e| format!("action: {e}"))?;
    theta.center_action().map_err(|e| format!("action: {e}"))?;

    let mut omega = omega_from_representatives(&theta).map_err(|e| format!("omega: {e}"))?;
    let mut omega_source = OmegaSource::Computed;
    if raw.omega.repair {
        match repair_omega(&theta, &omega, 1e-12).map_err(|e| format!("omega.repair: {e}"))? {
            Repair::AlreadyCocycle => {}
            Repair::Repaired { omega: fixed, .. } => {
                omega = fixed;
                omega_source = OmegaSource::Repaired;
            }
            Repair::Obstructed { .. } => {
                return Err("omega.repair: the obstruction is not a coboundary".into());
            }
            Repair::Undecided { reason } => return Err(format!("omega.repair: {reason}")),
        }
    }

    let cocycles: Vec<NamedCocycle> = raw
        .cocycle
        .iter()
        .enumerate()
        .map(|(i, c)| cocycle(c, &theta).map_err(|e| format!("cocycle[{i}] ({}): {e}", c.name)))
        .collect::<Result<_, _>>()?;

    let base_omega = omega.clone();
    if let Some(name) = &raw.twist {
        let lambda = cocycles
            .iter()
            .find(|c| &c.name == name)
            .ok_or_else(|| format!("twist: no cocycle named {name:?}"))?;
        let lambda = lambda
            .cochain
            .as_ref()
            .map_err(|e| format!("twist: cocycle {name:?} is not exact: {e}"))?;
        omega = omega.twisted(lambda).map_err(|e| format!("twist: {e}"))?;
    }

    if !raw.omega.entry.is_empty() {
        for (i, entry) in raw.omega.entry.iter().enumerate() {
            let field = format!("omega.entry[{i}]");
            let a = element_index(&group, &entry.pair[0], &field)?;
            let b = element_index(&group, &entry.pair[1], &field)?;
            let value = match (&entry.scale, &entry.blocks) {
                (Some(s), None) => {
                    let z = parse_complex(s).map_err(|e| format!("{field}.scale: {e}"))?;
                    omega.get(a, b).scale(z)
                }
                (None, Some(blocks)) => algebra_element(&algebra, blocks, &format!("{field}.blocks"))?,
                _ => return Err(format!("{field}: give exactly one of `scale` or `blocks`")),
            };
            omega.set(a, b, value);
        }
        omega_source = OmegaSource::Overridden {
            entries: raw.omega.entry.len(),
        };
    }

    let liftings = raw
        .lifting
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut values = vec![algebra.identity(); group.order()];
            for (j, v) in l.value.iter().enumerate() {
                let field = format!("lifting[{i}].value[{j}]");
                let idx = element_index(&group, &v.element, &field)?;
                values[idx] = algebra_element(&algebra, &v.blocks, &format!("{field}.blocks"))?;
            }
            Ok(LiftingCertificate {
                name: l.name.clone(),
                values,
                expect: l.expect,
            })
        })
        .collect::<Result<_, String>>()?;

    Ok(Scenario {
        name: raw.name,
        description: raw.description,
        path: path.to_path_buf(),
        negative: raw.negative,
        theta,
        omega,
        base_omega,
        omega_source,
        twist: raw.twist,
        cocycles,
        liftings,
        expected: raw.expected,
    })
}

fn generators(
    raw: &[RawGenerator],
    group: &FiniteAbelianGroup,
    algebra: &BlockAlgebra,
) -> Result<Vec<Automorphism>, String> {
    let rank = group.rank();
    let mut out: Vec<Option<Automorphism>> = vec![None; rank];
    for (i, g) in raw.iter().enumerate() {
        let field = format!("action.generator[{i}]");
        let k = (0..rank)
            .find(|&k| {
                g.element.len() == rank && (0..rank).all(|j| g.element[j] == usize::from(j == k))
            })
            .ok_or_else(|| format!("{field}.element: {:?} is not a coordinate generator", g.element))?;
        if out[k].is_some() {
            return Err(format!("{field}: generator {:?} given twice", g.element));
        }
        let unitaries = match &g.unitaries {
            Some(mats) => {
                if mats.len() != algebra.num_blocks() {
                    return Err(format!(
                        "{field}.unitaries: {} matrices for {} blocks",
                        mats.len(),
                        algebra.num_blocks()
                    ));
                }
                mats.iter()
                    .enumerate()
                    .map(|(b, m)| matrix(m, &format!("{field}.unitaries[{b}]")))
                    .collect::<Result<Vec<_>, _>>()?
            }
            None => algebra.identity().into_blocks(),
        };
        out[k] = Some(Automorphism::new(algebra, g.perm.clone(), unitaries).map_err(|e| format!("{field}: {e}"))?);
    }
    out.into_iter()
        .enumerate()
        .map(|(k, g)| g.ok_or_else(|| format!("action.generator: missing generator for coordinate {k}")))
        .collect()
}

fn element_index(group: &FiniteAbelianGroup, x: &[usize], field: &str) -> Result<usize, String> {
    group.index_of(x).map_err(|e| format!("{field}: {e}"))
}

pub fn matrix(raw: &RawMatrix, field: &str) -> Result<CMatrix, String> {
    let d = raw.len();
    if raw.iter().any(|row| row.len() != d) {
        return Err(format!("{field}: matrix must be square"));
    }
    let mut entries = Vec::with_capacity(d * d);
    for (r, row) in raw.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            entries.push(parse_complex(s).map_err(|e| format!("{field}[{r}][{c}]: {e}"))?);
        }
    }
    Ok(CMatrix::from_row_slice(d, d, &entries))
}

pub fn algebra_element(algebra: &BlockAlgebra, blocks: &[RawMatrix], field: &str) -> Result<AlgebraElement, String> {
    let mats = blocks
        .iter()
        .enumerate()
        .map(|(b, m)| matrix(m, &format!("{field}[{b}]")))
        .collect::<Result<Vec<_>, _>>()?;
    algebra.element(mats).map_err(|e| format!("{field}: {e}"))
}

/// `λ((a₁,a₂),(b₁,b₂)) = a₂b₁ mod 2` on every circle factor.
pub fn pauli_cocycle(action: &CenterAction) -> Result<CentralCochain, String> {
    let g = action.group().clone();
    if g.cyclic_orders() != [2, 2] {
        return Err("the Pauli cocycle is defined on Z2 x Z2".into());
    }
    if !action.is_trivial() {
        return Err("the Pauli cocycle needs a trivial action on the center".into());
    }
    CentralCochain::from_fn(action, 2, 2, |args| {
        let (a, b) = (g.element_at(args[0]), g.element_at(args[1]));
        vec![((a[1] * b[0]) % 2) as i64; action.m()]
    })
    .map_err(|e| e.to_string())
}

/// Integer 1-cochain values modulo `modulus`; unlisted elements are 0.
pub fn one_cochain(
    action: &CenterAction,
    modulus: i64,
    values: &[RawOneCochainValue],
    field: &str,
) -> Result<CentralCochain, String> {
    let g = action.group();
    let mut z = CentralCochain::zero(action, 1, modulus);
    for (i, v) in values.iter().enumerate() {
        let idx = element_index(g, &v.element, &format!("{field}[{i}]"))?;
        if v.value.len() != action.m() {
            return Err(format!("{field}[{i}].value: expected {} entries", action.m()));
        }
        if idx == 0 && v.value.iter().any(|&x| x.rem_euclid(modulus) != 0) {
            return Err(format!("{field}[{i}]: value at the identity must be 0"));
        }
        z.set(&[idx], &v.value.iter().map(|x| x.rem_euclid(modulus)).collect::<Vec<_>>());
    }
    Ok(z)
}

fn cocycle(raw: &RawCocycle, theta: &ThetaData) -> Result<NamedCocycle, String> {
    let action = theta.center_action().map_err(|e| e.to_string())?;
    let g = theta.group();
    let mut lambda = match (&raw.builtin, raw.phase.is_empty()) {
        (Some(name), true) if raw.value.is_empty() => match name.as_str() {
            "trivial" => CentralCochain::zero(&action, 2, raw.modulus.unwrap_or(1)),
            "pauli" => pauli_cocycle(&action)?,
            other => return Err(format!("builtin: unknown cocycle {other:?}")),
        },
        (None, true) => {
            let modulus = raw.modulus.ok_or("modulus is required with integer values")?;
            if modulus < 1 {
                return Err("modulus must be positive".into());
            }
            let mut c = CentralCochain::zero(&action, 2, modulus);
            for (i, v) in raw.value.iter().enumerate() {
                let a = element_index(g, &v.args[0], &format!("value[{i}].args"))?;
                let b = element_index(g, &v.args[1], &format!("value[{i}].args"))?;
                if v.value.len() != action.m() {
                    return Err(format!("value[{i}].value: expected {} entries", action.m()));
                }
                c.set(&[a, b], &v.value.iter().map(|x| x.rem_euclid(modulus)).collect::<Vec<_>>());
            }
            if !c.is_normalized() {
                return Err("values at pairs containing the identity must be 0".into());
            }
            c
        }
        (None, false) if raw.value.is_empty() => {
            let n = g.order();
            let mut table = vec![vec![Complex64::new(1.0, 0.0); action.m()]; n * n];
            for (i, p) in raw.phase.iter().enumerate() {
                let a = element_index(g, &p.args[0], &format!("phase[{i}].args"))?;
                let b = element_index(g, &p.args[1], &format!("phase[{i}].args"))?;
                if p.phases.len() != action.m() {
                    return Err(format!("phase[{i}].phases: expected {} entries", action.m()));
                }
                table[a * n + b] = p
                    .phases
                    .iter()
                    .map(|s| parse_complex(s).map_err(|e| format!("phase[{i}]: {e}")))
                    .collect::<Result<_, _>>()?;
            }
            let snapped = CentralCochain::from_unitaries_auto(&action, 2, 720, |args| {
                hilbext_core::CentralUnitary {
                    phases: table[args[0] * n + args[1]].clone(),
                }
            });
            match snapped {
                Ok(c) => c,
                Err(e) => {
                    return Ok(NamedCocycle {
                        name: raw.name.clone(),
                        cochain: Err(e.to_string()),
                    })
                }
            }
        }
        _ => return Err("give one of `builtin`, integer `value`s or `phase`s".into()),
    };
    if !raw.plus_coboundary.is_empty() {
        let modulus = raw.modulus.unwrap_or(lambda.modulus());
        let z = one_cochain(&action, modulus, &raw.plus_coboundary, "plus_coboundary")?;
        let dz = z.coboundary().map_err(|e| e.to_string())?;
        lambda = lambda.add(&dz).map_err(|e| e.to_string())?;
    }
    Ok(NamedCocycle {
        name: raw.name.clone(),
        cochain: Ok(lambda),
    })
}

/// Display an element as `(1,0)`.
pub fn show(x: &Element) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}
