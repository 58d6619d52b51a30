//! Exact cohomology of `X` with coefficients in `U(Z) ≅ Tᵐ`.
//!
//! # Reduction to integer linear algebra
//!
//! `Tᵐ = Rᵐ/Zᵐ` with `Rᵐ` cohomologically trivial, so
//! `H²(X, Tᵐ) ≅ H³(X, Zᵐ)`. For finite `X` the latter is finite, hence equal
//! to the torsion subgroup of `coker(δ²: C²(X, Zᵐ) → C³(X, Zᵐ))`. Its
//! invariant factors are the nonzero, non-unit Smith invariants of the
//! integer matrix of `δ²` on normalized cochains. They all divide `|X|`, so
//! the Smith form can be taken modulo `M = |X|²` (the modulus acting as extra
//! relation rows `M·Zⁿ`): an invariant `d` with `1 < d < M` is torsion, and
//! `d = M` marks a zero invariant. [`h2_compute`] reruns with `2M` and
//! insists on the same answer.
//!
//! Solving `δZ = λ` for a cocycle `λ` of modulus `L` is done over the witness
//! modulus `L·|X|`: if `λ/L` is a coboundary of a real cochain at all, the
//! exponent `|X|` of the cohomology groups bounds the denominators a witness
//! needs, so it exists with phases on the finer grid.
//!
//! [`h2_oracle`] is an independent brute-force route used to cross-check the
//! reduction on small groups, and [`schur_multiplier`] is the closed form for
//! trivial action on one coordinate.

mod cochain;
pub mod modular;
mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cochain::{is_central_cocycle, snap_phase, CenterAction, CentralCochain, SNAP_TOL};
pub use oracle::{h2_oracle, ORACLE_MAX_M, ORACLE_MAX_ORDER};

use crate::error::{Error, Result};
use modular::{smith_invariants, ModularEchelon};

/// Default bound on `|X|` for [`h2_compute`].
pub const H2_DEFAULT_BOUND: usize = 16;

/// Largest linear system (rows + columns) [`solve_coboundary`] will build.
pub const SOLVE_CAPACITY: usize = 6000;

/// A finite abelian group given by invariant factors `d₁ | d₂ | …`, each > 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub invariant_factors: Vec<u64>,
}

impl CohomologyGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    /// Normalize an arbitrary direct sum of cyclic groups `⊕ Z_{aᵢ}`.
    pub fn from_cyclic(orders: &[u64]) -> Self {
        // prime -> exponents of the primary parts
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &a in orders {
            let mut rest = a;
            let mut p = 2;
            while rest > 1 {
                if p * p > rest {
                    p = rest;
                }
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                if e > 0 {
                    primary.entry(p).or_default().push(e);
                }
                p += 1;
            }
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in primary {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (k, e) in exps.into_iter().enumerate() {
                factors[k] *= p.pow(e);
            }
        }
        factors.reverse();
        Self {
            invariant_factors: factors,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Number of normalized `n`-tuples.
fn normalized_count(order: usize, degree: usize) -> usize {
    (order - 1).pow(degree as u32)
}

/// Index among normalized tuples, or `None` if some argument is `ι`.
fn normalized_index(order: usize, args: &[usize]) -> Option<usize> {
    let mut idx = 0;
    for &a in args {
        if a == 0 {
            return None;
        }
        idx = idx * (order - 1) + (a - 1);
    }
    Some(idx)
}

fn normalized_tuple(order: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; degree];
    for slot in out.iter_mut().rev() {
        *slot = index % (order - 1) + 1;
        index /= order - 1;
    }
    out
}

/// Sparse rows of `δⁿ` on normalized coordinates: one row per normalized
/// `(n+1)`-tuple and coordinate, entries `(column, coefficient)`.
pub fn coboundary_matrix(action: &CenterAction, degree: usize) -> Vec<Vec<(usize, i64)>> {
    let g = action.group();
    let n = g.order();
    let m = action.m();
    let mut rows = Vec::with_capacity(normalized_count(n, degree + 1) * m);
    for t in 0..normalized_count(n, degree + 1) {
        let args = normalized_tuple(n, degree + 1, t);
        for i in 0..m {
            let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
            let mut add = |tuple: &[usize], coord: usize, coeff: i64| {
                if let Some(idx) = normalized_index(n, tuple) {
                    *terms.entry(idx * m + coord).or_default() += coeff;
                }
            };
            add(&args[1..], action.perm(args[0])[i], 1);
            for k in 0..degree {
                let mut merged = args[..k].to_vec();
                merged.push(g.mul_index(args[k], args[k + 1]));
                merged.extend_from_slice(&args[k + 2..]);
                add(&merged, i, if k % 2 == 0 { -1 } else { 1 });
            }
            add(&args[..degree], i, if degree.is_multiple_of(2) { -1 } else { 1 });
            rows.push(terms.into_iter().filter(|&(_, c)| c != 0).collect());
        }
    }
    rows
}

fn dense_row(sparse: &[(usize, i64)], width: usize) -> Vec<i64> {
    let mut v = vec![0; width];
    for &(j, c) in sparse {
        v[j] += c;
    }
    v
}

/// Torsion invariants of `coker δ²`, computed modulo `modulus`.
fn h3_integral_invariants(action: &CenterAction, modulus: i64) -> Vec<u64> {
    let n = action.group().order();
    let width = normalized_count(n, 2) * action.m();
    let mut echelon = ModularEchelon::new(modulus, width, 0);
    for row in coboundary_matrix(action, 2) {
        echelon.insert(dense_row(&row, width), None);
    }
    echelon.finalize();
    smith_invariants(&echelon.basis_matrix(), modulus)
        .into_iter()
        .filter(|&d| d > 1 && d < modulus)
        .map(|d| d as u64)
        .collect()
}

/// `H²(X, U(Z))` for the given permutation action on `m` center coordinates.
pub fn h2_compute(action: &CenterAction) -> Result<CohomologyGroup> {
    h2_compute_bounded(action, H2_DEFAULT_BOUND)
}

pub fn h2_compute_bounded(action: &CenterAction, bound: usize) -> Result<CohomologyGroup> {
    let n = action.group().order();
    if n > bound {
        return Err(Error::Capacity {
            what: "group order for H2",
            actual: n,
            bound,
        });
    }
    if n == 1 || action.m() == 0 {
        return Ok(CohomologyGroup::trivial());
    }
    let modulus = (n * n) as i64;
    let first = h3_integral_invariants(action, modulus);
    let second = h3_integral_invariants(action, 2 * modulus);
    if first != second {
        return Err(Error::Inconsistent(format!(
            "modular reduction unstable: {first:?} at modulus {modulus}, {second:?} at {}",
            2 * modulus
        )));
    }
    Ok(CohomologyGroup {
        invariant_factors: first,
    })
}

/// Closed form for trivial action on `T`: `⊕_{i<j} Z_{gcd(nᵢ, nⱼ)}`.
pub fn schur_multiplier(cyclic_orders: &[usize]) -> CohomologyGroup {
    let mut parts = Vec::new();
    for i in 0..cyclic_orders.len() {
        for j in i + 1..cyclic_orders.len() {
            parts.push(num_integer::gcd(cyclic_orders[i], cyclic_orders[j]) as u64);
        }
    }
    CohomologyGroup::from_cyclic(&parts)
}

/// Find `c` of degree `n` with `δc = target` (target of degree `n + 1`).
///
/// The witness is computed at modulus `L·|X|` where `L` is the target's
/// modulus; `Ok(None)` certifies that no witness exists at that modulus.
pub fn solve_coboundary(target: &CentralCochain) -> Result<Option<CentralCochain>> {
    let degree = target
        .degree()
        .checked_sub(1)
        .ok_or_else(|| Error::Precondition("a 0-cochain is never a coboundary".into()))?;
    if degree > 2 {
        return Err(Error::Precondition(format!(
            "coboundary solve for degree {} is not supported",
            target.degree()
        )));
    }
    if !target.is_normalized() {
        return Err(Error::Precondition("target cochain is not normalized".into()));
    }
    let action = target.action();
    let n = action.group().order();
    let m = action.m();
    let witness_modulus = target.modulus() * n as i64;
    if n == 1 {
        return Ok(Some(CentralCochain::zero(action, degree, witness_modulus)));
    }
    let rows = coboundary_matrix(action, degree);
    let height = rows.len();
    let width = normalized_count(n, degree) * m;
    if height + width > SOLVE_CAPACITY {
        return Err(Error::Capacity {
            what: "coboundary system size",
            actual: height + width,
            bound: SOLVE_CAPACITY,
        });
    }
    // Columns of δ as lattice generators, tracked for the solution.
    let mut columns = vec![vec![0i64; height]; width];
    for (r, row) in rows.iter().enumerate() {
        for &(j, c) in row {
            columns[j][r] += c;
        }
    }
    let mut echelon = ModularEchelon::new(witness_modulus, height, width);
    for (j, col) in columns.into_iter().enumerate() {
        echelon.insert(col, Some(j));
    }
    echelon.finalize();
    let scaled = target.with_modulus(witness_modulus)?;
    let rhs: Vec<i64> = (0..normalized_count(n, degree + 1))
        .flat_map(|t| scaled.get(&normalized_tuple(n, degree + 1, t)).to_vec())
        .collect();
    let Some(x) = echelon.solve(&rhs) else {
        return Ok(None);
    };
    let mut witness = CentralCochain::zero(action, degree, witness_modulus);
    for t in 0..normalized_count(n, degree) {
        let args = normalized_tuple(n, degree, t);
        witness.set(&args, &x[t * m..(t + 1) * m]);
    }
    let check = witness.coboundary_any();
    if check != scaled {
        return Err(Error::Inconsistent(
            "coboundary witness failed exact verification".into(),
        ));
    }
    Ok(Some(witness))
}

/// `Z` with `δ¹Z = λ` for a central 2-cocycle `λ`, or `None` when `λ`
/// represents a nontrivial class.
pub fn coboundary_solve(lambda: &CentralCochain) -> Result<Option<CentralCochain>> {
    if lambda.degree() != 2 {
        return Err(Error::Precondition(format!(
            "expected a 2-cochain, got degree {}",
            lambda.degree()
        )));
    }
    if !is_central_cocycle(lambda) {
        return Err(Error::Precondition("input is not a central 2-cocycle".into()));
    }
    solve_coboundary(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;

    fn trivial(orders: &[usize], m: usize) -> CenterAction {
        CenterAction::trivial(FiniteAbelianGroup::new(orders.to_vec()).unwrap(), m)
    }

    #[test]
    fn from_cyclic_normalizes() {
        assert_eq!(CohomologyGroup::from_cyclic(&[2, 3]).invariant_factors, vec![6]);
        assert_eq!(CohomologyGroup::from_cyclic(&[2, 2, 1]).invariant_factors, vec![2, 2]);
        assert_eq!(CohomologyGroup::from_cyclic(&[4, 6]).invariant_factors, vec![2, 12]);
        assert!(CohomologyGroup::from_cyclic(&[1]).is_trivial());
    }

    #[test]
    fn h2_examples() {
        for n in 2..=6 {
            assert!(h2_compute(&trivial(&[n], 1)).unwrap().is_trivial(), "Z{n}");
        }
        assert_eq!(h2_compute(&trivial(&[2, 2], 1)).unwrap().invariant_factors, vec![2]);
        let swap = CenterAction::from_generators(
            FiniteAbelianGroup::cyclic(2).unwrap(),
            2,
            &[vec![1, 0]],
        )
        .unwrap();
        assert!(h2_compute(&swap).unwrap().is_trivial());
    }

    #[test]
    fn h2_capacity() {
        assert!(matches!(
            h2_compute(&trivial(&[17], 1)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn matrix_agrees_with_formula() {
        let x = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let swap = CenterAction::from_generators(x, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let n = 4;
        for degree in 0..=2 {
            let rows = coboundary_matrix(&swap, degree);
            let width = normalized_count(n, degree) * 2;
            for col in 0..width {
                let mut c = CentralCochain::zero(&swap, degree, 1000);
                let tuple = normalized_tuple(n, degree, col / 2);
                let mut v = vec![0; 2];
                v[col % 2] = 1;
                c.set(&tuple, &v);
                let d = c.coboundary_any();
                for (r, row) in rows.iter().enumerate() {
                    let expected: i64 = row.iter().filter(|e| e.0 == col).map(|e| e.1).sum();
                    let t = normalized_tuple(n, degree + 1, r / 2);
                    assert_eq!(d.get(&t)[r % 2], expected.rem_euclid(1000));
                }
            }
        }
    }

    #[test]
    fn solve_round_trip_and_pauli() {
        let x = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let act = CenterAction::trivial(x.clone(), 1);
        let z0 = CentralCochain::from_fn(&act, 1, 4, |a| vec![[0, 1, 3, 2][a[0]]]).unwrap();
        let lambda = z0.coboundary().unwrap();
        let z = coboundary_solve(&lambda).unwrap().unwrap();
        assert!(z.coboundary().unwrap().same_class_values(&lambda));

        let pauli = CentralCochain::from_fn(&act, 2, 2, |a| {
            let (p, q) = (x.element_at(a[0]), x.element_at(a[1]));
            vec![(p[1] * q[0]) as i64]
        })
        .unwrap();
        assert!(coboundary_solve(&pauli).unwrap().is_none());

        let zero = CentralCochain::zero(&act, 2, 4);
        assert!(coboundary_solve(&zero).unwrap().unwrap().is_zero());
    }
}
