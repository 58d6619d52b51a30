//! `U(Z)`-valued cochains stored as exact phases.
//!
//! `U(Z) ≅ Tᵐ` for a center with `m` blocks. A cochain of modulus `L` stores
//! integer vectors `v ∈ (Z/L)ᵐ` standing for the central unitary with phases
//! `exp(2πi vᵢ/L)`, and everything is written additively.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{compose_outer, CentralUnitary};
use crate::error::{Error, Result};
use crate::group::{root_of_unity, FiniteAbelianGroup};

/// Phases within this distance of the grid are snapped onto it.
pub const SNAP_TOL: f64 = 1e-8;

/// How `X` permutes the coordinates of `U(Z)`: `(χ·z)ᵢ = z_{σ_χ(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterAction {
    group: FiniteAbelianGroup,
    m: usize,
    /// One permutation per group element, in enumeration order.
    perms: Vec<Vec<usize>>,
}

impl CenterAction {
    /// Validates that `χ ↦ σ_χ` is a homomorphism into permutations of `m`
    /// points, composed as automorphism outer classes are.
    pub fn new(group: FiniteAbelianGroup, m: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        if perms.len() != n {
            return Err(Error::Structural(format!(
                "action needs {n} permutations, got {}",
                perms.len()
            )));
        }
        for (chi, p) in perms.iter().enumerate() {
            let mut seen = vec![false; m];
            if p.len() != m || p.iter().any(|&j| j >= m || std::mem::replace(&mut seen[j], true)) {
                return Err(Error::Structural(format!(
                    "entry {chi} ({p:?}) is not a permutation of {m} points"
                )));
            }
        }
        let identity: Vec<usize> = (0..m).collect();
        if perms.first() != Some(&identity) {
            return Err(Error::Validation("the identity must act trivially".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if compose_outer(&perms[a], &perms[b]) != perms[group.mul_index(a, b)] {
                    return Err(Error::Validation(format!(
                        "action is not a homomorphism at ({:?}, {:?})",
                        group.element_at(a),
                        group.element_at(b)
                    )));
                }
            }
        }
        Ok(Self { group, m, perms })
    }

    pub fn trivial(group: FiniteAbelianGroup, m: usize) -> Self {
        let perms = vec![(0..m).collect(); group.order()];
        Self { group, m, perms }
    }

    /// Extend generator permutations along `χ = e₁^{x₁}⋯e_k^{x_k}`.
    pub fn from_generators(
        group: FiniteAbelianGroup,
        m: usize,
        generators: &[Vec<usize>],
    ) -> Result<Self> {
        if generators.len() != group.rank() {
            return Err(Error::Structural(format!(
                "need one permutation per cyclic factor ({}), got {}",
                group.rank(),
                generators.len()
            )));
        }
        let identity: Vec<usize> = (0..m).collect();
        let perms = (0..group.order())
            .map(|idx| {
                let x = group.element_at(idx);
                let mut p = identity.clone();
                for (g, &power) in generators.iter().zip(&x) {
                    for _ in 0..power {
                        p = compose_outer(&p, g);
                    }
                }
                p
            })
            .collect();
        Self::new(group, m, perms)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn perm(&self, chi: usize) -> &[usize] {
        &self.perms[chi]
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// `χ·v` on coordinates.
    pub fn act(&self, chi: usize, v: &[i64]) -> Vec<i64> {
        self.perms[chi].iter().map(|&j| v[j]).collect()
    }
}

/// A normalized `n`-cochain `Xⁿ → (Z/L)ᵐ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralCochain {
    degree: usize,
    modulus: i64,
    action: CenterAction,
    /// Row-major over argument tuples (first argument most significant),
    /// `m` values per tuple.
    entries: Vec<i64>,
}

pub(crate) fn tuple_count(order: usize, degree: usize) -> usize {
    order.pow(degree as u32)
}

pub(crate) fn tuple_index(order: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * order + a)
}

pub(crate) fn tuple_at(order: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; degree];
    for slot in out.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    out
}

impl CentralCochain {
    pub fn zero(action: &CenterAction, degree: usize, modulus: i64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let n = action.group.order();
        Self {
            degree,
            modulus,
            action: action.clone(),
            entries: vec![0; tuple_count(n, degree) * action.m],
        }
    }

    /// Build from a function on argument tuples (group element indices).
    /// Fails if the result is not normalized.
    pub fn from_fn(
        action: &CenterAction,
        degree: usize,
        modulus: i64,
        mut f: impl FnMut(&[usize]) -> Vec<i64>,
    ) -> Result<Self> {
        let mut c = Self::zero(action, degree, modulus);
        let n = action.group.order();
        for t in 0..tuple_count(n, degree) {
            let args = tuple_at(n, degree, t);
            let v = f(&args);
            if v.len() != action.m {
                return Err(Error::Structural(format!(
                    "cochain value at {args:?} has {} coordinates, expected {}",
                    v.len(),
                    action.m
                )));
            }
            c.set(&args, &v);
        }
        if !c.is_normalized() {
            return Err(Error::Validation("cochain is not normalized".into()));
        }
        Ok(c)
    }

    /// Snap central unitaries onto the grid of `modulus`-th roots of unity.
    pub fn from_unitaries(
        action: &CenterAction,
        degree: usize,
        modulus: i64,
        mut f: impl FnMut(&[usize]) -> CentralUnitary,
    ) -> Result<Self> {
        let mut worst = 0.0f64;
        let mut failure = None;
        let c = Self::from_fn(action, degree, modulus, |args| {
            f(args)
                .phases
                .iter()
                .map(|&z| {
                    let (v, dist) = snap_phase(z, modulus);
                    worst = worst.max(dist);
                    if dist > SNAP_TOL && failure.is_none() {
                        failure = Some(args.to_vec());
                    }
                    v
                })
                .collect()
        })?;
        match failure {
            Some(args) => Err(Error::Undecidable(format!(
                "phase at {args:?} is not a {modulus}-th root of unity (snap distance {worst:.3e})"
            ))),
            None => Ok(c),
        }
    }

    /// Like [`Self::from_unitaries`], choosing the smallest modulus (up to
    /// `max_modulus`) whose grid carries every phase.
    pub fn from_unitaries_auto(
        action: &CenterAction,
        degree: usize,
        max_modulus: i64,
        mut f: impl FnMut(&[usize]) -> CentralUnitary,
    ) -> Result<Self> {
        let n = action.group.order();
        let values: Vec<(Vec<usize>, CentralUnitary)> = (0..tuple_count(n, degree))
            .map(|t| {
                let args = tuple_at(n, degree, t);
                let z = f(&args);
                (args, z)
            })
            .collect();
        let mut modulus = 1i64;
        for (args, z) in &values {
            for &p in &z.phases {
                let den = (1..=max_modulus).find(|&q| snap_phase(p, q).1 <= SNAP_TOL);
                match den {
                    Some(q) => modulus = num_integer::lcm(modulus, q),
                    None => {
                        let dist = snap_phase(p, max_modulus).1;
                        return Err(Error::Undecidable(format!(
                            "phase {p} at {args:?} is not a root of unity of order <= {max_modulus} \
                             (snap distance {dist:.3e})"
                        )));
                    }
                }
            }
        }
        if modulus > max_modulus {
            return Err(Error::Undecidable(format!(
                "common phase grid {modulus} exceeds {max_modulus}"
            )));
        }
        let mut it = values.into_iter();
        Self::from_unitaries(action, degree, modulus, |_| it.next().expect("same order").1)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn action(&self) -> &CenterAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.action.group
    }

    pub fn m(&self) -> usize {
        self.action.m
    }

    pub fn get(&self, args: &[usize]) -> &[i64] {
        assert_eq!(args.len(), self.degree);
        let t = tuple_index(self.action.group.order(), args);
        &self.entries[t * self.action.m..(t + 1) * self.action.m]
    }

    pub fn set(&mut self, args: &[usize], value: &[i64]) {
        assert_eq!(args.len(), self.degree);
        let m = self.action.m;
        let t = tuple_index(self.action.group.order(), args);
        for (slot, &v) in self.entries[t * m..(t + 1) * m].iter_mut().zip(value) {
            *slot = v.rem_euclid(self.modulus);
        }
    }

    /// Raw values, tuple-major.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.action.group.order();
        let m = self.action.m;
        (0..tuple_count(n, self.degree)).all(|t| {
            !tuple_at(n, self.degree, t).contains(&0)
                || self.entries[t * m..(t + 1) * m].iter().all(|&v| v == 0)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// The same phases on a finer grid; `modulus` must be a multiple.
    pub fn with_modulus(&self, modulus: i64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::Precondition(format!(
                "cannot move phases from modulus {} to {modulus}",
                self.modulus
            )));
        }
        let k = modulus / self.modulus;
        Ok(Self {
            modulus,
            entries: self.entries.iter().map(|&v| v * k).collect(),
            ..self.clone()
        })
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.degree != other.degree || self.action != other.action {
            return Err(Error::Structural("cochains of different shape".into()));
        }
        let l = num_integer::lcm(self.modulus, other.modulus);
        Ok((self.with_modulus(l)?, other.with_modulus(l)?))
    }

    /// Pointwise product of the unitaries (sum of phases).
    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.common(other)?;
        for (x, y) in a.entries.iter_mut().zip(&b.entries) {
            *x = (*x + y).rem_euclid(a.modulus);
        }
        Ok(a)
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for x in a.entries.iter_mut() {
            *x = (-*x).rem_euclid(a.modulus);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Same phases, regardless of grid.
    pub fn same_class_values(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((a, b)) => a.entries == b.entries,
            Err(_) => false,
        }
    }

    /// The central unitary at `args`.
    pub fn unitary(&self, args: &[usize]) -> CentralUnitary {
        CentralUnitary {
            phases: self.get(args).iter().map(|&v| root_of_unity(v, self.modulus)).collect(),
        }
    }

    /// Bar-complex coboundary with the permutation action:
    /// `(δc)(χ₁…χₙ₊₁) = χ₁·c(χ₂…) + Σᵢ (−1)ⁱ c(…χᵢχᵢ₊₁…) + (−1)ⁿ⁺¹ c(χ₁…χₙ)`.
    pub fn coboundary(&self) -> Result<Self> {
        if self.degree > 2 {
            return Err(Error::Precondition(format!(
                "coboundary of a degree-{} cochain is not supported",
                self.degree
            )));
        }
        Ok(self.coboundary_any())
    }

    pub(crate) fn coboundary_any(&self) -> Self {
        let g = &self.action.group;
        let n = g.order();
        let deg = self.degree;
        let m = self.action.m;
        let mut out = Self::zero(&self.action, deg + 1, self.modulus);
        for t in 0..tuple_count(n, deg + 1) {
            let args = tuple_at(n, deg + 1, t);
            let mut acc = self.action.act(args[0], self.get(&args[1..]));
            for i in 0..deg {
                let mut merged = Vec::with_capacity(deg);
                merged.extend_from_slice(&args[..i]);
                merged.push(g.mul_index(args[i], args[i + 1]));
                merged.extend_from_slice(&args[i + 2..]);
                let sign = if i % 2 == 0 { -1 } else { 1 };
                for (a, &v) in acc.iter_mut().zip(self.get(&merged)) {
                    *a += sign * v;
                }
            }
            let sign = if deg.is_multiple_of(2) { -1 } else { 1 };
            for (a, &v) in acc.iter_mut().zip(self.get(&args[..deg])) {
                *a += sign * v;
            }
            let slot = &mut out.entries[t * m..(t + 1) * m];
            for (s, a) in slot.iter_mut().zip(acc) {
                *s = a.rem_euclid(self.modulus);
            }
        }
        out
    }
}

/// `(v, distance)` with `exp(2πi v/L)` the closest `L`-th root of unity to
/// the phase of `z`, and the angular distance in units of a full turn.
pub fn snap_phase(z: Complex64, modulus: i64) -> (i64, f64) {
    let turns = z.arg() / std::f64::consts::TAU;
    let scaled = turns * modulus as f64;
    let v = scaled.round();
    let dist = (scaled - v).abs() / modulus as f64;
    ((v as i64).rem_euclid(modulus), dist)
}

/// `δ²λ = 0` exactly and `λ` normalized.
pub fn is_central_cocycle(lambda: &CentralCochain) -> bool {
    lambda.degree == 2 && lambda.is_normalized() && lambda.coboundary_any().is_zero()
}
