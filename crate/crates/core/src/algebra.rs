//! Finite-dimensional C*-algebras `⊕ᵢ M_{dᵢ}(ℂ)`, their elements and
//! *-automorphisms.
//!
//! Every *-automorphism of a block algebra permutes blocks of equal size and
//! conjugates each block by a unitary, so [`Automorphism`] is stored in that
//! normal form. The block permutation is the outer class: an automorphism is
//! inner exactly when the permutation is the identity.
//!
//! Permutation convention: block `i` of `α(A)` is `Wᵢ · A_{σ(i)} · Wᵢ*`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, ONE, ZERO};

/// Default tolerance for "is unitary" / "is an automorphism" validation.
pub const VALIDATION_TOL: f64 = 1e-10;
/// Default tolerance for element equality.
pub const EQ_TOL: f64 = 1e-12;

/// `⊕ᵢ M_{dᵢ}(ℂ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockAlgebra {
    block_dims: Vec<usize>,
}

/// One complex `dᵢ × dᵢ` matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    blocks: Vec<CMatrix>,
}

/// A unitary of the center: phase `i` multiplies the identity of block `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralUnitary {
    pub phases: Vec<Complex64>,
}

/// `A ↦ (Wᵢ A_{σ(i)} Wᵢ*)ᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    block_perm: Vec<usize>,
    block_unitaries: Vec<CMatrix>,
}

impl BlockAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::Structural("algebra needs at least one block".into()));
        }
        if block_dims.contains(&0) {
            return Err(Error::Structural("block dimensions must be >= 1".into()));
        }
        Ok(Self { block_dims })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    /// Number of blocks, which is also the dimension of the center.
    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// `D = Σ dᵢ`, the dimension of the defining representation.
    pub fn total_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }

    /// Vector-space dimension `Σ dᵢ²`.
    pub fn dimension(&self) -> usize {
        self.block_dims.iter().map(|d| d * d).sum()
    }

    pub fn is_factor(&self) -> bool {
        self.num_blocks() == 1
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.block_dims.iter().map(|&d| CMatrix::zeros(d, d)).collect(),
        }
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.block_dims.iter().map(|&d| CMatrix::identity(d, d)).collect(),
        }
    }

    pub fn scalar(&self, c: Complex64) -> AlgebraElement {
        self.identity().scale(c)
    }

    pub fn element(&self, blocks: Vec<CMatrix>) -> Result<AlgebraElement> {
        let e = AlgebraElement { blocks };
        self.check(&e)?;
        Ok(e)
    }

    /// Element with entries given per block in row-major order.
    pub fn from_rows(&self, blocks: &[Vec<Complex64>]) -> Result<AlgebraElement> {
        if blocks.len() != self.num_blocks() {
            return Err(Error::Structural(format!(
                "expected {} blocks, got {}",
                self.num_blocks(),
                blocks.len()
            )));
        }
        let mut out = Vec::with_capacity(blocks.len());
        for (entries, &d) in blocks.iter().zip(&self.block_dims) {
            if entries.len() != d * d {
                return Err(Error::Structural(format!(
                    "block of size {d} needs {} entries, got {}",
                    d * d,
                    entries.len()
                )));
            }
            out.push(CMatrix::from_row_slice(d, d, entries));
        }
        Ok(AlgebraElement { blocks: out })
    }

    pub fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.blocks.len() != self.num_blocks()
            || a
                .blocks
                .iter()
                .zip(&self.block_dims)
                .any(|(b, &d)| b.nrows() != d || b.ncols() != d)
        {
            return Err(Error::Structural(format!(
                "element with block shapes {:?} does not belong to algebra {:?}",
                a.block_shapes(),
                self.block_dims
            )));
        }
        Ok(())
    }

    /// Matrix units `E^{(k)}_{ij}`, ordered by block, then row-major.
    pub fn matrix_units(&self) -> Vec<AlgebraElement> {
        let mut out = Vec::with_capacity(self.dimension());
        for (k, &d) in self.block_dims.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    let mut e = self.zero();
                    e.blocks[k][(i, j)] = ONE;
                    out.push(e);
                }
            }
        }
        out
    }

    /// Coordinates of `a` in the matrix-unit basis.
    pub fn coordinates(&self, a: &AlgebraElement) -> Vec<Complex64> {
        a.blocks
            .iter()
            .flat_map(|b| (0..b.nrows()).flat_map(move |i| (0..b.ncols()).map(move |j| b[(i, j)])))
            .collect()
    }

    /// Inverse of [`Self::coordinates`].
    pub fn from_coordinates(&self, coords: &[Complex64]) -> AlgebraElement {
        let mut at = 0;
        let blocks = self
            .block_dims
            .iter()
            .map(|&d| {
                let m = CMatrix::from_row_slice(d, d, &coords[at..at + d * d]);
                at += d * d;
                m
            })
            .collect();
        AlgebraElement { blocks }
    }

    pub fn central(&self, z: &CentralUnitary) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .block_dims
                .iter()
                .zip(&z.phases)
                .map(|(&d, &p)| CMatrix::identity(d, d) * p)
                .collect(),
        }
    }

    /// Entries uniform in the unit square of ℂ.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .block_dims
                .iter()
                .map(|&d| random_matrix(d, rng))
                .collect(),
        }
    }

    /// A unitary from the QR factor of a random matrix, per block.
    pub fn random_unitary<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .block_dims
                .iter()
                .map(|&d| random_unitary_matrix(d, rng))
                .collect(),
        }
    }

    /// A random central unitary.
    pub fn random_central_unitary<R: Rng + ?Sized>(&self, rng: &mut R) -> CentralUnitary {
        CentralUnitary {
            phases: (0..self.num_blocks())
                .map(|_| Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU))
                .collect(),
        }
    }

    /// A random automorphism whose block permutation is uniformly chosen
    /// among those that preserve block sizes.
    pub fn random_automorphism<R: Rng + ?Sized>(&self, rng: &mut R) -> Automorphism {
        let m = self.num_blocks();
        let mut perm: Vec<usize> = (0..m).collect();
        // Fisher-Yates restricted to blocks of equal size.
        for i in (1..m).rev() {
            let same: Vec<usize> = (0..=i)
                .filter(|&j| self.block_dims[perm[j]] == self.block_dims[perm[i]])
                .collect();
            let j = same[rng.gen_range(0..same.len())];
            perm.swap(i, j);
        }
        let u = self.random_unitary(rng);
        Automorphism {
            block_perm: perm,
            block_unitaries: u.blocks,
        }
    }
}

pub(crate) fn random_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
    })
}

pub(crate) fn random_unitary_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    random_matrix(d, rng).qr().q()
}

impl AlgebraElement {
    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub fn block_shapes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.block_shapes() != other.block_shapes() {
            return Err(Error::Structural(format!(
                "block shapes {:?} and {:?} differ",
                self.block_shapes(),
                other.block_shapes()
            )));
        }
        Ok(())
    }

    /// Blockwise product; errors on mismatched shapes.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self * rhs)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self + rhs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b * c).collect(),
        }
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// The C*-norm: largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::operator_norm).fold(0.0, f64::max)
    }

    /// Largest entry modulus; a cheap residual measure.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.same_shape(other).is_err() {
            return f64::INFINITY;
        }
        (self - other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }

    /// Bitwise entry equality, meaningful when entries are exactly
    /// representable (Gaussian rationals with dyadic denominators).
    pub fn eq_exact(&self, other: &Self) -> bool {
        self == other
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::unitarity_defect)
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Returns the phases if the element is a central unitary.
    pub fn as_central_unitary(&self, tol: f64) -> Option<CentralUnitary> {
        self.blocks
            .iter()
            .map(|b| linalg::scalar_phase(b, tol))
            .collect::<Option<Vec<_>>>()
            .map(|phases| CentralUnitary { phases })
    }

    /// Blockwise scalar defect: how far each block is from a multiple of
    /// the identity (maximum entry modulus of `Bᵢ − (Bᵢ)₀₀·𝟙`).
    pub fn central_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let c = b[(0, 0)];
                linalg::max_abs(&(b - CMatrix::identity(b.nrows(), b.ncols()) * c))
            })
            .fold(0.0, f64::max)
    }

    /// Block-diagonal `D × D` matrix in the defining representation.
    pub fn to_dense(&self) -> CMatrix {
        let total: usize = self.blocks.iter().map(|b| b.nrows()).sum();
        let mut out = CMatrix::zeros(total, total);
        let mut at = 0;
        for b in &self.blocks {
            let d = b.nrows();
            out.view_mut((at, at), (d, d)).copy_from(b);
            at += d;
        }
        out
    }

    /// Gauge-normalize every block: the first maximal-modulus entry of each
    /// block becomes positive real.
    pub fn gauge_normalized(&self) -> Self {
        let mut out = self.clone();
        for b in &mut out.blocks {
            linalg::gauge_normalize(b);
        }
        out
    }

    pub fn multiply_central(&self, z: &CentralUnitary) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .zip(&z.phases)
                .map(|(b, &p)| b * p)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        assert_eq!(self.blocks.len(), rhs.blocks.len(), "block count mismatch");
        AlgebraElement {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a * b).collect(),
        }
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        assert_eq!(self.blocks.len(), rhs.blocks.len(), "block count mismatch");
        AlgebraElement {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        assert_eq!(self.blocks.len(), rhs.blocks.len(), "block count mismatch");
        AlgebraElement {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-ONE)
    }
}

impl CentralUnitary {
    pub fn new(phases: Vec<Complex64>) -> Result<Self> {
        if let Some(p) = phases.iter().find(|p| (p.norm() - 1.0).abs() > VALIDATION_TOL) {
            return Err(Error::Validation(format!("central phase {p} is not unit modulus")));
        }
        Ok(Self { phases })
    }

    pub fn one(m: usize) -> Self {
        Self {
            phases: vec![ONE; m],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            phases: self.phases.iter().zip(&other.phases).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            phases: self.phases.iter().map(|p| p.conj()).collect(),
        }
    }

    /// The action of an automorphism on the center: `(α·z)ᵢ = z_{σ(i)}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            phases: perm.iter().map(|&j| self.phases[j]).collect(),
        }
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.phases
            .iter()
            .zip(&other.phases)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Automorphism {
    /// Validates the permutation, block-size matching and unitarity.
    pub fn new(
        algebra: &BlockAlgebra,
        block_perm: Vec<usize>,
        block_unitaries: Vec<CMatrix>,
    ) -> Result<Self> {
        Self::with_tolerance(algebra, block_perm, block_unitaries, VALIDATION_TOL)
    }

    pub fn with_tolerance(
        algebra: &BlockAlgebra,
        block_perm: Vec<usize>,
        block_unitaries: Vec<CMatrix>,
        tol: f64,
    ) -> Result<Self> {
        let m = algebra.num_blocks();
        if block_perm.len() != m || block_unitaries.len() != m {
            return Err(Error::Structural(format!(
                "automorphism needs {m} permutation entries and {m} unitaries"
            )));
        }
        let mut seen = vec![false; m];
        for &p in &block_perm {
            if p >= m || seen[p] {
                return Err(Error::Structural(format!("{block_perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let dims = algebra.block_dims();
        for (i, &p) in block_perm.iter().enumerate() {
            if dims[i] != dims[p] {
                return Err(Error::Structural(format!(
                    "permutation maps block {p} (dim {}) onto block {i} (dim {})",
                    dims[p], dims[i]
                )));
            }
        }
        for (i, (w, &d)) in block_unitaries.iter().zip(dims).enumerate() {
            if w.nrows() != d || w.ncols() != d {
                return Err(Error::Structural(format!("unitary {i} has wrong shape")));
            }
            let defect = linalg::unitarity_defect(w);
            if defect > tol {
                return Err(Error::Validation(format!(
                    "block unitary {i} has unitarity defect {defect:.3e}"
                )));
            }
        }
        Ok(Self {
            block_perm,
            block_unitaries,
        })
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        Self {
            block_perm: (0..algebra.num_blocks()).collect(),
            block_unitaries: algebra.identity().blocks,
        }
    }

    /// `ad(U)` for a unitary `U`.
    pub fn inner(u: &AlgebraElement) -> Self {
        Self {
            block_perm: (0..u.blocks.len()).collect(),
            block_unitaries: u.blocks.clone(),
        }
    }

    /// Pure block permutation (identity unitaries).
    pub fn permutation(algebra: &BlockAlgebra, block_perm: Vec<usize>) -> Result<Self> {
        let units = algebra.identity().blocks;
        Self::new(algebra, block_perm, units)
    }

    pub fn block_perm(&self) -> &[usize] {
        &self.block_perm
    }

    pub fn block_unitaries(&self) -> &[CMatrix] {
        &self.block_unitaries
    }

    pub fn num_blocks(&self) -> usize {
        self.block_perm.len()
    }

    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        assert_eq!(a.blocks.len(), self.num_blocks(), "block count mismatch");
        AlgebraElement {
            blocks: self
                .block_perm
                .iter()
                .zip(&self.block_unitaries)
                .map(|(&src, w)| w * &a.blocks[src] * w.adjoint())
                .collect(),
        }
    }

    pub fn checked_apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let dims: Vec<usize> = self.block_unitaries.iter().map(|w| w.nrows()).collect();
        if a.block_shapes() != dims {
            return Err(Error::Structural(format!(
                "automorphism on blocks {dims:?} applied to element with blocks {:?}",
                a.block_shapes()
            )));
        }
        Ok(self.apply(a))
    }

    /// `α ∘ β`.
    pub fn compose(&self, beta: &Automorphism) -> Automorphism {
        assert_eq!(self.num_blocks(), beta.num_blocks(), "block count mismatch");
        let block_perm = self.block_perm.iter().map(|&s| beta.block_perm[s]).collect();
        let block_unitaries = self
            .block_perm
            .iter()
            .zip(&self.block_unitaries)
            .map(|(&s, w)| w * &beta.block_unitaries[s])
            .collect();
        Automorphism {
            block_perm,
            block_unitaries,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let m = self.num_blocks();
        let mut inv = vec![0; m];
        for (i, &s) in self.block_perm.iter().enumerate() {
            inv[s] = i;
        }
        let block_unitaries = inv
            .iter()
            .map(|&i| self.block_unitaries[i].adjoint())
            .collect();
        Automorphism {
            block_perm: inv,
            block_unitaries,
        }
    }

    /// The class in `Out A`, realized as the block permutation.
    pub fn outer_class(&self) -> &[usize] {
        &self.block_perm
    }

    pub fn is_inner(&self) -> bool {
        self.block_perm.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// The action on `U(Z)`.
    pub fn apply_central(&self, z: &CentralUnitary) -> CentralUnitary {
        z.permuted(&self.block_perm)
    }

    /// Largest deviation between `self` and `other` on the matrix units.
    pub fn extensional_diff(&self, other: &Automorphism, algebra: &BlockAlgebra) -> f64 {
        algebra
            .matrix_units()
            .iter()
            .map(|e| self.apply(e).max_diff(&other.apply(e)))
            .fold(0.0, f64::max)
    }
}

/// Composition of outer classes, matching [`Automorphism::compose`].
pub fn compose_outer(alpha: &[usize], beta: &[usize]) -> Vec<usize> {
    alpha.iter().map(|&s| beta[s]).collect()
}

/// A unitary `U` with `α = ad(U) ∘ β`, gauge-normalized per block.
///
/// Both automorphisms are in normal form with the same permutation, so
/// `Uᵢ = W^α_i (W^β_i)*` up to a central phase.
pub fn solve_inner_cocycle(alpha: &Automorphism, beta: &Automorphism) -> Result<AlgebraElement> {
    if alpha.num_blocks() != beta.num_blocks() {
        return Err(Error::Structural("automorphisms on different algebras".into()));
    }
    if alpha.outer_class() != beta.outer_class() {
        return Err(Error::NoSolution(format!(
            "outer classes {:?} and {:?} differ",
            alpha.outer_class(),
            beta.outer_class()
        )));
    }
    let u = AlgebraElement {
        blocks: alpha
            .block_unitaries
            .iter()
            .zip(&beta.block_unitaries)
            .map(|(wa, wb)| wa * wb.adjoint())
            .collect(),
    };
    Ok(u.gauge_normalized())
}

/// Basis of `(α, β) = {X : X α(A) = β(A) X ∀A}`, solved block by block from
/// the linear intertwiner equations on matrix units.
pub fn intertwiner_space(
    algebra: &BlockAlgebra,
    alpha: &Automorphism,
    beta: &Automorphism,
    tol: f64,
) -> Vec<AlgebraElement> {
    let units = algebra.matrix_units();
    let images: Vec<(AlgebraElement, AlgebraElement)> = units
        .iter()
        .map(|e| (alpha.apply(e), beta.apply(e)))
        .collect();
    let mut basis = Vec::new();
    for (k, &d) in algebra.block_dims().iter().enumerate() {
        // Unknown X_k as a d² vector (row-major); one equation block per unit.
        let n = d * d;
        let mut rows: Vec<Vec<Complex64>> = Vec::new();
        for (a_img, b_img) in &images {
            let a = &a_img.blocks[k];
            let b = &b_img.blocks[k];
            if linalg::max_abs(a) == 0.0 && linalg::max_abs(b) == 0.0 {
                continue;
            }
            // (X a − b X)_{rs} = Σ_t X_{rt} a_{ts} − Σ_t b_{rt} X_{ts}
            for r in 0..d {
                for s in 0..d {
                    let mut row = vec![ZERO; n];
                    for t in 0..d {
                        row[r * d + t] += a[(t, s)];
                        row[t * d + s] -= b[(r, t)];
                    }
                    rows.push(row);
                }
            }
        }
        let system = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
        for v in linalg::nullspace(&system, tol) {
            let mut x = algebra.zero();
            x.blocks[k] = CMatrix::from_row_slice(d, d, v.as_slice());
            basis.push(x.gauge_normalized());
        }
    }
    basis
}

/// Coefficient vectors `c` (w.r.t. `ambient`) of the elements
/// `F = Σ c_a ambient[a]` commuting with every matrix in `generators`.
pub fn relative_commutant(ambient: &[CMatrix], generators: &[CMatrix], tol: f64) -> Vec<CVector> {
    let n = ambient.len();
    if n == 0 {
        return Vec::new();
    }
    let dim = ambient[0].nrows();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for g in generators {
        let comms: Vec<CMatrix> = ambient.iter().map(|a| a * g - g * a).collect();
        for r in 0..dim {
            for s in 0..dim {
                let row: Vec<Complex64> = comms.iter().map(|c| c[(r, s)]).collect();
                if row.iter().any(|z| z.norm() > 0.0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
    // The ambient basis need not be orthonormal; nullspace of the coefficient
    // system is still the commutant once the basis is linearly independent.
    linalg::nullspace(&system, tol)
}

/// Combine coefficient vectors back into matrices.
pub fn combine(ambient: &[CMatrix], coeffs: &CVector) -> CMatrix {
    let mut out = CMatrix::zeros(ambient[0].nrows(), ambient[0].ncols());
    for (a, &c) in ambient.iter().zip(coeffs.iter()) {
        out += a * c;
    }
    out
}
