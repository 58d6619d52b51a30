//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Frobenius norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Orthonormal basis of `{x : m x = 0}`, computed from the right singular
/// vectors whose singular value is at most `tol · max(1, σ_max)`.
pub fn nullspace(m: &CMatrix, tol: f64) -> Vec<CVector> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols)
            .map(|i| {
                let mut v = CVector::zeros(cols);
                v[i] = ONE;
                v
            })
            .collect();
    }
    // SVD of a wide matrix only yields min(r, c) right vectors; pad to square.
    let padded = if m.nrows() < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol * sigma_max.max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

/// Numerical rank with the same cutoff rule as [`nullspace`].
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    m.ncols() - nullspace(m, tol).len()
}

/// Rescale by a unit phase so that the first entry (row-major) of maximal
/// modulus is positive real. Returns the phase that was divided out.
pub fn gauge_normalize(m: &mut CMatrix) -> Complex64 {
    let max = max_abs(m);
    if max == 0.0 {
        return ONE;
    }
    let threshold = max * (1.0 - 1e-9);
    let mut lead = ONE;
    'rows: for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if m[(r, c)].norm() >= threshold {
                lead = m[(r, c)];
                break 'rows;
            }
        }
    }
    let phase = lead / lead.norm();
    let inv = phase.conj();
    m.iter_mut().for_each(|z| *z *= inv);
    phase
}

/// `‖m*m − 𝟙‖` and `‖mm* − 𝟙‖`, maximum entry modulus.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let id = CMatrix::identity(m.nrows(), m.ncols());
    let a = max_abs(&(m.adjoint() * m - &id));
    let b = max_abs(&(m * m.adjoint() - &id));
    a.max(b)
}

/// Phase of `m` if it is (within `tol`) a unit-modulus multiple of the
/// identity.
pub fn scalar_phase(m: &CMatrix, tol: f64) -> Option<Complex64> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return None;
    }
    let c = m[(0, 0)];
    let off = max_abs(&(m - CMatrix::identity(m.nrows(), m.ncols()) * c));
    if off <= tol && (c.norm() - 1.0).abs() <= tol {
        Some(c)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_of_nilpotent() {
        let m = CMatrix::from_row_slice(2, 2, &[ZERO, c(2.0, 0.0), ZERO, ZERO]);
        assert!((operator_norm(&m) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = CMatrix::from_row_slice(1, 3, &[ONE, ONE, ZERO]);
        let ns = nullspace(&m, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&m * v).norm() < 1e-12);
        }
    }

    #[test]
    fn gauge_picks_first_maximal_entry() {
        let mut m = CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, 1.0), c(0.0, -1.0), ZERO]);
        gauge_normalize(&mut m);
        assert_eq!(m[(0, 1)], ONE);
        assert_eq!(m[(1, 0)], c(-1.0, 0.0));
    }
}
