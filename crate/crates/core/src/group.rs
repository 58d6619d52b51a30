//! Finite abelian groups presented as products of cyclic groups, their
//! characters, and the pairing between the two.
//!
//! Elements are coordinate vectors `(x₁, …, x_k)` with `0 ≤ xⱼ < nⱼ`. The
//! dual group of `Z_{n₁} × … × Z_{n_k}` is presented with the same shape, so a
//! [`Character`] is again a coordinate vector and the pairing is
//! `exp(2πi Σⱼ χⱼ gⱼ / nⱼ)`.
//!
//! Elements are also addressed by their position in the lexicographic
//! enumeration (last coordinate varies fastest, identity first). Every table
//! in the crate that is indexed by group elements uses this order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the order of groups that may be enumerated.
pub const DEFAULT_ENUMERATION_BOUND: usize = 64;

/// A group element as a coordinate vector.
pub type Element = Vec<usize>;

/// `Z_{n₁} × … × Z_{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<usize>,
}

/// A character of a [`FiniteAbelianGroup`], written in dual coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub coordinates: Element,
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<usize>) -> Result<Self> {
        if let Some(bad) = cyclic_orders.iter().find(|&&n| n == 0) {
            return Err(Error::Structural(format!(
                "cyclic orders must be >= 1, got {bad}"
            )));
        }
        Ok(Self { cyclic_orders })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn cyclic_orders(&self) -> &[usize] {
        &self.cyclic_orders
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().product()
    }

    pub fn identity(&self) -> Element {
        vec![0; self.rank()]
    }

    /// The group of characters; same cyclic shape.
    pub fn dual(&self) -> FiniteAbelianGroup {
        self.clone()
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.cyclic_orders).all(|(&v, &n)| v < n)
    }

    fn check(&self, x: &[usize]) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "{x:?} is not an element of Z{:?}",
                self.cyclic_orders
            )))
        }
    }

    pub fn compose(&self, x: &[usize], y: &[usize]) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.iter()
            .zip(y)
            .zip(&self.cyclic_orders)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect())
    }

    pub fn inverse(&self, x: &[usize]) -> Result<Element> {
        self.check(x)?;
        Ok(x.iter()
            .zip(&self.cyclic_orders)
            .map(|(&a, &n)| (n - a) % n)
            .collect())
    }

    /// Position of `x` in the lexicographic enumeration.
    pub fn index_of(&self, x: &[usize]) -> Result<usize> {
        self.check(x)?;
        Ok(x.iter()
            .zip(&self.cyclic_orders)
            .fold(0, |acc, (&v, &n)| acc * n + v))
    }

    /// Inverse of [`Self::index_of`].
    pub fn element_at(&self, mut index: usize) -> Element {
        let mut out = vec![0; self.rank()];
        for (slot, &n) in out.iter_mut().zip(&self.cyclic_orders).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }

    /// Product of the elements with indices `a` and `b`, as an index.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let mut ra = a;
        let mut rb = b;
        let mut out = 0;
        let mut place = 1;
        for &n in self.cyclic_orders.iter().rev() {
            out += ((ra % n + rb % n) % n) * place;
            ra /= n;
            rb /= n;
            place *= n;
        }
        out
    }

    /// Index of the inverse of the element with index `a`.
    pub fn inv_index(&self, a: usize) -> usize {
        let mut ra = a;
        let mut out = 0;
        let mut place = 1;
        for &n in self.cyclic_orders.iter().rev() {
            out += ((n - ra % n) % n) * place;
            ra /= n;
            place *= n;
        }
        out
    }

    /// All elements in lexicographic order, identity first.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        self.enumerate_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn enumerate_bounded(&self, bound: usize) -> Result<Vec<Element>> {
        let order = self.order();
        if order > bound {
            return Err(Error::Capacity {
                what: "group order",
                actual: order,
                bound,
            });
        }
        Ok((0..order).map(|i| self.element_at(i)).collect())
    }

    /// The exact phase of `pairing(chi, g)` as a reduced fraction `num/den`
    /// of a full turn, with `0 ≤ num < den`.
    pub fn pairing_phase(&self, chi: &[usize], g: &[usize]) -> Result<(usize, usize)> {
        self.check(chi)?;
        self.check(g)?;
        let den = self
            .cyclic_orders
            .iter()
            .fold(1usize, |acc, &n| num_integer::lcm(acc, n));
        let num = chi
            .iter()
            .zip(g)
            .zip(&self.cyclic_orders)
            .map(|((&c, &x), &n)| (c * x % n) * (den / n))
            .sum::<usize>()
            % den;
        let d = num_integer::gcd(num, den);
        Ok((num / d, den / d))
    }

    /// `χ(g) = exp(2πi Σⱼ χⱼ gⱼ / nⱼ)`.
    pub fn pairing(&self, chi: &Character, g: &[usize]) -> Result<Complex64> {
        let (num, den) = self.pairing_phase(&chi.coordinates, g)?;
        Ok(root_of_unity(num as i64, den as i64))
    }

    /// Pairing by element indices; used in hot loops.
    pub fn pairing_index(&self, chi: usize, g: usize) -> Complex64 {
        let (num, den) = self
            .pairing_phase(&self.element_at(chi), &self.element_at(g))
            .expect("indices come from this group");
        root_of_unity(num as i64, den as i64)
    }
}

impl Character {
    pub fn new(coordinates: Element) -> Self {
        Self { coordinates }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self::new(group.identity())
    }
}

/// `exp(2πi num/den)`, exact on the quarter turns.
pub fn root_of_unity(num: i64, den: i64) -> Complex64 {
    assert!(den > 0, "root of unity with non-positive denominator");
    let num = num.rem_euclid(den);
    if (4 * num) % den == 0 {
        return match 4 * num / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = std::f64::consts::TAU * num as f64 / den as f64;
    Complex64::new(theta.cos(), theta.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[usize]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(g(&[4]).compose(&[1], &[3]).unwrap(), vec![0]);
        assert_eq!(g(&[2, 2]).compose(&[1, 0], &[0, 1]).unwrap(), vec![1, 1]);
        let z6 = g(&[6]);
        for x in z6.enumerate().unwrap() {
            assert_eq!(z6.compose(&x, &z6.identity()).unwrap(), x);
        }
    }

    #[test]
    fn compose_rejects_shape_mismatch() {
        let z2 = g(&[2, 2]);
        assert!(matches!(z2.compose(&[1], &[0, 1]), Err(Error::Structural(_))));
        assert!(matches!(z2.compose(&[2, 0], &[0, 1]), Err(Error::Structural(_))));
    }

    #[test]
    fn pairing_examples() {
        let z2 = g(&[2]);
        assert_eq!(z2.pairing(&Character::new(vec![1]), &[1]).unwrap(), Complex64::new(-1.0, 0.0));
        let z4 = g(&[4]);
        assert_eq!(z4.pairing(&Character::new(vec![1]), &[1]).unwrap(), Complex64::new(0.0, 1.0));
        for chi in z4.enumerate().unwrap() {
            assert_eq!(z4.pairing(&Character::new(chi), &[0]).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(g(&[2]).enumerate().unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(
            g(&[2, 2]).enumerate().unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(g(&[3]).enumerate().unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert!(matches!(g(&[5, 13]).enumerate(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn index_arithmetic_matches_coordinates() {
        let x = g(&[2, 3, 4]);
        for a in 0..x.order() {
            assert_eq!(x.index_of(&x.element_at(a)).unwrap(), a);
            for b in 0..x.order() {
                let c = x.compose(&x.element_at(a), &x.element_at(b)).unwrap();
                assert_eq!(x.mul_index(a, b), x.index_of(&c).unwrap());
            }
            assert_eq!(x.mul_index(a, x.inv_index(a)), 0);
        }
    }

    #[test]
    fn character_orthogonality_and_nondegeneracy() {
        for orders in [vec![2], vec![4], vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 4]] {
            let x = g(&orders);
            let n = x.order();
            let mut rows = Vec::new();
            for chi in 0..n {
                let row: Vec<Complex64> = (0..n).map(|h| x.pairing_index(chi, h)).collect();
                let sum: Complex64 = row.iter().sum();
                let expected = if chi == 0 { n as f64 } else { 0.0 };
                assert!((sum - Complex64::new(expected, 0.0)).norm() < 1e-12);
                rows.push(row);
            }
            for a in 0..n {
                for b in 0..a {
                    assert!(rows[a]
                        .iter()
                        .zip(&rows[b])
                        .any(|(p, q)| (p - q).norm() > 1e-6));
                }
            }
        }
    }
}
