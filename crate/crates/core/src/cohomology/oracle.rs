//! Brute-force `H²(X, Tᵐ)` for tiny groups.
//!
//! Cocycles are enumerated directly with values in `Z/|X|`; coboundaries are
//! the images `δZ/|X|` of 1-cochains `Z` with values in `Z/|X|²` whose
//! coboundary is divisible by `|X|`. The quotient's structure is read off
//! from the sizes of its `pᵏ`-torsion subgroups. Nothing here shares code
//! with the Smith-form route.

use std::collections::HashSet;

use super::cochain::CenterAction;
use super::CohomologyGroup;
use crate::error::{Error, Result};

pub const ORACLE_MAX_ORDER: usize = 4;
pub const ORACLE_MAX_M: usize = 2;

/// One linear congruence `Σ coeff·x[pos] ≡ 0`.
type Constraint = Vec<(usize, i64)>;

/// All assignments `x ∈ (Z/modulus)^len` satisfying every constraint mod
/// `check_mod`, constraints being tested as soon as their last variable is set.
fn enumerate_solutions(
    len: usize,
    modulus: i64,
    check_mod: i64,
    constraints: Vec<Constraint>,
    mut visit: impl FnMut(&[i64]),
) {
    let mut by_last: Vec<Vec<Constraint>> = vec![Vec::new(); len];
    for c in constraints {
        let c: Constraint = c.into_iter().filter(|&(_, k)| k != 0).collect();
        if let Some(last) = c.iter().map(|&(p, _)| p).max() {
            by_last[last].push(c);
        }
    }
    let mut x = vec![0i64; len];
    fn rec(
        pos: usize,
        x: &mut Vec<i64>,
        modulus: i64,
        check_mod: i64,
        by_last: &[Vec<Constraint>],
        visit: &mut dyn FnMut(&[i64]),
    ) {
        if pos == x.len() {
            visit(x);
            return;
        }
        for v in 0..modulus {
            x[pos] = v;
            let ok = by_last[pos].iter().all(|c| {
                c.iter().map(|&(p, k)| k * x[p]).sum::<i64>().rem_euclid(check_mod) == 0
            });
            if ok {
                rec(pos + 1, x, modulus, check_mod, by_last, visit);
            }
        }
        x[pos] = 0;
    }
    rec(0, &mut x, modulus, check_mod, &by_last, &mut visit);
}

pub fn h2_oracle(action: &CenterAction) -> Result<CohomologyGroup> {
    let g = action.group();
    let n = g.order();
    let m = action.m();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::Capacity {
            what: "oracle group order",
            actual: n,
            bound: ORACLE_MAX_ORDER,
        });
    }
    if m > ORACLE_MAX_M {
        return Err(Error::Capacity {
            what: "oracle center dimension",
            actual: m,
            bound: ORACLE_MAX_M,
        });
    }
    if n == 1 || m == 0 {
        return Ok(CohomologyGroup::trivial());
    }
    let l = n as i64;
    let k = n - 1;
    // Positions of normalized cochain coordinates; None for arguments ι.
    let pos1 = |a: usize, i: usize| (a != 0).then(|| (a - 1) * m + i);
    let pos2 = |a: usize, b: usize, i: usize| {
        (a != 0 && b != 0).then(|| ((a - 1) * k + (b - 1)) * m + i)
    };

    // 2-cocycle conditions mod L.
    let mut cocycle_constraints = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                for i in 0..m {
                    let ab = g.mul_index(a, b);
                    let bc = g.mul_index(b, c);
                    let terms = [
                        (pos2(b, c, action.perm(a)[i]), 1),
                        (pos2(ab, c, i), -1),
                        (pos2(a, bc, i), 1),
                        (pos2(a, b, i), -1),
                    ];
                    cocycle_constraints.push(
                        terms.iter().filter_map(|&(p, s)| p.map(|p| (p, s))).collect(),
                    );
                }
            }
        }
    }
    let mut cocycles: Vec<Vec<i64>> = Vec::new();
    enumerate_solutions(k * k * m, l, l, cocycle_constraints, |x| cocycles.push(x.to_vec()));

    // Coboundaries δZ/|X| mod L from 1-cochains mod |X|².
    let delta = |z: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; k * k * m];
        for a in 1..n {
            for b in 1..n {
                for i in 0..m {
                    let ab = g.mul_index(a, b);
                    let mut v = z[pos1(b, action.perm(a)[i]).unwrap()] + z[pos1(a, i).unwrap()];
                    if let Some(p) = pos1(ab, i) {
                        v -= z[p];
                    }
                    out[pos2(a, b, i).unwrap()] = v;
                }
            }
        }
        out
    };
    let mut divisibility = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for i in 0..m {
                let ab = g.mul_index(a, b);
                let mut c = vec![(pos1(b, action.perm(a)[i]).unwrap(), 1), (pos1(a, i).unwrap(), 1)];
                if let Some(p) = pos1(ab, i) {
                    c.push((p, -1));
                }
                divisibility.push(c);
            }
        }
    }
    let mut boundaries: HashSet<Vec<i64>> = HashSet::new();
    enumerate_solutions(k * m, l * l, l, divisibility, |z| {
        let d: Vec<i64> = delta(z).into_iter().map(|v| (v / l).rem_euclid(l)).collect();
        boundaries.insert(d);
    });

    let cocycle_set: HashSet<&Vec<i64>> = cocycles.iter().collect();
    if let Some(b) = boundaries.iter().find(|b| !cocycle_set.contains(b)) {
        return Err(Error::Inconsistent(format!("coboundary {b:?} is not a cocycle")));
    }
    let quotient = cocycles.len() / boundaries.len();
    // |Q[d]| = #{x : d·x ∈ B} / |B|.
    let torsion = |d: i64| -> usize {
        cocycles
            .iter()
            .filter(|x| {
                let y: Vec<i64> = x.iter().map(|&v| (v * d).rem_euclid(l)).collect();
                boundaries.contains(&y)
            })
            .count()
            / boundaries.len()
    };
    let mut parts = Vec::new();
    let mut rest = quotient;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        // ranks[k] = number of cyclic p-factors of order ≥ p^(k+1)
        let mut ranks = Vec::new();
        let mut prev = 1usize;
        let mut pk = p as i64;
        loop {
            let t = torsion(pk);
            if t == prev {
                break;
            }
            let mut r = 0;
            let mut ratio = t / prev;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            ranks.push(r);
            prev = t;
            pk *= p as i64;
        }
        for (e, &r) in ranks.iter().enumerate() {
            let next = ranks.get(e + 1).copied().unwrap_or(0);
            for _ in 0..r - next {
                parts.push((p as u64).pow(e as u32 + 1));
            }
        }
        p += 1;
    }
    Ok(CohomologyGroup::from_cyclic(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;

    #[test]
    fn oracle_examples() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        assert!(h2_oracle(&CenterAction::trivial(z2.clone(), 1)).unwrap().is_trivial());
        let v4 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(
            h2_oracle(&CenterAction::trivial(v4, 1)).unwrap().invariant_factors,
            vec![2]
        );
        let swap = CenterAction::from_generators(z2, 2, &[vec![1, 0]]).unwrap();
        assert!(h2_oracle(&swap).unwrap().is_trivial());
    }

    #[test]
    fn oracle_bounds() {
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        assert!(matches!(
            h2_oracle(&CenterAction::trivial(z5, 1)),
            Err(Error::Capacity { .. })
        ));
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        assert!(matches!(
            h2_oracle(&CenterAction::trivial(z2, 3)),
            Err(Error::Capacity { .. })
        ));
    }
}
