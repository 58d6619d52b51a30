//! Integer lattices that contain `M·Zⁿ`, handled with entries reduced mod `M`.
//!
//! [`ModularEchelon`] keeps an echelon basis of such a lattice (a Hermite
//! basis: pivots divide `M`), optionally recording for each basis vector how
//! it is written in terms of the inserted generators. [`smith_invariants`]
//! diagonalizes a square basis to read off the quotient `Zⁿ / L`.

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`, `g ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// A unit `u` of `Z/M` with `u·a ≡ gcd(a, M) (mod M)`.
pub fn unit_normalizer(a: i64, modulus: i64) -> i64 {
    let a = a.rem_euclid(modulus);
    if a == 0 || modulus == 1 {
        return 1;
    }
    let g = gcd(a, modulus);
    let reduced_mod = modulus / g;
    let (_, inv, _) = ext_gcd(a / g, reduced_mod);
    let base = inv.rem_euclid(reduced_mod.max(1));
    let mut u = base;
    while gcd(u, modulus) != 1 {
        u += reduced_mod;
    }
    u % modulus
}

/// Echelon basis of a lattice `L ⊇ M·Zⁿ`, stored mod `M`.
#[derive(Debug, Clone)]
pub struct ModularEchelon {
    modulus: i64,
    width: usize,
    track: usize,
    /// `rows[j]` has its pivot in column `j`.
    rows: Vec<Option<Row>>,
    finalized: bool,
}

#[derive(Debug, Clone)]
struct Row {
    values: Vec<i64>,
    provenance: Vec<i64>,
}

impl ModularEchelon {
    /// `track` is the number of generators whose combinations are recorded
    /// (0 disables provenance).
    pub fn new(modulus: i64, width: usize, track: usize) -> Self {
        assert!(modulus >= 1);
        Self {
            modulus,
            width,
            track,
            rows: vec![None; width],
            finalized: false,
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    fn reduce(&self, v: &mut [i64]) {
        for x in v.iter_mut() {
            *x = x.rem_euclid(self.modulus);
        }
    }

    /// Insert a generator. `generator_index` is its position in the tracked
    /// family, or `None` for vectors that only matter mod `M`.
    pub fn insert(&mut self, values: Vec<i64>, generator_index: Option<usize>) {
        assert_eq!(values.len(), self.width);
        assert!(!self.finalized, "insert after finalize");
        let mut provenance = vec![0; self.track];
        if let Some(i) = generator_index {
            provenance[i] = 1;
        }
        let mut row = Row { values, provenance };
        self.reduce(&mut row.values);
        self.insert_from(row, 0);
    }

    fn insert_from(&mut self, mut row: Row, start: usize) {
        let m = self.modulus;
        let mut col = start;
        while col < self.width {
            let b = row.values[col];
            if b == 0 {
                col += 1;
                continue;
            }
            match self.rows[col].take() {
                None => {
                    self.rows[col] = Some(row);
                    return;
                }
                Some(pivot) => {
                    let a = pivot.values[col];
                    let (g, s, t) = ext_gcd(a, b);
                    let (ag, bg) = (a / g, b / g);
                    let combine = |x: &[i64], y: &[i64], p: i64, q: i64| -> Vec<i64> {
                        x.iter()
                            .zip(y)
                            .map(|(&u, &v)| ((p as i128 * u as i128 + q as i128 * v as i128)
                                .rem_euclid(m as i128)) as i64)
                            .collect()
                    };
                    // [[s, t], [-b/g, a/g]] is unimodular.
                    let new_pivot = Row {
                        values: combine(&pivot.values, &row.values, s, t),
                        provenance: combine(&pivot.provenance, &row.provenance, s, t),
                    };
                    let rest = Row {
                        values: combine(&pivot.values, &row.values, -bg, ag),
                        provenance: combine(&pivot.provenance, &row.provenance, -bg, ag),
                    };
                    self.rows[col] = Some(new_pivot);
                    row = rest;
                    debug_assert_eq!(row.values[col], 0);
                    col += 1;
                }
            }
        }
    }

    /// Insert `M·e_j` for every column, completing the Hermite basis.
    pub fn finalize(&mut self) {
        if self.finalized {
            return;
        }
        let m = self.modulus;
        for j in 0..self.width {
            match self.rows[j].take() {
                None => {
                    // Pivot M: the zero vector mod M, no provenance.
                    let mut values = vec![0; self.width];
                    values[j] = 0;
                    self.rows[j] = Some(Row {
                        values,
                        provenance: vec![0; self.track],
                    });
                }
                Some(mut pivot) => {
                    let a = pivot.values[j];
                    let g = gcd(a, m);
                    let u = unit_normalizer(a, m);
                    // (M/g)·pivot has a vanishing pivot entry mod M; its tail
                    // is a new lattice element.
                    let factor = m / g;
                    let tail = Row {
                        values: pivot.values.iter().map(|&x| (x * factor).rem_euclid(m)).collect(),
                        provenance: pivot
                            .provenance
                            .iter()
                            .map(|&x| (x * factor).rem_euclid(m))
                            .collect(),
                    };
                    for x in pivot.values.iter_mut().chain(pivot.provenance.iter_mut()) {
                        *x = ((*x as i128 * u as i128).rem_euclid(m as i128)) as i64;
                    }
                    debug_assert_eq!(pivot.values[j], g % m);
                    self.rows[j] = Some(pivot);
                    if tail.values.iter().any(|&x| x != 0) {
                        self.insert_from(tail, j + 1);
                    }
                }
            }
        }
        self.finalized = true;
    }

    /// Pivot of column `j` in `1..=M` (M means the column has no generator
    /// beyond `M·e_j`). Requires [`Self::finalize`].
    pub fn pivot(&self, j: usize) -> i64 {
        assert!(self.finalized);
        let p = self.rows[j].as_ref().map(|r| r.values[j]).unwrap_or(0);
        if p == 0 {
            self.modulus
        } else {
            p
        }
    }

    /// Square upper-triangular basis matrix (row `j` = basis vector with
    /// pivot `j`, pivot entry in `1..=M`).
    pub fn basis_matrix(&self) -> Vec<Vec<i64>> {
        assert!(self.finalized);
        (0..self.width)
            .map(|j| {
                let mut v = self.rows[j]
                    .as_ref()
                    .map(|r| r.values.clone())
                    .unwrap_or_else(|| vec![0; self.width]);
                v[j] = self.pivot(j);
                v
            })
            .collect()
    }

    /// Express `target` (mod M) as a combination of the tracked generators.
    /// Returns `None` when `target` is outside the lattice.
    pub fn solve(&self, target: &[i64]) -> Option<Vec<i64>> {
        assert!(self.finalized);
        assert_eq!(target.len(), self.width);
        let m = self.modulus as i128;
        let mut rest: Vec<i128> = target.iter().map(|&x| (x as i128).rem_euclid(m)).collect();
        let mut coeffs = vec![0i128; self.track];
        for j in 0..self.width {
            if rest[j] == 0 {
                continue;
            }
            let row = self.rows[j].as_ref()?;
            let pivot = row.values[j] as i128;
            if pivot == 0 || rest[j] % pivot != 0 {
                return None;
            }
            let k = rest[j] / pivot;
            for (r, &v) in rest.iter_mut().zip(&row.values) {
                *r = (*r - k * v as i128).rem_euclid(m);
            }
            for (c, &p) in coeffs.iter_mut().zip(&row.provenance) {
                *c = (*c + k * p as i128).rem_euclid(m);
            }
        }
        if rest.iter().all(|&x| x == 0) {
            Some(coeffs.into_iter().map(|c| c as i64).collect())
        } else {
            None
        }
    }
}

/// Smith invariants `d₁ | d₂ | … | d_n` (each a divisor of `M`, with `M`
/// standing for a zero invariant) of the lattice spanned by the rows of
/// `basis` together with `M·Zⁿ`.
pub fn smith_invariants(basis: &[Vec<i64>], modulus: i64) -> Vec<i64> {
    let n = basis.len();
    let m = modulus;
    let mut a: Vec<Vec<i64>> = basis
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(m)).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    // Symmetric residue magnitude, used to pick small pivots.
    let size = |x: i64| -> i64 {
        let r = x.rem_euclid(m);
        r.min(m - r)
    };
    for t in 0..n {
        loop {
            // Smallest nonzero entry in the trailing block.
            let mut best: Option<(usize, usize, i64)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let s = gcd(size(x), m);
                        if best.is_none_or(|(_, _, b)| s < b) {
                            best = Some((i, j, s));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                diag.extend(std::iter::repeat_n(m, n - t));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let u = unit_normalizer(a[t][t], m);
            for x in a[t].iter_mut() {
                *x = ((*x as i128 * u as i128).rem_euclid(m as i128)) as i64;
            }
            let g = a[t][t];
            let mut dirty = false;
            // Clear column t.
            for i in t + 1..n {
                let x = a[i][t];
                if x == 0 {
                    continue;
                }
                let q = x / g;
                let (head, tail) = a.split_at_mut(i);
                let pivot_row = &head[t];
                for (y, &p) in tail[0].iter_mut().zip(pivot_row) {
                    *y = ((*y as i128 - q as i128 * p as i128).rem_euclid(m as i128)) as i64;
                }
                if tail[0][t] != 0 {
                    dirty = true;
                }
            }
            // Clear row t.
            for j in t + 1..n {
                let x = a[t][j];
                if x == 0 {
                    continue;
                }
                let q = x / g;
                for row in a.iter_mut() {
                    let p = row[t];
                    row[j] = ((row[j] as i128 - q as i128 * p as i128).rem_euclid(m as i128)) as i64;
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let offender = (t + 1..n).find(|&i| a[i][t + 1..].iter().any(|&x| x % g != 0));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (y, &x) in head[t].iter_mut().zip(&tail[0]) {
                        *y = (*y + x).rem_euclid(m);
                    }
                }
                None => {
                    diag.push(g);
                    break;
                }
            }
        }
    }
    diag
}
