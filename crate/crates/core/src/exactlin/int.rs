//! Smith normal form over `Z` and the solvers built on it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn diagonal(values: &[BigInt]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            *m.at_mut(i, i) = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.at(k, c);
                    *out.at_mut(r, c) += add;
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, right.rows, "row count mismatch in hstack");
        let mut out = IntMatrix::zeros(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..right.cols {
                *out.at_mut(r, self.cols + c) = right.at(r, c).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = q * self.at(src, c);
            *self.at_mut(dst, c) += add;
        }
    }

    /// `col[dst] += q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = q * self.at(r, src);
            *self.at_mut(r, dst) += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`smith`]: `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal in divisibility order, zeros last.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub diag: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Smith normal form over `Z`.
///
/// Pivoting is deterministic: the submatrix entry of smallest nonzero
/// absolute value, scanned row-major, ties to the first hit.
pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let bound = a.rows().min(a.cols());

    for k in 0..bound {
        'pivot: loop {
            // Smallest nonzero |entry| in the trailing submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for r in k..d.rows() {
                for c in k..d.cols() {
                    if d.at(r, c).is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pr, pc)) if d.at(pr, pc).abs() <= d.at(r, c).abs() => {}
                        _ => pivot = Some((r, c)),
                    }
                }
            }
            let Some((pr, pc)) = pivot else {
                // Trailing submatrix is zero; diagonalization complete.
                return finish(d, u, v, k);
            };
            d.swap_rows(k, pr);
            u.swap_rows(k, pr);
            d.swap_cols(k, pc);
            v.swap_cols(k, pc);

            // Clear column k below the pivot and row k to its right.
            let mut dirty = false;
            for r in (k + 1)..d.rows() {
                if d.at(r, k).is_zero() {
                    continue;
                }
                let q = -(d.at(r, k) / d.at(k, k));
                d.row_axpy(r, k, &q);
                u.row_axpy(r, k, &q);
                if !d.at(r, k).is_zero() {
                    dirty = true;
                }
            }
            for c in (k + 1)..d.cols() {
                if d.at(k, c).is_zero() {
                    continue;
                }
                let q = -(d.at(k, c) / d.at(k, k));
                d.col_axpy(c, k, &q);
                v.col_axpy(c, k, &q);
                if !d.at(k, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // Divisibility: the pivot must divide the whole trailing block.
            for r in (k + 1)..d.rows() {
                for c in (k + 1)..d.cols() {
                    if !(d.at(r, c) % d.at(k, k)).is_zero() {
                        let one = BigInt::one();
                        d.row_axpy(k, r, &one);
                        u.row_axpy(k, r, &one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    finish(d, u, v, bound)
}

fn finish(
    mut d: IntMatrix,
    mut u: IntMatrix,
    v: IntMatrix,
    _stopped_at: usize,
) -> SmithDecomposition {
    let bound = d.rows().min(d.cols());
    for k in 0..bound {
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    let diag = (0..bound).map(|k| d.at(k, k).clone()).collect();
    SmithDecomposition { u, d, v, diag }
}

/// Solve `a * x = b` over `Z` where row `j` is read modulo `row_moduli[j]`.
///
/// Returns an unreduced integer solution, or `None` when the system has no
/// solution. All moduli must be >= 1.
pub fn solve_with_row_moduli(
    a: &IntMatrix,
    b: &[BigInt],
    row_moduli: &[BigInt],
) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    assert_eq!(a.rows(), row_moduli.len(), "row moduli length mismatch");
    let stacked = a.hstack(&IntMatrix::diagonal(row_moduli));
    let snf = smith(&stacked);
    let rank = snf.rank();

    // z solves d * z = u * b; then x = v * z restricted to the a-columns.
    let mut ub = vec![BigInt::zero(); a.rows()];
    for (r, entry) in ub.iter_mut().enumerate() {
        for c in 0..a.rows() {
            *entry += snf.u.at(r, c) * &b[c];
        }
    }
    let mut z = vec![BigInt::zero(); stacked.cols()];
    for (r, rhs) in ub.iter().enumerate() {
        if r < rank {
            let d = &snf.diag[r];
            if !(rhs % d).is_zero() {
                return None;
            }
            z[r] = rhs / d;
        } else if !rhs.is_zero() {
            return None;
        }
    }
    let mut full = vec![BigInt::zero(); stacked.cols()];
    for (r, out) in full.iter_mut().enumerate() {
        for (c, zc) in z.iter().enumerate() {
            if !zc.is_zero() {
                *out += snf.v.at(r, c) * zc;
            }
        }
    }
    full.truncate(a.cols());
    Some(full)
}

/// Solve `a * x ≡ b (mod n)`. Returns a solution reduced into `[0, n)`,
/// or `None` when none exists. Solvability is decided exactly via [`smith`].
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], n: &BigInt) -> Option<Vec<BigInt>> {
    assert!(*n >= BigInt::from(2), "modulus must be at least 2");
    let moduli = vec![n.clone(); a.rows()];
    let x = solve_with_row_moduli(a, b, &moduli)?;
    Some(x.into_iter().map(|e| e.rem_euclid(n)).collect())
}

trait RemEuclid {
    fn rem_euclid(&self, n: &BigInt) -> BigInt;
}

impl RemEuclid for BigInt {
    fn rem_euclid(&self, n: &BigInt) -> BigInt {
        let r = self % n;
        if r.is_negative() {
            r + n
        } else {
            r
        }
    }
}

/// Generators of `{ x in ⊕ Z/col_moduli[i] : a * x ≡ 0 in ⊕ Z/row_moduli[j] }`,
/// returned as the columns of a matrix with entries reduced modulo the
/// column moduli. Zero columns are dropped.
pub fn kernel_mod(a: &IntMatrix, row_moduli: &[BigInt], col_moduli: &[BigInt]) -> IntMatrix {
    assert_eq!(a.rows(), row_moduli.len(), "row moduli length mismatch");
    assert_eq!(a.cols(), col_moduli.len(), "column moduli length mismatch");
    let stacked = a.hstack(&IntMatrix::diagonal(row_moduli));
    let snf = smith(&stacked);
    let rank = snf.rank();

    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for c in rank..stacked.cols() {
        let mut col: Vec<BigInt> = (0..a.cols())
            .map(|r| snf.v.at(r, c).rem_euclid(&col_moduli[r]))
            .collect();
        if col.iter().all(|e| e.is_zero()) {
            continue;
        }
        // Canonical representatives.
        for (e, m) in col.iter_mut().zip(col_moduli) {
            *e = e.rem_euclid(m);
        }
        cols.push(col);
    }
    let mut out = IntMatrix::zeros(a.cols(), cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, e) in col.iter().enumerate() {
            *out.at_mut(r, c) = e.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_decomposition(a: &IntMatrix, snf: &SmithDecomposition) {
        let uav = snf.u.mul(a).mul(&snf.v);
        assert_eq!(uav, snf.d, "u*a*v != d");
        for r in 0..snf.d.rows() {
            for c in 0..snf.d.cols() {
                if r != c {
                    assert!(snf.d.at(r, c).is_zero(), "off-diagonal entry at ({r},{c})");
                }
            }
        }
        let mut seen_zero = false;
        for k in 0..snf.diag.len() {
            if snf.diag[k].is_zero() {
                seen_zero = true;
            } else {
                assert!(!seen_zero, "nonzero after zero on diagonal");
                assert!(!snf.diag[k].is_negative());
                if k + 1 < snf.diag.len() && !snf.diag[k + 1].is_zero() {
                    assert!(
                        (&snf.diag[k + 1] % &snf.diag[k]).is_zero(),
                        "divisibility chain broken at {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn smith_zero_matrix() {
        let a = IntMatrix::from_i64(1, 1, &[0]);
        let snf = smith(&a);
        assert_eq!(snf.diag, vec![BigInt::from(0)]);
        check_decomposition(&a, &snf);
    }

    #[test]
    fn smith_identity() {
        let a = IntMatrix::from_i64(2, 2, &[1, 0, 0, 1]);
        let snf = smith(&a);
        assert_eq!(snf.diag, vec![BigInt::from(1), BigInt::from(1)]);
        check_decomposition(&a, &snf);
    }

    #[test]
    fn smith_diag_2_3() {
        // diag(2,3) ~ diag(1,6)
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let snf = smith(&a);
        assert_eq!(snf.diag, vec![BigInt::from(1), BigInt::from(6)]);
        check_decomposition(&a, &snf);
    }

    #[test]
    fn smith_random_small() {
        // Deterministic sweep; the divisibility chain and the recomposition
        // identity must hold on every sample.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-9..=9)).collect();
            let a = IntMatrix::from_i64(rows, cols, &entries);
            let snf = smith(&a);
            check_decomposition(&a, &snf);
        }
    }

    #[test]
    fn solve_mod_examples() {
        let n = BigInt::from(4);
        let a = IntMatrix::from_i64(1, 1, &[2]);
        assert_eq!(solve_mod(&a, &[BigInt::from(0)], &n), Some(vec![BigInt::from(0)]));
        assert_eq!(solve_mod(&a, &[BigInt::from(1)], &n), None);
        let x = solve_mod(&a, &[BigInt::from(2)], &n).expect("2x=2 mod 4 solvable");
        assert!((BigInt::from(2) * &x[0] - BigInt::from(2)) % &n == BigInt::from(0));
    }

    #[test]
    fn solve_mod_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=3);
            let n = BigInt::from(rng.gen_range(2..=6));
            let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(0..6)).collect();
            let b: Vec<BigInt> = (0..rows).map(|_| BigInt::from(rng.gen_range(0..6))).collect();
            let a = IntMatrix::from_i64(rows, cols, &entries);

            let got = solve_mod(&a, &b, &n);
            // brute force over all x in [0,n)^cols
            let nn: i64 = n.to_string().parse().unwrap();
            let mut found = false;
            let mut x = vec![0i64; cols];
            'outer: loop {
                let ok = (0..rows).all(|r| {
                    let mut s = BigInt::from(0);
                    for c in 0..cols {
                        s += a.at(r, c) * BigInt::from(x[c]);
                    }
                    ((s - &b[r]) % &n) == BigInt::from(0)
                });
                if ok {
                    found = true;
                    break;
                }
                for i in 0..cols {
                    x[i] += 1;
                    if x[i] < nn {
                        continue 'outer;
                    }
                    x[i] = 0;
                }
                break;
            }
            assert_eq!(got.is_some(), found, "solvability mismatch");
            if let Some(sol) = got {
                for r in 0..rows {
                    let mut s = BigInt::from(0);
                    for c in 0..cols {
                        s += a.at(r, c) * &sol[c];
                    }
                    assert_eq!((s - &b[r]) % &n, BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn kernel_mod_examples() {
        // isomorphism has zero kernel
        let a = IntMatrix::from_i64(1, 1, &[1]);
        let k = kernel_mod(&a, &[BigInt::from(2)], &[BigInt::from(2)]);
        assert_eq!(k.cols(), 0);

        // multiplication by 2 on Z/4 has kernel {0, 2}
        let a = IntMatrix::from_i64(1, 1, &[2]);
        let k = kernel_mod(&a, &[BigInt::from(4)], &[BigInt::from(4)]);
        assert_eq!(k.cols(), 1);
        assert_eq!(*k.at(0, 0), BigInt::from(2));

        // zero map: everything is in the kernel
        let a = IntMatrix::from_i64(1, 1, &[0]);
        let k = kernel_mod(&a, &[BigInt::from(2)], &[BigInt::from(2)]);
        assert_eq!(k.cols(), 1);
        assert_eq!(*k.at(0, 0), BigInt::from(1));
    }

    #[test]
    fn kernel_mod_generates_solution_set() {
        // On modules of small order the generated subgroup equals the
        // brute-force solution set.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let rows = rng.gen_range(1..=2);
            let cols = rng.gen_range(1..=3);
            let moduli_choices = [2i64, 4, 8];
            let row_m: Vec<BigInt> = (0..rows)
                .map(|_| BigInt::from(moduli_choices[rng.gen_range(0..3)]))
                .collect();
            let col_m: Vec<BigInt> = (0..cols)
                .map(|_| BigInt::from(moduli_choices[rng.gen_range(0..3)]))
                .collect();
            // map must be well-defined: entry (j,i) multiple of r_j / gcd(r_j, c_i)
            let entries: Vec<i64> = (0..rows)
                .flat_map(|r| {
                    let rm: i64 = row_m[r].to_string().parse().unwrap();
                    (0..cols)
                        .map(|c| {
                            let cm: i64 = col_m[c].to_string().parse().unwrap();
                            let step = rm / num_integer::gcd(rm, cm);
                            let max = rm / step;
                            step * rng.gen_range(0..max)
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let a = IntMatrix::from_i64(rows, cols, &entries);
            let gens = kernel_mod(&a, &row_m, &col_m);

            // brute-force solution set
            let col_i: Vec<i64> = col_m.iter().map(|m| m.to_string().parse().unwrap()).collect();
            let row_i: Vec<i64> = row_m.iter().map(|m| m.to_string().parse().unwrap()).collect();
            let mut solutions = std::collections::BTreeSet::new();
            let mut x = vec![0i64; cols];
            'outer: loop {
                let ok = (0..rows).all(|r| {
                    let mut s = 0i64;
                    for c in 0..cols {
                        let e: i64 = a.at(r, c).to_string().parse().unwrap();
                        s += e * x[c];
                    }
                    s % row_i[r] == 0
                });
                if ok {
                    solutions.insert(x.clone());
                }
                for i in 0..cols {
                    x[i] += 1;
                    if x[i] < col_i[i] {
                        continue 'outer;
                    }
                    x[i] = 0;
                }
                break;
            }

            // every generator solves the system
            for c in 0..gens.cols() {
                let col: Vec<i64> =
                    (0..cols).map(|r| gens.at(r, c).to_string().parse().unwrap()).collect();
                assert!(solutions.contains(&col), "generator outside solution set");
            }
            // generated subgroup equals the solution set
            let mut generated = std::collections::BTreeSet::new();
            generated.insert(vec![0i64; cols]);
            loop {
                let mut grew = false;
                let snapshot: Vec<Vec<i64>> = generated.iter().cloned().collect();
                for g in 0..gens.cols() {
                    for s in &snapshot {
                        let mut t = s.clone();
                        for r in 0..cols {
                            let e: i64 = gens.at(r, g).to_string().parse().unwrap();
                            t[r] = (t[r] + e) % col_i[r];
                        }
                        if generated.insert(t) {
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            assert_eq!(generated, solutions, "generated set != solution set");
        }
    }
}
