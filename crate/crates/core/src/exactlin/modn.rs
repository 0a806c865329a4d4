//! Exact linear algebra carried out entirely in `Z/N` for word-sized `N`.
//!
//! `Z/N` is a principal ideal ring: every matrix over it can be brought to
//! diagonal form by transforms that are invertible mod `N` (swaps, adding a
//! multiple of a row/column, and 2x2 Bezout combinations, which have
//! determinant 1 over `Z` and hence mod `N`). The ideal generated by a
//! diagonal entry `d` is the one generated by `gcd(d, N)`, which gives the
//! invariant factors directly without normalizing units.

use num_integer::Integer;

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn addmulmod(acc: u64, a: u64, b: u64, n: u64) -> u64 {
    ((acc as u128 + a as u128 * b as u128) % n as u128) as u64
}

fn negmod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

fn redmod(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// Extended gcd on nonnegative representatives: `g = s*a + t*b`.
fn ext_gcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

/// Inverse of `a` modulo `m` (requires `gcd(a, m) = 1`; `m = 1` gives 0).
fn modinv(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (g, s, _) = ext_gcd(a % m, m);
    assert_eq!(g, 1, "modinv of non-unit");
    redmod(s, m)
}

/// Dense matrix over `Z/n`, row-major, entries in `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    n: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(rows: usize, cols: usize, n: u64, entries: Vec<u64>) -> Self {
        assert!(n >= 2);
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let entries = entries.into_iter().map(|e| e % n).collect();
        ModMatrix { rows, cols, n, entries }
    }

    pub fn zeros(rows: usize, cols: usize, n: u64) -> Self {
        ModMatrix { rows, cols, n, entries: vec![0; rows * cols] }
    }

    pub fn identity(size: usize, n: u64) -> Self {
        let mut m = Self::zeros(size, size, n);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<u64>], n: u64) -> Self {
        let mut m = Self::zeros(rows, cols.len(), n);
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &e) in col.iter().enumerate() {
                m.set(r, c, e % n);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        assert_eq!(self.n, other.n);
        let mut out = ModMatrix::zeros(self.rows, other.cols, self.n);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = addmulmod(out.at(r, c), a, other.at(k, c), self.n);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = addmulmod(acc, self.at(r, c), x[c], self.n);
                }
                acc
            })
            .collect()
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

    /// `row[dst] += t * row[src]`
    fn row_addmul(&mut self, dst: usize, src: usize, t: u64) {
        if t == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = addmulmod(self.at(dst, c), t, self.at(src, c), self.n);
            self.set(dst, c, v);
        }
    }

    /// `col[dst] += t * col[src]`
    fn col_addmul(&mut self, dst: usize, src: usize, t: u64) {
        if t == 0 {
            return;
        }
        for r in 0..self.rows {
            let v = addmulmod(self.at(r, dst), t, self.at(r, src), self.n);
            self.set(r, dst, v);
        }
    }

    /// Rows `(a, b)` become `(p*row_a + q*row_b, r*row_a + s*row_b)`.
    fn row_combine(&mut self, a: usize, b: usize, p: u64, q: u64, r: u64, s: u64) {
        let n = self.n;
        for c in 0..self.cols {
            let va = self.at(a, c);
            let vb = self.at(b, c);
            self.set(a, c, addmulmod(mulmod(p, va, n), q, vb, n));
            self.set(b, c, addmulmod(mulmod(r, va, n), s, vb, n));
        }
    }

    /// Columns `(a, b)` become `(p*col_a + q*col_b, r*col_a + s*col_b)`.
    fn col_combine(&mut self, a: usize, b: usize, p: u64, q: u64, r: u64, s: u64) {
        let n = self.n;
        for row in 0..self.rows {
            let va = self.at(row, a);
            let vb = self.at(row, b);
            self.set(row, a, addmulmod(mulmod(p, va, n), q, vb, n));
            self.set(row, b, addmulmod(mulmod(r, va, n), s, vb, n));
        }
    }
}

impl std::fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ModMatrix {}x{} mod {} [", self.rows, self.cols, self.n)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Diagonalization over `Z/n`: `u * a * v = diag` with `u`, `v` invertible
/// mod `n`. The invariant factor at position `s` is `gcd(diag[s], n)`, and
/// the chain of invariant factors ascends under divisibility.
pub struct SnfMod {
    pub n: u64,
    pub diag: Vec<u64>,
    pub u: ModMatrix,
    pub u_inv: ModMatrix,
    pub v: ModMatrix,
    pub v_inv: ModMatrix,
}

impl SnfMod {
    /// `gcd(diag[s], n)`, with positions past the diagonal counting as `n`
    /// (no relation, i.e. the zero ideal).
    pub fn invariant(&self, s: usize) -> u64 {
        if s < self.diag.len() {
            self.diag[s].gcd(&self.n)
        } else {
            self.n
        }
    }
}

struct SnfWorker {
    d: ModMatrix,
    u: ModMatrix,
    u_inv: ModMatrix,
    v: ModMatrix,
    v_inv: ModMatrix,
    n: u64,
}

impl SnfWorker {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[i] += t * row[k]`; inverse transform tracked on `u_inv`.
    fn row_addmul(&mut self, i: usize, k: usize, t: u64) {
        self.d.row_addmul(i, k, t);
        self.u.row_addmul(i, k, t);
        self.u_inv.col_addmul(k, i, negmod(t, self.n));
    }

    fn col_addmul(&mut self, j: usize, k: usize, t: u64) {
        self.d.col_addmul(j, k, t);
        self.v.col_addmul(j, k, t);
        self.v_inv.row_addmul(k, j, negmod(t, self.n));
    }

    /// Bezout row combination: with `g = gcd(d[k][.], d[i][.])` realized as
    /// `g = s*a + t*b`, rows `(k, i)` become `(s*rk + t*ri, -(b/g)*rk + (a/g)*ri)`.
    /// The 2x2 block has determinant 1.
    fn row_bezout(&mut self, k: usize, i: usize, a: u64, b: u64) {
        let n = self.n;
        let (g, s, t) = ext_gcd(a, b);
        let (p, q) = (redmod(s, n), redmod(t, n));
        let (r, w) = (negmod((b / g) % n, n), (a / g) % n);
        self.d.row_combine(k, i, p, q, r, w);
        self.u.row_combine(k, i, p, q, r, w);
        // inverse of [[p,q],[r,w]] is [[w,-q],[-r,p]]; applied as column ops
        self.u_inv.col_combine(k, i, w, negmod(r, n), negmod(q, n), p);
    }

    fn col_bezout(&mut self, k: usize, j: usize, a: u64, b: u64) {
        let n = self.n;
        let (g, s, t) = ext_gcd(a, b);
        let (p, q) = (redmod(s, n), redmod(t, n));
        let (r, w) = (negmod((b / g) % n, n), (a / g) % n);
        self.d.col_combine(k, j, p, q, r, w);
        self.v.col_combine(k, j, p, q, r, w);
        self.v_inv.row_combine(k, j, w, negmod(r, n), negmod(q, n), p);
    }
}

/// Smith-style diagonalization over `Z/n`.
pub fn snf_mod(a: &ModMatrix) -> SnfMod {
    let n = a.n();
    let mut w = SnfWorker {
        d: a.clone(),
        u: ModMatrix::identity(a.rows(), n),
        u_inv: ModMatrix::identity(a.rows(), n),
        v: ModMatrix::identity(a.cols(), n),
        v_inv: ModMatrix::identity(a.cols(), n),
        n,
    };
    let bound = a.rows().min(a.cols());

    'positions: for k in 0..bound {
        'pivot: loop {
            // Pivot: entry generating the largest ideal, i.e. minimal
            // gcd(entry, n); scanned row-major, ties to the first hit.
            let mut pivot: Option<(usize, usize, u64)> = None;
            for r in k..w.d.rows() {
                for c in k..w.d.cols() {
                    let e = w.d.at(r, c);
                    if e == 0 {
                        continue;
                    }
                    let g = e.gcd(&n);
                    if pivot.map_or(true, |(_, _, pg)| g < pg) {
                        pivot = Some((r, c, g));
                        if g == 1 {
                            break;
                        }
                    }
                }
                if pivot.map_or(false, |(_, _, g)| g == 1) {
                    break;
                }
            }
            let Some((pr, pc, _)) = pivot else {
                break 'positions;
            };
            w.row_swap(k, pr);
            w.col_swap(k, pc);

            loop {
                let mut progressed = false;
                // Clear column k below the pivot.
                for i in (k + 1)..w.d.rows() {
                    let b = w.d.at(i, k);
                    if b == 0 {
                        continue;
                    }
                    let p = w.d.at(k, k);
                    let gp = p.gcd(&n);
                    if b % gp == 0 {
                        // b = t*p mod n with t = (b/gp) * (p/gp)^-1 (mod n/gp)
                        let t = mulmod(b / gp, modinv((p / gp) % (n / gp), n / gp), n);
                        w.row_addmul(i, k, negmod(t, n));
                    } else {
                        w.row_bezout(k, i, p, b);
                        progressed = true;
                    }
                    debug_assert_eq!(w.d.at(i, k), 0);
                }
                // Clear row k right of the pivot.
                for j in (k + 1)..w.d.cols() {
                    let b = w.d.at(k, j);
                    if b == 0 {
                        continue;
                    }
                    let p = w.d.at(k, k);
                    let gp = p.gcd(&n);
                    if b % gp == 0 {
                        let t = mulmod(b / gp, modinv((p / gp) % (n / gp), n / gp), n);
                        w.col_addmul(j, k, negmod(t, n));
                    } else {
                        w.col_bezout(k, j, p, b);
                        progressed = true;
                    }
                    debug_assert_eq!(w.d.at(k, j), 0);
                }
                let col_clean = ((k + 1)..w.d.rows()).all(|i| w.d.at(i, k) == 0);
                let row_clean = ((k + 1)..w.d.cols()).all(|j| w.d.at(k, j) == 0);
                if col_clean && row_clean {
                    break;
                }
                // Bezout steps strictly shrink the pivot ideal, so this
                // terminates; plain multiple-clears leave the dual side
                // untouched.
                assert!(progressed, "snf_mod failed to make progress");
            }

            // The pivot ideal must contain every entry of the trailing block.
            let gp = w.d.at(k, k).gcd(&n);
            for i in (k + 1)..w.d.rows() {
                for j in (k + 1)..w.d.cols() {
                    if w.d.at(i, j).gcd(&n) % gp != 0 {
                        w.row_addmul(k, i, 1);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }

    let diag = (0..bound).map(|k| w.d.at(k, k)).collect();
    SnfMod { n, diag, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

fn scale_rows_to_n(a: &ModMatrix, row_moduli: &[u64]) -> ModMatrix {
    assert_eq!(a.rows(), row_moduli.len(), "row moduli length mismatch");
    let n = a.n();
    let mut out = a.clone();
    for (r, &m) in row_moduli.iter().enumerate() {
        assert!(m >= 1 && n % m == 0, "row modulus must divide n");
        let factor = n / m;
        if factor == 1 {
            continue;
        }
        for c in 0..a.cols() {
            out.set(r, c, mulmod(factor, a.at(r, c), n));
        }
    }
    out
}

/// Generators (as columns) of `{ x in ⊕ Z/col_moduli[i] : a*x ≡ 0 in
/// ⊕ Z/row_moduli[j] }`. Entries come back reduced modulo the column
/// moduli; zero columns are dropped.
pub fn kernel_gens(a: &ModMatrix, row_moduli: &[u64], col_moduli: &[u64]) -> Vec<Vec<u64>> {
    assert_eq!(a.cols(), col_moduli.len(), "column moduli length mismatch");
    let n = a.n();
    let scaled = scale_rows_to_n(a, row_moduli);
    let snf = snf_mod(&scaled);
    let mut gens = Vec::new();
    for s in 0..a.cols() {
        let factor = n / snf.invariant(s);
        if factor == n {
            continue; // unit invariant: coordinate forced to zero
        }
        let mut col: Vec<u64> = (0..a.cols())
            .map(|r| mulmod(snf.v.at(r, s), factor, n) % col_moduli[r].max(1))
            .collect();
        for (e, &m) in col.iter_mut().zip(col_moduli) {
            *e %= m.max(1);
        }
        if col.iter().any(|&e| e != 0) {
            gens.push(col);
        }
    }
    gens
}

/// Solve `a*x ≡ b` where row `j` is taken modulo `row_moduli[j]`; the
/// solution is a vector over `Z/n`. Returns `None` when unsolvable.
pub fn solve(a: &ModMatrix, b: &[u64], row_moduli: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let n = a.n();
    let scaled = scale_rows_to_n(a, row_moduli);
    let scaled_b: Vec<u64> = b
        .iter()
        .zip(row_moduli)
        .map(|(&e, &m)| mulmod(n / m, e % n, n))
        .collect();
    let snf = snf_mod(&scaled);
    let c = snf.u.mul_vec(&scaled_b);
    let mut y = vec![0u64; a.cols()];
    for (s, &cs) in c.iter().enumerate() {
        if s < snf.diag.len() {
            let g = snf.invariant(s);
            if cs % g != 0 {
                return None;
            }
            if g == n {
                continue; // y[s] stays 0
            }
            let m = n / g;
            y[s] = mulmod(cs / g, modinv((snf.diag[s] / g) % m, m), n);
        } else if cs != 0 {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Canonical form of the module `(Z/n)^coords / <relations>`.
pub struct CanonPresentation {
    /// Invariant factor chain (entries > 1, ascending divisibility).
    pub chain: Vec<u64>,
    /// Row `s` maps a coordinate vector to the `s`-th canonical coordinate
    /// (entries mod `chain[s]`).
    pub proj: Vec<Vec<u64>>,
    /// Column `s` is a representative of the `s`-th canonical generator
    /// (entries mod `n`).
    pub inj: Vec<Vec<u64>>,
}

/// Canonicalize `(Z/n)^coords / <rel_cols>`.
pub fn presentation(coords: usize, rel_cols: &[Vec<u64>], n: u64) -> CanonPresentation {
    if coords == 0 {
        return CanonPresentation { chain: vec![], proj: vec![], inj: vec![] };
    }
    let r = ModMatrix::from_columns(coords, rel_cols, n);
    let snf = snf_mod(&r);
    let mut chain = Vec::new();
    let mut proj = Vec::new();
    let mut inj = Vec::new();
    for s in 0..coords {
        let g = snf.invariant(s);
        if g == 1 {
            continue;
        }
        chain.push(g);
        proj.push(snf.u.row(s).iter().map(|&e| e % g).collect());
        inj.push(snf.u_inv.column(s));
    }
    debug_assert!(chain.windows(2).all(|w| w[1] % w[0] == 0), "invariant chain out of order");
    CanonPresentation { chain, proj, inj }
}

/// Canonical form of the subgroup of `⊕ Z/ambient_moduli[i]` generated by
/// the given columns: the invariant chain together with one ambient
/// representative per canonical generator.
pub fn subgroup(ambient_moduli: &[u64], gens: &[Vec<u64>], n: u64) -> (Vec<u64>, Vec<Vec<u64>>) {
    if gens.is_empty() {
        return (vec![], vec![]);
    }
    let g = ModMatrix::from_columns(ambient_moduli.len(), gens, n);
    let relations = kernel_gens(&g, ambient_moduli, &vec![n; gens.len()]);
    let pres = presentation(gens.len(), &relations, n);
    let cols = pres
        .inj
        .iter()
        .map(|w| {
            let mut col = g.mul_vec(w);
            for (e, &m) in col.iter_mut().zip(ambient_moduli) {
                *e %= m;
            }
            col
        })
        .collect();
    (pres.chain, cols)
}

/// Invariant chain of `span(upper) / span(lower)` inside
/// `⊕ Z/ambient_moduli[i]`; `span(lower)` must be contained in `span(upper)`.
pub fn subquotient_chain(
    ambient_moduli: &[u64],
    upper: &[Vec<u64>],
    lower: &[Vec<u64>],
    n: u64,
) -> Vec<u64> {
    if upper.is_empty() {
        return vec![];
    }
    let mut all: Vec<Vec<u64>> = upper.to_vec();
    all.extend_from_slice(lower);
    let stacked = ModMatrix::from_columns(ambient_moduli.len(), &all, n);
    let pairs = kernel_gens(&stacked, ambient_moduli, &vec![n; all.len()]);
    let relations: Vec<Vec<u64>> = pairs.iter().map(|p| p[..upper.len()].to_vec()).collect();
    presentation(upper.len(), &relations, n).chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: u64) -> ModMatrix {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let entries = (0..rows * cols).map(|_| rng.gen_range(0..n)).collect();
        ModMatrix::new(rows, cols, n, entries)
    }

    fn check_snf(a: &ModMatrix, snf: &SnfMod) {
        let n = a.n();
        let uav = snf.u.mul(a).mul(&snf.v);
        for r in 0..uav.rows() {
            for c in 0..uav.cols() {
                if r == c {
                    assert_eq!(uav.at(r, c), snf.diag[r]);
                } else {
                    assert_eq!(uav.at(r, c), 0, "nonzero off-diagonal at ({r},{c})");
                }
            }
        }
        assert_eq!(snf.u.mul(&snf.u_inv), ModMatrix::identity(a.rows(), n));
        assert_eq!(snf.v.mul(&snf.v_inv), ModMatrix::identity(a.cols(), n));
        for s in 0..snf.diag.len().saturating_sub(1) {
            assert_eq!(
                snf.invariant(s + 1) % snf.invariant(s),
                0,
                "invariant chain broken at {s}"
            );
        }
    }

    #[test]
    fn snf_mod_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &n in &[2u64, 3, 4, 6, 8, 12, 360] {
            for _ in 0..300 {
                let a = random_matrix(&mut rng, n);
                let snf = snf_mod(&a);
                check_snf(&a, &snf);
            }
        }
    }

    #[test]
    fn snf_matches_integer_smith_on_invariants() {
        // Dual route: the invariants of (Z/n)^k / <columns> computed mod n
        // agree with the integer Smith form of [cols | n*I].
        use crate::exactlin::int;
        use num_bigint::BigInt;
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for &n in &[4u64, 6, 8, 12] {
            for _ in 0..120 {
                let k = rng.gen_range(1..=3);
                let r = rng.gen_range(0..=3);
                let cols: Vec<Vec<u64>> =
                    (0..r).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect();
                let pres = presentation(k, &cols, n);

                let mut entries = Vec::new();
                for row in 0..k {
                    for col in &cols {
                        entries.push(BigInt::from(col[row]));
                    }
                    for j in 0..k {
                        entries.push(BigInt::from(if j == row { n } else { 0 }));
                    }
                }
                let m = int::IntMatrix::new(k, r + k, entries);
                let snf = int::smith(&m);
                let expected: Vec<u64> = snf
                    .diag
                    .iter()
                    .map(|d| d.to_string().parse::<u64>().unwrap())
                    .filter(|&d| d > 1)
                    .collect();
                assert_eq!(pres.chain, expected, "n={n} cols={cols:?}");
            }
        }
    }

    #[test]
    fn kernel_gens_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[4u64, 6, 8] {
            for _ in 0..100 {
                let rows = rng.gen_range(1..=2);
                let cols = rng.gen_range(1..=3);
                let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
                let row_m: Vec<u64> =
                    (0..rows).map(|_| divisors[rng.gen_range(0..divisors.len())]).collect();
                let col_m: Vec<u64> =
                    (0..cols).map(|_| divisors[rng.gen_range(0..divisors.len())]).collect();
                let entries: Vec<u64> = (0..rows)
                    .flat_map(|r| {
                        (0..cols)
                            .map(|c| {
                                let step = row_m[r] / row_m[r].gcd(&col_m[c]);
                                step * rng.gen_range(0..row_m[r] / step)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let a = ModMatrix::new(rows, cols, n, entries);
                let gens = kernel_gens(&a, &row_m, &col_m);

                let mut solutions = std::collections::BTreeSet::new();
                let mut x = vec![0u64; cols];
                'outer: loop {
                    let ok = (0..rows).all(|r| {
                        let mut s: u64 = 0;
                        for c in 0..cols {
                            s = (s + a.at(r, c) * x[c]) % row_m[r];
                        }
                        s == 0
                    });
                    if ok {
                        solutions.insert(x.clone());
                    }
                    for i in 0..cols {
                        x[i] += 1;
                        if x[i] < col_m[i] {
                            continue 'outer;
                        }
                        x[i] = 0;
                    }
                    break;
                }

                let mut generated = std::collections::BTreeSet::new();
                generated.insert(vec![0u64; cols]);
                loop {
                    let mut grew = false;
                    let snapshot: Vec<Vec<u64>> = generated.iter().cloned().collect();
                    for g in &gens {
                        for s in &snapshot {
                            let t: Vec<u64> = s
                                .iter()
                                .zip(g.iter())
                                .zip(col_m.iter())
                                .map(|((&a, &b), &m)| (a + b) % m)
                                .collect();
                            if generated.insert(t) {
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                assert_eq!(generated, solutions, "n={n}");
            }
        }
    }

    #[test]
    fn solve_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &n in &[4u64, 6] {
            for _ in 0..150 {
                let rows = rng.gen_range(1..=2);
                let cols = rng.gen_range(1..=3);
                let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
                let row_m: Vec<u64> =
                    (0..rows).map(|_| divisors[rng.gen_range(0..divisors.len())]).collect();
                let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..n)).collect();
                let b: Vec<u64> = (0..rows).map(|_| rng.gen_range(0..n)).collect();
                let a = ModMatrix::new(rows, cols, n, entries);

                let got = solve(&a, &b, &row_m);
                let mut found = false;
                let mut x = vec![0u64; cols];
                'outer: loop {
                    if (0..rows).all(|r| {
                        let mut s: u64 = 0;
                        for c in 0..cols {
                            s = (s + a.at(r, c) * x[c]) % row_m[r];
                        }
                        s == b[r] % row_m[r]
                    }) {
                        found = true;
                        break;
                    }
                    for i in 0..cols {
                        x[i] += 1;
                        if x[i] < n {
                            continue 'outer;
                        }
                        x[i] = 0;
                    }
                    break;
                }
                assert_eq!(got.is_some(), found);
                if let Some(sol) = got {
                    for r in 0..rows {
                        let mut s: u64 = 0;
                        for c in 0..cols {
                            s = (s + a.at(r, c) % row_m[r] * (sol[c] % row_m[r])) % row_m[r];
                        }
                        assert_eq!(s, b[r] % row_m[r]);
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_brute_force_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for &n in &[4u64, 6, 8] {
            for _ in 0..100 {
                let k = rng.gen_range(1..=3);
                let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
                let amb: Vec<u64> =
                    (0..k).map(|_| divisors[rng.gen_range(0..divisors.len())]).collect();
                let t = rng.gen_range(0..=3);
                let gens: Vec<Vec<u64>> = (0..t)
                    .map(|_| amb.iter().map(|&m| rng.gen_range(0..m)).collect())
                    .collect();
                let (chain, cols) = subgroup(&amb, &gens, n);

                let mut generated = std::collections::BTreeSet::new();
                generated.insert(vec![0u64; k]);
                loop {
                    let mut grew = false;
                    let snapshot: Vec<Vec<u64>> = generated.iter().cloned().collect();
                    for g in &gens {
                        for s in &snapshot {
                            let e: Vec<u64> = s
                                .iter()
                                .zip(g.iter())
                                .zip(amb.iter())
                                .map(|((&a, &b), &m)| (a + b) % m)
                                .collect();
                            if generated.insert(e) {
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                let order: u64 = chain.iter().product();
                assert_eq!(order as usize, generated.len(), "n={n} amb={amb:?} gens={gens:?}");
                // canonical generators lie in the subgroup and have the stated order
                for (g, &d) in cols.iter().zip(&chain) {
                    assert!(generated.contains(g));
                    let mut acc = vec![0u64; k];
                    for _ in 0..d - 1 {
                        acc = acc
                            .iter()
                            .zip(g.iter())
                            .zip(amb.iter())
                            .map(|((&a, &b), &m)| (a + b) % m)
                            .collect();
                        assert!(acc.iter().any(|&e| e != 0), "generator order too small");
                    }
                }
            }
        }
    }
}
