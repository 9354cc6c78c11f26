//! Prime fields F_p and exact dense linear algebra.
//!
//! Everything downstream — spanning ranks, centralizers, freeness ranks,
//! support clearing — reduces to the routines here.  All arithmetic is
//! exact; elimination uses a fixed deterministic pivot rule (leftmost
//! column, lowest row index) so that identical inputs always produce
//! identical echelon forms, ranks and solutions.
//!
//! Debug builds validate the modulus on every binary scalar operation;
//! release builds validate at construction boundaries only.

use crate::error::LieError;
use crate::Result;

/// Trial-division primality test.  Moduli in this crate are tiny (two-digit
/// primes), so no fancy algorithm is warranted.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A validated prime modulus.
///
/// Bounded below 2^31 so that products of residues never overflow `u64`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(LieError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Raw residue helpers.  Operands must already be reduced mod p.

#[inline]
pub fn add_m(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_m(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg_m(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_m(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn red_i64(a: i64, p: u64) -> u64 {
    let m = a.rem_euclid(p as i64);
    m as u64
}

pub fn pow_m(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_m(acc, base, p);
        }
        base = mul_m(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by the extended Euclidean algorithm.
///
/// # Errors
/// Zero input is a division by zero.
pub fn inv_m(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(LieError::NotInvertible(format!("0 mod {p}")));
    }
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus not prime?");
    Ok(red_i64(t0, p))
}

/// A scalar in F_p carrying its modulus.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpScalar {
    v: u64,
    p: u64,
}

impl FpScalar {
    pub fn new(p: Prime, v: u64) -> FpScalar {
        FpScalar { v: v % p.get(), p: p.get() }
    }

    pub fn from_i64(p: Prime, v: i64) -> FpScalar {
        FpScalar { v: red_i64(v, p.get()), p: p.get() }
    }

    pub fn zero(p: Prime) -> FpScalar {
        FpScalar { v: 0, p: p.get() }
    }

    pub fn one(p: Prime) -> FpScalar {
        FpScalar { v: 1 % p.get(), p: p.get() }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.v
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn prime(self) -> Prime {
        Prime(self.p)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn pow(self, e: u64) -> FpScalar {
        FpScalar { v: pow_m(self.v, e, self.p), p: self.p }
    }

    /// Multiplicative inverse.
    ///
    /// # Errors
    /// Zero input is a division by zero.
    pub fn inv(self) -> Result<FpScalar> {
        Ok(FpScalar { v: inv_m(self.v, self.p)?, p: self.p })
    }

    #[inline]
    fn check(self, rhs: FpScalar) {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch: {} vs {}", self.p, rhs.p);
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar { v: add_m(self.v, rhs.v, self.p), p: self.p }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar { v: sub_m(self.v, rhs.v, self.p), p: self.p }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar { v: mul_m(self.v, rhs.v, self.p), p: self.p }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar { v: neg_m(self.v, self.p), p: self.p }
    }
}

impl std::fmt::Display for FpScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// Dense row-major matrix over F_p.  All entries share the matrix modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    a: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { p, rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1 % p.get());
        }
        m
    }

    pub fn from_rows(p: Prime, rows: &[Vec<u64>]) -> Result<FpMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != cols {
                return Err(LieError::DimensionMismatch {
                    context: "ragged rows".into(),
                });
            }
        }
        let a = rows.iter().flatten().map(|&v| v % p.get()).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, a })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.a[r * self.cols + c] = v % self.p.get();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }

    fn check_same_shape(&self, rhs: &FpMatrix) -> Result<()> {
        if self.p != rhs.p {
            return Err(LieError::ModulusMismatch(self.p.get(), rhs.p.get()));
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LieError::DimensionMismatch {
                context: format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, rhs.rows, rhs.cols
                ),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(rhs)?;
        let p = self.p.get();
        let a = self
            .a
            .iter()
            .zip(&rhs.a)
            .map(|(&x, &y)| add_m(x, y, p))
            .collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, a })
    }

    pub fn sub(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(rhs)?;
        let p = self.p.get();
        let a = self
            .a
            .iter()
            .zip(&rhs.a)
            .map(|(&x, &y)| sub_m(x, y, p))
            .collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, a })
    }

    pub fn scale(&self, s: u64) -> FpMatrix {
        let p = self.p.get();
        let s = s % p;
        let a = self.a.iter().map(|&x| mul_m(x, s, p)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, a }
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.p != rhs.p {
            return Err(LieError::ModulusMismatch(self.p.get(), rhs.p.get()));
        }
        if self.cols != rhs.rows {
            return Err(LieError::DimensionMismatch {
                context: format!(
                    "mul {}x{} by {}x{}",
                    self.rows, self.cols, rhs.rows, rhs.cols
                ),
            });
        }
        let p = self.p.get();
        let mut out = FpMatrix::zero(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0 {
                    continue;
                }
                let dst = i * rhs.cols;
                let src = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.a[dst + j] = (out.a[dst + j] + aik * rhs.a[src + j]) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(LieError::DimensionMismatch {
                context: format!("matvec {}x{} by {}", self.rows, self.cols, x.len()),
            });
        }
        let p = self.p.get();
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            let base = i * self.cols;
            for j in 0..self.cols {
                acc = (acc + self.a[base + j] * (x[j] % p)) % p;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Square-and-multiply power of a square matrix.
    pub fn pow(&self, mut e: u64) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(LieError::DimensionMismatch {
                context: format!("pow of {}x{}", self.rows, self.cols),
            });
        }
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// In-place reduced row echelon form with the crate-wide pivot rule:
    /// march through the columns left to right, and for each take the lowest
    /// not-yet-used row with a nonzero entry.  Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p.get();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(piv) =
                (next_row..self.rows).find(|&r| self.get(r, col) != 0)
            else {
                continue;
            };
            self.a.swap_chunks(piv, next_row, self.cols);
            let inv = inv_m(self.get(next_row, col), p).expect("pivot nonzero");
            for j in col..self.cols {
                let v = mul_m(self.get(next_row, j), inv, p);
                self.set(next_row, j, v);
            }
            for r in 0..self.rows {
                if r == next_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = sub_m(
                        self.get(r, j),
                        mul_m(factor, self.get(next_row, j), p),
                        p,
                    );
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref_in_place().len()
    }

    /// Solve `A x = b`.  Returns `Ok(None)` for inconsistent systems.  The
    /// solution is deterministic: free variables are set to zero.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(LieError::DimensionMismatch {
                context: format!("solve {}x{} with rhs {}", self.rows, self.cols, b.len()),
            });
        }
        let p = self.p.get();
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r] % p);
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the augmented column
        }
        let mut x = vec![0u64; self.cols];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// A basis of the right nullspace, in deterministic order (one vector
    /// per free column, ascending).
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p.get();
        let mut red = self.clone();
        let pivots = red.rref_in_place();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1 % p;
            for (i, &col) in pivots.iter().enumerate() {
                v[col] = neg_m(red.get(i, free), p);
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix.
    ///
    /// # Errors
    /// Singular input.
    pub fn inverse(&self) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(LieError::DimensionMismatch {
                context: format!("inverse of {}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(LieError::NotInvertible(format!("singular {n}x{n} matrix")));
        }
        let mut out = FpMatrix::zero(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(out)
    }
}

/// Swap two equal-length chunks of a flat buffer (helper for row swaps).
trait SwapChunks {
    fn swap_chunks(&mut self, i: usize, j: usize, len: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, i: usize, j: usize, len: usize) {
        if i == j {
            return;
        }
        for k in 0..len {
            self.swap(i * len + k, j * len + k);
        }
    }
}

/// Incremental row-space basis: insert vectors one at a time and watch the
/// rank grow.  Used for spanning checks over large point sets without
/// materializing a giant matrix.
pub struct RankAccumulator {
    p: Prime,
    cols: usize,
    /// Echelonized rows, keyed by leading column.
    rows: Vec<(usize, Vec<u64>)>,
}

impl RankAccumulator {
    pub fn new(p: Prime, cols: usize) -> RankAccumulator {
        RankAccumulator { p, cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; if a nonzero remainder survives, insert
    /// it and return true.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.cols);
        let p = self.p.get();
        let mut w: Vec<u64> = v.iter().map(|&x| x % p).collect();
        loop {
            let Some(lead) = w.iter().position(|&x| x != 0) else {
                return false;
            };
            match self.rows.binary_search_by_key(&lead, |r| r.0) {
                Ok(idx) => {
                    let factor = w[lead];
                    let basis = &self.rows[idx].1;
                    for k in lead..self.cols {
                        w[k] = sub_m(w[k], mul_m(factor, basis[k], p), p);
                    }
                }
                Err(idx) => {
                    let inv = inv_m(w[lead], p).expect("nonzero lead");
                    for x in w.iter_mut() {
                        *x = mul_m(*x, inv, p);
                    }
                    self.rows.insert(idx, (lead, w));
                    return true;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // ------------------------------------------------------------------
    // Independent oracles, written before the implementations above were
    // exercised.  They use different algorithms on purpose.
    // ------------------------------------------------------------------

    /// Inverse by Fermat's little theorem (vs. extended Euclid in `inv_m`).
    fn oracle_inv_fermat(a: u64, p: u64) -> u64 {
        pow_m(a, p - 2, p)
    }

    /// Rank by greedy row-space insertion with on-the-fly normalization —
    /// structurally different from the column-march in `rref_in_place`.
    fn oracle_rank(rows: &[Vec<u64>], p: u64) -> usize {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for row in rows {
            let mut w: Vec<u64> = row.iter().map(|&x| x % p).collect();
            for b in &basis {
                let lead = b.iter().position(|&x| x != 0).unwrap();
                if w[lead] != 0 {
                    let f = w[lead];
                    for k in 0..w.len() {
                        w[k] = sub_m(w[k], mul_m(f, b[k], p), p);
                    }
                }
            }
            if let Some(lead) = w.iter().position(|&x| x != 0) {
                let inv = oracle_inv_fermat(w[lead], p);
                for x in w.iter_mut() {
                    *x = mul_m(*x, inv, p);
                }
                // Keep basis triangular: reduce existing rows too.
                for b in basis.iter_mut() {
                    if b[lead] != 0 {
                        let f = b[lead];
                        for k in 0..w.len() {
                            b[k] = sub_m(b[k], mul_m(f, w[k], p), p);
                        }
                    }
                }
                basis.push(w);
                basis.sort_by_key(|b| b.iter().position(|&x| x != 0).unwrap());
            }
        }
        basis.len()
    }

    fn small_primes() -> Vec<u64> {
        (2..=101).filter(|&n| is_prime(n)).collect()
    }

    #[test]
    fn primality_basics() {
        assert!(is_prime(2) && is_prime(3) && is_prime(101));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91));
        assert!(Prime::new(6).is_err());
        assert!(Prime::new(13).is_ok());
    }

    #[test]
    fn inverse_two_mod_five_is_three() {
        let p = Prime::new(5).unwrap();
        assert_eq!(FpScalar::new(p, 2).inv().unwrap().value(), 3);
        assert_eq!(FpScalar::new(p, 1).inv().unwrap().value(), 1);
        assert!(FpScalar::new(p, 0).inv().is_err());
    }

    #[test]
    fn inverse_exhaustive_all_small_primes() {
        for p in small_primes() {
            let pr = Prime::new(p).unwrap();
            for a in 1..p {
                let s = FpScalar::new(pr, a);
                let inv = s.inv().unwrap();
                assert_eq!((s * inv).value(), 1, "a={a} p={p}");
                assert_eq!(inv.value(), oracle_inv_fermat(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn rank_trivia() {
        let p = Prime::new(5).unwrap();
        assert_eq!(FpMatrix::zero(p, 4, 7).rank(), 0);
        assert_eq!(FpMatrix::identity(p, 6).rank(), 6);
    }

    #[test]
    fn rank_agrees_with_oracle_random_20x20() {
        let p = Prime::new(5).unwrap();
        // Deterministic pseudo-random fill (LCG), frozen here.
        let mut state: u64 = 0x5eed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 5
        };
        for _ in 0..25 {
            let rows: Vec<Vec<u64>> = (0..20).map(|_| (0..20).map(|_| next()).collect()).collect();
            let m = FpMatrix::from_rows(p, &rows).unwrap();
            assert_eq!(m.rank(), oracle_rank(&rows, 5));
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // Rows differing by an even multiple collapse mod 2 but not mod 5.
        let rows = vec![vec![1, 2], vec![1, 4]];
        let m2 = FpMatrix::from_rows(Prime::new(2).unwrap(), &rows).unwrap();
        let m5 = FpMatrix::from_rows(Prime::new(5).unwrap(), &rows).unwrap();
        assert_eq!(m2.rank(), 1);
        assert_eq!(m5.rank(), 2);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let p = Prime::new(7).unwrap();
        let id = FpMatrix::identity(p, 3);
        assert_eq!(id.solve(&[4, 0, 6]).unwrap(), Some(vec![4, 0, 6]));
        // 0·x = 1 has no solution.
        let zero = FpMatrix::zero(p, 1, 1);
        assert_eq!(zero.solve(&[1]).unwrap(), None);
    }

    #[test]
    fn solve_constructed_consistent_system() {
        let p = Prime::new(3).unwrap();
        let a = FpMatrix::from_rows(p, &[vec![1, 2, 0], vec![2, 1, 1], vec![0, 1, 2], vec![1, 0, 1]])
            .unwrap();
        let x0 = vec![2u64, 1, 2];
        let b = a.matvec(&x0).unwrap();
        let x = a.solve(&b).unwrap().expect("consistent by construction");
        assert_eq!(a.matvec(&x).unwrap(), b);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let p = Prime::new(5).unwrap();
        let a = FpMatrix::from_rows(p, &[vec![1, 2, 3, 4], vec![2, 4, 1, 3]]).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.len(), 4 - a.rank());
        for v in &ns {
            assert!(a.matvec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_matrix_roundtrip() {
        let p = Prime::new(7).unwrap();
        let a = FpMatrix::from_rows(p, &[vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FpMatrix::identity(p, 3));
        assert_eq!(inv.mul(&a).unwrap(), FpMatrix::identity(p, 3));
        let sing = FpMatrix::from_rows(p, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn rank_accumulator_matches_batch_rank() {
        let p = Prime::new(3).unwrap();
        let rows = vec![
            vec![1, 2, 0, 1],
            vec![2, 1, 0, 2],
            vec![0, 0, 0, 0],
            vec![1, 2, 0, 2],
            vec![2, 4 % 3, 0, 2],
        ];
        let mut acc = RankAccumulator::new(p, 4);
        for r in &rows {
            acc.insert(r);
        }
        let m = FpMatrix::from_rows(p, &rows).unwrap();
        assert_eq!(acc.rank(), m.rank());
    }

    #[test]
    fn rref_is_deterministic_golden() {
        // Frozen echelon form: documents the pivot rule (leftmost column,
        // lowest row) so accidental pivot-strategy changes fail loudly.
        let p = Prime::new(5).unwrap();
        let mut m =
            FpMatrix::from_rows(p, &[vec![0, 2, 1], vec![3, 1, 4], vec![3, 3, 0]]).unwrap();
        let pivots = m.rref_in_place();
        assert_eq!(pivots, vec![0, 1]);
        let expect =
            FpMatrix::from_rows(p, &[vec![1, 0, 2], vec![0, 1, 3], vec![0, 0, 0]]).unwrap();
        assert_eq!(m, expect);
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(seed in 0u64..5000) {
            let p = Prime::new(7).unwrap();
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % 7
            };
            let rows: Vec<Vec<u64>> = (0..6).map(|_| (0..9).map(|_| next()).collect()).collect();
            let m = FpMatrix::from_rows(p, &rows).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_result_substitutes(seed in 0u64..3000) {
            let p = Prime::new(3).unwrap();
            let mut state = seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(7);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % 3
            };
            let rows: Vec<Vec<u64>> = (0..5).map(|_| (0..4).map(|_| next()).collect()).collect();
            let b: Vec<u64> = (0..5).map(|_| next()).collect();
            let m = FpMatrix::from_rows(p, &rows).unwrap();
            if let Some(x) = m.solve(&b).unwrap() {
                prop_assert_eq!(m.matvec(&x).unwrap(), b);
            }
        }
    }
}
