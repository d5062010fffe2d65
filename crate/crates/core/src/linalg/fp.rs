//! Dense matrices over a prime field GF(p).
//!
//! Entries are stored row-major as `u32` residues in `[0, p)`. Matrices act on
//! column vectors, so a module generator `X` sends `v` to `X * v`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_PRIME: u32 = 1 << 16;

/// Work threshold (multiply-adds) above which products run on the rayon pool.
const PAR_THRESHOLD: usize = 1 << 18;

/// Primes below this use a 32-bit reduction that the compiler vectorizes.
const SMALL_PRIME: u32 = 128;

/// Arithmetic in GF(p) with a precomputed reciprocal for fast reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
    magic: u64,
    /// `floor(2^22 / p) + 1`, exact for reducing values below `p^2` when `p < 128`.
    small: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self::new_unchecked(p))
    }

    pub(crate) fn new_unchecked(p: u32) -> Self {
        Fp {
            p,
            magic: (u64::MAX / p as u64).wrapping_add(1),
            small: if p < SMALL_PRIME { (1u32 << 22) / p + 1 } else { 0 },
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces any 32-bit value modulo p (Lemire's fastmod).
    #[inline(always)]
    pub fn reduce(&self, x: u32) -> u32 {
        let low = self.magic.wrapping_mul(x as u64);
        ((low as u128 * self.p as u128) >> 64) as u32
    }

    #[inline(always)]
    pub fn reduce64(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, (self.p - 2) as u64)
    }

    /// `dst[i] += c * src[i]` for every i.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], c: u32, src: &[u32]) {
        if c == 0 {
            return;
        }
        if self.small != 0 {
            small_axpy(dst, c, src, self.p, self.small);
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.reduce(*d + c * s);
        }
    }

    pub fn scale(&self, v: &mut [u32], c: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}

#[inline(always)]
fn small_axpy_body(dst: &mut [u32], c: u32, src: &[u32], p: u32, m: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = *d + c * s;
        *d = t - ((t * m) >> 22) * p;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn small_axpy_avx2(dst: &mut [u32], c: u32, src: &[u32], p: u32, m: u32) {
    small_axpy_body(dst, c, src, p, m)
}

#[inline]
fn small_axpy(dst: &mut [u32], c: u32, src: &[u32], p: u32, m: u32) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2, checked just above.
            unsafe { small_axpy_avx2(dst, c, src, p, m) };
            return;
        }
    }
    small_axpy_body(dst, c, src, p, m)
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows.min(24) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(24)])?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from already reduced row-major data.
    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        debug_assert!(data.iter().all(|&x| x < p));
        FpMatrix {
            p,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let f = Fp::new_unchecked(p);
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| f.from_i64(x)));
        }
        FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(p: u32, n: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n);
            for i in 0..n {
                m.data[i * m.cols + j] = c[i];
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors (all of length `n`).
    pub fn from_row_vecs(p: u32, n: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * n);
        for r in rows {
            assert_eq!(r.len(), n);
            data.extend_from_slice(r);
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols: n,
            data,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn field(&self) -> Fp {
        Fp::new_unchecked(self.p)
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn add(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = self.field();
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        self.with_data(data)
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = self.field();
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field();
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<u32>) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self += c * o`
    pub fn add_scaled_assign(&mut self, c: u32, o: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = self.field();
        f.axpy(&mut self.data, c, &o.data);
    }

    /// Matrix product. Zero entries of `self` are skipped, which matters for
    /// the sparse nilpotent matrices that dominate module computations.
    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        assert_eq!(self.p, o.p);
        let (n, m) = (self.rows, o.cols);
        let mut out = FpMatrix::zeros(self.p, n, m);
        if n == 0 || m == 0 || self.cols == 0 {
            return out;
        }
        let f = self.field();
        let p = self.p as u64;
        // Products are < 2^32, so reduce the accumulator before it can overflow.
        let flush_every = (u64::MAX / ((p - 1) * (p - 1)).max(1)).saturating_sub(1).max(1);
        let compute_row = |i: usize, out_row: &mut [u32]| {
            if f.small != 0 {
                for (k, &a) in self.row(i).iter().enumerate() {
                    f.axpy(out_row, a, o.row(k));
                }
                return;
            }
            let mut acc = vec![0u64; m];
            let mut pending = 0u64;
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (s, &b) in acc.iter_mut().zip(o.row(k)) {
                    *s += a * b as u64;
                }
                pending += 1;
                if pending >= flush_every {
                    for s in acc.iter_mut() {
                        *s %= p;
                    }
                    pending = 0;
                }
            }
            for (d, s) in out_row.iter_mut().zip(acc) {
                *d = f.reduce64(s);
            }
        };
        if n * m * self.cols >= PAR_THRESHOLD && n > 1 {
            out.data
                .par_chunks_mut(m)
                .enumerate()
                .for_each(|(i, row)| compute_row(i, row));
        } else {
            for (i, row) in out.data.chunks_mut(m).enumerate() {
                compute_row(i, row);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(&a, _)| a != 0)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Row vector times matrix: `v^T * self`.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.rows, v.len());
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (s, &b) in acc.iter_mut().zip(self.row(k)) {
                *s += a as u64 * b as u64;
            }
        }
        acc.into_iter().map(|s| (s % p) as u32).collect()
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product; `(A ⊗ B)(u ⊗ v) = Au ⊗ Bv` with `u ⊗ v` indexed as `i * dim(v) + j`.
    pub fn kron(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, o.p);
        let f = self.field();
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = FpMatrix::zeros(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..o.rows {
                    let dst = (i * o.rows + k) * c + j * o.cols;
                    for (l, &b) in o.row(k).iter().enumerate() {
                        out.data[dst + l] = f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal matrix.
    pub fn block_diag(p: u32, blocks: &[&FpMatrix]) -> FpMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(p, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                let dst = (r0 + i) * c + c0;
                out.data[dst..dst + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, o.rows);
        let c = self.cols + o.cols;
        let mut out = FpMatrix::zeros(self.p, self.rows, c);
        for i in 0..self.rows {
            out.data[i * c..i * c + self.cols].copy_from_slice(self.row(i));
            out.data[i * c + self.cols..(i + 1) * c].copy_from_slice(o.row(i));
        }
        out
    }

    pub fn vstack(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FpMatrix {
            p: self.p,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[i * idx.len() + j] = self.get(i, c);
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            f.scale(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let prow = &prow[c..];
            let eliminate = |row: &mut [u32]| {
                let a = row[c];
                if a != 0 {
                    f.axpy(&mut row[c..], f.neg(a), prow);
                }
            };
            if rows * cols > PAR_THRESHOLD {
                head.par_chunks_mut(cols).for_each(eliminate);
                rest.par_chunks_mut(cols).for_each(eliminate);
            } else {
                head.chunks_mut(cols).for_each(eliminate);
                rest.chunks_mut(cols).for_each(eliminate);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of the right null space as the columns of a `cols x k` matrix.
    /// Row `f` of the result is the unit vector at the f-th free column, so a
    /// null vector's coordinates are its entries at the free columns.
    pub fn kernel_matrix(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field();
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = FpMatrix::zeros(self.p, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1 % self.p);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        (k, free)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        self.kernel_matrix().0.columns()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&FpMatrix::identity(self.p, n));
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_cols(&idx))
    }

    /// One solution `X` of `self * X = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, b.rows);
        let n = self.cols;
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.p, n, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, n + j));
            }
        }
        Some(x)
    }

    /// Jordan block sizes of a nilpotent matrix, descending.
    pub fn nilpotent_profile(&self) -> Result<Vec<usize>> {
        if !self.is_square() {
            return Err(Error::Shape("nilpotent_profile needs a square matrix".into()));
        }
        let n = self.rows;
        let mut ranks = vec![n];
        let mut pw = FpMatrix::identity(self.p, n);
        while *ranks.last().unwrap() > 0 {
            if ranks.len() > n + 1 {
                return Err(Error::NotNilpotent);
            }
            pw = pw.mul(self);
            let rk = pw.rank();
            if rk == *ranks.last().unwrap() {
                return Err(Error::NotNilpotent);
            }
            ranks.push(rk);
        }
        // blocks of size >= k: ranks[k-1] - ranks[k]
        let mut at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        at_least.push(0);
        let mut sizes = Vec::new();
        for k in (1..at_least.len()).rev() {
            let exact = at_least[k - 1] - at_least[k];
            sizes.extend(std::iter::repeat(k).take(exact));
        }
        Ok(sizes)
    }
}

/// Kernel of `a` (free function form).
pub fn kernel_basis(a: &FpMatrix) -> Vec<Vec<u32>> {
    a.kernel_basis()
}

pub fn rank(a: &FpMatrix) -> usize {
    a.rank()
}

pub fn kron(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    a.kron(b)
}

/// One solution of `a * X = b`.
pub fn solve_affine(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    if a.rows() != b.rows() {
        return Err(Error::Shape("solve_affine: row counts differ".into()));
    }
    a.solve(b).ok_or(Error::Inconsistent)
}

pub fn nilpotent_profile(a: &FpMatrix) -> Result<Vec<usize>> {
    a.nilpotent_profile()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g_minus_i() -> FpMatrix {
        FpMatrix::from_rows(3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]])
    }

    fn random_matrix(p: u32, r: usize, c: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..p)).collect();
        FpMatrix::from_data(p, r, c, data)
    }

    #[test]
    fn fastmod_matches_remainder() {
        for &p in &[2u32, 3, 5, 7, 65521] {
            let f = Fp::new_unchecked(p);
            for x in [0u32, 1, 2, p - 1, p, p + 1, 12345, u32::MAX, (p - 1) * (p - 1)] {
                assert_eq!(f.reduce(x), x % p);
            }
        }
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(65537).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(3, 3).rank(), 3);
        assert_eq!(FpMatrix::zeros(2, 2, 5).rank(), 0);
        assert_eq!(g_minus_i().rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(5, 4).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(3, 4, 4).kernel_basis().len(), 4);
        let k = g_minus_i().kernel_basis();
        assert_eq!(k, vec![vec![1, 0, 0]]);
    }

    #[test]
    fn solve_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = random_matrix(5, 4, 3, &mut rng);
        assert_eq!(solve_affine(&FpMatrix::identity(5, 4), &b).unwrap(), b);
        let z = FpMatrix::zeros(5, 2, 2);
        let nz = FpMatrix::identity(5, 2);
        assert!(matches!(solve_affine(&z, &nz), Err(Error::Inconsistent)));
        let a = loop {
            let a = random_matrix(5, 4, 4, &mut rng);
            if a.rank() == 4 {
                break a;
            }
        };
        let x = solve_affine(&a, &a).unwrap();
        assert!(x.is_identity());
        assert_eq!(a.mul(&a.inverse().unwrap()), FpMatrix::identity(5, 4));
    }

    #[test]
    fn kron_examples() {
        let k = FpMatrix::identity(3, 2).kron(&FpMatrix::identity(3, 3));
        assert!(k.is_identity() && k.rows() == 6);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(3, 2, 2, &mut rng);
        let b = random_matrix(3, 3, 3, &mut rng);
        let ab = a.kron(&b);
        assert_eq!((ab.rows(), ab.cols()), (6, 6));
        let g = g_minus_i().add(&FpMatrix::identity(3, 3));
        let gg = g.kron(&g);
        // block (0,1) of g⊗g is g[0][1]·g = g
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(gg.get(i, 3 + j), g.get(i, j));
            }
        }
    }

    #[test]
    fn nilpotent_profile_examples() {
        assert_eq!(FpMatrix::zeros(3, 3, 3).nilpotent_profile().unwrap(), vec![1, 1, 1]);
        let mut j4 = FpMatrix::zeros(5, 4, 4);
        for i in 0..3 {
            j4.set(i, i + 1, 1);
        }
        assert_eq!(j4.nilpotent_profile().unwrap(), vec![4]);
        // regular representation of Z/5: cyclic shift minus identity
        let mut shift = FpMatrix::zeros(5, 5, 5);
        for i in 0..5 {
            shift.set((i + 1) % 5, i, 1);
        }
        let x = shift.sub(&FpMatrix::identity(5, 5));
        assert_eq!(x.nilpotent_profile().unwrap(), vec![5]);
        assert!(matches!(
            FpMatrix::identity(3, 2).nilpotent_profile(),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn product_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[2u32, 3, 65521] {
            let a = random_matrix(p, 7, 9, &mut rng);
            let b = random_matrix(p, 9, 4, &mut rng);
            let c = a.mul(&b);
            for i in 0..7 {
                for j in 0..4 {
                    let s: u64 = (0..9).map(|k| a.get(i, k) as u64 * b.get(k, j) as u64).sum();
                    assert_eq!(c.get(i, j) as u64, s % p as u64);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest, Strategy};

        fn arb_matrix() -> impl Strategy<Value = FpMatrix> {
            (prop::sample::select(vec![2u32, 3, 5, 7]), 0usize..7, 0usize..7, any::<u64>()).prop_map(
                |(p, r, c, seed)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    random_matrix(p, r, c, &mut rng)
                },
            )
        }

        proptest! {
            #[test]
            fn rank_nullity(a in arb_matrix()) {
                let k = a.kernel_basis();
                prop_assert_eq!(a.rank() + k.len(), a.cols());
                for v in &k {
                    prop_assert!(a.mul_vec(v).iter().all(|&x| x == 0));
                }
            }

            #[test]
            fn kron_associative(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = random_matrix(3, 2, 3, &mut rng);
                let b = random_matrix(3, 3, 2, &mut rng);
                let c = random_matrix(3, 2, 2, &mut rng);
                prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
            }

            #[test]
            fn profile_conjugation_invariant(seed in any::<u64>(), n in 1usize..7) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let p = 3;
                let mut x = FpMatrix::zeros(p, n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        x.set(i, j, rng.gen_range(0..p));
                    }
                }
                let s = loop {
                    let s = random_matrix(p, n, n, &mut rng);
                    if s.rank() == n { break s; }
                };
                let conj = s.mul(&x).mul(&s.inverse().unwrap());
                let prof = x.nilpotent_profile().unwrap();
                prop_assert_eq!(prof.iter().sum::<usize>(), n);
                prop_assert_eq!(prof, conj.nilpotent_profile().unwrap());
            }
        }
    }
}
