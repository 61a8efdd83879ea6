//! Exact dense linear algebra over GF(q).

mod charpoly;
mod gf2;
mod jordan;

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::par::{self, Execution};
use crate::poly::{Factorization, Polynomial};

pub use jordan::{JordanBlock, JordanStructure};

/// Bit-length ceiling for direct powering.
pub const DEFAULT_EXP_BITS: u64 = 1 << 20;

/// Dimension from which generic products split rows across threads.
const PARALLEL_MUL_DIM: usize = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("matrices belong to different fields")]
    SpecMismatch,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("empty block list")]
    EmptyList,
    #[error("exponent has {bits} bits, above the direct-powering ceiling of {ceiling}")]
    ExponentTooLarge { bits: u64, ceiling: u64 },
    #[error("matrix is singular")]
    Singular,
}

/// Row-major `n x n` matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    field: Field,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl SquareMatrix {
    pub fn new(field: &Field, n: usize, entries: Vec<Elem>) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::ShapeMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(SquareMatrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(MatrixError::ShapeMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Self::new(field, n, rows.concat())
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        SquareMatrix {
            field: field.clone(),
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &v)| v == if k / n == k % n { 1 } else { 0 })
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::SpecMismatch);
        }
        if self.n != other.n {
            return Err(MatrixError::ShapeMismatch {
                expected: self.n * self.n,
                got: other.n * other.n,
            });
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    /// Product without compatibility checks; callers guarantee shape and field.
    /// Rows are computed in parallel from dimension `PARALLEL_MUL_DIM` up.
    pub fn mul(&self, other: &Self) -> Self {
        let exec = if self.n >= PARALLEL_MUL_DIM {
            Execution::Parallel
        } else {
            Execution::Sequential
        };
        self.mul_with(other, exec)
    }

    /// [`SquareMatrix::mul`] with an explicit execution mode. The packed
    /// GF(2) kernel is always sequential.
    pub fn mul_with(&self, other: &Self, exec: Execution) -> Self {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let field = &self.field;
        if field.is_gf2() {
            let a = gf2::BitMatrix::from_entries(n, &self.entries);
            let b = gf2::BitMatrix::from_entries(n, &other.entries);
            return SquareMatrix {
                field: field.clone(),
                n,
                entries: a.mul(&b).to_entries(),
            };
        }
        let mut out = vec![0; n * n];
        if field.is_prime_field() {
            let p = field.p() as u128;
            par::for_each_row(exec, &mut out, n.max(1), |i, row| {
                let a = &self.entries[i * n..(i + 1) * n];
                let mut acc = vec![0u128; n];
                for (k, &aik) in a.iter().enumerate() {
                    if aik == 0 {
                        continue;
                    }
                    let b = &other.entries[k * n..(k + 1) * n];
                    for (s, &bkj) in acc.iter_mut().zip(b) {
                        *s += aik as u128 * bkj as u128;
                    }
                }
                for (o, s) in row.iter_mut().zip(acc) {
                    *o = (s % p) as Elem;
                }
            });
        } else {
            par::for_each_row(exec, &mut out, n.max(1), |i, row| {
                let a = &self.entries[i * n..(i + 1) * n];
                for (k, &aik) in a.iter().enumerate() {
                    if aik == 0 {
                        continue;
                    }
                    let b = &other.entries[k * n..(k + 1) * n];
                    for (o, &bkj) in row.iter_mut().zip(b) {
                        *o = field.add(*o, field.mul(aik, bkj));
                    }
                }
            });
        }
        SquareMatrix {
            field: field.clone(),
            n,
            entries: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        SquareMatrix {
            field: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        SquareMatrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self + c * I`.
    pub fn add_scalar(&self, c: Elem) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = self.field.add(m.get(i, i), c);
            m.set(i, i, v);
        }
        m
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        if self.field.is_gf2() {
            return gf2::BitMatrix::from_entries(n, &self.entries).rank();
        }
        let f = &self.field;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            if piv != rank {
                for k in 0..n {
                    m.swap(piv * n + k, rank * n + k);
                }
            }
            let inv = f.inv(m[rank * n + col]).unwrap();
            for r in rank + 1..n {
                let factor = f.mul(m[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for k in col..n {
                    let v = f.mul(factor, m[rank * n + k]);
                    m[r * n + k] = f.sub(m[r * n + k], v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// `rank(A - I)`.
    pub fn degree(&self) -> usize {
        self.add_scalar(self.field.neg(1)).rank()
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.n;
        let f = &self.field;
        let w = 2 * n;
        let mut m = vec![0; n * w];
        for i in 0..n {
            m[i * w..i * w + n].copy_from_slice(self.row(i));
            m[i * w + n + i] = 1;
        }
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| m[r * w + col] != 0)
                .ok_or(MatrixError::Singular)?;
            if piv != col {
                for k in 0..w {
                    m.swap(piv * w + k, col * w + k);
                }
            }
            let inv = f.inv(m[col * w + col]).unwrap();
            for k in 0..w {
                m[col * w + k] = f.mul(m[col * w + k], inv);
            }
            for r in 0..n {
                let factor = m[r * w + col];
                if r == col || factor == 0 {
                    continue;
                }
                for k in 0..w {
                    let v = f.mul(factor, m[col * w + k]);
                    m[r * w + k] = f.sub(m[r * w + k], v);
                }
            }
        }
        let entries = (0..n)
            .flat_map(|i| m[i * w + n..(i + 1) * w].to_vec())
            .collect();
        Ok(SquareMatrix {
            field: f.clone(),
            n,
            entries,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// `P * self * P^-1`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self, MatrixError> {
        let p_inv = p.inverse()?;
        Ok(p.mat_mul(self)?.mul(&p_inv))
    }

    pub fn pow_u64(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(&self.field, self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `A^k` by binary exponentiation; exponents longer than `ceiling_bits`
    /// are refused.
    pub fn pow_big(&self, k: &BigUint, ceiling_bits: u64) -> Result<Self, MatrixError> {
        let bits = k.bits();
        if bits > ceiling_bits {
            return Err(MatrixError::ExponentTooLarge {
                bits,
                ceiling: ceiling_bits,
            });
        }
        let mut acc = Self::identity(&self.field, self.n);
        for i in (0..bits).rev() {
            acc = acc.mul(&acc);
            if k.bit(i) {
                acc = acc.mul(self);
            }
        }
        Ok(acc)
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &Polynomial) -> Self {
        let mut acc = Self::zero(&self.field, self.n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add_scalar(c);
        }
        acc
    }

    pub fn mat_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Characteristic polynomial via Hessenberg reduction.
    pub fn charpoly(&self) -> Polynomial {
        charpoly::hessenberg_charpoly(self)
    }

    /// Minimal polynomial as the lcm of Krylov-chain relations.
    pub fn minpoly(&self) -> Polynomial {
        charpoly::krylov_minpoly(self)
    }

    pub fn jordan_structure(&self, seed: u64) -> JordanStructure {
        jordan::jordan_structure(self, seed)
    }

    /// As [`jordan_structure`](Self::jordan_structure), reusing a known
    /// factorization of the characteristic polynomial.
    pub fn jordan_structure_from(&self, fact: Factorization) -> JordanStructure {
        jordan::jordan_from_factorization(self, fact)
    }
}

/// Companion matrix: ones on the subdiagonal, last column `-c_0 .. -c_{d-1}`.
pub fn companion(f: &Polynomial) -> Result<SquareMatrix, MatrixError> {
    if !f.is_monic() || f.deg0() == 0 {
        return Err(MatrixError::NotMonic);
    }
    let field = f.field();
    let d = f.deg0();
    let mut m = SquareMatrix::zero(field, d);
    for i in 1..d {
        m.set(i, i - 1, 1);
    }
    for i in 0..d {
        m.set(i, d - 1, field.neg(f.coeff(i)));
    }
    Ok(m)
}

/// Direct sum of square blocks.
pub fn block_diag(blocks: &[SquareMatrix]) -> Result<SquareMatrix, MatrixError> {
    let first = blocks.first().ok_or(MatrixError::EmptyList)?;
    if blocks.iter().any(|b| b.field != first.field) {
        return Err(MatrixError::SpecMismatch);
    }
    let n: usize = blocks.iter().map(|b| b.n).sum();
    let mut m = SquareMatrix::zero(&first.field, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.n {
            for j in 0..b.n {
                m.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.n;
    }
    Ok(m)
}

/// Generalized Jordan block: `size` copies of `C_f` on the diagonal with
/// identity blocks on the block superdiagonal.
pub fn generalized_jordan_block(f: &Polynomial, size: usize) -> Result<SquareMatrix, MatrixError> {
    let c = companion(f)?;
    let d = c.n;
    let blocks = vec![c; size.max(1)];
    let mut m = block_diag(&blocks)?;
    for b in 0..size.saturating_sub(1) {
        for i in 0..d {
            m.set(b * d + i, (b + 1) * d + i, 1);
        }
    }
    Ok(m)
}
