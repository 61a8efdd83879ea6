//! Generalized Jordan block structure from rank sequences.
//!
//! For an irreducible factor `f` of degree `d` the number of Jordan blocks
//! of size at least `j` is `(rank f(A)^(j-1) - rank f(A)^j) / d`, where a
//! block's size counts the stacked companion blocks, not its dimension.

use super::SquareMatrix;
use crate::poly::{factor, Factorization, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub factor: Polynomial,
    /// Number of stacked copies of `C_f`; the block has dimension `size * deg f`.
    pub size: usize,
    pub multiplicity: usize,
}

impl JordanBlock {
    pub fn dimension(&self) -> usize {
        self.size * self.factor.deg0()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanStructure {
    pub n: usize,
    /// Sorted by factor (canonical order), then size.
    pub blocks: Vec<JordanBlock>,
    pub factorization: Factorization,
}

impl JordanStructure {
    /// `sum multiplicity * size * deg f`; equals `n` for a valid structure.
    pub fn total_dimension(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.multiplicity * b.dimension())
            .sum()
    }

    pub fn max_block_size(&self, f: &Polynomial) -> usize {
        self.blocks
            .iter()
            .filter(|b| &b.factor == f)
            .map(|b| b.size)
            .max()
            .unwrap_or(0)
    }

    /// `prod f^(max block size)`, which must equal the minimal polynomial.
    pub fn minpoly(&self) -> Polynomial {
        let mut acc = Polynomial::one(&self.factorization.field);
        for (f, _) in &self.factorization.factors {
            acc = acc.mul(&f.pow(self.max_block_size(f) as u64));
        }
        acc
    }
}

pub(super) fn jordan_structure(a: &SquareMatrix, seed: u64) -> JordanStructure {
    let fact = factor(&a.charpoly(), seed).expect("characteristic polynomial is monic");
    jordan_from_factorization(a, fact)
}

pub(super) fn jordan_from_factorization(a: &SquareMatrix, fact: Factorization) -> JordanStructure {
    let n = a.n;
    let mut blocks = Vec::new();
    for (f, e) in &fact.factors {
        let d = f.deg0();
        let target = n - d * *e as usize;
        let base = a.eval_poly(f);
        let mut ranks = vec![n];
        let mut power = base.clone();
        loop {
            let r = power.rank();
            ranks.push(r);
            if r == target {
                break;
            }
            power = power.mul(&base);
        }
        // at_least[j] = number of blocks of size >= j + 1
        let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / d).collect();
        for (j, &cnt) in at_least.iter().enumerate() {
            let exact = cnt - at_least.get(j + 1).copied().unwrap_or(0);
            if exact > 0 {
                blocks.push(JordanBlock {
                    factor: f.clone(),
                    size: j + 1,
                    multiplicity: exact,
                });
            }
        }
    }
    JordanStructure {
        n,
        blocks,
        factorization: fact,
    }
}
