//! Seeded generators for random polynomials, matrices and instances with a
//! known Jordan structure.

use rand::Rng;

use crate::gf::{Elem, Field};
use crate::matrix::{block_diag, generalized_jordan_block, SquareMatrix};
use crate::poly::Polynomial;

pub fn random_elem<R: Rng>(field: &Field, rng: &mut R) -> Elem {
    rng.gen_range(0..field.q()) as Elem
}

pub fn random_nonzero<R: Rng>(field: &Field, rng: &mut R) -> Elem {
    rng.gen_range(1..field.q()) as Elem
}

/// Random polynomial of degree exactly `d` (not necessarily monic).
pub fn random_poly<R: Rng>(field: &Field, d: usize, rng: &mut R) -> Polynomial {
    let mut c: Vec<Elem> = (0..d).map(|_| random_elem(field, rng)).collect();
    c.push(random_nonzero(field, rng));
    Polynomial::new(field, c)
}

/// Random monic irreducible of degree `d` with nonzero constant term.
/// For `d = 1` and `nontrivial`, `x - 1` is excluded as well.
pub fn random_irreducible<R: Rng>(
    field: &Field,
    d: usize,
    nontrivial: bool,
    rng: &mut R,
) -> Option<Polynomial> {
    if d == 1 && nontrivial && field.q() == 2 {
        return None;
    }
    loop {
        let mut c: Vec<Elem> = (0..d).map(|_| random_elem(field, rng)).collect();
        c.push(1);
        let f = Polynomial::new(field, c);
        if f.coeff(0) == 0 || (nontrivial && f.is_x_minus_one()) {
            continue;
        }
        if f.is_irreducible().unwrap_or(false) {
            return Some(f);
        }
    }
}

pub fn random_matrix<R: Rng>(field: &Field, n: usize, rng: &mut R) -> SquareMatrix {
    let entries = (0..n * n).map(|_| random_elem(field, rng)).collect();
    SquareMatrix::new(field, n, entries).unwrap()
}

pub fn random_invertible<R: Rng>(field: &Field, n: usize, rng: &mut R) -> SquareMatrix {
    loop {
        let m = random_matrix(field, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `P A P^-1` for a random invertible `P`.
pub fn random_conjugate<R: Rng>(a: &SquareMatrix, rng: &mut R) -> SquareMatrix {
    let p = random_invertible(a.field(), a.n(), rng);
    a.conjugate_by(&p).unwrap()
}

/// A block with its generating factor and stacked size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlannedBlock {
    pub factor: Polynomial,
    pub size: usize,
}

/// Block diagonal of generalized Jordan blocks.
pub fn assemble(blocks: &[PlannedBlock]) -> SquareMatrix {
    let mats: Vec<SquareMatrix> = blocks
        .iter()
        .map(|b| generalized_jordan_block(&b.factor, b.size).unwrap())
        .collect();
    block_diag(&mats).unwrap()
}

/// Random blocks with factor degrees drawn from `degrees` and sizes from
/// `1..=max_size`, stopping before the dimension would exceed `max_n`.
/// Degree-1 factors are `x - 1` with probability one half.
pub fn random_blocks<R: Rng>(
    field: &Field,
    degrees: &[usize],
    max_size: usize,
    max_n: usize,
    rng: &mut R,
) -> Vec<PlannedBlock> {
    let mut out = Vec::new();
    let mut used = 0;
    let mut misses = 0;
    while misses < 8 {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let size = rng.gen_range(1..=max_size);
        if used + d * size > max_n {
            misses += 1;
            continue;
        }
        let factor = if d == 1 && (field.q() == 2 || rng.gen_bool(0.5)) {
            Polynomial::linear(field, 1)
        } else {
            match random_irreducible(field, d, true, rng) {
                Some(f) => f,
                None => continue,
            }
        };
        used += d * size;
        out.push(PlannedBlock { factor, size });
    }
    if out.is_empty() {
        out.push(PlannedBlock {
            factor: Polynomial::linear(field, 1),
            size: 1,
        });
    }
    out
}
