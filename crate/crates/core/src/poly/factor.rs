//! Squarefree, distinct-degree and equal-degree factorization.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyError, Polynomial};
use crate::gf::{Elem, Field};

/// `unit * prod factor^multiplicity`, factors monic irreducible and sorted
/// canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub field: Field,
    pub unit: Elem,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(&self.field, self.unit),
            |acc, (f, k)| acc.mul(&f.pow(*k as u64)),
        )
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, k)| f.deg0() * *k as usize)
            .sum()
    }

    /// Multiplicity of `x - 1`, i.e. the unipotent dimension `t`.
    pub fn unipotent_multiplicity(&self) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| f.is_x_minus_one())
            .map(|(_, k)| *k)
            .unwrap_or(0)
    }

    /// Factors other than `x - 1`.
    pub fn non_unipotent(&self) -> impl Iterator<Item = &(Polynomial, u32)> {
        self.factors.iter().filter(|(f, _)| !f.is_x_minus_one())
    }
}

/// Factors a nonzero polynomial completely. The seed drives only the
/// randomized equal-degree splitting; the output does not depend on it.
pub fn factor(f: &Polynomial, seed: u64) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut merged: BTreeMap<Polynomial, u32> = BTreeMap::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d, &mut rng) {
                *merged.entry(irr).or_default() += mult;
            }
        }
    }
    Ok(Factorization {
        field,
        unit,
        factors: merged.into_iter().collect(),
    })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, k)` with `g`
/// squarefree and `f = prod g^k`. An irreducible may appear in two pairs
/// (once with multiplicity below `p`, once with a multiple of `p`).
pub fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    sqf_inner(f, 1, &mut out);
    out
}

fn sqf_inner(f: &Polynomial, scale: u32, out: &mut Vec<(Polynomial, u32)>) {
    if f.deg0() == 0 {
        return;
    }
    let p = f.field().p() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.deg0() > 0 {
            out.push((fac.monic(), i * scale));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        // everything left is a p-th power: the field is perfect
        sqf_inner(&c.monic().pth_root(), scale * p, out);
    }
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree, using `x^(q^d) mod f`.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let q = field.q();
    let x = Polynomial::x(field);
    let mut g = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while g.deg0() >= 2 * d {
        h = h.pow_mod_u64(q, &g);
        let t = g.gcd(&h.sub(&x));
        if !t.is_one() {
            g = g.div_rem(&t).0;
            h = h.rem(&g);
            out.push((t, d));
        }
        d += 1;
    }
    if g.deg0() > 0 {
        let d = g.deg0();
        out.push((g, d));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d`: Cantor-Zassenhaus
/// for odd `q`, absolute-trace splitting for even `q`.
fn equal_degree(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = f.deg0();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.q();
    let half_exp = (q % 2 == 1).then(|| (BigUint::from(q).pow(d as u32) - BigUint::one()) >> 1);
    loop {
        let a = random_poly(field, n, rng);
        if a.deg0() == 0 {
            continue;
        }
        let g = f.gcd(&a);
        let cand = if g.deg0() > 0 {
            g
        } else {
            let b = match &half_exp {
                Some(e) => a.pow_mod(e, f).sub(&Polynomial::one(field)),
                None => trace_map(&a, field.e() as usize * d, f),
            };
            f.gcd(&b)
        };
        let k = cand.deg0();
        if k > 0 && k < n {
            let rest = f.div_rem(&cand).0;
            let mut out = equal_degree(&cand, d, rng);
            out.extend(equal_degree(&rest.monic(), d, rng));
            return out;
        }
    }
}

/// `a + a^2 + a^4 + ... + a^(2^(k-1)) mod f`.
fn trace_map(a: &Polynomial, k: usize, f: &Polynomial) -> Polynomial {
    let mut term = a.rem(f);
    let mut acc = term.clone();
    for _ in 1..k {
        term = term.mul_mod(&term, f);
        acc = acc.add(&term);
    }
    acc
}

fn random_poly(field: &Field, below_deg: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let q = field.q();
    let coeffs = (0..below_deg)
        .map(|_| rng.gen_range(0..q) as Elem)
        .collect();
    Polynomial::new(field, coeffs)
}
