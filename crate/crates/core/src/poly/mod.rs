//! Univariate polynomials over GF(q): arithmetic, complete factorization and
//! Singer polynomials.

mod factor;
mod irreducible;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gf::{Elem, Field};

pub use factor::{factor, squarefree_decomposition, Factorization};
pub use irreducible::{count_irreducibles, necklace_count, root_order, singer_polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different fields")]
    SpecMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("x is a factor; its root has no multiplicative order")]
    RootIsZero,
    #[error("could not factor {0} within the trial-division bound")]
    FactorBoundExceeded(BigUint),
}

/// Dense polynomial, low degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if field.is_prime_field() {
                c.to_string()
            } else {
                format!("{:?}", field.coeffs(c))
            };
            match (i, c) {
                (0, _) => write!(f, "{coef}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{coef}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// From raw element codes (for a prime field, the residues themselves).
    pub fn from_u64(field: &Field, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| c as Elem).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: Elem) -> Self {
        Self::new(field, vec![field.neg(a), 1])
    }

    pub fn monomial(field: &Field, c: Elem, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Self::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for sizing only.
    pub(crate) fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn is_x_minus_one(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[1] == 1 && self.coeffs[0] == self.field.neg(1)
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.lead()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quo = vec![0; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quo[top - dd] = c;
            for (k, &b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        (Self::new(f, quo), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let g = self.gcd(other);
        self.div_rem(&g).0.mul(other).monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.p()) as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, a: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^k mod modulus`.
    pub fn pow_mod(&self, k: &BigUint, modulus: &Self) -> Self {
        let base = self.rem(modulus);
        let mut acc = Self::one(&self.field).rem(modulus);
        for i in (0..k.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if k.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, k: u64, modulus: &Self) -> Self {
        self.pow_mod(&BigUint::from(k), modulus)
    }

    /// For `self = g(x^p)` returns `h` with `h^p = self`. Panics if some
    /// exponent with nonzero coefficient is not a multiple of `p`.
    pub fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.p() as usize;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                assert!(c == 0 || i % p == 0, "not a p-th power");
                (i, c)
            })
            .filter(|(i, _)| i % p == 0)
            .map(|(_, c)| f.frobenius_inv(c))
            .collect();
        Self::new(f, out)
    }

    /// Applies the coefficient Frobenius `c -> c^(p^a)`.
    pub fn map_frobenius(&self, a: u32) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .map(|&c| (0..a).fold(c, |acc, _| f.frobenius(acc)))
                .collect(),
        )
    }

    /// Canonical order: degree first, then coefficient tuples from the
    /// highest coefficient down, comparing element codes.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Checked gcd for the public API.
    pub fn checked_gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_field(other)?;
        Ok(self.gcd(other))
    }

    fn same_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::SpecMismatch)
        }
    }

    /// Rabin test: `x^(q^d) = x mod f` and `gcd(x^(q^(d/l)) - x, f) = 1`
    /// for every prime `l | d`.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        irreducible::is_irreducible(self)
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

/// Monic gcd of two polynomials over the same field.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    f.checked_gcd(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn p(field: &Field, c: &[u64]) -> Polynomial {
        Polynomial::from_u64(field, c)
    }

    #[test]
    fn gcd_examples() {
        let f3 = build_field(3, 1).unwrap();
        // x^2 - 1 = (x-1)(x+1), x^2 + x = x(x+1)
        let a = p(&f3, &[2, 0, 1]);
        let b = p(&f3, &[0, 1, 1]);
        assert_eq!(gcd(&a, &b).unwrap(), p(&f3, &[1, 1]));
        let c = p(&f3, &[1, 0, 2]);
        assert_eq!(gcd(&c, &Polynomial::zero(&f3)).unwrap(), c.monic());
        assert!(gcd(&c, &Polynomial::one(&f3)).unwrap().is_one());
        assert!(gcd(&Polynomial::zero(&f3), &Polynomial::zero(&f3))
            .unwrap()
            .is_zero());
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(gcd(&a, &p(&f2, &[1])).unwrap_err(), PolyError::SpecMismatch);
    }

    #[test]
    fn division_identity() {
        let f = build_field(5, 1).unwrap();
        let a = p(&f, &[1, 2, 3, 4, 0, 1]);
        let b = p(&f, &[3, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn pth_root_inverts_frobenius_power() {
        let f9 = build_field(3, 2).unwrap();
        let g = Polynomial::new(&f9, vec![5, 0, 7, 1]);
        let gp = g.pow(3);
        assert_eq!(gp.pth_root(), g);
        assert!(gp.derivative().is_zero());
    }

    #[test]
    fn display_is_readable() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(p(&f2, &[1, 1, 0, 1]).to_string(), "x^3 + x + 1");
    }
}
