//! Exact arithmetic in GF(p^e).
//!
//! A [`Field`] is a cheap, shareable handle on a [`FieldSpec`]. Elements are
//! stored as `u32` codes: the coefficient vector `(c_0, .., c_{e-1})` of the
//! residue modulo the defining polynomial, packed as `sum c_i p^i`. Ordering
//! codes numerically is the same as ordering coefficient tuples
//! `(c_{e-1}, .., c_0)` lexicographically, which is the tie-break used for
//! every canonical sort in the crate.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::ints::{is_prime_u64, trial_factor, DEFAULT_FACTOR_BOUND};
use crate::poly::Polynomial;

/// Element code, see the module docs.
pub type Elem = u32;

/// Largest field order accepted.
pub const MAX_ORDER: u64 = 1 << 32;

/// Fields up to this order get log/exp tables for multiplication.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{e} exceeds the configured limit 2^32")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("coefficient vector {0:?} does not describe an element")]
    InvalidCoeffs(Vec<u64>),
}

/// Parameters of GF(p^e): characteristic, degree and defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    /// Monic modulus, low degree first, length `e + 1`.
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// `q = p^e` as an arbitrary-precision natural.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e)
    }
}

#[derive(Debug)]
struct Inner {
    spec: FieldSpec,
    q: u64,
    /// `exp[i] = g^i` for `i in 0..q-1`, `log[exp[i]] = i`; empty when unused.
    exp: Vec<Elem>,
    log: Vec<u32>,
}

/// Handle on a finite field. Cloning is a reference-count bump.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.e())
    }
}

/// Builds GF(p^e) with the lexicographically smallest monic irreducible
/// modulus, comparing coefficient tuples `(c_{e-1}, .., c_0)`.
pub fn build_field(p: u64, e: u32) -> Result<Field, GfError> {
    check_params(p, e)?;
    if e == 1 {
        return Ok(Field::from_spec_unchecked(FieldSpec {
            p,
            e,
            modulus: vec![0, 1],
        }));
    }
    let base = build_field(p, 1)?;
    let count = p.pow(e);
    for t in 0..count {
        let mut coeffs = digits(t, p, e as usize);
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        let f = Polynomial::from_u64(&base, &coeffs);
        if f.is_irreducible().unwrap_or(false) {
            return Ok(Field::from_spec_unchecked(FieldSpec {
                p,
                e,
                modulus: coeffs,
            }));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Builds GF(p^e) from a caller-supplied modulus, validating irreducibility.
/// For `e = 1` the modulus is normalised to the placeholder `x`.
pub fn field_with_modulus(p: u64, modulus: &[u64]) -> Result<Field, GfError> {
    if modulus.len() < 2 {
        return Err(GfError::InvalidModulus("degree must be at least 1".into()));
    }
    let e = (modulus.len() - 1) as u32;
    check_params(p, e)?;
    if modulus.iter().any(|&c| c >= p) {
        return Err(GfError::InvalidModulus(
            "coefficient not reduced mod p".into(),
        ));
    }
    if *modulus.last().unwrap() != 1 {
        return Err(GfError::InvalidModulus("not monic".into()));
    }
    if e == 1 {
        return build_field(p, 1);
    }
    let base = build_field(p, 1)?;
    let f = Polynomial::from_u64(&base, modulus);
    if !f.is_irreducible().unwrap_or(false) {
        return Err(GfError::InvalidModulus("reducible over GF(p)".into()));
    }
    Ok(Field::from_spec_unchecked(FieldSpec {
        p,
        e,
        modulus: modulus.to_vec(),
    }))
}

/// Rebuilds a field from a serialized spec, validating it.
pub fn field_from_spec(spec: &FieldSpec) -> Result<Field, GfError> {
    if spec.modulus.len() != spec.e as usize + 1 {
        return Err(GfError::InvalidModulus("length must be e + 1".into()));
    }
    field_with_modulus(spec.p, &spec.modulus)
}

fn check_params(p: u64, e: u32) -> Result<(), GfError> {
    if !is_prime_u64(p) {
        return Err(GfError::NotPrime(p));
    }
    if e == 0 {
        return Err(GfError::DegreeZero);
    }
    match p.checked_pow(e) {
        Some(q) if q <= MAX_ORDER => Ok(()),
        _ => Err(GfError::FieldTooLarge { p, e }),
    }
}

fn digits(mut t: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(t % p);
        t /= p;
    }
    out
}

impl Field {
    fn from_spec_unchecked(spec: FieldSpec) -> Field {
        let q = spec.p.pow(spec.e);
        let mut inner = Inner {
            spec,
            q,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if inner.spec.e > 1 && q <= TABLE_LIMIT {
            build_tables(&mut inner);
        }
        Field(Arc::new(inner))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u64 {
        self.0.spec.p
    }

    pub fn e(&self) -> u32 {
        self.0.spec.e
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.q)
    }

    pub fn is_gf2(&self) -> bool {
        self.0.q == 2
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.spec.e == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// All element codes in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q as Elem
    }

    /// Image of an integer under `Z -> GF(p)`.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.p() as i64) as Elem
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        digits(a as u64, self.p(), self.e() as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem, GfError> {
        let p = self.p();
        if coeffs.len() > self.e() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(GfError::InvalidCoeffs(coeffs.to_vec()));
        }
        Ok(coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as Elem)
    }

    pub fn element(&self, code: Elem) -> FieldElement {
        debug_assert!((code as u64) < self.q());
        FieldElement {
            field: self.clone(),
            code,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p();
        if self.e() == 1 {
            let s = a as u64 + b as u64;
            return (if s >= p { s - p } else { s }) as Elem;
        }
        if p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p();
        if self.e() == 1 {
            return if a == 0 { 0 } else { (p - a as u64) as Elem };
        }
        if p == 2 {
            return a;
        }
        self.digitwise(a, 0, |x, _| (p - x) % p)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u64, u64) -> u64) -> Elem {
        let p = self.p();
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.e() {
            out += op(a % p, b % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.e() == 1 {
            return ((a as u64 * b as u64) % self.p()) as Elem;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &self.0;
        if !inner.exp.is_empty() {
            let n = inner.q - 1;
            let s = inner.log[a as usize] as u64 + inner.log[b as usize] as u64;
            return inner.exp[(if s >= n { s - n } else { s }) as usize];
        }
        slow_mul(&inner.spec, a, b)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        if self.e() == 1 {
            return Some(inv_mod(a as u64, self.p()) as Elem);
        }
        let inner = &self.0;
        if !inner.exp.is_empty() {
            let n = inner.q - 1;
            let l = inner.log[a as usize] as u64;
            return Some(inner.exp[((n - l) % n) as usize]);
        }
        Some(ext_gcd_inverse(&inner.spec, a))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^k` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, k: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..k.bits()).rev() {
            acc = self.mul(acc, acc);
            if k.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: Elem, mut k: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow_u64(a, self.p())
    }

    /// `a^(1/p)`, the inverse of [`Field::frobenius`]: `a^(p^(e-1))`.
    pub fn frobenius_inv(&self, a: Elem) -> Elem {
        let mut r = a;
        for _ in 1..self.e() {
            r = self.frobenius(r);
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.q() - 1;
        let fact = trial_factor(&BigUint::from(n), DEFAULT_FACTOR_BOUND);
        let mut ord = n;
        for (l, _) in &fact.factors {
            let l: u64 = l.try_into().unwrap();
            while ord.is_multiple_of(l) && self.pow_u64(a, ord / l) == 1 {
                ord /= l;
            }
        }
        Some(ord)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

/// Product of residues as polynomials over GF(p), reduced by the modulus.
fn slow_mul(spec: &FieldSpec, a: Elem, b: Elem) -> Elem {
    let p = spec.p;
    let e = spec.e as usize;
    let da = digits(a as u64, p, e);
    let db = digits(b as u64, p, e);
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    reduce_digits(spec, &mut prod);
    pack(&prod[..e], p)
}

fn reduce_digits(spec: &FieldSpec, v: &mut [u64]) {
    let p = spec.p;
    let e = spec.e as usize;
    for top in (e..v.len()).rev() {
        let c = v[top];
        if c == 0 {
            continue;
        }
        v[top] = 0;
        for k in 0..e {
            let m = spec.modulus[k];
            v[top - e + k] = (v[top - e + k] + (p - c) * m) % p;
        }
    }
}

fn pack(coeffs: &[u64], p: u64) -> Elem {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as Elem
}

/// Inverse via the extended Euclidean algorithm on GF(p)[x] against the modulus.
fn ext_gcd_inverse(spec: &FieldSpec, a: Elem) -> Elem {
    let p = spec.p;
    let e = spec.e as usize;
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut r0: Vec<u64> = spec.modulus.clone();
    let mut r1 = digits(a as u64, p, e);
    trim(&mut r1);
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // (quo, rem) = r0 divmod r1
        let mut rem = r0.clone();
        let lead_inv = inv_mod(*r1.last().unwrap(), p);
        let mut quo = vec![0u64; rem.len().saturating_sub(r1.len()) + 1];
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let c = rem.last().unwrap() * lead_inv % p;
            quo[shift] = c;
            for (i, &x) in r1.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - c) * x % p) % p;
            }
            trim(&mut rem);
        }
        trim(&mut quo);
        // t_new = t0 - quo * t1
        let mut prod = vec![0u64; quo.len() + t1.len()];
        for (i, &x) in quo.iter().enumerate() {
            for (j, &y) in t1.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let len = prod.len().max(t0.len());
        let mut t_new = vec![0u64; len];
        for (i, slot) in t_new.iter_mut().enumerate() {
            let x = t0.get(i).copied().unwrap_or(0);
            let y = prod.get(i).copied().unwrap_or(0);
            *slot = (x + p - y) % p;
        }
        trim(&mut t_new);
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t_new);
    }
    // r0 is a nonzero constant c; inverse = t0 / c
    let c_inv = inv_mod(r0[0], p);
    let mut out: Vec<u64> = t0.iter().map(|&x| x * c_inv % p).collect();
    out.resize(e.max(out.len()), 0);
    reduce_digits(spec, &mut out);
    pack(&out[..e], p)
}

fn build_tables(inner: &mut Inner) {
    let q = inner.q;
    let n = q - 1;
    let fact = trial_factor(&BigUint::from(n), DEFAULT_FACTOR_BOUND);
    let primes: Vec<u64> = fact.primes().map(|l| l.try_into().unwrap()).collect();
    let pow = |a: Elem, mut k: u64| {
        let mut acc: Elem = 1;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = slow_mul(&inner.spec, acc, base);
            }
            base = slow_mul(&inner.spec, base, base);
            k >>= 1;
        }
        acc
    };
    let g = (2..q as Elem)
        .find(|&g| primes.iter().all(|&l| pow(g, n / l) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0 as Elem; n as usize];
    let mut log = vec![0u32; q as usize];
    let mut x: Elem = 1;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x;
        log[x as usize] = i as u32;
        x = slow_mul(&inner.spec, x, g);
    }
    inner.exp = exp;
    inner.log = log;
}

/// A field element bundled with its field, for the public scalar API.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.coeffs())
    }
}

impl FieldElement {
    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Result<Self, GfError> {
        Ok(field.element(field.from_coeffs(coeffs)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> Elem {
        self.code
    }

    /// Canonical coefficient vector, low degree first, length `e`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::SpecMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.mul(self.code, other.code)))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        self.field
            .inv(self.code)
            .map(|c| self.field.element(c))
            .ok_or(GfError::DivisionByZero)
    }

    pub fn pow(&self, k: &BigUint) -> Self {
        self.field.element(self.field.pow(self.code, k))
    }

    pub fn frobenius(&self) -> Self {
        self.field.element(self.field.frobenius(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, c: &[u64]) -> FieldElement {
        FieldElement::from_coeffs(f, c).unwrap()
    }

    /// Brute force: a monic polynomial of degree 2 or 3 over GF(p) is
    /// irreducible iff it has no root.
    fn has_root(coeffs: &[u64], p: u64) -> bool {
        (0..p).any(|x| coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn modulus_choice_matches_enumeration() {
        for (p, e) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3)] {
            let expected = (0..p.pow(e))
                .map(|t| {
                    let mut c = digits(t, p, e as usize);
                    c.push(1);
                    c
                })
                .find(|c| !has_root(c, p))
                .unwrap();
            let f = build_field(p, e).unwrap();
            assert_eq!(f.spec().modulus, expected, "GF({p}^{e})");
        }
        assert_eq!(build_field(2, 2).unwrap().spec().modulus, vec![1, 1, 1]);
        assert_eq!(build_field(3, 2).unwrap().spec().modulus, vec![1, 0, 1]);
        assert_eq!(build_field(2, 1).unwrap().q(), 2);
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_field(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(build_field(3, 0).unwrap_err(), GfError::DegreeZero);
        assert!(matches!(
            build_field(2, 33),
            Err(GfError::FieldTooLarge { .. })
        ));
        assert!(field_with_modulus(2, &[1, 0, 1]).is_err()); // (x+1)^2
        assert!(field_with_modulus(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn scalar_examples() {
        let f2 = build_field(2, 1).unwrap();
        let f3 = build_field(3, 1).unwrap();
        let f4 = build_field(2, 2).unwrap();
        assert!(el(&f2, &[1]).add(&el(&f2, &[1])).unwrap().is_zero());
        assert_eq!(el(&f3, &[2]).add(&el(&f3, &[2])).unwrap(), el(&f3, &[1]));
        assert_eq!(
            el(&f4, &[0, 1]).add(&el(&f4, &[1, 1])).unwrap(),
            el(&f4, &[1])
        );
        // x * x = x + 1
        assert_eq!(
            el(&f4, &[0, 1]).mul(&el(&f4, &[0, 1])).unwrap(),
            el(&f4, &[1, 1])
        );
        assert_eq!(el(&f3, &[2]).mul(&el(&f3, &[2])).unwrap(), el(&f3, &[1]));
        assert_eq!(el(&f4, &[0, 1]).inv().unwrap(), el(&f4, &[1, 1]));
        assert_eq!(el(&f3, &[2]).inv().unwrap(), el(&f3, &[2]));
        assert_eq!(el(&f3, &[0]).inv().unwrap_err(), GfError::DivisionByZero);
        assert_eq!(el(&f3, &[2]).pow(&BigUint::from(10u32)), el(&f3, &[1]));
        assert_eq!(el(&f4, &[0, 1]).pow(&BigUint::from(3u32)), el(&f4, &[1]));
        assert_eq!(el(&f3, &[0]).pow(&BigUint::from(0u32)), el(&f3, &[1]));
        assert_eq!(el(&f4, &[0, 1]).frobenius(), el(&f4, &[1, 1]));
        assert_eq!(el(&f3, &[2]).frobenius(), el(&f3, &[2]));
        assert!(el(&f4, &[0]).frobenius().is_zero());
        assert_eq!(
            el(&f3, &[1]).add(&el(&f2, &[1])).unwrap_err(),
            GfError::SpecMismatch
        );
    }

    #[test]
    fn table_and_slow_paths_agree() {
        for (p, e) in [(2u64, 4u32), (3, 3), (5, 2), (2, 7)] {
            let f = build_field(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    assert_eq!(
                        f.mul(a, b),
                        if a == 0 || b == 0 {
                            0
                        } else {
                            slow_mul(f.spec(), a, b)
                        }
                    );
                }
                if a != 0 {
                    assert_eq!(f.inv(a), Some(ext_gcd_inverse(f.spec(), a)));
                }
            }
        }
    }

    #[test]
    fn untabled_field_inverse() {
        // 3^11 > 2^16 so this field multiplies without tables
        let f = build_field(3, 11).unwrap();
        assert!(f.0.exp.is_empty());
        for a in (1..f.q() as Elem).step_by(997) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.frobenius_inv(f.frobenius(12345)), 12345);
    }

    #[test]
    fn fermat_small_fields() {
        for (p, e) in [
            (2u64, 1u32),
            (2, 2),
            (2, 8),
            (3, 2),
            (3, 5),
            (5, 3),
            (13, 2),
            (251, 2),
        ] {
            let f = build_field(p, e).unwrap();
            let qm1 = BigUint::from(f.q() - 1);
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, &qm1), 1);
            }
        }
    }
}
