//! Exponents kept as products of prime powers and Mersenne-like terms.
//!
//! Reduction exponents such as `2^7 * (2^37182145 - 1)` are far too large to
//! print in decimal or to apply by repeated squaring, but everything the
//! symbolic engine needs (residues modulo root orders and small p-adic
//! valuations) is cheap to compute from the factored form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Above this many bits an exponent is written in factored form.
pub const DECIMAL_BITS: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Int(BigUint),
    /// `base^exp`
    Pow {
        base: u64,
        exp: u64,
    },
    /// `base^exp - 1`
    PowMinusOne {
        base: u64,
        exp: u64,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed exponent: {0}")]
pub struct ParseExponentError(pub String);

/// A natural number stored as a product of [`Term`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicExponent {
    terms: Vec<Term>,
}

fn log2_u64(x: u64) -> f64 {
    (x as f64).log2()
}

impl Term {
    fn rem(&self, m: &BigUint) -> BigUint {
        match self {
            Term::Int(v) => v % m,
            Term::Pow { base, exp } => BigUint::from(*base).modpow(&BigUint::from(*exp), m),
            Term::PowMinusOne { base, exp } => {
                let r = BigUint::from(*base).modpow(&BigUint::from(*exp), m);
                (r + m - (BigUint::one() % m)) % m
            }
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Term::Int(v) => v.is_zero(),
            Term::Pow { base, exp } => *base == 0 && *exp > 0,
            Term::PowMinusOne { base, exp } => *exp == 0 || *base == 1,
        }
    }

    fn bits_upper(&self) -> u64 {
        match self {
            Term::Int(v) => v.bits(),
            Term::Pow { base, exp } | Term::PowMinusOne { base, exp } => {
                if *base <= 1 {
                    1
                } else {
                    (log2_u64(*base) * *exp as f64).ceil() as u64 + 1
                }
            }
        }
    }

    fn value(&self) -> BigUint {
        match self {
            Term::Int(v) => v.clone(),
            Term::Pow { base, exp } => BigUint::from(*base).pow(*exp as u32),
            Term::PowMinusOne { base, exp } => {
                let v = BigUint::from(*base).pow(*exp as u32);
                if v.is_zero() {
                    v
                } else {
                    v - BigUint::one()
                }
            }
        }
    }
}

impl SymbolicExponent {
    pub fn one() -> Self {
        SymbolicExponent { terms: Vec::new() }
    }

    pub fn int(v: impl Into<BigUint>) -> Self {
        SymbolicExponent {
            terms: vec![Term::Int(v.into())],
        }
    }

    pub fn pow(base: u64, exp: u64) -> Self {
        SymbolicExponent {
            terms: vec![Term::Pow { base, exp }],
        }
    }

    pub fn pow_minus_one(base: u64, exp: u64) -> Self {
        SymbolicExponent {
            terms: vec![Term::PowMinusOne { base, exp }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SymbolicExponent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().any(Term::is_zero)
    }

    pub fn is_one(&self) -> bool {
        !self.is_zero() && self.bits_upper() <= 64 && self.to_biguint().is_one()
    }

    /// Upper bound on the bit length of the value.
    pub fn bits_upper(&self) -> u64 {
        self.terms.iter().map(Term::bits_upper).sum::<u64>().max(1)
    }

    /// The value modulo `m` (`m >= 1`).
    pub fn rem(&self, m: &BigUint) -> BigUint {
        self.terms
            .iter()
            .fold(BigUint::one() % m, |acc, t| (acc * t.rem(m)) % m)
    }

    pub fn divisible_by(&self, m: &BigUint) -> bool {
        self.rem(m).is_zero()
    }

    /// `min(v_p(value), cap)`.
    pub fn valuation(&self, p: u64, cap: u32) -> u32 {
        if self.is_zero() {
            return cap;
        }
        let mut v = 0;
        let mut pk = BigUint::from(p);
        while v < cap && self.divisible_by(&pk) {
            v += 1;
            pk *= p;
        }
        v
    }

    /// Materializes the value. Callers should check [`bits_upper`] first.
    ///
    /// [`bits_upper`]: SymbolicExponent::bits_upper
    pub fn to_biguint(&self) -> BigUint {
        self.terms
            .iter()
            .fold(BigUint::one(), |acc, t| acc * t.value())
    }

    fn expression(&self) -> String {
        if self.terms.is_empty() {
            return "1".into();
        }
        self.terms
            .iter()
            .map(|t| match t {
                Term::Int(v) => v.to_string(),
                Term::Pow { base, exp } => format!("{base}^{exp}"),
                Term::PowMinusOne { base, exp } => format!("({base}^{exp}-1)"),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for SymbolicExponent {
    /// Decimal when small, otherwise the factored expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits_upper() <= DECIMAL_BITS {
            write!(f, "{}", self.to_biguint())
        } else {
            f.write_str(&self.expression())
        }
    }
}

fn parse_u64(s: &str, whole: &str) -> Result<u64, ParseExponentError> {
    s.trim()
        .parse()
        .map_err(|_| ParseExponentError(whole.to_string()))
}

impl FromStr for SymbolicExponent {
    type Err = ParseExponentError;

    /// Accepts a decimal natural or a `*`-separated product of `N`, `B^E`
    /// and `(B^E-1)` terms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseExponentError(s.to_string());
        if s.trim().is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        for raw in s.split('*') {
            let t = raw.trim();
            if let Some(inner) = t.strip_prefix('(') {
                let inner = inner.strip_suffix(')').ok_or_else(bad)?;
                let body = inner.trim().strip_suffix("-1").ok_or_else(bad)?;
                let (b, e) = body.split_once('^').ok_or_else(bad)?;
                terms.push(Term::PowMinusOne {
                    base: parse_u64(b, s)?,
                    exp: parse_u64(e, s)?,
                });
            } else if let Some((b, e)) = t.split_once('^') {
                terms.push(Term::Pow {
                    base: parse_u64(b, s)?,
                    exp: parse_u64(e, s)?,
                });
            } else {
                if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let v = BigUint::parse_bytes(t.as_bytes(), 10).ok_or_else(bad)?;
                terms.push(Term::Int(v));
            }
        }
        Ok(SymbolicExponent { terms })
    }
}

impl Serialize for SymbolicExponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolicExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for SymbolicExponent {
    fn from(v: u64) -> Self {
        SymbolicExponent::int(v)
    }
}
