//! Integer utilities and the explicit bound formulas: the odd-primorial
//! prime selection estimates, diameter composition over a normal subgroup,
//! the Sylow-chain bound and the exponent comparison with the earlier
//! `q^O(n (log n + log q)^3)` bound.
//!
//! Asymptotic quantities are reported in log2 space with every O-constant
//! printed next to the value; nothing here claims the hidden constants.

pub mod ints;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degred::select_primes;
use crate::wire::big_string;

pub use ints::{primes_up_to, trial_factor, TrialFactorization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{q} is not a power of {p}")]
    NotPPower { q: u64, p: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// `log2` of an arbitrary-precision natural (`-inf` for zero).
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return (v.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().unwrap() as f64;
    top.log2() + shift as f64
}

/// Odd primes up to `pbar`, their sum and product, with empirical ratios
/// against `(ln n)^2 / ln ln n` and `ln n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErdosReport {
    pub n: u64,
    pub pbar: u64,
    pub primes: Vec<u64>,
    pub d: u64,
    #[serde(with = "big_string")]
    pub product: BigUint,
    pub sum_ratio: f64,
    pub pbar_ratio: f64,
}

pub fn erdos_report(n: u64) -> Result<ErdosReport, BoundsError> {
    if n < 3 {
        return Err(BoundsError::InvalidArgument("n must be at least 3".into()));
    }
    let sel = select_primes(n as usize);
    let ln = (n as f64).ln();
    Ok(ErdosReport {
        n,
        pbar: sel.pbar,
        d: sel.d,
        sum_ratio: sel.d as f64 / (ln * ln / ln.ln()),
        pbar_ratio: sel.pbar as f64 / ln,
        primes: sel.primes,
        product: sel.product,
    })
}

/// Diameter bound for `G` from a normal subgroup `N` and the quotient.
pub fn bs_compose(diam_n: u64, diam_q: u64) -> BigUint {
    BigUint::from(4u32) * diam_n * diam_q
}

/// Parameters of the explicit chain through a Sylow p-subgroup of
/// `GL(m, q)`, `m` the least power of two `>= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowChainSpec {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub m: u64,
    /// `(m^2/4) log_p q`, clamped to at least 1.
    pub r: u64,
    /// `1 + log2 m`.
    pub l: u32,
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SylowChainBound {
    pub spec: SylowChainSpec,
    /// `4^(l-1) (p r)^l`
    #[serde(with = "big_string")]
    pub value: BigUint,
    pub log2_value: f64,
}

fn log_p(q: u64, p: u64) -> Option<u32> {
    if p < 2 || q < p {
        return None;
    }
    let mut acc = 1u64;
    let mut k = 0;
    while acc < q {
        acc = acc.checked_mul(p)?;
        k += 1;
    }
    (acc == q).then_some(k)
}

pub fn sylow_chain_bound(n: u64, q: u64, p: u64) -> Result<SylowChainBound, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidArgument("n must be at least 1".into()));
    }
    if !ints::is_prime_u64(p) {
        return Err(BoundsError::InvalidArgument(format!("{p} is not prime")));
    }
    let e = log_p(q, p).ok_or(BoundsError::NotPPower { q, p })? as u64;
    let m = n.next_power_of_two();
    let l = 1 + m.trailing_zeros();
    let raw_r = (m / 2) * (m / 2) * e;
    let r = raw_r.max(1);
    let value = BigUint::from(4u32).pow(l - 1) * (BigUint::from(p) * r).pow(l);
    Ok(SylowChainBound {
        log2_value: log2_big(&value),
        spec: SylowChainSpec {
            n,
            q,
            p,
            m,
            r,
            l,
            clamped: raw_r == 0,
        },
        value,
    })
}

/// O-constants, default 1, echoed in every comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub c_main: f64,
    pub c4: f64,
    pub c5: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            c_main: 1.0,
            c4: 1.0,
            c5: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverRow {
    pub q: u64,
    pub this_log2: f64,
    pub by_log2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub n: u64,
    pub q: u64,
    pub constants: BoundConstants,
    /// `c_main n (log2 n)^2 log2 q`
    pub this_log2: f64,
    /// `n (log2 n + log2 q)^3 log2 q`
    pub by_log2: f64,
    pub sl_order_log2: f64,
    /// `d` from the prime selection for `n`.
    pub d: u64,
    /// `2 n d log2 q + log2(n / d)`
    pub assembly_log2: f64,
    pub heuristic: bool,
    pub crossover: Vec<CrossoverRow>,
}

fn this_exponent(n: f64, q: f64, c: f64) -> f64 {
    c * n * n.log2().powi(2) * q.log2()
}

fn by_exponent(n: f64, q: f64) -> f64 {
    n * (n.log2() + q.log2()).powi(3) * q.log2()
}

/// `log2 |SL(n, q)| = log2(q^(n(n-1)/2) prod_{i=2..n} (q^i - 1))`, exactly.
pub fn sl_order_log2(n: u64, q: u64) -> f64 {
    let qb = BigUint::from(q);
    let mut order = qb.pow((n * (n - 1) / 2) as u32);
    for i in 2..=n {
        order *= qb.pow(i as u32) - BigUint::one();
    }
    log2_big(&order)
}

pub fn compare_bounds(
    n: u64,
    q: u64,
    consts: BoundConstants,
) -> Result<BoundComparison, BoundsError> {
    if n < 3 || q < 2 {
        return Err(BoundsError::InvalidArgument(
            "need n >= 3 and q >= 2".into(),
        ));
    }
    let nf = n as f64;
    let qf = q as f64;
    let d = select_primes(n as usize).d;
    let crossover = (1..=10)
        .map(|k| {
            let qq = 1u64 << k;
            CrossoverRow {
                q: qq,
                this_log2: this_exponent(nf, qq as f64, consts.c_main),
                by_log2: by_exponent(nf, qq as f64),
            }
        })
        .collect();
    Ok(BoundComparison {
        n,
        q,
        constants: consts,
        this_log2: this_exponent(nf, qf, consts.c_main),
        by_log2: by_exponent(nf, qf),
        sl_order_log2: sl_order_log2(n, q),
        d,
        assembly_log2: 2.0 * nf * d as f64 * qf.log2() + (nf / d as f64).log2(),
        heuristic: true,
        crossover,
    })
}
