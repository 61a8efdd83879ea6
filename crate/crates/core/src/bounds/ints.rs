//! Integer helpers: sieving, deterministic primality for machine words and
//! bounded trial factorization of arbitrary-precision naturals.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Default trial-division bound used when factoring `q^d - 1`.
pub const DEFAULT_FACTOR_BOUND: u64 = 10_000_000;

/// All primes `<= x`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let limit = x as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `p`, if any.
pub fn prev_prime(p: u64) -> Option<u64> {
    (2..p).rev().find(|&c| is_prime_u64(c))
}

/// Smallest prime strictly above `p`.
pub fn next_prime(p: u64) -> u64 {
    let mut c = p + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Result of [`trial_factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFactorization {
    /// Prime factors with multiplicities, ascending.
    pub factors: Vec<(BigUint, u32)>,
    /// What is left once trial division stopped; `1` when complete.
    pub cofactor: BigUint,
    pub complete: bool,
}

impl TrialFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies the factorization back out (including any cofactor).
    pub fn product(&self) -> BigUint {
        let mut acc = self.cofactor.clone();
        for (p, k) in &self.factors {
            acc *= p.pow(*k);
        }
        acc
    }
}

/// Factors `n` by trial division with divisors up to `bound`.
///
/// A leftover cofactor is accepted as prime when it is below `bound^2`, or
/// when it fits in a `u64` and passes the deterministic primality test.
/// Otherwise the result is marked incomplete and the cofactor is kept.
pub fn trial_factor(n: &BigUint, bound: u64) -> TrialFactorization {
    let mut factors = Vec::new();
    if n.is_zero() {
        return TrialFactorization {
            factors,
            cofactor: BigUint::zero(),
            complete: false,
        };
    }
    let mut rest = n.clone();
    let push = |rest: &mut BigUint, d: u64, factors: &mut Vec<(BigUint, u32)>| -> bool {
        let mut k = 0u32;
        loop {
            let (quo, rem) = rest.div_rem(&BigUint::from(d));
            if !rem.is_zero() {
                break;
            }
            *rest = quo;
            k += 1;
        }
        if k > 0 {
            factors.push((BigUint::from(d), k));
        }
        k > 0
    };

    let sqrt_cap = |rest: &BigUint| -> u64 { rest.sqrt().to_u64().unwrap_or(u64::MAX) };
    let mut limit = sqrt_cap(&rest).min(bound);
    for d in [2u64, 3] {
        if d > limit {
            break;
        }
        if push(&mut rest, d, &mut factors) {
            limit = sqrt_cap(&rest).min(bound);
        }
    }
    // 6k +- 1 wheel
    let mut d = 5u64;
    while d <= limit {
        for cand in [d, d + 2] {
            if cand > limit {
                break;
            }
            if (&rest % cand).is_zero() {
                push(&mut rest, cand, &mut factors);
                limit = sqrt_cap(&rest).min(bound);
            }
        }
        d += 6;
    }

    let mut complete = true;
    if !rest.is_one() {
        let below_square =
            rest.bits() <= 128 && rest.to_u128().unwrap() <= (bound as u128) * (bound as u128);
        let word_prime = rest.to_u64().map(is_prime_u64).unwrap_or(false);
        if below_square || word_prime {
            factors.push((rest.clone(), 1));
            rest = BigUint::one();
        } else {
            complete = false;
        }
    }
    factors.sort();
    TrialFactorization {
        factors,
        cofactor: rest,
        complete,
    }
}

/// Exact `gcd`/`lcm` for machine words, `None` on overflow.
pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

/// Natural `x` such that `base^x >= target`, the smallest such.
pub fn ceil_log(base: u64, target: u64) -> u32 {
    assert!(base >= 2);
    let mut a = 0;
    let mut acc: u128 = 1;
    while acc < target as u128 {
        acc *= base as u128;
        a += 1;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(23), vec![2, 3, 5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(primes_up_to(2), vec![2]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), sieve.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn mersenne_23() {
        let n = BigUint::from((1u64 << 23) - 1);
        let f = trial_factor(&n, DEFAULT_FACTOR_BOUND);
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![(BigUint::from(47u32), 1), (BigUint::from(178_481u32), 1)]
        );
    }

    #[test]
    fn powers_and_units() {
        let f = trial_factor(&BigUint::from(8u32), 100);
        assert_eq!(f.factors, vec![(BigUint::from(2u32), 3)]);
        let one = trial_factor(&BigUint::one(), 100);
        assert!(one.complete && one.factors.is_empty());
    }

    #[test]
    fn semiprime_above_bound_is_incomplete() {
        // two primes just above 2^40: product is beyond u64 and bound^2
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_873u64);
        let n = &p * &q;
        let f = trial_factor(&n, 1000);
        assert!(!f.complete);
        assert_eq!(f.cofactor, n);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn ceil_log_edges() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 15), 4);
        assert_eq!(ceil_log(2, 16), 4);
        assert_eq!(ceil_log(3, 3), 1);
        assert_eq!(ceil_log(2, 100), 7);
    }
}
