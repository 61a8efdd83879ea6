use num_bigint::BigUint;
use num_traits::One;

use super::{PolyError, Polynomial};
use crate::bounds::ints::{primes_up_to, trial_factor};
use crate::gf::{Elem, Field};

pub(super) fn is_irreducible(f: &Polynomial) -> Result<bool, PolyError> {
    let d = match f.degree() {
        None | Some(0) => return Err(PolyError::DegreeZero),
        Some(d) => d,
    };
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    if d == 1 {
        return Ok(true);
    }
    let field = f.field();
    let q = field.q();
    let x = Polynomial::x(field);
    // frob[i] = x^(q^i) mod f
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(x.clone());
    for i in 1..=d {
        let next = frob[i - 1].pow_mod_u64(q, f);
        frob.push(next);
    }
    if frob[d] != x.rem(f) {
        return Ok(false);
    }
    for l in primes_up_to(d as u64)
        .into_iter()
        .filter(|l| (d as u64).is_multiple_of(*l))
    {
        let h = frob[d / l as usize].sub(&x);
        if !f.gcd(&h).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicative order of the residue of `x` in `GF(q)[x]/(f)` for a monic
/// irreducible `f`: start from `q^d - 1` and strip every prime `l` for which
/// `x^(N/l) = 1` still holds.
pub fn root_order(f: &Polynomial, factor_bound: u64) -> Result<BigUint, PolyError> {
    if !f.is_irreducible()? {
        return Err(PolyError::NotIrreducible);
    }
    if f.coeff(0) == 0 {
        return Err(PolyError::RootIsZero);
    }
    let n = group_order(f);
    let primes = prime_divisors(&n, factor_bound)?;
    Ok(order_from(f, n, &primes))
}

fn group_order(f: &Polynomial) -> BigUint {
    f.field().order().pow(f.deg0() as u32) - BigUint::one()
}

fn prime_divisors(n: &BigUint, factor_bound: u64) -> Result<Vec<BigUint>, PolyError> {
    let fact = trial_factor(n, factor_bound);
    if !fact.complete {
        return Err(PolyError::FactorBoundExceeded(n.clone()));
    }
    Ok(fact.primes().cloned().collect())
}

fn order_from(f: &Polynomial, n: BigUint, primes: &[BigUint]) -> BigUint {
    let x = Polynomial::x(f.field());
    let mut ord = n;
    for l in primes {
        while (&ord % l) == BigUint::ZERO && x.pow_mod(&(&ord / l), f).is_one() {
            ord /= l;
        }
    }
    ord
}

/// The lexicographically smallest monic irreducible of degree `d` whose root
/// generates `GF(q^d)*`. Candidates are scanned by coefficient tuple
/// `(c_{d-1}, .., c_0)` ascending.
pub fn singer_polynomial(
    field: &Field,
    d: usize,
    factor_bound: u64,
) -> Result<Polynomial, PolyError> {
    if d == 0 {
        return Err(PolyError::DegreeZero);
    }
    let q = field.q();
    let n = field.order().pow(d as u32) - BigUint::one();
    let primes = prime_divisors(&n, factor_bound)?;
    let x = Polynomial::x(field);
    let mut tuple = vec![0 as Elem; d];
    loop {
        if tuple[0] != 0 {
            let mut coeffs = tuple.clone();
            coeffs.push(1);
            let f = Polynomial::new(field, coeffs);
            if f.is_irreducible()? && primes.iter().all(|l| !x.pow_mod(&(&n / l), &f).is_one()) {
                return Ok(f);
            }
        }
        // increment as a base-q number with c_0 least significant
        let mut i = 0;
        loop {
            if i == d {
                unreachable!("primitive polynomials exist in every degree");
            }
            tuple[i] += 1;
            if tuple[i] as u64 == q {
                tuple[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Number of monic irreducibles of degree `d` over GF(q), by the necklace
/// formula `(1/d) sum_{m | d} mu(d/m) q^m`.
pub fn necklace_count(q: u64, d: u32) -> BigUint {
    let mut pos = BigUint::ZERO;
    let mut neg = BigUint::ZERO;
    for m in 1..=d {
        if !d.is_multiple_of(m) {
            continue;
        }
        match mobius(d / m) {
            1 => pos += BigUint::from(q).pow(m),
            -1 => neg += BigUint::from(q).pow(m),
            _ => {}
        }
    }
    (pos - neg) / BigUint::from(d)
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Exhaustive count of monic irreducibles of degree `d` via the Rabin test.
pub fn count_irreducibles(field: &Field, d: usize) -> u64 {
    let q = field.q();
    let total = q.pow(d as u32);
    (0..total)
        .filter(|&t| {
            let mut coeffs: Vec<Elem> = Vec::with_capacity(d + 1);
            let mut t = t;
            for _ in 0..d {
                coeffs.push((t % q) as Elem);
                t /= q;
            }
            coeffs.push(1);
            Polynomial::new(field, coeffs).is_irreducible().unwrap()
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ints::DEFAULT_FACTOR_BOUND;
    use crate::gf::build_field;

    fn p(field: &Field, c: &[u64]) -> Polynomial {
        Polynomial::from_u64(field, c)
    }

    /// Order of x by walking its powers.
    fn brute_order(f: &Polynomial) -> u64 {
        let x = Polynomial::x(f.field());
        let mut cur = x.rem(f);
        let mut k = 1;
        while !cur.is_one() {
            cur = cur.mul_mod(&x, f);
            k += 1;
        }
        k
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = build_field(2, 1).unwrap();
        let f3 = build_field(3, 1).unwrap();
        assert!(!p(&f2, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(p(&f3, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(p(&f3, &[2, 1]).is_irreducible().unwrap());
        assert_eq!(
            p(&f3, &[1, 0, 2]).is_irreducible().unwrap_err(),
            PolyError::NotMonic
        );
        assert_eq!(
            p(&f3, &[1]).is_irreducible().unwrap_err(),
            PolyError::DegreeZero
        );
    }

    #[test]
    fn root_order_examples() {
        let f2 = build_field(2, 1).unwrap();
        let f3 = build_field(3, 1).unwrap();
        let b = DEFAULT_FACTOR_BOUND;
        assert_eq!(
            root_order(&p(&f2, &[1, 1, 1]), b).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            root_order(&p(&f3, &[1, 0, 1]), b).unwrap(),
            BigUint::from(4u32)
        );
        assert_eq!(
            root_order(&p(&f2, &[1, 1, 0, 1]), b).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            root_order(&p(&f2, &[0, 1]), b).unwrap_err(),
            PolyError::RootIsZero
        );
        assert_eq!(
            root_order(&p(&f2, &[1, 0, 1]), b).unwrap_err(),
            PolyError::NotIrreducible
        );
        // 2^23 - 1 needs both of its prime factors 47 and 178481
        let f = singer_polynomial(&f2, 23, b).unwrap();
        assert_eq!(root_order(&f, b).unwrap(), BigUint::from((1u64 << 23) - 1));
        assert!(matches!(
            singer_polynomial(&f2, 23, 40),
            Err(PolyError::FactorBoundExceeded(_))
        ));
    }

    #[test]
    fn root_order_matches_brute_force() {
        for (pr, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let field = build_field(pr, e).unwrap();
            for d in 1..=4usize {
                let q = field.q();
                for t in 0..q.pow(d as u32) {
                    let mut c: Vec<Elem> = (0..d)
                        .map(|i| ((t / q.pow(i as u32)) % q) as Elem)
                        .collect();
                    c.push(1);
                    let f = Polynomial::new(&field, c);
                    if f.coeff(0) == 0 || !f.is_irreducible().unwrap() {
                        continue;
                    }
                    let o = root_order(&f, DEFAULT_FACTOR_BOUND).unwrap();
                    assert_eq!(o, BigUint::from(brute_order(&f)), "{f}");
                }
            }
        }
    }

    /// Independent lex scan: walk candidates in order, test irreducibility by
    /// trial division and primitivity by powering.
    fn brute_singer(field: &Field, d: usize) -> Polynomial {
        let q = field.q();
        let target = q.pow(d as u32) - 1;
        for t in 0..q.pow(d as u32) {
            let mut c: Vec<Elem> = (0..d)
                .map(|i| ((t / q.pow(i as u32)) % q) as Elem)
                .collect();
            c.push(1);
            let f = Polynomial::new(field, c);
            if f.coeff(0) == 0 {
                continue;
            }
            let reducible = (1..=d / 2).any(|k| {
                (0..q.pow(k as u32)).any(|s| {
                    let mut g: Vec<Elem> = (0..k)
                        .map(|i| ((s / q.pow(i as u32)) % q) as Elem)
                        .collect();
                    g.push(1);
                    Polynomial::new(field, g).divides(&f)
                })
            });
            if !reducible && brute_order(&f) == target {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn singer_examples_and_brute_force() {
        let f2 = build_field(2, 1).unwrap();
        let f3 = build_field(3, 1).unwrap();
        let b = DEFAULT_FACTOR_BOUND;
        assert_eq!(singer_polynomial(&f2, 2, b).unwrap(), p(&f2, &[1, 1, 1]));
        assert_eq!(singer_polynomial(&f3, 2, b).unwrap(), p(&f3, &[2, 1, 1]));
        assert_eq!(singer_polynomial(&f2, 1, b).unwrap(), p(&f2, &[1, 1]));
        assert_eq!(singer_polynomial(&f2, 3, b).unwrap(), p(&f2, &[1, 1, 0, 1]));
        let f4 = build_field(2, 2).unwrap();
        for (field, dmax) in [(&f2, 8), (&f3, 5), (&f4, 3)] {
            for d in 1..=dmax {
                assert_eq!(
                    singer_polynomial(field, d, b).unwrap(),
                    brute_singer(field, d)
                );
            }
        }
    }

    #[test]
    fn necklace_values() {
        assert_eq!(necklace_count(2, 1), BigUint::from(2u32));
        assert_eq!(necklace_count(2, 4), BigUint::from(3u32));
        assert_eq!(necklace_count(3, 2), BigUint::from(3u32));
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
