//! Matrix degree reduction: from an invertible `A` with enough odd-prime
//! degree factors in its characteristic polynomial, find `m` such that
//! `A^m` is a non-identity matrix of degree at most `deg(A) / 4` whose only
//! eigenvalue in GF(q) is 1.
//!
//! Exponents are handled symbolically ([`SymbolicExponent`]); the degree of
//! `A^m` is predicted from the Jordan structure of `A` and the multiplicative
//! orders of the roots of its irreducible factors.

pub mod exponent;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::ints::{
    ceil_log, checked_lcm, is_prime_u64, next_prime, trial_factor, DEFAULT_FACTOR_BOUND,
};
use crate::gf::Field;
use crate::matrix::{
    block_diag, companion, JordanStructure, MatrixError, SquareMatrix, DEFAULT_EXP_BITS,
};
use crate::par::{self, Execution};
use crate::poly::{factor, root_order, singer_polynomial, Factorization, PolyError, Polynomial};
use crate::wire::{self, big_string};

pub use exponent::{ParseExponentError, SymbolicExponent, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegredError {
    #[error("matrix is singular")]
    Singular,
    #[error("no row with 4*n_i <= s: {reason}")]
    NoSmallRow { reason: String },
    #[error("prime {0} divides no factor degree")]
    PrimeNotPresent(u64),
    #[error("malformed exponent: {0}")]
    MalformedExponent(String),
    #[error("could not factor {0} within the trial-division bound")]
    FactorBoundExceeded(BigUint),
    #[error("s' = lcm of factor degrees overflows 64 bits")]
    LcmOverflow,
    #[error(transparent)]
    Poly(PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl From<PolyError> for DegredError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::FactorBoundExceeded(n) => DegredError::FactorBoundExceeded(n),
            other => DegredError::Poly(other),
        }
    }
}

/// Tunables shared by the reduction entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub factor_bound: u64,
    /// Bit-length ceiling for direct powering during verification.
    pub exp_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            factor_bound: DEFAULT_FACTOR_BOUND,
            exp_bits: DEFAULT_EXP_BITS,
        }
    }
}

/// Odd primes `3 <= p <= pbar` whose product first exceeds `n^4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSelection {
    pub n: usize,
    pub pbar: u64,
    pub primes: Vec<u64>,
    #[serde(with = "big_string")]
    pub product: BigUint,
    pub d: u64,
}

fn fourth_power(n: usize) -> BigUint {
    BigUint::from(n).pow(4)
}

pub fn select_primes(n: usize) -> PrimeSelection {
    let bound = fourth_power(n);
    let mut primes = Vec::new();
    let mut product = BigUint::one();
    let mut p = 2;
    while product <= bound {
        p = next_prime(p);
        primes.push(p);
        product *= p;
    }
    PrimeSelection {
        n,
        pbar: p,
        d: primes.iter().sum(),
        primes,
        product,
    }
}

/// Block diagonal of Singer companion matrices, one per selected prime,
/// followed by an identity block of size `pad`.
pub fn build_singer_block(
    sel: &PrimeSelection,
    field: &Field,
    pad: usize,
    factor_bound: u64,
) -> Result<SquareMatrix, DegredError> {
    let mut blocks = Vec::with_capacity(sel.primes.len() + 1);
    for &p in &sel.primes {
        let f = singer_polynomial(field, p as usize, factor_bound)?;
        blocks.push(companion(&f)?);
    }
    if pad > 0 {
        blocks.push(SquareMatrix::identity(field, pad));
    }
    Ok(block_diag(&blocks)?)
}

/// The zero-one incidence between selected primes and the diagonal
/// positions of the non-unipotent part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DMatrix {
    pub primes: Vec<u64>,
    /// Degree of the factor owning each column.
    pub column_degrees: Vec<usize>,
    pub entries: Vec<Vec<u8>>,
    pub row_sums: Vec<usize>,
    pub s: usize,
    /// `sum n_i log p_i / sum log p_i`, for display only.
    pub weighted_average: Option<f64>,
    /// Exact check of `W <= s/4`, i.e. `prod p_i^(4 n_i) <= (prod p_i)^s`.
    pub average_within_quarter: bool,
}

impl DMatrix {
    pub fn r(&self) -> usize {
        self.primes.len()
    }
}

pub fn build_d(fact: &Factorization, primes: &[u64]) -> DMatrix {
    let mut column_degrees = Vec::new();
    for (f, e) in fact.non_unipotent() {
        let d = f.deg0();
        column_degrees.extend(std::iter::repeat_n(d, d * *e as usize));
    }
    let entries: Vec<Vec<u8>> = primes
        .iter()
        .map(|&p| {
            column_degrees
                .iter()
                .map(|&d| u8::from((d as u64).is_multiple_of(p)))
                .collect()
        })
        .collect();
    let row_sums: Vec<usize> = entries
        .iter()
        .map(|row| row.iter().map(|&x| x as usize).sum())
        .collect();
    let s = column_degrees.len();
    let weighted_average = if primes.is_empty() {
        None
    } else {
        let num: f64 = primes
            .iter()
            .zip(&row_sums)
            .map(|(&p, &k)| k as f64 * (p as f64).ln())
            .sum();
        let den: f64 = primes.iter().map(|&p| (p as f64).ln()).sum();
        Some(num / den)
    };
    let lhs = primes
        .iter()
        .zip(&row_sums)
        .fold(BigUint::one(), |acc, (&p, &k)| {
            acc * BigUint::from(p).pow(4 * k as u32)
        });
    let product: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
    let rhs = product.pow(s as u32);
    DMatrix {
        primes: primes.to_vec(),
        column_degrees,
        entries,
        row_sums,
        s,
        weighted_average,
        average_within_quarter: lhs <= rhs,
    }
}

/// Index (0-based) of the first row minimizing `n_i`, provided `4 n_i <= s`.
pub fn choose_prime(d: &DMatrix) -> Result<usize, DegredError> {
    if d.s == 0 {
        return Err(DegredError::NoSmallRow {
            reason: "no non-unipotent part (s = 0)".into(),
        });
    }
    let Some((idx, &min)) = d.row_sums.iter().enumerate().min_by_key(|&(i, &k)| (k, i)) else {
        return Err(DegredError::NoSmallRow {
            reason: "no odd prime degree among the factors (r = 0)".into(),
        });
    };
    if 4 * min <= d.s {
        Ok(idx)
    } else {
        let product: BigUint = d.primes.iter().map(|&p| BigUint::from(p)).product();
        Err(DegredError::NoSmallRow {
            reason: format!(
                "min n_i = {min}, 4*{min} > s = {}; prime product {product} over {} primes",
                d.s,
                d.r()
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionExponent {
    pub a: u32,
    pub s_prime: u64,
    pub m: SymbolicExponent,
}

/// `a` smallest with `p^a >= n`, `s'` the lcm of the degrees of non-unipotent
/// factors not divisible by `p'`, and `m = p^a (q^s' - 1)`.
pub fn reduction_exponent(
    fact: &Factorization,
    p_prime: u64,
    field: &Field,
    n: usize,
) -> Result<ReductionExponent, DegredError> {
    if !fact
        .non_unipotent()
        .any(|(f, _)| (f.deg0() as u64).is_multiple_of(p_prime))
    {
        return Err(DegredError::PrimeNotPresent(p_prime));
    }
    let a = ceil_log(field.p(), n as u64);
    let mut s_prime = 1u64;
    for (f, _) in fact.non_unipotent() {
        let d = f.deg0() as u64;
        if !d.is_multiple_of(p_prime) {
            s_prime = checked_lcm(s_prime, d).ok_or(DegredError::LcmOverflow)?;
        }
    }
    let m = SymbolicExponent::pow(field.p(), a as u64)
        .mul(&SymbolicExponent::pow_minus_one(field.q(), s_prime));
    Ok(ReductionExponent { a, s_prime, m })
}

/// Multiplicative order of a root of each irreducible factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootOrders(BTreeMap<Polynomial, BigUint>);

impl RootOrders {
    pub fn compute(fact: &Factorization, factor_bound: u64) -> Result<Self, DegredError> {
        let mut map = BTreeMap::new();
        for (f, _) in &fact.factors {
            if f.coeff(0) == 0 {
                return Err(DegredError::Singular);
            }
            map.insert(f.clone(), root_order(f, factor_bound)?);
        }
        Ok(RootOrders(map))
    }

    pub fn get(&self, f: &Polynomial) -> Option<&BigUint> {
        self.0.get(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Polynomial, &BigUint)> {
        self.0.iter()
    }
}

/// Order of `alpha^e` when `alpha` has order `o`.
fn order_after(o: &BigUint, e: &SymbolicExponent) -> BigUint {
    let r = e.rem(o);
    o / o.gcd(&r)
}

/// Predicted `rank(A^m - I)` from the Jordan structure of `A`.
///
/// A block of `f` (degree `d`, size `b`) whose root order does not divide
/// `m` stays invertible after subtracting `I` and contributes `d * b`.
/// Otherwise its semisimple part becomes trivial and the nilpotent part is
/// raised to `p^v` with `v = v_p(m)`, leaving rank `d * max(b - p^v, 0)`.
pub fn symbolic_power_degree(
    jordan: &JordanStructure,
    orders: &RootOrders,
    m: &SymbolicExponent,
) -> Result<usize, DegredError> {
    if m.is_zero() {
        return Err(DegredError::MalformedExponent("exponent is zero".into()));
    }
    let field = &jordan.factorization.field;
    let p = field.p();
    let cap = ceil_log(p, jordan.n.max(1) as u64);
    let v = m.valuation(p, cap);
    let pv = (p as u128).pow(v);
    let mut total = 0;
    for b in &jordan.blocks {
        let o = orders.get(&b.factor).ok_or_else(|| {
            DegredError::MalformedExponent(format!("no root order for {}", b.factor))
        })?;
        let d = b.factor.deg0();
        let per_block = if !m.divisible_by(o) {
            b.size
        } else {
            (b.size as u128).saturating_sub(pv) as usize
        };
        total += b.multiplicity * d * per_block;
    }
    Ok(total)
}

/// Smallest `k` such that after raising to `m (q-1)^k` no eigenvalue lies in
/// `GF(q) \ {1}`. Returns `k`; the purge exponent is `(q-1)^k`.
pub fn purge_fq_eigenvalues(orders: &RootOrders, q: u64, m: &SymbolicExponent) -> u32 {
    if q == 2 {
        return 0;
    }
    let qm1 = BigUint::from(q - 1);
    let mut k = 0;
    loop {
        let e = m.mul(&SymbolicExponent::pow(q - 1, k as u64));
        let offending = orders.iter().any(|(_, o)| {
            let ord = order_after(o, &e);
            !ord.is_one() && (&qm1 % &ord).is_zero()
        });
        if !offending {
            return k;
        }
        k += 1;
    }
}

/// Whether every prime divisor of `q^t - 1` divides `q - 1`.
///
/// Strips the primes of `q - 1` from `q^t - 1`, so only `q - 1` has to be
/// factored.
pub fn divides_power_predicate(q: u64, t: u32, factor_bound: u64) -> Result<bool, DegredError> {
    assert!(q > 1);
    let qm1 = BigUint::from(q - 1);
    let fact = trial_factor(&qm1, factor_bound);
    if !fact.complete {
        return Err(DegredError::FactorBoundExceeded(qm1));
    }
    let mut rest = BigUint::from(q).pow(t) - BigUint::one();
    for l in fact.primes() {
        while (&rest % l).is_zero() {
            rest /= l;
        }
    }
    Ok(rest.is_one())
}

/// One non-unipotent irreducible factor as recorded in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub polynomial: String,
    pub coeffs: Vec<Vec<u64>>,
    pub degree: usize,
    pub multiplicity: u32,
    pub root_order: String,
}

/// Witness of one reduction run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    pub hypothesis_ok: bool,
    pub chosen_prime: Option<u64>,
    pub a: u32,
    pub s_prime: u64,
    pub m: SymbolicExponent,
    pub purge_exponent: SymbolicExponent,
    pub predicted_degree: usize,
    pub input_degree: usize,
    pub predicted_identity: bool,
    pub primes: Vec<u64>,
    pub prime_product: String,
    pub s: usize,
    pub row_sums: Vec<usize>,
    pub weighted_average: Option<f64>,
    pub average_within_quarter: bool,
    pub factors: Vec<FactorRecord>,
    pub notes: Vec<String>,
}

impl ReductionCertificate {
    /// `m * m'`, the full exponent applied to `A`.
    pub fn total_exponent(&self) -> SymbolicExponent {
        self.m.mul(&self.purge_exponent)
    }
}

fn factor_records(fact: &Factorization, orders: &RootOrders) -> Vec<FactorRecord> {
    fact.factors
        .iter()
        .map(|(f, e)| FactorRecord {
            polynomial: f.to_string(),
            coeffs: wire::poly_coeffs(f),
            degree: f.deg0(),
            multiplicity: *e,
            root_order: orders.get(f).map(|o| o.to_string()).unwrap_or_default(),
        })
        .collect()
}

/// Runs the full reduction on an invertible matrix.
pub fn reduce(
    a: &SquareMatrix,
    seed: u64,
    limits: &Limits,
) -> Result<ReductionCertificate, DegredError> {
    let field = a.field().clone();
    let n = a.n();
    let q = field.q();
    let p = field.p();
    let chi = a.charpoly();
    if chi.coeff(0) == 0 {
        return Err(DegredError::Singular);
    }
    let input_degree = a.degree();

    if a.is_identity() {
        return Ok(ReductionCertificate {
            n,
            q,
            p,
            hypothesis_ok: false,
            chosen_prime: None,
            a: 0,
            s_prime: 1,
            m: SymbolicExponent::int(1u32),
            purge_exponent: SymbolicExponent::int(1u32),
            predicted_degree: 0,
            input_degree,
            predicted_identity: true,
            primes: Vec::new(),
            prime_product: "1".into(),
            s: 0,
            row_sums: Vec::new(),
            weighted_average: None,
            average_within_quarter: true,
            factors: factor_records(&factor(&chi, seed)?, &RootOrders::default()),
            notes: vec!["already identity-like".into()],
        });
    }

    let fact = factor(&chi, seed)?;
    let orders = RootOrders::compute(&fact, limits.factor_bound)?;
    let mut primes: Vec<u64> = fact
        .non_unipotent()
        .map(|(f, _)| f.deg0() as u64)
        .filter(|&d| d > 2 && is_prime_u64(d))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let product: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
    let hypothesis_ok = product > fourth_power(n);

    let d = build_d(&fact, &primes);
    let idx = choose_prime(&d).map_err(|e| match e {
        DegredError::NoSmallRow { reason } => DegredError::NoSmallRow {
            reason: format!("{reason}; hypothesis prod p_i > n^4 holds: {hypothesis_ok}"),
        },
        other => other,
    })?;
    let p_prime = primes[idx];
    let exp = reduction_exponent(&fact, p_prime, &field, n)?;
    let k = purge_fq_eigenvalues(&orders, q, &exp.m);
    let purge = if k == 0 {
        SymbolicExponent::int(1u32)
    } else {
        SymbolicExponent::pow(q - 1, k as u64)
    };
    let jordan = a.jordan_structure_from(fact.clone());
    let predicted_degree = symbolic_power_degree(&jordan, &orders, &exp.m.mul(&purge))?;

    let mut notes = Vec::new();
    if !hypothesis_ok {
        notes.push(format!(
            "hypothesis not met: prime product {product} <= n^4 = {}",
            fourth_power(n)
        ));
    }
    let ties = d.row_sums.iter().filter(|&&k| k == d.row_sums[idx]).count();
    if ties > 1 {
        notes.push(format!(
            "{ties} rows share the minimal n_i; took the smallest prime"
        ));
    }
    notes.push(format!(
        "a = {} is the least exponent with {p}^a >= {n}",
        exp.a
    ));
    if k > 0 {
        notes.push(format!(
            "raised by (q-1)^{k} to clear eigenvalues in GF({q})"
        ));
    }
    if predicted_degree == 0 {
        notes.push("predicted power is the identity".into());
    }
    if hypothesis_ok && 4 * predicted_degree > input_degree {
        notes.push("predicted degree exceeds deg(A)/4 despite the hypothesis".into());
    }

    Ok(ReductionCertificate {
        n,
        q,
        p,
        hypothesis_ok,
        chosen_prime: Some(p_prime),
        a: exp.a,
        s_prime: exp.s_prime,
        m: exp.m,
        purge_exponent: purge,
        predicted_degree,
        input_degree,
        predicted_identity: predicted_degree == 0,
        primes,
        prime_product: product.to_string(),
        s: d.s,
        row_sums: d.row_sums,
        weighted_average: d.weighted_average,
        average_within_quarter: d.average_within_quarter,
        factors: factor_records(&fact, &orders),
        notes,
    })
}

/// Result of checking a certificate against its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub claimed_degree: usize,
    pub symbolic_degree: usize,
    /// `None` when the exponent is above the powering ceiling or direct
    /// powering was not requested.
    pub direct_degree: Option<usize>,
    pub exponent_bits: u64,
    pub agrees: bool,
}

/// Recomputes the prediction from an independently computed Jordan
/// structure and, when `direct` is set and the exponent fits the ceiling,
/// by powering `A` outright.
pub fn verify(
    a: &SquareMatrix,
    cert: &ReductionCertificate,
    seed: u64,
    direct: bool,
    limits: &Limits,
) -> Result<Verification, DegredError> {
    let e = cert.total_exponent();
    if e.is_zero() {
        return Err(DegredError::MalformedExponent("exponent is zero".into()));
    }
    let jordan = a.jordan_structure(seed);
    let orders = RootOrders::compute(&jordan.factorization, limits.factor_bound)?;
    let symbolic_degree = symbolic_power_degree(&jordan, &orders, &e)?;
    let bits = e.bits_upper();
    let direct_degree = if direct && bits <= limits.exp_bits {
        Some(a.pow_big(&e.to_biguint(), limits.exp_bits)?.degree())
    } else {
        None
    };
    let shape_ok = cert.n == a.n() && cert.q == a.field().q();
    let agrees = shape_ok
        && symbolic_degree == cert.predicted_degree
        && direct_degree.is_none_or(|d| d == cert.predicted_degree)
        && cert.predicted_identity == (cert.predicted_degree == 0);
    Ok(Verification {
        claimed_degree: cert.predicted_degree,
        symbolic_degree,
        direct_degree,
        exponent_bits: bits,
        agrees,
    })
}

/// Outcome of reducing and directly checking one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    /// Certificate produced; direct powering gave `measured`.
    Checked { predicted: usize, measured: usize },
    /// Certificate produced but the exponent is above the ceiling.
    TooLarge,
    /// `reduce` declined the instance.
    Declined(DegredError),
}

impl SweepOutcome {
    pub fn is_match(&self) -> bool {
        matches!(self, SweepOutcome::Checked { predicted, measured } if predicted == measured)
    }

    pub fn is_mismatch(&self) -> bool {
        matches!(self, SweepOutcome::Checked { predicted, measured } if predicted != measured)
    }
}

/// Reduces every instance and compares the prediction with direct powering.
pub fn sweep(
    instances: &[SquareMatrix],
    seed: u64,
    limits: &Limits,
    exec: Execution,
) -> Vec<SweepOutcome> {
    par::map(exec, instances, |a| match reduce(a, seed, limits) {
        Err(e) => SweepOutcome::Declined(e),
        Ok(cert) => {
            let e = cert.total_exponent();
            if e.bits_upper() > limits.exp_bits {
                return SweepOutcome::TooLarge;
            }
            let measured = a
                .pow_big(&e.to_biguint(), limits.exp_bits)
                .map(|m| m.degree())
                .unwrap_or(usize::MAX);
            SweepOutcome::Checked {
                predicted: cert.predicted_degree,
                measured,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::matrix::generalized_jordan_block;

    fn poly(field: &Field, c: &[u64]) -> Polynomial {
        Polynomial::from_u64(field, c)
    }

    fn fake_fact(field: &Field, degrees: &[(usize, u32)]) -> Factorization {
        // distinct monic polynomials of the requested degrees; only degrees
        // matter for D and the exponent
        let mut factors: Vec<(Polynomial, u32)> = degrees
            .iter()
            .enumerate()
            .map(|(i, &(d, e))| {
                let mut c = vec![0u64; d + 1];
                c[d] = 1;
                c[0] = 1 + i as u64 % (field.p() - 1).max(1);
                if d > 1 {
                    c[1] = i as u64 % field.p();
                }
                (Polynomial::from_u64(field, &c), e)
            })
            .collect();
        factors.sort();
        Factorization {
            field: field.clone(),
            unit: 1,
            factors,
        }
    }

    #[test]
    fn select_primes_examples() {
        let s = select_primes(2);
        assert_eq!((s.primes.clone(), s.d, s.pbar), (vec![3, 5, 7], 15, 7));
        assert_eq!(s.product, BigUint::from(105u32));
        assert!(BigUint::from(15u32) <= fourth_power(2));
        let s = select_primes(100);
        assert_eq!(s.primes, vec![3, 5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(s.product, BigUint::from(111_546_435u64));
        assert_eq!(s.d, 98);
        assert_eq!(select_primes(3).pbar, 7);
    }

    #[test]
    fn singer_blocks() {
        let f2 = build_field(2, 1).unwrap();
        let one = |p: Vec<u64>| PrimeSelection {
            n: 0,
            pbar: *p.last().unwrap(),
            d: p.iter().sum(),
            product: p.iter().map(|&x| BigUint::from(x)).product(),
            primes: p,
        };
        let a = build_singer_block(&one(vec![3]), &f2, 0, DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(a, companion(&poly(&f2, &[1, 1, 0, 1])).unwrap());
        assert_eq!(a.degree(), 3);
        let a = build_singer_block(&one(vec![3, 5, 7]), &f2, 0, DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!((a.n(), a.degree()), (15, 15));
        let a = build_singer_block(&one(vec![3]), &f2, 2, DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!((a.n(), a.degree()), (5, 3));
    }

    #[test]
    fn d_matrix_examples() {
        let f2 = build_field(2, 1).unwrap();
        let fact = fake_fact(&f2, &[(3, 1), (5, 1), (7, 1)]);
        let d = build_d(&fact, &[3, 5, 7]);
        assert_eq!((d.row_sums.clone(), d.s), (vec![3, 5, 7], 15));
        assert!(!d.average_within_quarter); // W = 5.37 > 15/4 while 4*n_1 <= s still holds
        assert_eq!(choose_prime(&d).unwrap(), 0);

        let f3 = build_field(3, 1).unwrap();
        let unip = Factorization {
            field: f3.clone(),
            unit: 1,
            factors: vec![(poly(&f3, &[2, 1]), 4)],
        };
        let d = build_d(&unip, &[3, 5]);
        assert_eq!((d.row_sums.clone(), d.s), (vec![0, 0], 0));

        let fact = fake_fact(&f2, &[(3, 1), (5, 1), (15, 1)]);
        let d = build_d(&fact, &[3, 5]);
        assert_eq!((d.row_sums.clone(), d.s), (vec![18, 20], 23));
        assert!(matches!(
            choose_prime(&d),
            Err(DegredError::NoSmallRow { .. })
        ));

        let single = fake_fact(&f2, &[(5, 1)]);
        assert!(choose_prime(&build_d(&single, &[5])).is_err());
    }

    #[test]
    fn exponent_examples() {
        let f2 = build_field(2, 1).unwrap();
        let fact = fake_fact(&f2, &[(3, 1), (5, 1), (7, 1)]);
        let e = reduction_exponent(&fact, 3, &f2, 15).unwrap();
        assert_eq!((e.a, e.s_prime), (4, 35));
        assert_eq!(e.m.to_biguint(), BigUint::from(16u64 * ((1 << 35) - 1)));

        let f3 = build_field(3, 1).unwrap();
        let e = reduction_exponent(&fake_fact(&f3, &[(3, 1)]), 3, &f3, 3).unwrap();
        assert_eq!(
            (e.a, e.s_prime, e.m.to_biguint()),
            (1, 1, BigUint::from(6u32))
        );

        let e = reduction_exponent(&fake_fact(&f2, &[(5, 1)]), 5, &f2, 5).unwrap();
        assert_eq!(
            (e.a, e.s_prime, e.m.to_biguint()),
            (3, 1, BigUint::from(8u32))
        );

        assert_eq!(
            reduction_exponent(&fake_fact(&f2, &[(5, 1)]), 3, &f2, 5),
            Err(DegredError::PrimeNotPresent(3))
        );
    }

    #[test]
    fn symbolic_degree_examples() {
        let f2 = build_field(2, 1).unwrap();
        let a = build_singer_block(&select_primes(2), &f2, 0, DEFAULT_FACTOR_BOUND).unwrap();
        let js = a.jordan_structure(0);
        let orders = RootOrders::compute(&js.factorization, DEFAULT_FACTOR_BOUND).unwrap();
        let m = SymbolicExponent::pow(2, 4).mul(&SymbolicExponent::pow_minus_one(2, 35));
        assert_eq!(symbolic_power_degree(&js, &orders, &m).unwrap(), 3);
        let direct = a.pow_big(&m.to_biguint(), DEFAULT_EXP_BITS).unwrap();
        assert_eq!(direct.degree(), 3);

        let id = SquareMatrix::identity(&f2, 4);
        let js = id.jordan_structure(0);
        let orders = RootOrders::compute(&js.factorization, DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(
            symbolic_power_degree(&js, &orders, &SymbolicExponent::int(7u32)).unwrap(),
            0
        );

        let t = SquareMatrix::from_rows(&f2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let js = t.jordan_structure(0);
        let orders = RootOrders::compute(&js.factorization, DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(
            symbolic_power_degree(&js, &orders, &SymbolicExponent::pow(2, 1)).unwrap(),
            0
        );
        assert_eq!(
            symbolic_power_degree(&js, &orders, &SymbolicExponent::int(3u32)).unwrap(),
            1
        );
        assert!(symbolic_power_degree(&js, &orders, &SymbolicExponent::int(0u32)).is_err());
    }

    #[test]
    fn symbolic_degree_matches_direct_on_jordan_blocks() {
        let f3 = build_field(3, 1).unwrap();
        let f = poly(&f3, &[2, 1, 1]); // root order 8
        let g = poly(&f3, &[1, 1]); // x + 1, root -1 of order 2
        let a = block_diag(&[
            generalized_jordan_block(&f, 3).unwrap(),
            generalized_jordan_block(&g, 2).unwrap(),
            generalized_jordan_block(&poly(&f3, &[2, 1]), 4).unwrap(),
        ])
        .unwrap();
        let js = a.jordan_structure(1);
        let orders = RootOrders::compute(&js.factorization, DEFAULT_FACTOR_BOUND).unwrap();
        for m in 1u64..=60 {
            let e = SymbolicExponent::int(m);
            assert_eq!(
                symbolic_power_degree(&js, &orders, &e).unwrap(),
                a.pow_u64(m).degree(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn purge_examples() {
        let f3 = build_field(3, 1).unwrap();
        let orders_of = |c: &[u64]| {
            let fact = factor(&poly(&f3, c), 0).unwrap();
            RootOrders::compute(&fact, DEFAULT_FACTOR_BOUND).unwrap()
        };
        assert_eq!(
            purge_fq_eigenvalues(&orders_of(&[2, 1, 1]), 3, &SymbolicExponent::one()),
            0
        );
        assert_eq!(
            purge_fq_eigenvalues(&orders_of(&[1, 1]), 3, &SymbolicExponent::one()),
            1
        );
        assert_eq!(
            purge_fq_eigenvalues(&orders_of(&[2, 1]), 3, &SymbolicExponent::one()),
            0
        );
        // x^2+x+2 raised to its 4th power has order 2, i.e. eigenvalue -1
        assert_eq!(
            purge_fq_eigenvalues(&orders_of(&[2, 1, 1]), 3, &SymbolicExponent::int(4u32)),
            1
        );
    }

    #[test]
    fn claim_examples() {
        assert!(divides_power_predicate(3, 2, DEFAULT_FACTOR_BOUND).unwrap());
        assert!(!divides_power_predicate(2, 3, DEFAULT_FACTOR_BOUND).unwrap());
        assert!(!divides_power_predicate(4, 2, DEFAULT_FACTOR_BOUND).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let f2 = build_field(2, 1).unwrap();
        let a = build_singer_block(&select_primes(2), &f2, 0, DEFAULT_FACTOR_BOUND).unwrap();
        let cert = reduce(&a, 0, &Limits::default()).unwrap();
        assert!(!cert.hypothesis_ok);
        assert_eq!(cert.chosen_prime, Some(3));
        assert_eq!(cert.predicted_degree, 3);
        assert!(4 * cert.predicted_degree <= 15);

        let cert = reduce(&SquareMatrix::identity(&f2, 3), 0, &Limits::default()).unwrap();
        assert_eq!((cert.predicted_degree, cert.chosen_prime), (0, None));
        assert!(cert.notes.iter().any(|n| n == "already identity-like"));

        let sing = SquareMatrix::from_rows(&f2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            reduce(&sing, 0, &Limits::default()),
            Err(DegredError::Singular)
        );
    }

    #[test]
    fn verify_detects_tampering() {
        let f2 = build_field(2, 1).unwrap();
        let a = build_singer_block(&select_primes(2), &f2, 0, DEFAULT_FACTOR_BOUND).unwrap();
        let limits = Limits::default();
        let cert = reduce(&a, 0, &limits).unwrap();
        let v = verify(&a, &cert, 3, true, &limits).unwrap();
        assert!(v.agrees);
        assert_eq!(v.direct_degree, Some(3));
        let mut bad = cert.clone();
        bad.predicted_degree = 0;
        assert!(!verify(&a, &bad, 3, true, &limits).unwrap().agrees);
    }
}
