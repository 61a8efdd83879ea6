//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Exits 0 so the workspace test run stays usable while a criterion is red;
//! set `ACCEPTANCE_STRICT=1` to turn any FAIL into a nonzero exit.

use std::collections::BTreeMap;
use std::fs;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diamlab::bounds::ints::{is_prime_u64, next_prime, DEFAULT_FACTOR_BOUND};
use diamlab::bounds::{compare_bounds, erdos_report, sylow_chain_bound, BoundConstants};
use diamlab::cayley::{
    class_covering_number, composition_check, diameter_report, enumerate_group,
    find_low_degree_word, MulTable, DEFAULT_CAP_ORDER, DEFAULT_KMAX,
};
use diamlab::degred::{
    build_singer_block, divides_power_predicate, reduce, select_primes, sweep, verify, Limits,
    SweepOutcome,
};
use diamlab::gen::{assemble, random_blocks, random_conjugate, random_poly};
use diamlab::gf::{build_field, Elem, Field};
use diamlab::matrix::{companion, SquareMatrix};
use diamlab::par::Execution;
use diamlab::poly::{count_irreducibles, factor, necklace_count, Polynomial};

const BY_EXPECTED: f64 = 806.9;
const THIS_EXPECTED: f64 = 110.3;
const LOG_TOLERANCE: f64 = 0.1;
/// Largest `q^d` scanned exhaustively for the irreducible counts.
const SCAN_LIMIT: u64 = 1 << 16;

struct Gate {
    passed: usize,
    failed: usize,
}

impl Gate {
    fn check(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        println!("{tag} [{id}] {name}: {detail}");
    }
}

fn irreducibles(field: &Field, d: usize) -> Vec<Polynomial> {
    let q = field.q();
    (0..q.pow(d as u32))
        .map(|t| {
            let mut c: Vec<Elem> = (0..d).map(|i| (t / q.pow(i as u32) % q) as Elem).collect();
            c.push(1);
            Polynomial::new(field, c)
        })
        .filter(|f| f.is_irreducible().unwrap())
        .collect()
}

fn flagship(g: &mut Gate) {
    let f2 = build_field(2, 1).unwrap();
    let sel = select_primes(100);
    let a = build_singer_block(&sel, &f2, 2, DEFAULT_FACTOR_BOUND).unwrap();
    let start = Instant::now();
    let cert = reduce(&a, 7, &Limits::default()).unwrap();
    let v = verify(&a, &cert, 11, true, &Limits::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ok = a.n() == 100
        && a.degree() == 98
        && sel.product == BigUint::from(111_546_435u32)
        && cert.hypothesis_ok
        && cert.chosen_prime.is_some()
        && cert.predicted_degree <= 24
        && !cert.predicted_identity
        && v.agrees
        && secs < 10.0;
    g.check(
        "1",
        "flagship n = 100 reduction",
        ok,
        format!(
            "hypothesis_ok = {}, p' = {:?}, predicted degree {} (<= 24), m = {}, verified symbolically in {secs:.3}s",
            cert.hypothesis_ok, cert.chosen_prime, cert.predicted_degree, cert.m
        ),
    );
}

fn soundness(g: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fields = [
        build_field(2, 1).unwrap(),
        build_field(3, 1).unwrap(),
        build_field(2, 2).unwrap(),
    ];
    let start = Instant::now();
    let instances: Vec<SquareMatrix> = (0..600)
        .map(|i| {
            let blocks = random_blocks(&fields[i % 3], &[1, 3, 5, 7], 2, 24, &mut rng);
            random_conjugate(&assemble(&blocks), &mut rng)
        })
        .collect();
    let outcomes = sweep(&instances, 0, &Limits::default(), Execution::Parallel);
    let secs = start.elapsed().as_secs_f64();
    let checked = outcomes
        .iter()
        .filter(|o| matches!(o, SweepOutcome::Checked { .. }))
        .count();
    let mismatches = outcomes.iter().filter(|o| o.is_mismatch()).count();
    let too_large = outcomes
        .iter()
        .filter(|o| matches!(o, SweepOutcome::TooLarge))
        .count();
    let declined = outcomes.len() - checked - too_large;
    g.check(
        "2",
        "certificate soundness sweep",
        checked >= 200 && mismatches == 0 && secs < 60.0,
        format!(
            "{checked} checked by direct powering, {mismatches} mismatches, {too_large} above ceiling, {declined} declined, {secs:.2}s"
        ),
    );
}

fn companion_facts(g: &mut Gate) {
    let mut failures = 0;
    let mut cases = 0;
    let mut frob_cases = 0;
    let mut frob_failures = 0;
    for q in [2u64, 3] {
        let f = build_field(q, 1).unwrap();
        for d in 1..=8 {
            for poly in irreducibles(&f, d).into_iter().filter(|p| p.coeff(0) != 0) {
                let c = companion(&poly).unwrap();
                if d <= 6 {
                    for m in 1..=12u32 {
                        let k = BigUint::from(q).pow(m) - 1u32;
                        cases += 1;
                        if c.pow_big(&k, 64).unwrap().is_identity()
                            != (m as usize).is_multiple_of(d)
                        {
                            failures += 1;
                        }
                    }
                }
                for a in 0..=4u32 {
                    let cp = c.pow_big(&BigUint::from(q).pow(a), 64).unwrap().charpoly();
                    frob_cases += 1;
                    if cp.degree() != Some(d) || !cp.is_irreducible().unwrap() {
                        frob_failures += 1;
                    }
                }
            }
        }
    }
    g.check(
        "3",
        "companion powers",
        failures == 0 && frob_failures == 0,
        format!(
            "C^(q^m-1) = I iff d | m: {failures} failures in {cases} cases (deg <= 6, m <= 12); \
             charpoly(C^(p^a)) irreducible: {frob_failures} failures in {frob_cases} cases (deg <= 8, a <= 4)"
        ),
    );
}

fn claim(g: &mut Gate) {
    let mut evaluated = 0;
    let mut violations = Vec::new();
    let mut t_two = 0;
    for q in 2u64..=1000 {
        let mut t = 2u32;
        while t <= 50 {
            match divides_power_predicate(q, t, DEFAULT_FACTOR_BOUND) {
                Ok(true) if t != 2 => violations.push((q, t)),
                Ok(true) => t_two += 1,
                Ok(false) => {}
                Err(_) => {}
            }
            evaluated += 1;
            t = next_prime(t as u64) as u32;
        }
    }
    let witness = divides_power_predicate(3, 2, DEFAULT_FACTOR_BOUND) == Ok(true);
    g.check(
        "4",
        "power-divisibility predicate",
        violations.is_empty() && witness,
        format!("{evaluated} pairs (q <= 1000, prime t <= 50), true only for t = 2 ({t_two} cases), violations {violations:?}, (3,2) -> {witness}"),
    );
}

fn factorization(g: &mut Gate) {
    let start = Instant::now();
    let mut bad = 0;
    for (p, e) in [(2u64, 1u32), (3, 1), (3, 2)] {
        let f = build_field(p, e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p * 10 + e as u64);
        for _ in 0..1000 {
            let poly = random_poly(&f, rng.gen_range(1..=50), &mut rng);
            let a = factor(&poly, 1).unwrap();
            let b = factor(&poly, 0x5eed).unwrap();
            let irreducible = a.factors.iter().all(|(h, _)| h.is_irreducible().unwrap());
            if a != b || a.expand() != poly || !irreducible {
                bad += 1;
            }
        }
    }
    g.check(
        "5a",
        "factorization round trip",
        bad == 0,
        format!(
            "3000 polynomials over GF(2), GF(3), GF(9): {bad} failures, {:.2}s",
            start.elapsed().as_secs_f64()
        ),
    );

    let start = Instant::now();
    let mut pairs = 0;
    let mut covered = 0;
    let mut mismatched = Vec::new();
    let mut largest_uncovered = BigUint::ZERO;
    for q in (2u64..=64).filter(|&q| prime_power(q).is_some()) {
        let (p, e) = prime_power(q).unwrap();
        let f = build_field(p, e).unwrap();
        for d in 1..=(64 / q) as u32 {
            pairs += 1;
            let space = BigUint::from(q).pow(d);
            if space > BigUint::from(SCAN_LIMIT) {
                largest_uncovered = largest_uncovered.max(space);
                continue;
            }
            covered += 1;
            if BigUint::from(count_irreducibles(&f, d as usize)) != necklace_count(q, d) {
                mismatched.push((q, d));
            }
        }
    }
    g.check(
        "5b",
        "irreducible counts vs necklace formula (q*d <= 64)",
        mismatched.is_empty() && covered == pairs,
        format!(
            "exhaustive scan covered {covered}/{pairs} (q, d) pairs with q^d <= 2^16, mismatches {mismatched:?}, {:.2}s; \
             uncovered pairs need up to {} candidate tests",
            start.elapsed().as_secs_f64(),
            largest_uncovered
        ),
    );
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1 && is_prime_u64(p)).then_some((p, e))
}

fn jordan(g: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fields = [build_field(2, 1).unwrap(), build_field(3, 1).unwrap()];
    let mut wrong = 0;
    let mut minpoly_wrong = 0;
    for i in 0..100 {
        let blocks = random_blocks(&fields[i % 2], &[1, 2, 3], 3, 14, &mut rng);
        let mut expect: BTreeMap<(Polynomial, usize), usize> = BTreeMap::new();
        for b in &blocks {
            *expect.entry((b.factor.clone(), b.size)).or_default() += 1;
        }
        let a = random_conjugate(&assemble(&blocks), &mut rng);
        let js = a.jordan_structure(i as u64);
        let got: BTreeMap<_, _> = js
            .blocks
            .iter()
            .map(|b| ((b.factor.clone(), b.size), b.multiplicity))
            .collect();
        if got != expect || js.total_dimension() != a.n() {
            wrong += 1;
        }
        if js.minpoly() != a.minpoly() {
            minpoly_wrong += 1;
        }
    }
    g.check(
        "6",
        "Jordan structure recovery",
        wrong == 0 && minpoly_wrong == 0,
        format!("100 conjugated constructions over GF(2)/GF(3): {wrong} wrong multisets, {minpoly_wrong} minpoly inconsistencies"),
    );
}

fn sl2(field: &Field) -> Vec<SquareMatrix> {
    let mut gens: Vec<SquareMatrix> = (0..field.e())
        .map(|i| {
            let t = field
                .from_coeffs(&(0..field.e()).map(|j| (j == i) as u64).collect::<Vec<_>>())
                .unwrap();
            SquareMatrix::from_rows(field, &[vec![1, t], vec![0, 1]]).unwrap()
        })
        .collect();
    gens.push(SquareMatrix::from_rows(field, &[vec![1, 0], vec![1, 1]]).unwrap());
    gens
}

fn cayley(g: &mut Gate) {
    let mut orders = Vec::new();
    let mut orders_ok = true;
    for (p, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
        let f = build_field(p, e).unwrap();
        let q = f.q() as usize;
        let t = enumerate_group(&sl2(&f), DEFAULT_CAP_ORDER, Execution::Parallel).unwrap();
        orders_ok &= t.order() == q * (q * q - 1);
        orders.push(t.order());
    }
    let f2 = build_field(2, 1).unwrap();
    let t = enumerate_group(&sl2(&f2), DEFAULT_CAP_ORDER, Execution::Parallel).unwrap();
    let diam = diameter_report(&t).diameter;
    let target = Polynomial::from_u64(&f2, &[1, 1, 1]);
    let word = find_low_degree_word(&sl2(&f2), &[target], DEFAULT_CAP_ORDER, Execution::Parallel)
        .map(|w| w.word)
        .unwrap_or_default();
    let x = SquareMatrix::from_rows(&f2, &[vec![1, 1], vec![0, 1]]).unwrap();
    let cover = class_covering_number(&t, &x, DEFAULT_KMAX, Execution::Parallel).ok();
    let s3 = MulTable::from_group(&t).unwrap();
    let normal: Vec<usize> = (0..s3.order())
        .filter(|&e| s3.element_order(e) != 2)
        .collect();
    let comp = composition_check(&s3, &normal, Execution::Parallel).unwrap();
    g.check(
        "7",
        "Cayley lab fixtures",
        orders_ok && diam == 3 && word.len() == 2 && cover == Some(2) && comp.holds,
        format!(
            "|SL(2,q)| for q = 2,3,4,5: {orders:?}; SL(2,2) diameter {diam}; low-degree word {word:?}; \
             covering number {cover:?}; S3: max diam {} <= 4*{}*{} over {} generating sets",
            comp.max_diam_g, comp.diam_n, comp.diam_quotient, comp.generating_sets
        ),
    );
}

fn bounds(g: &mut Gate) {
    let s = sylow_chain_bound(3, 2, 2).unwrap();
    g.check(
        "8a",
        "Sylow-chain bound (3,2,2)",
        s.value == BigUint::from(8192u32) && (s.spec.m, s.spec.r, s.spec.l) == (4, 4, 3),
        format!(
            "value {}, (m, r, l) = ({}, {}, {})",
            s.value, s.spec.m, s.spec.r, s.spec.l
        ),
    );
    let e = erdos_report(100).unwrap();
    g.check(
        "8b",
        "prime selection n = 100",
        (e.pbar, e.d) == (23, 98),
        format!("pbar = {}, d = {}", e.pbar, e.d),
    );
    let c = compare_bounds(10, 2, BoundConstants::default()).unwrap();
    g.check(
        "8c",
        "compare_bounds(10, 2): main exponent",
        (c.this_log2 - THIS_EXPECTED).abs() <= LOG_TOLERANCE,
        format!(
            "{:.4} vs expected {THIS_EXPECTED} +- {LOG_TOLERANCE}",
            c.this_log2
        ),
    );
    g.check(
        "8d",
        "compare_bounds(10, 2): n (log n + log q)^3 log q exponent",
        (c.by_log2 - BY_EXPECTED).abs() <= LOG_TOLERANCE,
        format!(
            "{:.4} vs expected {BY_EXPECTED} +- {LOG_TOLERANCE}",
            c.by_log2
        ),
    );
}

fn determinism(g: &mut Gate) {
    let bin = env!("CARGO_BIN_EXE_diamlab");
    let dir = std::env::temp_dir().join(format!("diamlab-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let f2 = r#"{"p":2,"e":1,"modulus":[0,1]}"#;
    let gens = format!(
        r#"[{{"field":{f2},"n":2,"entries":[[1,1],[0,1]]}},{{"field":{f2},"n":2,"entries":[[1,0],[1,1]]}}]"#
    );
    let elem = format!(r#"{{"field":{f2},"n":2,"entries":[[1,1],[0,1]]}}"#);
    let targets = format!(r#"[{{"field":{f2},"coeffs":[1,1,1]}}]"#);
    let poly = r#"{"field":{"p":3,"e":2,"modulus":[1,0,1]},"coeffs":[[1],[2,1],[0],[1,1],[1]]}"#;

    let first = Command::new(bin)
        .args([
            "singer",
            "--p",
            "2",
            "--block",
            "100",
            "--out",
            &path("a.json"),
        ])
        .status();
    let first_ok = first.map(|s| s.success()).unwrap_or(false);
    let cert_ok = Command::new(bin)
        .args([
            "reduce",
            "--in",
            &path("a.json"),
            "--seed",
            "7",
            "--out",
            &path("c.json"),
        ])
        .status()
        .map(|s| s.success())
        .unwrap_or(false);

    let runs: Vec<Vec<String>> = vec![
        vec!["field", "--p", "3", "--e", "2"],
        vec!["factor", "--in", poly],
        vec!["singer", "--p", "3", "--d", "4"],
        vec!["jordan", "--in", &path("a.json")],
        vec!["reduce", "--in", &path("a.json"), "--seed", "7"],
        vec![
            "verify",
            "--in",
            &path("a.json"),
            "--cert",
            &path("c.json"),
            "--direct",
        ],
        vec!["diameter", "--gens", &gens],
        vec![
            "diameter",
            "--gens",
            &gens,
            "--exhaustive",
            "--format",
            "table",
        ],
        vec!["cover", "--gens", &gens, "--elem", &elem],
        vec!["lowdeg", "--gens", &gens, "--targets", &targets],
        vec![
            "bounds", "compare", "--n", "10", "--q", "2", "--format", "csv",
        ],
        vec!["bounds", "sylow", "--n", "3", "--q", "2", "--p", "2"],
        vec!["bounds", "erdos", "--n", "100", "--format", "table"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    let capture = |args: &[String]| {
        Command::new(bin)
            .args(args)
            .output()
            .ok()
            .map(|o| (o.status.code(), o.stdout, o.stderr))
    };
    let mut differing = Vec::new();
    let mut failing = Vec::new();
    for args in &runs {
        let a = capture(args);
        let b = capture(args);
        if a.is_none() || a != b {
            differing.push(args[0].clone());
        }
        if a.map(|(c, _, _)| c) != Some(Some(0)) {
            failing.push(args[0].clone());
        }
    }
    // seeds drive only internal randomness
    let s1 = capture(&["factor", "--in", poly, "--seed", "1"].map(String::from));
    let s2 = capture(&["factor", "--in", poly, "--seed", "99"].map(String::from));
    let seed_free = s1.is_some() && s1 == s2;
    let _ = fs::remove_dir_all(&dir);
    g.check(
        "9",
        "CLI determinism",
        first_ok && cert_ok && differing.is_empty() && failing.is_empty() && seed_free,
        format!(
            "{} commands run twice: byte-identical except {differing:?}, nonzero exits {failing:?}, seed-independent factor output {seed_free}",
            runs.len()
        ),
    );
}

fn main() {
    let mut g = Gate {
        passed: 0,
        failed: 0,
    };
    flagship(&mut g);
    soundness(&mut g);
    companion_facts(&mut g);
    claim(&mut g);
    factorization(&mut g);
    jordan(&mut g);
    cayley(&mut g);
    bounds(&mut g);
    determinism(&mut g);
    println!("acceptance: {} passed, {} failed", g.passed, g.failed);
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && g.failed > 0 {
        std::process::exit(1);
    }
}
