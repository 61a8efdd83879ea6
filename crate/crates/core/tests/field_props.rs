use num_bigint::BigUint;
use proptest::prelude::*;

use diamlab::gf::{build_field, Elem, Field};

fn fields() -> Vec<Field> {
    [
        (2u64, 1u32),
        (3, 1),
        (2, 2),
        (3, 2),
        (5, 1),
        (2, 8),
        (7, 3),
        (65521, 1),
        (3, 11),
    ]
    .iter()
    .map(|&(p, e)| build_field(p, e).unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2))]

    /// 10^4 random triples per case, each checked in every field.
    #[test]
    fn axioms_hold(sample in proptest::collection::vec(any::<(u32, u32, u32)>(), 10_000)) {
        for f in fields() {
            let q = f.q();
            let r = |x: u32| (x as u64 % q) as Elem;
            for &(a, b, c) in &sample {
                let (a, b, c) = (r(a), r(b), r(c));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, f.neg(a)), 0);
                prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                if a != 0 {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                prop_assert_eq!(f.frobenius_inv(f.frobenius(c)), c);
            }
        }
    }
}

#[test]
fn fermat_for_every_element() {
    for f in fields().into_iter().filter(|f| f.q() <= 1 << 16) {
        let qm1 = BigUint::from(f.q() - 1);
        for a in 1..f.q() as Elem {
            assert_eq!(f.pow(a, &qm1), 1, "{f:?} a = {a}");
        }
    }
}

#[test]
fn construction_is_deterministic() {
    for (p, e) in [(2u64, 5u32), (3, 4), (5, 3), (2, 16)] {
        let a = build_field(p, e).unwrap();
        let b = build_field(p, e).unwrap();
        assert_eq!(a.spec(), b.spec());
    }
}
