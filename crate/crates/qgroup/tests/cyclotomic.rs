use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use qgroup::cyclotomic::{Cyclo, CycloField};

fn build(f: &CycloField, terms: &[(i64, i64, i64)]) -> Cyclo {
    // sum of (num / den) zeta^k with den >= 1
    terms.iter().fold(f.zero(), |acc, &(num, den, k)| {
        let c = f.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)));
        f.add(&acc, &f.mul_zeta(&c, k))
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

fn arb_terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=12, 0i64..96), 1..6)
}

#[test]
fn inverse_of_a_rational_scalar() {
    for n in [24, 48, 60] {
        let f = CycloField::new(n);
        let x = f.from_rational(&BigRational::new(BigInt::from(-3), BigInt::from(8)));
        assert_eq!(
            f.inv(&x).unwrap(),
            f.from_rational(&BigRational::new(BigInt::from(-8), BigInt::from(3)))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_the_complex_embedding(a in arb_terms(), b in arb_terms(), n in prop::sample::select(vec![24usize, 48, 60])) {
        let f = CycloField::new(n);
        let (x, y) = (build(&f, &a), build(&f, &b));
        let got = f.evaluate_complex(&f.mul(&x, &y));
        prop_assert!(close(got, f.evaluate_complex(&x) * f.evaluate_complex(&y)));
        let sum = f.evaluate_complex(&f.add(&x, &y));
        prop_assert!(close(sum, f.evaluate_complex(&x) + f.evaluate_complex(&y)));
    }

    #[test]
    fn inverse_is_exact_and_matches_the_embedding(a in arb_terms(), n in prop::sample::select(vec![24usize, 48, 60])) {
        let f = CycloField::new(n);
        let x = build(&f, &a);
        prop_assume!(!x.is_zero());
        let inv = f.inv(&x).unwrap();
        prop_assert_eq!(f.mul(&x, &inv), f.one());
        let z = f.evaluate_complex(&x);
        prop_assert!(close(f.evaluate_complex(&inv) * z, Complex64::new(1.0, 0.0)));
    }
}
