use proptest::prelude::*;
use qgroup::algebra::{tensor_of, Algebra, Element, Gen, Monomial};
use qgroup::Params;
use std::sync::OnceLock;

fn alg23() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| Algebra::new(Params::new(2, 3).unwrap()))
}

fn small_element(a: &Algebra, picks: &[(usize, i64)]) -> Element {
    let f = a.field();
    let mut e = Element::zero();
    for &(idx, c) in picks {
        e.add_term(f, idx % a.dim(), &f.mul_zeta(&f.from_int(c), idx as i64));
    }
    e
}

#[test]
fn generators_and_nilpotency() {
    let a = alg23();
    assert_eq!(a.generator(Gen::One), a.monomial_element(&Monomial::new(0, 0, 0, 0, 0)));
    assert_eq!(a.generator(Gen::K), a.monomial_element(&Monomial::new(0, 0, 0, 0, 1)));
    assert_eq!(a.generator(Gen::Kinv), a.monomial_element(&Monomial::new(0, 0, 0, 0, 11)));
    let e1 = a.generator(Gen::E1);
    assert!(a.mul(&a.pow(&e1, 1), &e1).is_zero());
    let f2 = a.generator(Gen::F2);
    assert!(a.pow(&f2, 3).is_zero());
    assert!(!a.pow(&f2, 2).is_zero());
    assert_eq!(a.pow(&a.generator(Gen::K), 12), a.one());
}

#[test]
fn cross_generators_commute() {
    let a = alg23();
    for (x, y) in [(Gen::E1, Gen::E2), (Gen::F1, Gen::F2), (Gen::E1, Gen::F2), (Gen::E2, Gen::F1)] {
        assert!(a.commutator(&a.generator(x), &a.generator(y)).is_zero(), "{x:?} {y:?}");
    }
}

#[test]
fn commutator_closed_form_matches_brute_force() {
    for (p1, p2) in [(2usize, 3usize), (2, 5)] {
        let a = Algebra::new(Params::new(p1, p2).unwrap());
        for i in 1..=2 {
            let p = a.params().p(i);
            let (e, f) = if i == 1 { (Gen::E1, Gen::F1) } else { (Gen::E2, Gen::F2) };
            for m in 1..p {
                for n in 1..p {
                    let em = a.pow(&a.generator(e), m);
                    let fnn = a.pow(&a.generator(f), n);
                    let brute = a.commutator(&em, &fnn);
                    let closed = a.commutator_closed_form(i, m, n).unwrap();
                    assert_eq!(brute, closed, "({p1},{p2}) i={i} m={m} n={n}");
                }
            }
        }
    }
}

#[test]
fn weight_product_agrees_with_direct_product() {
    let a = alg23();
    let x = small_element(a, &[(5, 1), (77, -2), (300, 3), (431, 1), (200, 5)]);
    let y = small_element(a, &[(9, 2), (123, 1), (250, -1), (64, 4)]);
    let direct = a.mul(&x, &y);
    let via_weight = a.from_weight(&a.weight_mul(&a.to_weight(&x), &a.to_weight(&y)));
    assert_eq!(direct, via_weight);
}

#[test]
fn structure_table_matches_basis_products() {
    let a = Algebra::new(Params::new(2, 3).unwrap());
    let t = a.structure_table();
    for (i, j) in [(0, 0), (17, 401), (431, 431), (200, 3)] {
        let from_table: Vec<_> = t.product(i, j).map(|(k, c)| (k, c.clone())).collect();
        assert_eq!(from_table, a.basis_product(i, j));
    }
}

#[test]
fn coproduct_is_multiplicative_on_generators() {
    let a = alg23();
    let f = a.field();
    assert_eq!(
        a.coproduct(&a.generator(Gen::K)),
        tensor_of(f, &a.generator(Gen::K), &a.generator(Gen::K))
    );
    assert_eq!(a.coproduct(&a.one()), tensor_of(f, &a.one(), &a.one()));
    let x = a.mul(&a.generator(Gen::E1), &a.generator(Gen::F1));
    let lhs = a.coproduct(&x);
    let rhs = a.tensor_mul(&a.coproduct(&a.generator(Gen::E1)), &a.coproduct(&a.generator(Gen::F1)));
    assert_eq!(lhs, rhs);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(i in 0usize..432, j in 0usize..432, k in 0usize..432) {
        let a = alg23();
        let (x, y, z) = (a.basis_element(i), a.basis_element(j), a.basis_element(k));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn unit_law(i in 0usize..432, c in -5i64..5) {
        let a = alg23();
        let x = small_element(a, &[(i, c), (i + 17, 1)]);
        prop_assert_eq!(a.mul(&x, &a.one()), x.clone());
        prop_assert_eq!(a.mul(&a.one(), &x), x);
    }

    #[test]
    fn antipode_is_antimultiplicative(i in 0usize..432, j in 0usize..432) {
        let a = alg23();
        let (x, y) = (a.basis_element(i), a.basis_element(j));
        prop_assert_eq!(a.antipode(&a.mul(&x, &y)), a.mul(&a.antipode(&y), &a.antipode(&x)));
    }

    #[test]
    fn coproduct_is_an_algebra_map(i in 0usize..432, j in 0usize..432) {
        let a = alg23();
        let (x, y) = (a.basis_element(i), a.basis_element(j));
        prop_assert_eq!(
            a.coproduct(&a.mul(&x, &y)),
            a.tensor_mul(&a.coproduct(&x), &a.coproduct(&y))
        );
    }
}
