use num_complex::Complex64;
use proptest::prelude::*;
use qgroup::algebra::{Algebra, Element, Monomial};
use qgroup::functionals::*;
use qgroup::ideals::IdealBasis;
use qgroup::labels::BlockLabel;
use qgroup::realization::Realization;
use qgroup::report::{Report, Status};
use qgroup::simple::{Sign, SimpleModuleSpec};
use qgroup::{Gen, Params};
use std::sync::OnceLock;

fn alg23() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| Algebra::new(Params::new(2, 3).unwrap()))
}

fn basis23() -> &'static IdealBasis<'static> {
    static B: OnceLock<IdealBasis<'static>> = OnceLock::new();
    B.get_or_init(|| IdealBasis::new(alg23()))
}

fn real23() -> &'static Realization<'static> {
    static R: OnceLock<Realization<'static>> = OnceLock::new();
    R.get_or_init(|| Realization::new(basis23()))
}

fn integrals23() -> &'static (Integrals, Report) {
    static I: OnceLock<(Integrals, Report)> = OnceLock::new();
    I.get_or_init(|| verify_integrals(alg23(), 1000, 3).unwrap())
}

fn slf23() -> &'static (SlfBasis, Report) {
    static S: OnceLock<(SlfBasis, Report)> = OnceLock::new();
    S.get_or_init(|| verify_slf(real23(), SymmetryMode::Exhaustive).unwrap())
}

fn status(r: &Report, id: &str) -> Status {
    r.find(id).unwrap_or_else(|| panic!("missing check {id}")).status
}

#[test]
fn left_integral_is_unique_and_supported_on_the_top_monomial() {
    let alg = alg23();
    let (ints, r) = integrals23();
    assert!(r.passed(), "{}", r.render_text());
    // the solved exponent is p2 - p1 modulo 2 p1 p2
    assert_eq!(ints.left.k_exponent, 1);
    assert_eq!(ints.right.k_exponent, 11);
    let top = alg.index(&Monomial::new(1, 2, 1, 2, 1));
    assert_eq!(ints.left.functional.support(), vec![top]);
    // vanishes on every monomial with m1 < p1 - 1
    for i in 0..alg.dim() {
        if alg.monomial(i).m1 < 1 {
            assert!(ints.left.functional.values[i].is_zero());
        }
    }
    assert_eq!(status(r, "integrals.left.exponent.display"), Status::Pass);
    assert_eq!(status(r, "integrals.left.exponent.restated"), Status::ErratumCorrected);
    assert_eq!(status(r, "integrals.right.exponent.display"), Status::Pass);
    assert_eq!(status(r, "integrals.right.exponent.restated"), Status::ErratumCorrected);
}

#[test]
fn two_sided_integral_in_the_algebra() {
    let alg = alg23();
    let big = integral_element(alg);
    assert!(alg.mul(&alg.generator(Gen::E1), &big).is_zero());
    assert_eq!(alg.mul(&alg.generator(Gen::K), &big), big);
    assert!(alg.mul(&big, &alg.generator(Gen::F2)).is_zero());
    assert_eq!(alg.mul(&big, &alg.generator(Gen::Kinv)), big);
}

#[test]
fn twisted_traciality_on_random_pairs() {
    let (_, r) = integrals23();
    assert_eq!(status(r, "integrals.left.twisted-trace"), Status::Pass);
    assert_eq!(status(r, "integrals.right.twisted-trace"), Status::Pass);
}

#[test]
fn symmetry_of_reference_functionals() {
    let alg = alg23();
    let counit = LinearFunctional::from_fn(alg, |i| alg.counit(&alg.basis_element(i)));
    assert!(is_symmetric(alg, &counit, SymmetryMode::Exhaustive));
    let (ints, _) = integrals23();
    assert!(!is_symmetric(alg, &ints.left.functional, SymmetryMode::Exhaustive));
    let (slf, _) = slf23();
    let tau = slf.get(&BlockLabel { r1: 2, r2: 3 }, "tau").unwrap();
    assert!(is_symmetric(alg, tau, SymmetryMode::Exhaustive));
}

#[test]
fn twenty_independent_symmetric_functions() {
    let (slf, r) = slf23();
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(slf.specs.len(), 20);
    let refs: Vec<_> = slf.functionals.iter().collect();
    assert_eq!(functional_rank(alg23(), &refs), 20);
    assert_eq!(status(r, "slf.two-routes"), Status::Pass);
}

#[test]
fn center_dimensions_per_block() {
    let p = alg23().params();
    let (dims, r) = verify_center(basis23(), &BlockLabel::all(p)).unwrap();
    assert!(r.passed());
    let mut d: Vec<usize> = dims.iter().map(|(_, d)| *d).collect();
    d.sort();
    assert_eq!(d, vec![1, 1, 3, 3, 3, 9]);
}

#[test]
fn radford_identities_hold_with_one_index_correction() {
    let p = alg23().params();
    let (ints, _) = integrals23();
    let (slf, _) = slf23();
    let r = verify_radford(real23(), &ints.left.functional, slf, &BlockLabel::all(p)).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    let corrected: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::ErratumCorrected)
        .map(|c| c.id.as_str())
        .collect();
    assert_eq!(corrected, vec!["radford.2-1.e"]);
    assert_eq!(status(&r, "radford.2-3.e"), Status::Pass);
    assert_eq!(status(&r, "radford.1-1.v-ne"), Status::Pass);
}

#[test]
fn radford_transform_of_zero_is_zero() {
    let (ints, _) = integrals23();
    assert!(radford_transform(alg23(), &ints.left.functional, &Element::zero()).is_zero());
}

#[test]
fn q_character_values_on_k_powers_match_float_weight_sums() {
    // independent oracle: K acts on weight vector (n1, n2) of X(alpha, r1, r2)
    // by alpha q1^(r1 - 1 - 2 n1) q2^(r2 - 1 - 2 n2), with q1 = zeta^(2 p2),
    // q2 = zeta^(2 p1), and g^-1 = K^(p2 - p1)
    let alg = alg23();
    let f = alg.field();
    let (p1, p2, n) = (2i64, 3i64, 24f64);
    for (alpha, r1, r2) in [
        (Sign::Plus, 1, 1),
        (Sign::Minus, 2, 3),
        (Sign::Plus, 1, 2),
        (Sign::Minus, 2, 1),
    ] {
        let gamma = q_character(alg, &SimpleModuleSpec { alpha, r1, r2 });
        for ell in 0..12i64 {
            let got = f.evaluate_complex(&gamma.eval(alg, &alg.k_power(ell)));
            let mut oracle = Complex64::new(0.0, 0.0);
            for n1 in 0..r1 as i64 {
                for n2 in 0..r2 as i64 {
                    let e = 2 * p2 * (r1 as i64 - 1 - 2 * n1) + 2 * p1 * (r2 as i64 - 1 - 2 * n2);
                    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / n) * alpha.value() as f64;
                    oracle += w.powi((ell + p2 - p1) as i32);
                }
            }
            assert!((got - oracle).norm() < 1e-9, "{alpha:?} {r1} {r2} K^{ell}: {got} vs {oracle}");
        }
    }
    let trivial = q_character(
        alg,
        &SimpleModuleSpec {
            alpha: Sign::Plus,
            r1: 1,
            r2: 1,
        },
    );
    assert_eq!(trivial.eval(alg, &alg.one()), f.one());
}

#[test]
fn q_characters_map_to_the_symmetric_basis() {
    let (slf, _) = slf23();
    let r = verify_q_characters(real23(), slf, SymmetryMode::Exhaustive).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(status(&r, "qchar.simple.plus-steinberg"), Status::Pass);
    assert_eq!(status(&r, "qchar.simple.interior-1-1.left"), Status::ErratumCorrected);
    assert_eq!(status(&r, "qchar.pattern.2-1.se"), Status::ErratumCorrected);
    assert_eq!(status(&r, "qchar.pattern.1-3.ne"), Status::Pass);
    assert_eq!(status(&r, "qchar.constraint-violation.1-1"), Status::Pass);
    assert_eq!(status(&r, "qchar.basis"), Status::Pass);
}

#[test]
fn trivial_inputs_give_zero_functionals() {
    let alg = alg23();
    let b = BlockLabel { r1: 1, r2: 1 };
    let z = sigma_character(real23(), &b, &SigmaParams::zero(alg, 4)).unwrap();
    assert!(z.is_zero());
    assert!(theta(alg, &LinearFunctional::zero(alg)).is_zero());
}

fn arb_element() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..432, -4i64..=4, 0i64..24), 1..8)
}

fn build(terms: &[(usize, i64, i64)]) -> Element {
    let f = alg23().field();
    Element::from_terms(f, terms.iter().map(|&(i, c, z)| (i, f.mul_zeta(&f.from_int(c), z))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn symmetric_functions_are_symmetric_on_random_elements(x in arb_element(), y in arb_element()) {
        let alg = alg23();
        let (x, y) = (build(&x), build(&y));
        let (xy, yx) = (alg.mul(&x, &y), alg.mul(&y, &x));
        for phi in &slf23().0.functionals {
            prop_assert_eq!(phi.eval(alg, &xy), phi.eval(alg, &yx));
        }
    }

    #[test]
    fn theta_inverts_by_translating_with_g_inverse(x in arb_element()) {
        let alg = alg23();
        let (slf, _) = slf23();
        let phi = &slf.functionals[7];
        let back = left_translate(alg, &theta(alg, phi), &alg.k_power(-balancing_exponent(alg.params())));
        let x = build(&x);
        prop_assert_eq!(back.eval(alg, &x), phi.eval(alg, &x));
    }
}
