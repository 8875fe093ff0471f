use num_complex::Complex64;
use proptest::prelude::*;
use qgroup::algebra::Algebra;
use qgroup::ideals::{
    averager_eigenvalue, structure_scalars, verify_averager_lemma, verify_block_decomposition, verify_construction_identities,
    verify_idempotents, verify_ladder_relations, weight_averager, IdealBasis,
};
use qgroup::labels::{BlockLabel, ProjLabel};
use qgroup::report::Status;
use qgroup::simple::Sign;
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

#[test]
fn averager_eigenvalue_matches_floating_geometric_sum() {
    // independent oracle: sum_l (c lambda)^l evaluated in floating point
    let a = alg23();
    let f = a.field();
    let n = f.order() as f64;
    for k in 0..a.field().order() as i64 {
        let v = averager_eigenvalue(a, Sign::Minus, (1, 2), (1, 2), k);
        let c_exp = (n / 2.0) - 6.0 * (1.0 - 2.0 + 1.0) - 4.0 * (2.0 - 4.0 + 1.0) + k as f64;
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * c_exp / n);
        let oracle: Complex64 = (0..12).map(|l| z.powi(l)).sum();
        let got = f.evaluate_complex(&v);
        assert!((got - oracle).norm() < 1e-9, "k={k}: {got} vs {oracle}");
    }
}

#[test]
fn averager_is_a_multiple_of_an_idempotent() {
    let a = alg23();
    let v = weight_averager(a, Sign::Plus, 1, 3, 1, 2);
    let v2 = a.mul(&v, &v);
    assert_eq!(v2, a.scale_int(&v, 12));
    assert_eq!(a.mul(&a.generator(Gen::K), &v), a.mul(&v, &a.generator(Gen::K)));
}

#[test]
fn averager_lemma_and_scalar_symmetries() {
    let r = verify_averager_lemma(alg23());
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn simple_module_scalars_have_no_sideways_coefficients() {
    let a = alg23();
    let s = structure_scalars(
        a,
        &ProjLabel {
            alpha: Sign::Plus,
            r1: 2,
            r2: 3,
        },
    )
    .unwrap();
    assert!(!s.big_phi.is_zero());
    assert!(s.gamma.is_empty() && s.delta.is_empty());
}

#[test]
fn every_block_satisfies_the_ladder_rules() {
    let b = basis23();
    for block in BlockLabel::all(alg23().params()) {
        let r = verify_ladder_relations(b, &block).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        let r = verify_construction_identities(b, &block).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }
}

#[test]
fn printed_row_top_edge_is_flagged() {
    let r = verify_ladder_relations(basis23(), &BlockLabel { r1: 1, r2: 3 }).unwrap();
    let c = r.find("ideals.1-3.printed.row-e1-top-edge").unwrap();
    assert_eq!(c.status, Status::ErratumCorrected);
}

#[test]
fn primitive_idempotents_per_block() {
    let b = basis23();
    for block in BlockLabel::all(alg23().params()) {
        let r = verify_idempotents(b, &block).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }
}

#[test]
fn block_decomposition_spans_the_algebra() {
    let r = verify_block_decomposition(basis23()).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert!(r.find("blocks.span").unwrap().detail.contains("rank 432"));
}

#[test]
fn all_thirty_six_idempotents_sum_to_one() {
    let a = alg23();
    let b = basis23();
    let mut acc = a.zero();
    let mut count = 0;
    for block in BlockLabel::all(a.params()) {
        for (_, _, _, e) in b.block_idempotents(&block).unwrap() {
            acc = a.add(&acc, &e);
            count += 1;
        }
    }
    assert_eq!(count, 36);
    assert_eq!(acc, a.one());
}

#[test]
fn interior_blocks_at_three_four() {
    let a = Algebra::new(Params::new(3, 4).unwrap());
    let b = IdealBasis::new(&a);
    for block in [BlockLabel { r1: 1, r2: 2 }, BlockLabel { r1: 1, r2: 1 }] {
        let mut r = verify_ladder_relations(&b, &block).unwrap();
        r.extend(verify_construction_identities(&b, &block).unwrap());
        r.extend(verify_idempotents(&b, &block).unwrap());
        assert!(r.passed(), "{}", r.render_text());
        let corrected = r.checks.iter().filter(|c| c.status == Status::ErratumCorrected).count();
        assert!(corrected >= 8, "{}", r.render_text());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_vectors_are_weight_vectors(idx in 0usize..432) {
        let a = alg23();
        let p = a.params();
        let keys: Vec<_> = BlockLabel::all(p).iter().flat_map(|bl| {
            bl.summands(p).into_iter().flat_map(move |l| {
                (1..=l.r1).flat_map(move |s1| (1..=l.r2).flat_map(move |s2| {
                    l.basis(p).into_iter().map(move |(cell, x, y)| qgroup::labels::BasisKey { label: l, s1, s2, cell, x, y })
                }))
            })
        }).collect();
        prop_assert_eq!(keys.len(), 432);
        let key = keys[idx];
        let v = basis23().element(&key).unwrap();
        let w = key.label.weight_exponent(p, key.cell, key.x, key.y);
        prop_assert_eq!(a.mul(&a.generator(Gen::K), &v), a.scale(&v, &a.field().zeta_pow(w)));
        // right multiplication by K acts by the averager's weight
        let vk = a.mul(&v, &a.generator(Gen::K));
        prop_assert!(!vk.is_zero());
    }
}
