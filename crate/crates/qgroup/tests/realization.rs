use proptest::prelude::*;
use qgroup::algebra::{Algebra, Element};
use qgroup::ideals::{weight_coordinates, IdealBasis};
use qgroup::labels::{BlockLabel, ProjKind, ProjLabel};
use qgroup::linalg::Echelon;
use qgroup::realization::{
    central_elements, intertwiners, ladder_rep, solved_rep, verify_action_table, verify_block_shape, verify_realization,
    Realization,
};
use qgroup::report::Status;
use qgroup::simple::{simple_rep, Sign, SimpleModuleSpec};
use qgroup::Params;
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

#[test]
fn every_block_realization_holds() {
    let p = alg23().params();
    for b in BlockLabel::all(p) {
        let r = verify_realization(real23(), &b, 40, 11).unwrap();
        let bad: Vec<_> = r.failures().map(|c| format!("{} {}", c.id, c.detail)).collect();
        assert!(bad.is_empty(), "{b}: {bad:?}");
    }
}

#[test]
fn simple_block_is_a_full_matrix_algebra() {
    let p = alg23().params();
    let steinberg: Vec<_> = BlockLabel::all(p)
        .into_iter()
        .filter(|b| b.kind(p) == ProjKind::Simple)
        .collect();
    assert_eq!(steinberg.len(), 2);
    for b in steinberg {
        let r = verify_action_table(real23(), &b).unwrap();
        assert_eq!(
            r.find(&format!("shapes.{}-{}.matrix-units", b.r1, b.r2)).unwrap().status,
            Status::Pass
        );
        let r = verify_block_shape(real23(), &b).unwrap();
        let inj = r.find(&format!("shapes.{}-{}.full-matrix-algebra", b.r1, b.r2)).unwrap();
        assert_eq!(inj.status, Status::Pass, "{}", inj.detail);
    }
}

#[test]
fn boundary_template_errata_are_flagged() {
    let p = alg23().params();
    let mut seen = 0;
    for b in BlockLabel::all(p) {
        if !matches!(b.kind(p), ProjKind::Row | ProjKind::Column) {
            continue;
        }
        let r = verify_block_shape(real23(), &b).unwrap();
        let c = r
            .find(&format!("shapes.{}-{}.printed.second-summand-entry-4-3", b.r1, b.r2))
            .unwrap();
        assert_eq!(c.status, Status::ErratumCorrected, "{b}");
        if b.kind(p) == ProjKind::Column {
            let c = r.find(&format!("shapes.{}-{}.printed.column-header", b.r1, b.r2)).unwrap();
            assert_eq!(c.status, Status::ErratumCorrected);
        }
        seen += 1;
    }
    assert_eq!(seen, 3);
}

#[test]
fn named_central_elements_span_twenty_dimensions() {
    // one unit per block, two nilpotents per boundary block and eight per
    // interior block: 9 + 3 + 3 + 3 + 1 + 1
    let alg = alg23();
    let p = alg.params();
    let mut ech = Echelon::new(alg.field());
    let mut counts = Vec::new();
    for b in BlockLabel::all(p) {
        let (elems, r) = central_elements(real23(), &b).unwrap();
        assert!(r.passed(), "{b}");
        counts.push(elems.len());
        for (_, z) in elems {
            ech.insert(weight_coordinates(alg, &z));
        }
    }
    counts.sort();
    assert_eq!(counts, vec![1, 1, 3, 3, 3, 9]);
    assert_eq!(ech.rank(), 20);
}

#[test]
fn every_copy_of_a_projective_is_isomorphic_to_the_first() {
    let alg = alg23();
    let p = alg.params();
    let f = alg.field();
    let label = ProjLabel::new(alg.params(), Sign::Minus, 1, 2).unwrap();
    let first = ladder_rep(alg, &label);
    let copy = solved_rep(basis23(), &label, 1, 2).unwrap();
    let homs = intertwiners(alg, &first, &copy);
    assert!(homs.iter().any(|h| h.rank(f) == label.dim(p)));
}

#[test]
fn simple_module_has_one_dimensional_endomorphisms() {
    let alg = alg23();
    let s = simple_rep(
        alg,
        &SimpleModuleSpec {
            alpha: Sign::Plus,
            r1: 1,
            r2: 2,
        },
    );
    assert_eq!(intertwiners(alg, &s, &s).len(), 1);
    let other = simple_rep(
        alg,
        &SimpleModuleSpec {
            alpha: Sign::Minus,
            r1: 1,
            r2: 2,
        },
    );
    assert!(intertwiners(alg, &s, &other).is_empty());
}

#[test]
fn projective_cover_has_one_map_from_its_simple() {
    // the socle is simple and isomorphic to the head
    let alg = alg23();
    let label = ProjLabel::new(alg.params(), Sign::Plus, 1, 1).unwrap();
    let s = simple_rep(
        alg,
        &SimpleModuleSpec {
            alpha: Sign::Plus,
            r1: 1,
            r2: 1,
        },
    );
    let proj = ladder_rep(alg, &label);
    assert_eq!(intertwiners(alg, &s, &proj).len(), 1);
    assert_eq!(intertwiners(alg, &proj, &s).len(), 1);
}

fn arb_element() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..432, -3i64..=3, 0i64..24), 1..6)
}

fn build(terms: &[(usize, i64, i64)]) -> Element {
    let alg = alg23();
    let f = alg.field();
    Element::from_terms(f, terms.iter().map(|&(i, c, z)| (i, f.mul_zeta(&f.from_int(c), z))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn realization_is_multiplicative_on_random_elements(x in arb_element(), y in arb_element()) {
        let alg = alg23();
        let f = alg.field();
        let (x, y) = (build(&x), build(&y));
        let label = ProjLabel::new(alg.params(), Sign::Plus, 1, 1).unwrap();
        let lhs = real23().represent(&alg.mul(&x, &y), &label);
        let rhs = real23().represent(&x, &label).mul(f, &real23().represent(&y, &label));
        prop_assert_eq!(lhs, rhs);
    }
}
