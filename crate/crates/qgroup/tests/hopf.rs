use qgroup::algebra::{Algebra, Monomial};
use qgroup::hopf::{
    coproduct_closed_form, verify_coproduct_closed_form, verify_defining_relations, verify_hopf_axioms, CoproductForm,
};
use qgroup::report::Status;
use qgroup::Params;

#[test]
fn defining_relations_hold() {
    let a = Algebra::new(Params::new(2, 3).unwrap());
    let rep = verify_defining_relations(&a);
    assert!(rep.passed(), "{}", rep.render_text());
}

#[test]
fn hopf_axioms_exhaustive_at_two_three() {
    let a = Algebra::new(Params::new(2, 3).unwrap());
    let rep = verify_hopf_axioms(&a, 0, 1);
    println!("{}", rep.render_text());
    assert!(rep.passed());
    assert_eq!(rep.find("hopf.counit-K").unwrap().status, Status::ErratumCorrected);
}

#[test]
fn closed_form_coproduct() {
    let a = Algebra::new(Params::new(2, 3).unwrap());
    let k5 = Monomial::new(0, 0, 0, 0, 5);
    let i = a.index(&k5);
    assert_eq!(coproduct_closed_form(&a, &k5, CoproductForm::Printed), a.coproduct_basis(i));
    let e1 = Monomial::new(1, 0, 0, 0, 0);
    assert_eq!(
        coproduct_closed_form(&a, &e1, CoproductForm::Corrected),
        a.coproduct_basis(a.index(&e1))
    );
    assert_ne!(
        coproduct_closed_form(&a, &e1, CoproductForm::Printed),
        a.coproduct_basis(a.index(&e1))
    );
    let rep = verify_coproduct_closed_form(&a);
    println!("{}", rep.render_text());
    assert!(rep.passed());
}
