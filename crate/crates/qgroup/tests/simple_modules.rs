use num_complex::Complex64;
use qgroup::algebra::Algebra;
use qgroup::simple::{
    casimir, casimir_eigenvalue, phi, simple_action, simple_rep, verify_simple_modules, Sign, SimpleModuleSpec,
};
use qgroup::{Gen, Params};
use std::sync::OnceLock;

fn alg23() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| Algebra::new(Params::new(2, 3).unwrap()))
}

/// Floating-point evaluation of the lowering coefficient from its closed form.
fn phi_float(p1: usize, p2: usize, i: usize, alpha: f64, n: i64, r1: i64, r2: i64) -> Complex64 {
    let nn = (4 * p1 * p2) as f64;
    let (pj, ri, rj) = if i == 1 { (p2, r1, r2) } else { (p1, r2, r1) };
    let qi_exp = 2.0 * pj as f64;
    let base = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * qi_exp * pj as f64 / nn);
    let qint = |m: i64| (base.powi(m as i32) - base.powi(-m as i32)) / (base - base.inv());
    let sign = alpha.powi(pj as i32) * if (rj - 1) % 2 == 0 { 1.0 } else { -1.0 };
    qint(n) * qint(ri - n) * sign
}

#[test]
fn phi_matches_floating_point_oracle() {
    let a = alg23();
    let f = a.field();
    let v = phi(a, 1, Sign::Plus, 1, 2, 3).unwrap();
    assert_eq!(v, f.one());
    for (i, alpha) in [(1, Sign::Plus), (1, Sign::Minus), (2, Sign::Plus), (2, Sign::Minus)] {
        for r1 in 1..=2i64 {
            for r2 in 1..=3i64 {
                let ri = if i == 1 { r1 } else { r2 };
                for n in 1..ri {
                    let exact = f.evaluate_complex(&phi(a, i, alpha, n, r1, r2).unwrap());
                    let oracle = phi_float(2, 3, i, alpha.value() as f64, n, r1, r2);
                    assert!((exact - oracle).norm() < 1e-9, "i={i} n={n} r=({r1},{r2})");
                }
            }
        }
    }
}

#[test]
fn phi_rejects_out_of_range() {
    let a = alg23();
    assert!(phi(a, 1, Sign::Plus, 0, 2, 3).is_err());
    assert!(phi(a, 1, Sign::Plus, 2, 2, 3).is_err());
    assert!(phi(a, 2, Sign::Minus, 3, 2, 3).is_err());
    assert!(phi(a, 2, Sign::Minus, 1, 2, 4).is_err());
}

#[test]
fn action_edges() {
    let a = alg23();
    let f = a.field();
    let triv = SimpleModuleSpec::new(a, Sign::Plus, 1, 1).unwrap();
    let k = simple_action(a, &triv, Gen::K);
    assert_eq!(k.get(0, 0), Some(&f.one()));
    let spec = SimpleModuleSpec::new(a, Sign::Minus, 2, 3).unwrap();
    let e1 = simple_action(a, &spec, Gen::E1);
    let f1 = simple_action(a, &spec, Gen::F1);
    let f2 = simple_action(a, &spec, Gen::F2);
    for n2 in 0..3 {
        // e1 kills n1 = 0 and f1 kills n1 = r1 - 1
        assert!(e1.transpose().row(spec.index(0, n2)).is_empty());
        assert!(f1.transpose().row(spec.index(1, n2)).is_empty());
    }
    assert_eq!(f2.get(spec.index(0, 1), spec.index(0, 0)), Some(&f.one()));
}

#[test]
fn casimirs_act_by_beta() {
    let a = alg23();
    let f = a.field();
    let st = SimpleModuleSpec::new(a, Sign::Plus, 2, 3).unwrap();
    assert_eq!(casimir_eigenvalue(a, 1, &st), f.from_int(2));
    for spec in SimpleModuleSpec::all(a) {
        let rep = simple_rep(a, &spec);
        for i in 1..=2 {
            let m = rep.represent(a, &casimir(a, i));
            let beta = casimir_eigenvalue(a, i, &spec);
            for d in 0..spec.dim() {
                assert_eq!(m.get(d, d), Some(&beta).filter(|b| !b.is_zero()));
            }
            assert_eq!(m.nnz(), if beta.is_zero() { 0 } else { spec.dim() });
        }
    }
}

#[test]
fn casimirs_are_central() {
    let a = alg23();
    for i in 1..=2 {
        let c = casimir(a, i);
        for g in [Gen::E1, Gen::E2, Gen::F1, Gen::F2, Gen::K] {
            assert!(a.commutator(&c, &a.generator(g)).is_zero(), "C{i} vs {g:?}");
        }
    }
}

#[test]
fn full_module_suite_passes() {
    let a = alg23();
    let r = verify_simple_modules(a);
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(
        r.find("modules.f2-step").unwrap().status,
        qgroup::report::Status::ErratumCorrected
    );
    assert_eq!(r.find("modules.non-isomorphic").unwrap().status, qgroup::report::Status::Pass);
}
