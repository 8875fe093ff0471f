//! Verification of the defining relations and the Hopf algebra axioms, and
//! the closed-form coproduct of a PBW monomial.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{Algebra, Element, Gen, Monomial, Tensor};
use crate::cyclotomic::Cyclo;
use crate::report::{Report, Status};

/// Which exponent of `q1` to use in the closed-form coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoproductForm {
    /// `p2 (m1 - r1) + p2 s1 (n1 - r1) - 2 p2 s1 (m1 - r1)`, as printed.
    Printed,
    /// `p2 r1 (m1 - r1) + p2 s1 (n1 - s1) - 2 p2 s1 (m1 - r1)`.
    Corrected,
}

/// Closed-form quadruple sum for the coproduct of a PBW monomial.
pub fn coproduct_closed_form(alg: &Algebra, m: &Monomial, form: CoproductForm) -> Tensor {
    let f = alg.field();
    let (p1, p2) = (alg.params().p1 as i64, alg.params().p2 as i64);
    let (b1, b2) = (alg.base(1), alg.base(2));
    let binom = |n: usize, k: usize, b: &Cyclo| f.q_binom(n as i64, k as i64, b).expect("in range");
    let q1 = alg.q_i_exponent(1);
    let q2 = alg.q_i_exponent(2);
    let (m1, m2, n1, n2, ell) = (m.m1 as i64, m.m2 as i64, m.n1 as i64, m.n2 as i64, m.ell as i64);
    let mut out = Tensor::zero();
    for r1 in 0..=m1 {
        for r2 in 0..=m2 {
            for s1 in 0..=n1 {
                for s2 in 0..=n2 {
                    let e1 = match form {
                        CoproductForm::Printed => p2 * (m1 - r1) + p2 * s1 * (n1 - r1) - 2 * p2 * s1 * (m1 - r1),
                        CoproductForm::Corrected => p2 * r1 * (m1 - r1) + p2 * s1 * (n1 - s1) - 2 * p2 * s1 * (m1 - r1),
                    };
                    let e2 = p1 * r2 * (m2 - r2) + p1 * s2 * (n2 - s2) - 2 * p1 * r2 * (n2 - s2);
                    let mut c = f.zeta_pow(q1 * e1 + q2 * e2);
                    c = f.mul(&c, &binom(m.m1, r1 as usize, &b1));
                    c = f.mul(&c, &binom(m.m2, r2 as usize, &b2));
                    c = f.mul(&c, &binom(m.n1, s1 as usize, &b1));
                    c = f.mul(&c, &binom(m.n2, s2 as usize, &b2));
                    let left = alg.word(
                        r1 as usize,
                        r2 as usize,
                        s1 as usize,
                        s2 as usize,
                        p2 * (m1 - r1) - p1 * (n2 - s2) + ell,
                    );
                    let right = alg.word(
                        (m1 - r1) as usize,
                        (m2 - r2) as usize,
                        (n1 - s1) as usize,
                        (n2 - s2) as usize,
                        p1 * r2 - p2 * s1 + ell,
                    );
                    let (Some((l, _)), Some((r, _))) = (left.terms().next(), right.terms().next()) else {
                        continue;
                    };
                    out.add_term(f, l, r, &c);
                }
            }
        }
    }
    out
}

/// Checks every defining relation as an identity of algebra elements.
pub fn verify_defining_relations(alg: &Algebra) -> Report {
    let f = alg.field();
    let mut rep = Report::new();
    let (p1, p2) = (alg.params().p1, alg.params().p2);
    let k = alg.generator(Gen::K);
    let kinv = alg.generator(Gen::Kinv);
    let one = alg.one();
    let gens = [(Gen::E1, Gen::F1, 1usize), (Gen::E2, Gen::F2, 2usize)];
    rep.check(
        "rel.k-inverse",
        "K K^-1 = K^-1 K = 1",
        alg.mul(&k, &kinv) == one && alg.mul(&kinv, &k) == one,
        "",
    );
    rep.check(
        "rel.k-order",
        "K^{2 p1 p2} = 1",
        alg.pow(&k, alg.k_order()) == one && alg.pow(&k, alg.k_order() - 1) != one,
        format!("order {}", alg.k_order()),
    );
    for &(e, fg, i) in &gens {
        let qi2 = f.zeta_pow(2 * alg.q_i_exponent(i));
        let qi2inv = f.zeta_pow(-2 * alg.q_i_exponent(i));
        let ge = alg.generator(e);
        let gf = alg.generator(fg);
        let conj_e = alg.product([&k, &ge, &kinv]);
        rep.check(
            format!("rel.k-e{i}"),
            format!("K e{i} K^-1 = q{i}^2 e{i}"),
            conj_e == alg.scale(&ge, &qi2),
            "",
        );
        let conj_f = alg.product([&k, &gf, &kinv]);
        rep.check(
            format!("rel.k-f{i}"),
            format!("K f{i} K^-1 = q{i}^-2 f{i}"),
            conj_f == alg.scale(&gf, &qi2inv),
            "",
        );
        let p = alg.params().p(i);
        rep.check(
            format!("rel.nil-e{i}"),
            format!("e{i}^{{p{i}}} = 0"),
            alg.pow(&ge, p).is_zero() && !alg.pow(&ge, p - 1).is_zero(),
            format!("p{i} = {p}"),
        );
        rep.check(
            format!("rel.nil-f{i}"),
            format!("f{i}^{{p{i}}} = 0"),
            alg.pow(&gf, p).is_zero() && !alg.pow(&gf, p - 1).is_zero(),
            format!("p{i} = {p}"),
        );
        let kp = alg.params().partner(i) as i64;
        let rhs = alg.scale(
            &alg.sub(&alg.k_power(kp), &alg.k_power(-kp)),
            &f.inv(&alg.base_gap(i)).expect("nonzero"),
        );
        rep.check(
            format!("rel.cartan-{i}"),
            format!(
                "[e{i}, f{i}] = (K^{{p{j}}} - K^{{-p{j}}}) / (q{i}^{{p{j}}} - q{i}^{{-p{j}}})",
                j = 3 - i
            ),
            alg.commutator(&ge, &gf) == rhs,
            "",
        );
    }
    let pairs = [
        ("e1e2", Gen::E1, Gen::E2, "e1 e2 = e2 e1"),
        ("f1f2", Gen::F1, Gen::F2, "f1 f2 = f2 f1"),
        ("e1f2", Gen::E1, Gen::F2, "e1 f2 = f2 e1"),
        ("e2f1", Gen::E2, Gen::F1, "e2 f1 = f1 e2"),
    ];
    for (id, a, b, anchor) in pairs {
        rep.check(
            format!("rel.commute-{id}"),
            anchor,
            alg.commutator(&alg.generator(a), &alg.generator(b)).is_zero(),
            "",
        );
    }
    // closure: the product of any two basis elements stays in range
    let dim = alg.dim();
    let expected = 2 * (p1 * p2).pow(3);
    rep.check(
        "rel.pbw-dimension",
        "PBW basis has 2 p1^3 p2^3 elements",
        dim == expected,
        format!("{dim} basis monomials"),
    );
    rep
}

fn random_element(alg: &Algebra, rng: &mut StdRng, terms: usize) -> Element {
    let f = alg.field();
    let mut e = Element::zero();
    for _ in 0..terms {
        let idx = rng.random_range(0..alg.dim());
        let c = f.mul_zeta(
            &f.from_int(rng.random_range(-3i64..=3)),
            rng.random_range(0..alg.params().n() as i64),
        );
        e.add_term(f, idx, &c);
    }
    e
}

/// Outcome counts of one Hopf axiom over a family of test elements.
#[derive(Default)]
struct Tally {
    tested: usize,
    failed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn detail(&self, scope: &str) -> String {
        match &self.first_failure {
            None => format!("{} {scope} checked", self.tested),
            Some(w) => format!("{}/{} {scope} failed, first: {w}", self.failed, self.tested),
        }
    }
}

/// Coassociativity, counit and antipode axioms, plus `S^2 = Ad_g`.
///
/// Every basis monomial is tested when `p1 p2 <= 6`; otherwise the
/// generators and `sample_size` random sparse elements are.
pub fn verify_hopf_axioms(alg: &Algebra, sample_size: usize, seed: u64) -> Report {
    let f = alg.field();
    let (p1, p2) = (alg.params().p1, alg.params().p2);
    let exhaustive = p1 * p2 <= 6;
    let mut elements: Vec<(String, Element)> = Gen::GENERATORS
        .iter()
        .map(|g| (g.name().to_string(), alg.generator(*g)))
        .collect();
    if exhaustive {
        for i in 0..alg.dim() {
            elements.push((alg.monomial(i).to_string(), alg.basis_element(i)));
        }
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        for s in 0..sample_size {
            elements.push((format!("random #{s}"), random_element(alg, &mut rng, 3)));
        }
    }
    let scope = if exhaustive {
        "elements (generators + full basis)"
    } else {
        "elements (generators + random sample)"
    };
    let mut coassoc = Tally::default();
    let mut counit = Tally::default();
    let mut antipode = Tally::default();
    for (name, x) in &elements {
        let d = alg.coproduct(x);
        coassoc.record(alg.coproduct_left(&d) == alg.coproduct_right(&d), || name.clone());
        counit.record(
            alg.counit_contract(&d, true) == *x && alg.counit_contract(&d, false) == *x,
            || name.clone(),
        );
        let eps = alg.scale(&alg.one(), &alg.counit(x));
        antipode.record(
            alg.antipode_left_contract(&d) == eps && alg.antipode_right_contract(&d) == eps,
            || name.clone(),
        );
    }
    let mut rep = Report::new();
    rep.check(
        "hopf.coassociativity",
        "(Delta (x) id) Delta = (id (x) Delta) Delta",
        coassoc.failed == 0,
        coassoc.detail(scope),
    );
    rep.check(
        "hopf.counit",
        "(eps (x) id) Delta = id = (id (x) eps) Delta",
        counit.failed == 0,
        counit.detail(scope),
    );
    rep.check(
        "hopf.antipode",
        "m (S (x) id) Delta = eps 1 = m (id (x) S) Delta",
        antipode.failed == 0,
        antipode.detail(scope),
    );

    // counit value on K: the printed value eps(K) = K is not a scalar, and the
    // counit axiom with Delta(K) = K (x) K forces eps(K) = 1
    let k = alg.generator(Gen::K);
    let forced = alg.counit_contract(&alg.coproduct(&k), true) == k && alg.counit(&k) == f.one();
    // with eps(K) = K the left counit contraction of K (x) K would be K^2
    let printed = alg.mul(&k, &k) == k;
    rep.check_erratum(
        "hopf.counit-K",
        "counit on the group-like generator K",
        printed,
        forced,
        "eps(K) = 1 is forced by (eps (x) id)(K (x) K) = K; the printed eps(K) = K would give K^2 = K",
    );

    // S^2 = Ad_g with g = K^{p1 - p2}
    let g = alg.k_power(p1 as i64 - p2 as i64);
    let ginv = alg.k_power(p2 as i64 - p1 as i64);
    let mut s2 = Tally::default();
    let indices: Vec<usize> = if exhaustive {
        (0..alg.dim()).collect()
    } else {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
        (0..sample_size.max(1)).map(|_| rng.random_range(0..alg.dim())).collect()
    };
    for &i in &indices {
        let x = alg.basis_element(i);
        let lhs = alg.antipode(&alg.antipode(&x));
        let rhs = alg.product([&g, &x, &ginv]);
        s2.record(lhs == rhs, || alg.monomial(i).to_string());
    }
    rep.check(
        "hopf.antipode-squared",
        "S^2(x) = g x g^-1 with g = K^{p1 - p2}",
        s2.failed == 0,
        s2.detail(if exhaustive { "basis monomials" } else { "sampled monomials" }),
    );
    rep
}

/// Compares the closed-form coproduct, printed and corrected, against the
/// multiplicative coproduct on every basis monomial.
pub fn verify_coproduct_closed_form(alg: &Algebra) -> Report {
    let mut printed_ok = 0usize;
    let mut corrected_ok = 0usize;
    let mut first_printed_failure = None;
    let dim = alg.dim();
    for i in 0..dim {
        let m = alg.monomial(i);
        let truth = alg.coproduct_basis(i);
        if coproduct_closed_form(alg, &m, CoproductForm::Printed) == truth {
            printed_ok += 1;
        } else if first_printed_failure.is_none() {
            first_printed_failure = Some(m);
        }
        if coproduct_closed_form(alg, &m, CoproductForm::Corrected) == truth {
            corrected_ok += 1;
        }
    }
    let mut rep = Report::new();
    let detail = format!(
        "printed exponent matches on {printed_ok}/{dim} monomials{}; corrected exponent \
         p2 r1 (m1 - r1) + p2 s1 (n1 - s1) - 2 p2 s1 (m1 - r1) matches on {corrected_ok}/{dim}",
        first_printed_failure
            .map(|m| format!(" (first mismatch {m})"))
            .unwrap_or_default()
    );
    rep.check_erratum(
        "hopf.coproduct-closed-form",
        "closed-form coproduct of e1^m1 e2^m2 f1^n1 f2^n2 K^l",
        printed_ok == dim,
        corrected_ok == dim,
        detail,
    );
    rep
}

/// Outcome of comparing one printed value against the computed one.
pub fn status_of(printed_ok: bool, corrected_ok: bool) -> Status {
    match (printed_ok, corrected_ok) {
        (true, _) => Status::Pass,
        (false, true) => Status::ErratumCorrected,
        _ => Status::Fail,
    }
}

/// Compares the closed form of `[e_i^m, f_i^n]` with the commutator computed
/// by multiplication, for every `1 <= m, n <= p_i - 1`.
pub fn verify_commutator_closed_forms(alg: &Algebra) -> Report {
    let mut rep = Report::new();
    for i in 1..=2 {
        let p = alg.params().p(i);
        let (e, fg) = if i == 1 { (Gen::E1, Gen::F1) } else { (Gen::E2, Gen::F2) };
        let mut tally = Tally::default();
        for m in 1..p {
            let em = alg.pow(&alg.generator(e), m);
            for n in 1..p {
                let brute = alg.commutator(&em, &alg.pow(&alg.generator(fg), n));
                let ok = alg.commutator_closed_form(i, m, n).is_ok_and(|c| c == brute);
                tally.record(ok, || format!("m = {m}, n = {n}"));
            }
        }
        rep.check(
            format!("rel.commutator-closed-form-{i}"),
            format!("[e{i}^m, f{i}^n] = sum_j e{i}^(m-j) f{i}^(n-j) F_j(K) with the closed-form Laurent polynomials"),
            tally.failed == 0,
            tally.detail("exponent pairs"),
        );
    }
    rep
}

/// Largest dimension for which the full structure-constant table is built
/// by default.
pub const TABLE_LIMIT: usize = 1000;

/// Checks that products of PBW monomials close on the basis and that
/// multiplication is associative on sampled triples.
///
/// Closure is checked on every pair through the structure-constant table
/// when the table exists or the dimension is at most [`TABLE_LIMIT`], and on
/// `samples` random pairs otherwise.
pub fn verify_structure_table(alg: &Algebra, samples: usize, seed: u64) -> Report {
    let dim = alg.dim();
    let mut rep = Report::new();
    let mut rng = StdRng::seed_from_u64(seed);
    if alg.has_structure_table() || dim <= TABLE_LIMIT {
        let table = alg.structure_table();
        let closed = (0..dim).all(|i| (0..dim).all(|j| table.product(i, j).all(|(k, _)| k < dim)));
        rep.check(
            "rel.closure",
            "the product of two PBW monomials is a combination of PBW monomials",
            closed && table.dim() == dim,
            format!(
                "all {} pairs; {} structure constants, {} distinct scalars",
                dim * dim,
                table.total_terms(),
                table.scalars().len()
            ),
        );
        let mut tally = Tally::default();
        for _ in 0..samples {
            let (i, j) = (rng.random_range(0..dim), rng.random_range(0..dim));
            let cached: Vec<(usize, Cyclo)> = table.product(i, j).map(|(k, c)| (k, c.clone())).collect();
            tally.record(cached == alg.basis_product(i, j), || {
                format!("{}, {}", alg.monomial(i), alg.monomial(j))
            });
        }
        rep.check(
            "rel.table-consistency",
            "the structure-constant table agrees with direct multiplication of PBW monomials",
            tally.failed == 0,
            tally.detail("sampled pairs"),
        );
    } else {
        let mut tally = Tally::default();
        for _ in 0..samples {
            let (i, j) = (rng.random_range(0..dim), rng.random_range(0..dim));
            tally.record(alg.basis_product(i, j).iter().all(|(k, _)| *k < dim), || {
                format!("{}, {}", alg.monomial(i), alg.monomial(j))
            });
        }
        rep.check(
            "rel.closure",
            "the product of two PBW monomials is a combination of PBW monomials",
            tally.failed == 0,
            tally.detail("sampled pairs"),
        );
    }
    let mut tally = Tally::default();
    for _ in 0..samples {
        let (i, j, k) = (rng.random_range(0..dim), rng.random_range(0..dim), rng.random_range(0..dim));
        let (x, y, z) = (alg.basis_element(i), alg.basis_element(j), alg.basis_element(k));
        tally.record(alg.mul(&alg.mul(&x, &y), &z) == alg.mul(&x, &alg.mul(&y, &z)), || {
            format!("{}, {}, {}", alg.monomial(i), alg.monomial(j), alg.monomial(k))
        });
    }
    rep.check(
        "rel.associativity",
        "multiplication is associative",
        tally.failed == 0,
        tally.detail("sampled triples"),
    );
    rep
}
