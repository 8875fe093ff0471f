//! The `2 p1 p2` simple modules `X^alpha_{r1,r2}` as explicit matrix
//! representations, their structure coefficients and Casimir eigenvalues.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Gen};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix};
use crate::rep::ModuleRep;
use crate::report::Report;

/// The sign `alpha` labelling a simple module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `alpha^e` as an integer.
    pub fn pow(self, e: usize) -> i64 {
        if self == Sign::Minus && e % 2 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `(-1)^e` for any integer exponent.
pub(crate) fn minus_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Label `(alpha, r1, r2)` of a simple module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleModuleSpec {
    pub alpha: Sign,
    pub r1: usize,
    pub r2: usize,
}

impl SimpleModuleSpec {
    pub fn new(alg: &Algebra, alpha: Sign, r1: usize, r2: usize) -> Result<Self> {
        let p = alg.params();
        if !(1..=p.p1).contains(&r1) || !(1..=p.p2).contains(&r2) {
            return Err(Error::OutOfRange(format!(
                "simple module needs 1 <= r1 <= {} and 1 <= r2 <= {}, got ({r1}, {r2})",
                p.p1, p.p2
            )));
        }
        Ok(SimpleModuleSpec { alpha, r1, r2 })
    }

    pub fn dim(&self) -> usize {
        self.r1 * self.r2
    }

    /// Position of `b_{n1,n2}` in the ordered basis.
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 + self.r1 * n2
    }

    /// Every simple module of the algebra, `+` before `-`, then by `(r1, r2)`.
    pub fn all(alg: &Algebra) -> Vec<SimpleModuleSpec> {
        let p = alg.params();
        let mut out = Vec::new();
        for alpha in [Sign::Plus, Sign::Minus] {
            for r1 in 1..=p.p1 {
                for r2 in 1..=p.p2 {
                    out.push(SimpleModuleSpec { alpha, r1, r2 });
                }
            }
        }
        out
    }
}

impl fmt::Display for SimpleModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{}_({},{})", self.alpha, self.r1, self.r2)
    }
}

/// The lowering coefficient `phi_i^alpha(n, r1, r2)`:
/// `alpha^{p2} (-1)^{r2-1} [n]_1 [r1-n]_1` for `i = 1` and
/// `alpha^{p1} (-1)^{r1-1} [n]_2 [r2-n]_2` for `i = 2`.
///
/// Requires `1 <= n <= r_i - 1` and both `r` arguments in `[1, p]`.
pub fn phi(alg: &Algebra, i: usize, alpha: Sign, n: i64, r1: i64, r2: i64) -> Result<Cyclo> {
    let p = alg.params();
    let ri = if i == 1 { r1 } else { r2 };
    if !(1..=p.p1 as i64).contains(&r1) || !(1..=p.p2 as i64).contains(&r2) {
        return Err(Error::OutOfRange(format!("phi_{i} needs r in range, got ({r1}, {r2})")));
    }
    if n < 1 || n > ri - 1 {
        return Err(Error::OutOfRange(format!("phi_{i} needs 1 <= n <= {}, got n = {n}", ri - 1)));
    }
    Ok(phi_unchecked(alg, i, alpha, n, r1, r2))
}

/// The same formula without the range check.
pub(crate) fn phi_unchecked(alg: &Algebra, i: usize, alpha: Sign, n: i64, r1: i64, r2: i64) -> Cyclo {
    let f = alg.field();
    let (ri, rj) = if i == 1 { (r1, r2) } else { (r2, r1) };
    let sign = alpha.pow(alg.params().partner(i)) * minus_one_pow(rj - 1);
    let v = f.mul(&alg.q_int(i, n), &alg.q_int(i, ri - n));
    f.scale_int(&v, sign)
}

/// Exponent `k` with `K b_{n1,n2} = zeta^k b_{n1,n2}` in `X^alpha_{r1,r2}`.
pub fn weight_exponent(alg: &Algebra, alpha: Sign, r1: i64, r2: i64, n1: i64, n2: i64) -> i64 {
    let half = (alg.field().order() / 2) as i64;
    let sign = if alpha == Sign::Minus { half } else { 0 };
    sign + alg.q_i_exponent(1) * (r1 - 1 - 2 * n1) + alg.q_i_exponent(2) * (r2 - 1 - 2 * n2)
}

/// How `f2` moves the second index; the shifted-by-two variant reproduces a
/// misprinted action so that its failure can be demonstrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F2Step {
    One,
    Two,
}

fn action_with(alg: &Algebra, spec: &SimpleModuleSpec, gen: Gen, step: F2Step) -> Matrix {
    let f = alg.field();
    let (r1, r2) = (spec.r1, spec.r2);
    let dim = spec.dim();
    let mut m = Matrix::zeros(dim, dim);
    for n2 in 0..r2 {
        for n1 in 0..r1 {
            let col = spec.index(n1, n2);
            match gen {
                Gen::K | Gen::Kinv => {
                    let k = weight_exponent(alg, spec.alpha, r1 as i64, r2 as i64, n1 as i64, n2 as i64);
                    let k = if gen == Gen::K { k } else { -k };
                    m.set(col, col, f.zeta_pow(k));
                }
                Gen::One => m.set(col, col, f.one()),
                Gen::E1 if n1 > 0 => {
                    let c = phi_unchecked(alg, 1, spec.alpha, n1 as i64, r1 as i64, r2 as i64);
                    m.set(spec.index(n1 - 1, n2), col, c);
                }
                Gen::E2 if n2 > 0 => {
                    let c = phi_unchecked(alg, 2, spec.alpha, n2 as i64, r1 as i64, r2 as i64);
                    m.set(spec.index(n1, n2 - 1), col, c);
                }
                Gen::F1 if n1 + 1 < r1 => m.set(spec.index(n1 + 1, n2), col, f.one()),
                Gen::F2 if n2 + 1 < r2 => {
                    let target = n2 + if step == F2Step::One { 1 } else { 2 };
                    if target < r2 {
                        m.set(spec.index(n1, target), col, f.one());
                    }
                }
                _ => {}
            }
        }
    }
    m
}

/// Matrix of a generator on `X^alpha_{r1,r2}` in the basis ordered by
/// `n1 + r1 n2`.
pub fn simple_action(alg: &Algebra, spec: &SimpleModuleSpec, gen: Gen) -> Matrix {
    action_with(alg, spec, gen, F2Step::One)
}

fn rep_with(alg: &Algebra, spec: &SimpleModuleSpec, step: F2Step) -> ModuleRep {
    let gens = [Gen::E1, Gen::E2, Gen::F1, Gen::F2].map(|g| action_with(alg, spec, g, step));
    let mut k_exp = vec![0; spec.dim()];
    for n2 in 0..spec.r2 {
        for n1 in 0..spec.r1 {
            k_exp[spec.index(n1, n2)] = weight_exponent(alg, spec.alpha, spec.r1 as i64, spec.r2 as i64, n1 as i64, n2 as i64);
        }
    }
    ModuleRep::new(gens, k_exp)
}

/// The simple module as a [`ModuleRep`], ready to represent any element.
pub fn simple_rep(alg: &Algebra, spec: &SimpleModuleSpec) -> ModuleRep {
    rep_with(alg, spec, F2Step::One)
}

/// `beta_i^alpha(r1, r2)`: `alpha^{p2} (-1)^{r2} (Q1^{r1} + Q1^{-r1})` for
/// `i = 1` and the mirror formula for `i = 2`, with `Q_i = q_i^{p_j}`.
pub fn casimir_eigenvalue(alg: &Algebra, i: usize, spec: &SimpleModuleSpec) -> Cyclo {
    let f = alg.field();
    let (ri, rj) = if i == 1 { (spec.r1, spec.r2) } else { (spec.r2, spec.r1) };
    let b = alg.base(i);
    let s = f.add(
        &f.pow(&b, ri as i64).expect("base is a root of unity"),
        &f.pow(&b, -(ri as i64)).expect("base is a root of unity"),
    );
    f.scale_int(&s, spec.alpha.pow(alg.params().partner(i)) * minus_one_pow(rj as i64))
}

/// The Casimir element `C_i = -Q_i K^{-p_j} - Q_i^{-1} K^{p_j}
/// - (Q_i - Q_i^{-1})^2 e_i f_i`.
pub fn casimir(alg: &Algebra, i: usize) -> crate::algebra::Element {
    let f = alg.field();
    let pj = alg.params().partner(i) as i64;
    let b = alg.base(i);
    let binv = f.inv(&b).expect("base is a root of unity");
    let gap = alg.base_gap(i);
    let (e, fi) = if i == 1 { (Gen::E1, Gen::F1) } else { (Gen::E2, Gen::F2) };
    let ef = alg.mul(&alg.generator(e), &alg.generator(fi));
    let mut out = alg.scale(&alg.k_power(-pj), &f.neg(&b));
    out = alg.add(&out, &alg.scale(&alg.k_power(pj), &f.neg(&binv)));
    alg.sub(&out, &alg.scale(&ef, &f.mul(&gap, &gap)))
}

/// Verifies one simple module: the defining relations hold as matrix
/// identities, `K` is diagonal with the stated weights, and both Casimir
/// elements act by their `beta` scalars.
pub fn verify_simple_module(alg: &Algebra, spec: &SimpleModuleSpec) -> Report {
    let f = alg.field();
    let mut r = Report::new();
    let rep = simple_rep(alg, spec);
    let tag = format!(
        "modules.{}{}-{}",
        spec.alpha.symbol().replace('+', "plus").replace('-', "minus"),
        spec.r1,
        spec.r2
    );
    let checks = rep.relation_checks(alg);
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
    r.check(
        format!("{tag}.relations"),
        format!("action on {spec} satisfies every defining relation"),
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} relations hold as matrix identities", checks.len())
        } else {
            format!("failing: {}", failed.join("; "))
        },
    );
    let k = simple_action(alg, spec, Gen::K);
    let diagonal = k.entries().all(|(i, j, _)| i == j) && (0..spec.dim()).all(|i| k.get(i, i).is_some());
    r.check(
        format!("{tag}.weights"),
        format!("K acts diagonally on {spec} with weights alpha q1^(r1-1-2n1) q2^(r2-1-2n2)"),
        diagonal,
        format!("dimension {}", spec.dim()),
    );
    for i in 1..=2 {
        let c = rep.represent(alg, &casimir(alg, i));
        let beta = casimir_eigenvalue(alg, i, spec);
        let expected = Matrix::identity(f, spec.dim()).scale(f, &beta);
        r.check(
            format!("{tag}.casimir-{i}"),
            format!("C{i} acts on {spec} as beta{i}"),
            c == expected,
            format!("beta{i} = {beta}"),
        );
    }
    r
}

/// Sorted multiset of `K`-eigenvalue exponents, the isomorphism invariant
/// used to separate the simple modules.
pub fn weight_spectrum(alg: &Algebra, spec: &SimpleModuleSpec) -> Vec<i64> {
    let n = alg.field().order() as i64;
    let mut out: Vec<i64> = simple_rep(alg, spec).k_exponents().iter().map(|k| k.rem_euclid(n)).collect();
    out.sort_unstable();
    out
}

/// The `K`-weight exponent (mod `N`) of the vectors killed by both `e1` and
/// `e2`, when that space is one-dimensional. Isomorphic modules share it.
pub fn highest_weight(alg: &Algebra, spec: &SimpleModuleSpec) -> Option<i64> {
    let f = alg.field();
    let rep = simple_rep(alg, spec);
    let (e1, e2) = (rep.generator(f, Gen::E1), rep.generator(f, Gen::E2));
    let (t1, t2) = (e1.transpose(), e2.transpose());
    let d = rep.dim();
    let cols = (0..d).map(|j| {
        let mut col = t1.row(j).clone();
        col.extend(t2.row(j).iter().map(|(i, c)| (i + d, c.clone())));
        col
    });
    let ker = kernel(f, cols);
    if ker.len() != 1 {
        return None;
    }
    let n = f.order() as i64;
    let mut weights: Vec<i64> = ker[0].keys().map(|&j| rep.k_exponents()[j].rem_euclid(n)).collect();
    weights.sort_unstable();
    weights.dedup();
    (weights.len() == 1).then(|| weights[0])
}

/// Checks the symmetry identities of the lowering coefficients and the
/// Casimir eigenvalues for every in-range argument.
pub fn verify_phi_identities(alg: &Algebra) -> Report {
    let p = alg.params();
    let (p1, p2) = (p.p1 as i64, p.p2 as i64);
    let ph = |i, a, n, r1, r2| phi_unchecked(alg, i, a, n, r1, r2);
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut tally = |name: &'static str, ok: bool| {
        let e = counts.entry(name).or_default();
        e.0 += 1;
        if !ok {
            e.1 += 1;
        }
    };
    for alpha in [Sign::Plus, Sign::Minus] {
        for r1 in 1..=p1 {
            for r2 in 1..=p2 {
                for k in 1..(p1 - r1) {
                    if r2 < p2 {
                        tally(
                            "phi1 flip with complementary r1",
                            ph(1, alpha.flip(), k, p1 - r1, r2) == ph(1, alpha, k, p1 - r1, p2 - r2),
                        );
                    }
                }
                for n in 1..r1 {
                    if r2 < p2 {
                        tally(
                            "phi1 flip with complementary r2",
                            ph(1, alpha, n, r1, r2) == ph(1, alpha.flip(), n, r1, p2 - r2),
                        );
                    }
                }
                for k in 1..(p2 - r2) {
                    if r1 < p1 {
                        tally(
                            "phi2 flip with complementary r2",
                            ph(2, alpha.flip(), k, r1, p2 - r2) == ph(2, alpha, k, p1 - r1, p2 - r2),
                        );
                    }
                }
                for n in 1..r2 {
                    if r1 < p1 {
                        tally(
                            "phi2 flip with complementary r1",
                            ph(2, alpha, n, r1, r2) == ph(2, alpha.flip(), n, p1 - r1, r2),
                        );
                    }
                }
                let spec = SimpleModuleSpec {
                    alpha,
                    r1: r1 as usize,
                    r2: r2 as usize,
                };
                if r1 < p1 {
                    let other = SimpleModuleSpec {
                        alpha: alpha.flip(),
                        r1: (p1 - r1) as usize,
                        r2: r2 as usize,
                    };
                    for i in 1..=2 {
                        tally(
                            "beta invariant under (alpha, r1) -> (-alpha, p1 - r1)",
                            casimir_eigenvalue(alg, i, &spec) == casimir_eigenvalue(alg, i, &other),
                        );
                    }
                }
                if r2 < p2 {
                    let other = SimpleModuleSpec {
                        alpha: alpha.flip(),
                        r1: r1 as usize,
                        r2: (p2 - r2) as usize,
                    };
                    for i in 1..=2 {
                        tally(
                            "beta invariant under (alpha, r2) -> (-alpha, p2 - r2)",
                            casimir_eigenvalue(alg, i, &spec) == casimir_eigenvalue(alg, i, &other),
                        );
                    }
                }
            }
        }
    }
    let mut r = Report::new();
    for (name, (total, bad)) in counts {
        r.check(
            format!("modules.identity.{}", name.replace(' ', "-").replace(['(', ')', ','], "")),
            name,
            bad == 0,
            format!("{} of {total} instances hold", total - bad),
        );
    }
    r
}

/// The `modules` suite: every simple module, their pairwise
/// non-isomorphism, the coefficient identities and the `f2` misprint check.
pub fn verify_simple_modules(alg: &Algebra) -> Report {
    let mut r = Report::new();
    let all = SimpleModuleSpec::all(alg);
    for spec in &all {
        r.extend(verify_simple_module(alg, spec));
    }
    let p = alg.params();
    r.check(
        "modules.count",
        "there are 2 p1 p2 simple modules",
        all.len() == 2 * p.p1 * p.p2,
        format!("{} modules", all.len()),
    );
    let mut tops: Vec<(usize, Option<i64>)> = all.iter().map(|s| (s.dim(), highest_weight(alg, s))).collect();
    let unique_top = tops.iter().all(|(_, w)| w.is_some());
    tops.sort();
    tops.dedup();
    r.check(
        "modules.non-isomorphic",
        "the simple modules are pairwise non-isomorphic",
        unique_top && tops.len() == all.len(),
        format!(
            "each module has a one-dimensional space of vectors killed by e1 and e2; {} distinct (dimension, highest weight) pairs among {} modules",
            tops.len(),
            all.len()
        ),
    );
    let printed_failures = all.iter().filter(|s| !rep_with(alg, s, F2Step::Two).is_module(alg)).count();
    let corrected_ok = all.iter().all(|s| simple_rep(alg, s).is_module(alg));
    let needs_shift = all.iter().filter(|s| s.r2 >= 2).count();
    r.check_erratum(
        "modules.f2-step",
        "f2 raises the second index of the weight basis by one",
        printed_failures == 0,
        corrected_ok,
        format!(
            "a shift by two breaks the relations on {printed_failures} of {needs_shift} modules with r2 >= 2; a shift by one satisfies them on all"
        ),
    );
    r.extend(verify_phi_identities(alg));
    r
}
