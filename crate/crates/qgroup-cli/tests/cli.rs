use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

use qgroup::ideals::IdealBasis;
use qgroup::labels::BlockLabel;
use qgroup::serial::{BlockDump, IdempotentsDump, IntegralsDump, SlfDump, TableCache, VerifyOutput};
use qgroup::{Algebra, Monomial, Params};

fn qgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qgroup-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn alg23() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| Algebra::new(Params::new(2, 3).unwrap()))
}

fn dump<T: serde::de::DeserializeOwned>(target: &[&str], file: &str) -> T {
    let out = scratch(file);
    let mut args = vec![
        "dump",
        "--p1",
        "2",
        "--p2",
        "3",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
        "--target",
    ];
    args.extend_from_slice(target);
    let o = qgroup(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap()
}

#[test]
fn non_coprime_parameters_are_a_usage_error() {
    let o = qgroup(&["verify", "--p1", "2", "--p2", "2", "--suite", "relations"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coprime"));
}

#[test]
fn malformed_requests_are_usage_errors() {
    for args in [
        &["verify", "--p1", "2", "--p2", "3", "--suite", "relations,bogus"][..],
        &["verify", "--p1", "2", "--p2", "3", "--suite", "center", "--blocks", "1-2"][..],
        &["verify", "--p1", "2", "--p2", "3", "--format", "yaml"][..],
        &["dump", "--p1", "2", "--p2", "3", "--target", "everything"][..],
        &["dump", "--p1", "2", "--p2", "3", "--target", "block", "1", "2"][..],
        &["dump", "--p1", "2", "--p2", "3", "--target", "slf", "--format", "text"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(qgroup(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn relations_suite_passes_with_a_json_header() {
    let o = qgroup(&["verify", "--p1", "2", "--p2", "3", "--suite", "relations", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let h = &v["header"];
    assert_eq!(
        (h["p1"].as_u64(), h["p2"].as_u64(), h["N"].as_u64()),
        (Some(2), Some(3), Some(24))
    );
    assert_eq!(h["phi_digest"].as_str().unwrap(), alg23().field().phi_digest());
    assert!(h["version"].as_str().unwrap().starts_with("qgroup "));
    let out: VerifyOutput = serde_json::from_value(v).unwrap();
    assert_eq!(out.dim, 432);
    assert!(out.report.checks.iter().any(|c| c.id == "rel.k-inverse"));
    assert!(out.report.checks.iter().all(|c| !c.anchor.is_empty()));
    assert_eq!(out.summary.failed, 0);
}

#[test]
fn late_suite_builds_its_prerequisites() {
    let o = qgroup(&["verify", "--p1", "2", "--p2", "3", "--suite", "center", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let out: VerifyOutput = serde_json::from_slice(&o.stdout).unwrap();
    assert!(out.report.checks.iter().all(|c| c.id.starts_with("center.")));
    assert_eq!(out.report.find("center.total").unwrap().detail, "sum of block centers 20");
}

#[test]
fn reports_are_deterministic_for_a_fixed_seed() {
    let run = |seed: &str| {
        qgroup(&[
            "verify",
            "--p1",
            "2",
            "--p2",
            "3",
            "--suite",
            "relations,integrals",
            "--sample",
            "50",
            "--seed",
            seed,
            "--format",
            "json",
        ])
        .stdout
    };
    assert_eq!(run("7"), run("7"));
    let text = |seed: &str| qgroup(&["verify", "--p1", "2", "--p2", "3", "--suite", "hopf", "--seed", seed]).stdout;
    assert_eq!(text("3"), text("3"));
}

#[test]
fn erratum_checks_are_flagged_in_text_output() {
    let o = qgroup(&["verify", "--p1", "2", "--p2", "3", "--suite", "integrals"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("[erratum-corrected] integrals.left.exponent.restated"));
    assert!(s.contains("[pass] integrals.left.exponent.display"));
}

#[test]
fn cache_round_trips_and_corruption_is_detected() {
    let path = scratch("table.json");
    let _ = std::fs::remove_file(&path);
    let args = |p: &PathBuf| {
        vec![
            "verify",
            "--p1",
            "2",
            "--p2",
            "3",
            "--suite",
            "relations",
            "--format",
            "json",
            "--cache",
            p.to_str().unwrap(),
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    let run = |p: &PathBuf| qgroup(&args(p).iter().map(String::as_str).collect::<Vec<_>>());
    let first = run(&path);
    assert_eq!(first.status.code(), Some(0));
    assert!(path.exists());
    let second = run(&path);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    // a table with every structure constant replaced by the first scalar
    let mut cache: TableCache = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for row in cache.entries.iter_mut() {
        for entry in row.iter_mut() {
            entry.1 = 0;
        }
    }
    let bad = scratch("table-corrupt.json");
    std::fs::write(&bad, serde_json::to_string(&cache).unwrap()).unwrap();
    assert_eq!(run(&bad).status.code(), Some(1));

    // a table for other parameters is rejected
    cache.header.p2 = 5;
    std::fs::write(&bad, serde_json::to_string(&cache).unwrap()).unwrap();
    assert_eq!(run(&bad).status.code(), Some(2));
}

#[test]
fn steinberg_block_dump_is_a_matrix_unit_realization() {
    let d: BlockDump = dump(&["block", "2", "3"], "block.json");
    let alg = alg23();
    let f = alg.field();
    assert_eq!(d.block, "Q(2,3)");
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.elements.len(), 36);
    let mut units = std::collections::BTreeSet::new();
    for e in &d.elements {
        assert_eq!(e.matrices.len(), 1);
        let m = e.matrices[0].to_matrix(f).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 6));
        let entries: Vec<_> = m.entries().collect();
        assert_eq!(entries.len(), 1);
        assert_eq!(*entries[0].2, f.one());
        units.insert((entries[0].0, entries[0].1));
        // the PBW expansion re-parses to an element realized by the same matrix
        let x = e.element.to_element(alg).unwrap();
        assert_eq!(qgroup::serial::ElementJson::from_element(alg, &x), e.element);
    }
    assert_eq!(units.len(), 36);
}

#[test]
fn idempotent_dump_round_trips_to_equal_elements() {
    let d: IdempotentsDump = dump(&["idempotents"], "idempotents.json");
    let alg = alg23();
    let basis = IdealBasis::new(alg);
    let mut expected = Vec::new();
    for b in BlockLabel::all(alg.params()) {
        expected.extend(basis.block_idempotents(&b).unwrap());
    }
    assert_eq!(d.idempotents.len(), expected.len());
    let mut sum = alg.zero();
    for (j, (label, s1, s2, e)) in d.idempotents.iter().zip(&expected) {
        assert_eq!((j.label.as_str(), j.s1, j.s2), (label.to_string().as_str(), *s1, *s2));
        let parsed = j.element.to_element(alg).unwrap();
        assert_eq!(&parsed, e.as_ref());
        sum = alg.add(&sum, &parsed);
    }
    assert_eq!(sum, alg.one());
}

#[test]
fn slf_dump_has_twenty_exact_vectors() {
    let d: SlfDump = dump(&["slf"], "slf.json");
    let alg = alg23();
    assert_eq!(d.functionals.len(), 20);
    for phi in &d.functionals {
        assert_eq!(phi.values.len(), 432);
        assert!(phi.values.iter().all(|c| c.num.len() == alg.field().degree()));
        phi.to_functional(alg).unwrap();
    }
    assert!(d.functionals.iter().any(|p| p.id == "Q(1,1).chi"));
}

#[test]
fn integral_dump_has_the_top_degree_support() {
    let d: IntegralsDump = dump(&["integrals"], "integrals.json");
    let alg = alg23();
    let top = |l| alg.index(&Monomial::new(1, 2, 1, 2, l));
    assert_eq!(d.left.support, vec![top(1)]);
    assert_eq!(d.right.support, vec![top(11)]);
    assert_eq!((d.left.k_exponent, d.right.k_exponent), (1, 11));
    let lambda = d.left.functional.to_functional(alg).unwrap();
    assert_eq!(lambda.values[top(1)], alg.field().one());
    let big = d.two_sided.to_element(alg).unwrap();
    assert_eq!(big, qgroup::functionals::integral_element(alg));
}

#[test]
fn malformed_field_elements_are_rejected() {
    let f = alg23().field();
    let short = qgroup::serial::CycloJson {
        num: vec!["1".into()],
        den: "1".into(),
    };
    assert!(short.to_cyclo(f).is_err());
    let zero_den = qgroup::serial::CycloJson {
        num: vec!["0".into(); f.degree()],
        den: "0".into(),
    };
    assert!(zero_den.to_cyclo(f).is_err());
}
