//! Acceptance run: prints one pass/fail line per criterion and exits with a
//! failure status when any criterion fails.
//!
//! Every comparison is exact (equality in the cyclotomic field or of
//! integers); no floating-point tolerance is involved.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qgroup::hopf::{verify_commutator_closed_forms, verify_structure_table};
use qgroup::labels::BlockLabel;
use qgroup::report::{Report, Status};
use qgroup::suites::{run_suites, RunConfig, RunOutcome, Suite};
use qgroup::{Algebra, Params};

struct Criterion {
    number: usize,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn run(alg: &Algebra, suites: &[Suite], sample: usize, blocks: Option<Vec<BlockLabel>>) -> (RunOutcome, Duration) {
    let config = RunConfig {
        suites: suites.to_vec(),
        sample,
        seed: 0,
        blocks,
    };
    timed(|| run_suites(alg, &config).expect("suites run"))
}

/// Checks whose id starts with one of `prefixes`.
fn select<'a>(report: &'a Report, prefixes: &[&str]) -> Vec<&'a qgroup::report::Check> {
    report
        .checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p)))
        .collect()
}

/// `(all passed, summary text)` for the selected checks; erratum-corrected
/// checks count as passing and are listed.
fn summarize(report: &Report, prefixes: &[&str]) -> (bool, String) {
    let checks = select(report, prefixes);
    let failed: Vec<_> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.id.as_str())
        .collect();
    let corrected = checks.iter().filter(|c| c.status == Status::ErratumCorrected).count();
    let mut text = format!("{} checks, {} erratum-corrected", checks.len(), corrected);
    if !failed.is_empty() {
        text.push_str(&format!(", failed: {}", failed.join(" ")));
    }
    (!checks.is_empty() && failed.is_empty(), text)
}

fn detail_of(report: &Report, id: &str) -> String {
    report.find(id).map(|c| c.detail.clone()).unwrap_or_default()
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

fn main() -> ExitCode {
    let mut results = Vec::new();
    let mut push = |number, title, ok, detail: String| {
        let c = Criterion {
            number,
            title,
            ok,
            detail,
        };
        println!(
            "criterion {:>2} [{}] {}: {}",
            c.number,
            if c.ok { "PASS" } else { "FAIL" },
            c.title,
            c.detail
        );
        results.push(c);
    };

    let p23 = Params::new(2, 3).unwrap();
    let (alg, construct23) = timed(|| Algebra::new(p23));
    let (_, table23) = timed(|| alg.structure_table());

    let (relations, _) = run(&alg, &[Suite::Relations], 1000, None);
    let (hopf, hopf_time) = run(&alg, &[Suite::Hopf], 1000, None);
    let (modules, _) = run(&alg, &[Suite::Modules], 1000, None);
    let (ideals, _) = run(&alg, &[Suite::Ideals, Suite::Idempotents, Suite::Blocks], 1000, None);
    let (shapes, _) = run(&alg, &[Suite::Shapes], 1000, None);
    let (late, late_time) = run(
        &alg,
        &[Suite::Slf, Suite::Integrals, Suite::Radford, Suite::Qchar, Suite::Center],
        1000,
        None,
    );

    let p25 = Params::new(2, 5).unwrap();
    let (alg25, construct25) = timed(|| Algebra::new(p25));
    let closure25 = verify_structure_table(&alg25, 200, 0);
    let commutators25 = verify_commutator_closed_forms(&alg25);

    // 1: dimension, closure and timings
    {
        let (ok23, s23) = summarize(
            &relations.report,
            &[
                "rel.pbw-dimension",
                "rel.closure",
                "rel.associativity",
                "rel.table-consistency",
            ],
        );
        let (ok25, s25) = summarize(&closure25, &["rel.closure", "rel.associativity"]);
        let ok = ok23
            && ok25
            && alg.dim() == 432
            && alg25.dim() == 2000
            && construct23 < Duration::from_secs(1)
            && construct25 < Duration::from_secs(1)
            && table23 < Duration::from_secs(60);
        push(
            1,
            "PBW dimension and closure",
            ok,
            format!(
                "dim 432 = {}, dim 2000 = {}; (2,3) {s23}; (2,5) sampled {s25}; construction {} and {}, structure table {} (limits 1 s, 60 s)",
                alg.dim(),
                alg25.dim(),
                secs(construct23),
                secs(construct25),
                secs(table23)
            ),
        );
    }

    // 2: Hopf axioms, exhaustive at (2,3)
    {
        let (ok, s) = summarize(&hopf.report, &["hopf."]);
        let exhaustive = detail_of(&hopf.report, "hopf.antipode-squared");
        push(
            2,
            "Hopf axioms and the square of the antipode",
            ok && hopf_time < Duration::from_secs(300),
            format!("{s}; antipode squared: {exhaustive}; {} (limit 300 s)", secs(hopf_time)),
        );
    }

    // 3: commutator closed forms at (2,3) and (2,5)
    {
        let (ok23, s23) = summarize(&relations.report, &["rel.commutator-closed-form"]);
        let (ok25, s25) = summarize(&commutators25, &["rel.commutator-closed-form"]);
        push(
            3,
            "closed-form commutators",
            ok23 && ok25,
            format!("(2,3) {s23}; (2,5) {s25}"),
        );
    }

    // 4: simple modules
    {
        let (ok, s) = summarize(&modules.report, &["modules."]);
        let count = detail_of(&modules.report, "modules.count");
        push(4, "simple modules", ok && count == "12 modules", format!("{count}; {s}"));
    }

    // 5: idempotents and the full family
    {
        let (ok, s) = summarize(&ideals.report, &["idempotents."]);
        let family = detail_of(&ideals.report, "idempotents.family.sum-to-one");
        let orthogonal = detail_of(&ideals.report, "idempotents.family.orthogonal");
        push(5, "primitive idempotents", ok, format!("{s}; {family}; {orthogonal}"));
    }

    // 6: block decomposition and projective dimensions
    {
        let (ok, s) = summarize(&ideals.report, &["blocks.", "ideals."]);
        let labels: Vec<String> = BlockLabel::all(&p23).iter().map(|b| b.to_string()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        let expected = ["Q(0,3)", "Q(1,1)", "Q(1,3)", "Q(2,1)", "Q(2,2)", "Q(2,3)"];
        let span = detail_of(&ideals.report, "blocks.span");
        push(
            6,
            "block decomposition",
            ok && sorted == expected && span == "rank 432 of dimension 432",
            format!("blocks {}; {span}; {s}", labels.join(" ")),
        );
    }

    // 7: matrix realization
    {
        let (ok, s) = summarize(&shapes.report, &["shapes."]);
        push(7, "matrix realization of every block", ok, s);
    }

    // 8: symmetric linear functions
    {
        let (ok, s) = summarize(&late.report, &["slf."]);
        let count = late.slf_count;
        push(
            8,
            "symmetric linear functions",
            ok && count == Some(20) && late_time < Duration::from_secs(600),
            format!(
                "{} functionals, {}; {s}; late suites {} (limit 600 s)",
                count.unwrap_or(0),
                detail_of(&late.report, "slf.independent"),
                secs(late_time)
            ),
        );
    }

    // 9: integrals
    {
        let (ok, s) = summarize(&late.report, &["integrals."]);
        push(
            9,
            "integrals and the K-exponent convention",
            ok,
            format!(
                "{s}; matching convention, left: {}; right: {}; restated convention, left: {}; right: {}",
                detail_of(&late.report, "integrals.left.exponent.display"),
                detail_of(&late.report, "integrals.right.exponent.display"),
                detail_of(&late.report, "integrals.left.exponent.restated"),
                detail_of(&late.report, "integrals.right.exponent.restated")
            ),
        );
    }

    // 10: Radford identities
    {
        let (ok, s) = summarize(&late.report, &["radford."]);
        push(10, "Radford identities", ok, s);
    }

    // 11: q-characters
    {
        let (ok, s) = summarize(&late.report, &["qchar."]);
        push(11, "q-characters", ok, s);
    }

    // 12: center
    {
        let (ok, s) = summarize(&late.report, &["center."]);
        let dims: Vec<String> = ["1-1", "1-3", "2-1", "2-2", "2-3", "0-3"]
            .iter()
            .map(|b| detail_of(&late.report, &format!("center.{b}")).replace("computed ", ""))
            .collect();
        push(
            12,
            "center dimensions per block",
            ok && dims == ["9", "3", "3", "3", "1", "1"],
            format!(
                "dimensions {} ({}); {s}",
                dims.join(","),
                detail_of(&late.report, "center.matches-slf-rank")
            ),
        );
    }

    // 13: scale-out at (3,4)
    {
        let p34 = Params::new(3, 4).unwrap();
        let alg34 = Algebra::new(p34);
        let steinberg = vec![BlockLabel::new(&p34, 3, 4).unwrap(), BlockLabel::new(&p34, 0, 4).unwrap()];
        let boundary = vec![BlockLabel::new(&p34, 1, 4).unwrap()];
        let (first, t1) = run(
            &alg34,
            &[Suite::Relations, Suite::Hopf, Suite::Idempotents],
            200,
            Some(steinberg),
        );
        let (second, t2) = run(&alg34, &[Suite::Center], 200, Some(boundary));
        let (ok1, s1) = summarize(&first.report, &["rel.", "hopf.", "idempotents."]);
        let (ok2, s2) = summarize(&second.report, &["center."]);
        let total = t1 + t2;
        push(
            13,
            "scale-out at (3,4)",
            ok1 && ok2 && alg34.dim() == 3456 && total < Duration::from_secs(1800),
            format!(
                "dim {}; relations, hopf (200 samples), Steinberg idempotents: {s1}; center of Q(1,4): {} ({s2}); {} (limit 1800 s)",
                alg34.dim(),
                detail_of(&second.report, "center.1-4"),
                secs(total)
            ),
        );
    }

    let failed = results.iter().filter(|c| !c.ok).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
