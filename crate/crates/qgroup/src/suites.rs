//! Named verification suites and the runner that executes them in
//! dependency order.
//!
//! Objects that later suites need (the ideal bases, block realizations, the
//! symmetric functions and the integrals) are built on demand. Their own
//! checks are only reported when their suite is requested.

use std::fmt;
use std::str::FromStr;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::functionals::{
    integral_functional, verify_center, verify_integrals, verify_q_characters, verify_radford, verify_slf, Integrals, Side,
    SlfBasis, SymmetryMode,
};
use crate::hopf::{
    verify_commutator_closed_forms, verify_coproduct_closed_form, verify_defining_relations, verify_hopf_axioms,
    verify_structure_table, TABLE_LIMIT,
};
use crate::ideals::{
    verify_averager_lemma, verify_block_decomposition, verify_construction_identities, verify_idempotent_family,
    verify_idempotents, verify_ladder_relations, IdealBasis,
};
use crate::labels::BlockLabel;
use crate::realization::{verify_realization, Realization};
use crate::report::Report;
use crate::simple::{verify_phi_identities, verify_simple_modules};

/// Suites in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Relations,
    Hopf,
    Modules,
    Ideals,
    Idempotents,
    Blocks,
    Shapes,
    Slf,
    Integrals,
    Radford,
    Qchar,
    Center,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Relations,
        Suite::Hopf,
        Suite::Modules,
        Suite::Ideals,
        Suite::Idempotents,
        Suite::Blocks,
        Suite::Shapes,
        Suite::Slf,
        Suite::Integrals,
        Suite::Radford,
        Suite::Qchar,
        Suite::Center,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Hopf => "hopf",
            Suite::Modules => "modules",
            Suite::Ideals => "ideals",
            Suite::Idempotents => "idempotents",
            Suite::Blocks => "blocks",
            Suite::Shapes => "shapes",
            Suite::Slf => "slf",
            Suite::Integrals => "integrals",
            Suite::Radford => "radford",
            Suite::Qchar => "qchar",
            Suite::Center => "center",
        }
    }

    /// Parses a comma-separated list, expanding `all`, and returns the
    /// suites sorted into dependency order without repeats.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            if name == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(name.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Format("no suite given".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    /// Sample count for every randomized check.
    pub sample: usize,
    pub seed: u64,
    /// Restricts the per-block suites to these blocks; `None` means all.
    pub blocks: Option<Vec<BlockLabel>>,
}

impl RunConfig {
    pub fn new(suites: Vec<Suite>) -> Self {
        RunConfig {
            suites,
            sample: 1000,
            seed: 0,
            blocks: None,
        }
    }
}

/// Result of a run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: Report,
    pub dim: usize,
    pub blocks: usize,
    /// Number of symmetric functions, when they were built.
    pub slf_count: Option<usize>,
}

/// Symmetry checks are exhaustive up to [`TABLE_LIMIT`] and sampled above.
pub fn symmetry_mode(alg: &Algebra, sample: usize, seed: u64) -> SymmetryMode {
    if alg.dim() <= TABLE_LIMIT {
        SymmetryMode::Exhaustive
    } else {
        SymmetryMode::Sampled { count: sample, seed }
    }
}

/// Sample count for the block multiplicativity check: every pair of block
/// basis elements up to [`TABLE_LIMIT`], `sample` pairs above.
fn multiplicative_samples(alg: &Algebra, sample: usize) -> usize {
    if alg.dim() <= TABLE_LIMIT {
        usize::MAX
    } else {
        sample
    }
}

/// Runs the requested suites in dependency order.
pub fn run_suites(alg: &Algebra, config: &RunConfig) -> Result<RunOutcome> {
    let p = alg.params();
    let all_blocks = BlockLabel::all(p);
    let filtered = config.blocks.is_some();
    let blocks = match &config.blocks {
        Some(list) => {
            for b in list {
                BlockLabel::new(p, b.r1, b.r2)?;
            }
            list.clone()
        }
        None => all_blocks.clone(),
    };
    let wants = |s: Suite| config.suites.contains(&s);
    let (sample, seed) = (config.sample, config.seed);
    let mode = symmetry_mode(alg, sample, seed);

    let basis = IdealBasis::new(alg);
    let real = Realization::new(&basis);
    let mut slf: Option<SlfBasis> = None;
    let mut integrals: Option<Integrals> = None;
    let mut report = Report::new();

    for suite in Suite::ALL {
        if !wants(suite) {
            continue;
        }
        match suite {
            Suite::Relations => {
                report.extend(verify_defining_relations(alg));
                report.extend(verify_commutator_closed_forms(alg));
                report.extend(verify_structure_table(alg, sample, seed));
            }
            Suite::Hopf => {
                report.extend(verify_hopf_axioms(alg, sample, seed));
                report.extend(verify_coproduct_closed_form(alg));
            }
            Suite::Modules => {
                report.extend(verify_simple_modules(alg));
                report.extend(verify_phi_identities(alg));
            }
            Suite::Ideals => {
                report.extend(verify_averager_lemma(alg));
                for b in &blocks {
                    report.extend(verify_ladder_relations(&basis, b)?);
                    report.extend(verify_construction_identities(&basis, b)?);
                }
            }
            Suite::Idempotents => {
                for b in &blocks {
                    report.extend(verify_idempotents(&basis, b)?);
                }
                if !filtered {
                    report.extend(verify_idempotent_family(&basis)?);
                }
            }
            Suite::Blocks => {
                report.extend(verify_block_decomposition(&basis)?);
            }
            Suite::Shapes => {
                for b in &blocks {
                    report.extend(verify_realization(&real, b, multiplicative_samples(alg, sample), seed)?);
                }
            }
            Suite::Slf => {
                let (s, r) = verify_slf(&real, mode)?;
                report.extend(r);
                slf = Some(s);
            }
            Suite::Integrals => {
                let (i, r) = verify_integrals(alg, sample, seed)?;
                report.extend(r);
                integrals = Some(i);
            }
            Suite::Radford => {
                let lambda = match &integrals {
                    Some(i) => i.left.functional.clone(),
                    None => integral_functional(alg, Side::Left)?.functional,
                };
                if slf.is_none() {
                    slf = Some(verify_slf(&real, mode)?.0);
                }
                report.extend(verify_radford(&real, &lambda, slf.as_ref().unwrap(), &blocks)?);
            }
            Suite::Qchar => {
                if slf.is_none() {
                    slf = Some(verify_slf(&real, mode)?.0);
                }
                report.extend(verify_q_characters(&real, slf.as_ref().unwrap(), mode)?);
            }
            Suite::Center => {
                let (dims, r) = verify_center(&basis, &blocks)?;
                report.extend(r);
                if let (Some(s), false) = (&slf, filtered) {
                    let total: usize = dims.iter().map(|(_, d)| d).sum();
                    report.check(
                        "center.matches-slf-rank",
                        "the dimension of the center equals the number of independent symmetric functions",
                        total == s.functionals.len(),
                        format!("center {total}, symmetric functions {}", s.functionals.len()),
                    );
                }
            }
        }
    }
    Ok(RunOutcome {
        report,
        dim: alg.dim(),
        blocks: all_blocks.len(),
        slf_count: slf.map(|s| s.functionals.len()),
    })
}
