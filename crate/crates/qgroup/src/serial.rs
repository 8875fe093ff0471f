//! Serializable forms of field elements, algebra elements, matrices,
//! functionals and the artifacts written by the command-line driver.
//!
//! Field elements are written as decimal numerator strings over the power
//! basis `1, zeta, ..., zeta^(d-1)` (always `d` of them) and one common
//! decimal denominator string.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, Monomial, StructureTable};
use crate::cyclotomic::{Cyclo, CycloField, Params};
use crate::error::{Error, Result};
use crate::functionals::{all_slf_specs, integral_element, integral_functional, slf_by_traces, LinearFunctional, Side};
use crate::ideals::IdealBasis;
use crate::labels::BlockLabel;
use crate::linalg::Matrix;
use crate::realization::Realization;
use crate::report::Report;
use crate::suites::{RunConfig, RunOutcome};

/// Version written into every file header.
pub const FORMAT_VERSION: &str = concat!("qgroup ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub p1: usize,
    pub p2: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub phi_digest: String,
    pub version: String,
}

impl Header {
    pub fn for_algebra(alg: &Algebra) -> Self {
        let p = alg.params();
        Header {
            p1: p.p1,
            p2: p.p2,
            n: p.n(),
            phi_digest: alg.field().phi_digest(),
            version: FORMAT_VERSION.to_string(),
        }
    }

    /// Fails unless the header describes the same algebra and field.
    pub fn ensure_matches(&self, alg: &Algebra) -> Result<()> {
        let own = Header::for_algebra(alg);
        if (self.p1, self.p2, self.n, &self.phi_digest) != (own.p1, own.p2, own.n, &own.phi_digest) {
            return Err(Error::Format(format!(
                "file is for (p1, p2) = ({}, {}), N = {}, digest {}; expected ({}, {}), N = {}, digest {}",
                self.p1, self.p2, self.n, self.phi_digest, own.p1, own.p2, own.n, own.phi_digest
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    pub num: Vec<String>,
    pub den: String,
}

impl CycloJson {
    pub fn from_cyclo(field: &CycloField, c: &Cyclo) -> Self {
        let mut num: Vec<String> = c.numerators().iter().map(|n| n.to_string()).collect();
        num.resize(field.degree(), "0".to_string());
        CycloJson {
            num,
            den: c.denominator().to_string(),
        }
    }

    pub fn to_cyclo(&self, field: &CycloField) -> Result<Cyclo> {
        let parse = |s: &str| BigInt::from_str(s).map_err(|e| Error::Format(format!("bad integer {s:?}: {e}")));
        let den = parse(&self.den)?;
        if den == BigInt::from(0) {
            return Err(Error::Format("zero denominator".into()));
        }
        let coeffs = self
            .num
            .iter()
            .map(|n| Ok(BigRational::new(parse(n)?, den.clone())))
            .collect::<Result<Vec<_>>>()?;
        field.from_coeffs(&coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub index: usize,
    /// Exponents `[m1, m2, n1, n2, ell]` of the PBW monomial.
    pub monomial: [usize; 5],
    pub coeff: CycloJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn from_element(alg: &Algebra, x: &Element) -> Self {
        ElementJson {
            terms: x
                .terms()
                .map(|(k, c)| {
                    let m = alg.monomial(k);
                    TermJson {
                        index: k,
                        monomial: [m.m1, m.m2, m.n1, m.n2, m.ell],
                        coeff: CycloJson::from_cyclo(alg.field(), c),
                    }
                })
                .collect(),
        }
    }

    pub fn to_element(&self, alg: &Algebra) -> Result<Element> {
        let f = alg.field();
        let mut x = Element::zero();
        for t in &self.terms {
            let [m1, m2, n1, n2, ell] = t.monomial;
            let m = Monomial::new(m1, m2, n1, n2, ell);
            alg.validate(&m)?;
            if alg.index(&m) != t.index {
                return Err(Error::Format(format!("index {} does not match monomial {m}", t.index)));
            }
            x.add_term(f, t.index, &t.coeff.to_cyclo(f)?);
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero entries as (row, column, value).
    pub entries: Vec<(usize, usize, CycloJson)>,
}

impl MatrixJson {
    pub fn from_matrix(field: &CycloField, m: &Matrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().map(|(i, j, c)| (i, j, CycloJson::from_cyclo(field, c))).collect(),
        }
    }

    pub fn to_matrix(&self, field: &CycloField) -> Result<Matrix> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, c) in &self.entries {
            if *i >= self.rows || *j >= self.cols {
                return Err(Error::Format(format!("entry ({i}, {j}) outside {}x{}", self.rows, self.cols)));
            }
            m.set(*i, *j, c.to_cyclo(field)?);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub id: String,
    /// Values on the PBW basis in index order.
    pub values: Vec<CycloJson>,
}

impl FunctionalJson {
    pub fn from_functional(field: &CycloField, id: impl Into<String>, phi: &LinearFunctional) -> Self {
        FunctionalJson {
            id: id.into(),
            values: phi.values.iter().map(|c| CycloJson::from_cyclo(field, c)).collect(),
        }
    }

    pub fn to_functional(&self, alg: &Algebra) -> Result<LinearFunctional> {
        if self.values.len() != alg.dim() {
            return Err(Error::Format(format!(
                "{} values for dimension {}",
                self.values.len(),
                alg.dim()
            )));
        }
        Ok(LinearFunctional {
            values: self.values.iter().map(|c| c.to_cyclo(alg.field())).collect::<Result<_>>()?,
        })
    }
}

/// Realization of one block: each basis element with its matrices on the
/// summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDump {
    pub header: Header,
    pub block: String,
    pub summands: Vec<String>,
    pub elements: Vec<BlockElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockElementJson {
    pub key: String,
    pub element: ElementJson,
    pub matrices: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlfDump {
    pub header: Header,
    pub functionals: Vec<FunctionalJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentJson {
    pub block: String,
    pub label: String,
    pub s1: usize,
    pub s2: usize,
    pub element: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentsDump {
    pub header: Header,
    pub idempotents: Vec<IdempotentJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralJson {
    /// `K` exponent of the top-degree monomial on which the functional is 1.
    pub k_exponent: usize,
    /// PBW indices of the monomials on which the functional is nonzero.
    pub support: Vec<usize>,
    pub functional: FunctionalJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralsDump {
    pub header: Header,
    pub left: IntegralJson,
    pub right: IntegralJson,
    pub two_sided: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub erratum_corrected: usize,
}

impl Summary {
    pub fn of(report: &Report) -> Self {
        use crate::report::Status;
        let count = |s| report.checks.iter().filter(|c| c.status == s).count();
        Summary {
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            erratum_corrected: count(Status::ErratumCorrected),
        }
    }
}

/// Output of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub header: Header,
    pub suites: Vec<String>,
    pub seed: u64,
    pub sample: usize,
    pub dim: usize,
    pub blocks: usize,
    pub slf_count: Option<usize>,
    pub summary: Summary,
    pub report: Report,
}

/// The structure-constant table on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCache {
    pub header: Header,
    pub scalars: Vec<CycloJson>,
    /// For each ordered pair `(i, j)` in row-major order, the list of
    /// (result index, scalar id).
    pub entries: Vec<Vec<(u32, u32)>>,
}

impl TableCache {
    pub fn from_table(alg: &Algebra, table: &StructureTable) -> Self {
        let dim = table.dim();
        TableCache {
            header: Header::for_algebra(alg),
            scalars: table
                .scalars()
                .iter()
                .map(|c| CycloJson::from_cyclo(alg.field(), c))
                .collect(),
            entries: (0..dim)
                .flat_map(|i| (0..dim).map(move |j| (i, j)))
                .map(|(i, j)| table.raw_product(i, j).to_vec())
                .collect(),
        }
    }

    pub fn to_table(&self, alg: &Algebra) -> Result<StructureTable> {
        self.header.ensure_matches(alg)?;
        let dim = alg.dim();
        if self.entries.len() != dim * dim {
            return Err(Error::Format("structure table has the wrong number of entries".into()));
        }
        let scalars = self
            .scalars
            .iter()
            .map(|c| c.to_cyclo(alg.field()))
            .collect::<Result<Vec<_>>>()?;
        let ok = self
            .entries
            .iter()
            .flatten()
            .all(|&(k, s)| (k as usize) < dim && (s as usize) < scalars.len());
        if !ok {
            return Err(Error::Format("structure table entry out of range".into()));
        }
        Ok(StructureTable::from_raw(dim, self.entries.clone(), scalars))
    }
}

/// Realization matrices of every basis element of one block.
pub fn dump_block(real: &Realization, block: &BlockLabel) -> Result<BlockDump> {
    let alg = real.algebra();
    let image = real.block_image(block)?;
    let elements = image
        .keys
        .iter()
        .zip(&image.matrices)
        .map(|(key, mats)| {
            Ok(BlockElementJson {
                key: key.to_string(),
                element: ElementJson::from_element(alg, real.basis().element(key)?.as_ref()),
                matrices: mats.iter().map(|m| MatrixJson::from_matrix(alg.field(), m)).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDump {
        header: Header::for_algebra(alg),
        block: block.to_string(),
        summands: image.summands.iter().map(|s| s.to_string()).collect(),
        elements,
    })
}

/// The symmetric functions of every block as value vectors.
pub fn dump_slf(real: &Realization) -> SlfDump {
    let alg = real.algebra();
    let specs = all_slf_specs(alg.params());
    let phis = slf_by_traces(real, &specs);
    SlfDump {
        header: Header::for_algebra(alg),
        functionals: specs
            .iter()
            .zip(&phis)
            .map(|(s, phi)| FunctionalJson::from_functional(alg.field(), s.id(), phi))
            .collect(),
    }
}

/// The primitive idempotents of every block as PBW expansions.
pub fn dump_idempotents(basis: &IdealBasis) -> Result<IdempotentsDump> {
    let alg = basis.algebra();
    let mut idempotents = Vec::new();
    for block in BlockLabel::all(alg.params()) {
        for (label, s1, s2, e) in basis.block_idempotents(&block)? {
            idempotents.push(IdempotentJson {
                block: block.to_string(),
                label: label.to_string(),
                s1,
                s2,
                element: ElementJson::from_element(alg, &e),
            });
        }
    }
    Ok(IdempotentsDump {
        header: Header::for_algebra(alg),
        idempotents,
    })
}

/// The normalized left and right integrals on the dual and the two-sided
/// integral in the algebra.
pub fn dump_integrals(alg: &Algebra) -> Result<IntegralsDump> {
    let side = |s: Side, id: &str| -> Result<IntegralJson> {
        let sol = integral_functional(alg, s)?;
        Ok(IntegralJson {
            k_exponent: sol.k_exponent,
            support: sol.functional.support(),
            functional: FunctionalJson::from_functional(alg.field(), id, &sol.functional),
        })
    };
    Ok(IntegralsDump {
        header: Header::for_algebra(alg),
        left: side(Side::Left, "left-integral")?,
        right: side(Side::Right, "right-integral")?,
        two_sided: ElementJson::from_element(alg, &integral_element(alg)),
    })
}

impl VerifyOutput {
    pub fn from_run(alg: &Algebra, config: &RunConfig, outcome: RunOutcome) -> Self {
        VerifyOutput {
            header: Header::for_algebra(alg),
            suites: config.suites.iter().map(|s| s.name().to_string()).collect(),
            seed: config.seed,
            sample: config.sample,
            dim: outcome.dim,
            blocks: outcome.blocks,
            slf_count: outcome.slf_count,
            summary: Summary::of(&outcome.report),
            report: outcome.report,
        }
    }
}

/// An object that can be dumped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DumpTarget {
    Block(BlockLabel),
    Slf,
    Idempotents,
    Integrals,
}

impl DumpTarget {
    /// Parses `block <r1> <r2>` (also `Q(r1,r2)` or `block:r1-r2`), `slf`,
    /// `idempotents` or `integrals`.
    pub fn parse(text: &str, params: &Params) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || ":,()-".contains(c))
            .filter(|t| !t.is_empty())
            .collect();
        let unknown = || {
            Error::Format(format!(
                "unknown target {text:?}; expected block <r1> <r2>, slf, idempotents or integrals"
            ))
        };
        match tokens.as_slice() {
            ["block" | "Q", r1, r2] => {
                let r1 = r1.parse().map_err(|_| unknown())?;
                let r2 = r2.parse().map_err(|_| unknown())?;
                Ok(DumpTarget::Block(BlockLabel::new(params, r1, r2)?))
            }
            ["slf"] => Ok(DumpTarget::Slf),
            ["idempotents"] => Ok(DumpTarget::Idempotents),
            ["integrals"] => Ok(DumpTarget::Integrals),
            _ => Err(unknown()),
        }
    }
}

/// Any dumped object; serializes as the inner value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Dump {
    Block(BlockDump),
    Slf(SlfDump),
    Idempotents(IdempotentsDump),
    Integrals(IntegralsDump),
}

pub fn dump_target(alg: &Algebra, target: &DumpTarget) -> Result<Dump> {
    let basis = IdealBasis::new(alg);
    let real = Realization::new(&basis);
    Ok(match target {
        DumpTarget::Block(b) => Dump::Block(dump_block(&real, b)?),
        DumpTarget::Slf => Dump::Slf(dump_slf(&real)),
        DumpTarget::Idempotents => Dump::Idempotents(dump_idempotents(&basis)?),
        DumpTarget::Integrals => Dump::Integrals(dump_integrals(alg)?),
    })
}
