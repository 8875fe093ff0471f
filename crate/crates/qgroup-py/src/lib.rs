//! Python bindings: the algebra, its elements with exact arithmetic and the
//! Hopf operations, and the `verify` and `dump` drivers returning parsed JSON.

use std::sync::Arc;

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use qgroup::labels::BlockLabel;
use qgroup::serial::{dump_target, DumpTarget, ElementJson, Header, VerifyOutput};
use qgroup::suites::{run_suites, RunConfig, Suite};
use qgroup::{Algebra as CoreAlgebra, Element as CoreElement, Gen, Monomial, Params};

/// Exponents `(m1, m2, n1, n2, ell)` of a basis monomial.
type Exponents = (usize, usize, usize, usize, usize);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(p1: usize, p2: usize) -> PyResult<Params> {
    Params::new(p1, p2).map_err(value_error)
}

fn json_to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// The restricted quantum group for a coprime pair `(p1, p2)`.
#[pyclass(frozen, module = "qgroup")]
struct Algebra {
    inner: Arc<CoreAlgebra>,
}

/// An element of an `Algebra` in the PBW basis.
#[pyclass(frozen, module = "qgroup")]
struct Element {
    alg: Arc<CoreAlgebra>,
    value: CoreElement,
}

impl Algebra {
    fn wrap(&self, value: CoreElement) -> Element {
        Element {
            alg: Arc::clone(&self.inner),
            value,
        }
    }
}

impl Element {
    fn wrap(&self, value: CoreElement) -> Element {
        Element {
            alg: Arc::clone(&self.alg),
            value,
        }
    }

    fn same_algebra(&self, other: &Element) -> PyResult<()> {
        if self.alg.params() == other.alg.params() {
            Ok(())
        } else {
            Err(PyValueError::new_err("elements belong to different algebras"))
        }
    }

    /// The other operand as an element of this algebra: an `Element` or an
    /// integer scalar.
    fn operand(&self, other: &Bound<'_, PyAny>) -> PyResult<CoreElement> {
        if let Ok(e) = other.cast::<Element>() {
            let e = e.get();
            self.same_algebra(e)?;
            return Ok(e.value.clone());
        }
        if let Ok(n) = other.extract::<i64>() {
            return Ok(self.alg.scale_int(&self.alg.one(), n));
        }
        Err(PyTypeError::new_err("expected an Element or an int"))
    }
}

#[pymethods]
impl Algebra {
    #[new]
    fn new(p1: usize, p2: usize) -> PyResult<Self> {
        Ok(Algebra {
            inner: Arc::new(CoreAlgebra::new(params(p1, p2)?)),
        })
    }

    #[getter]
    fn p1(&self) -> usize {
        self.inner.params().p1
    }

    #[getter]
    fn p2(&self) -> usize {
        self.inner.params().p2
    }

    /// Order of the root of unity.
    #[getter(N)]
    fn order(&self) -> usize {
        self.inner.field().order()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn phi_digest(&self) -> String {
        self.inner.field().phi_digest()
    }

    fn zero(&self) -> Element {
        self.wrap(self.inner.zero())
    }

    fn one(&self) -> Element {
        self.wrap(self.inner.one())
    }

    /// One of `e1`, `e2`, `f1`, `f2`, `K`, `Kinv` or `one`.
    fn generator(&self, name: &str) -> PyResult<Element> {
        let g = Gen::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown generator {name:?}")))?;
        Ok(self.wrap(self.inner.generator(g)))
    }

    /// The PBW word `e1^m1 e2^m2 f1^n1 f2^n2 K^ell`; zero when a nilpotent
    /// exponent is out of range.
    fn word(&self, m1: usize, m2: usize, n1: usize, n2: usize, ell: i64) -> Element {
        self.wrap(self.inner.word(m1, m2, n1, n2, ell))
    }

    fn basis_element(&self, index: usize) -> PyResult<Element> {
        if index >= self.inner.dim() {
            return Err(PyValueError::new_err(format!("basis index {index} out of range")));
        }
        Ok(self.wrap(self.inner.basis_element(index)))
    }

    /// Exponents `(m1, m2, n1, n2, ell)` of a basis index.
    fn monomial(&self, index: usize) -> PyResult<Exponents> {
        if index >= self.inner.dim() {
            return Err(PyValueError::new_err(format!("basis index {index} out of range")));
        }
        let m = self.inner.monomial(index);
        Ok((m.m1, m.m2, m.n1, m.n2, m.ell))
    }

    fn index(&self, exponents: Exponents) -> PyResult<usize> {
        let (m1, m2, n1, n2, ell) = exponents;
        let m = Monomial::new(m1, m2, n1, n2, ell);
        self.inner.validate(&m).map_err(value_error)?;
        Ok(self.inner.index(&m))
    }

    /// File header `{p1, p2, N, phi_digest, version}` as a dict.
    fn header<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_python(py, &Header::for_algebra(&self.inner))
    }

    /// Parses an element written by `Element.to_json`.
    fn element_from_json(&self, text: &str) -> PyResult<Element> {
        let json: ElementJson = serde_json::from_str(text).map_err(value_error)?;
        Ok(self.wrap(json.to_element(&self.inner).map_err(value_error)?))
    }

    fn __repr__(&self) -> String {
        let p = self.inner.params();
        format!("Algebra(p1={}, p2={})", p.p1, p.p2)
    }
}

#[pymethods]
impl Element {
    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.wrap(self.alg.add(&self.value, &self.operand(other)?)))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.wrap(self.alg.add(&self.operand(other)?, &self.value)))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.wrap(self.alg.sub(&self.value, &self.operand(other)?)))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.wrap(self.alg.sub(&self.operand(other)?, &self.value)))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.wrap(self.alg.mul(&self.value, &self.operand(other)?)))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.wrap(self.alg.mul(&self.operand(other)?, &self.value)))
    }

    fn __neg__(&self) -> Element {
        self.wrap(self.alg.neg(&self.value))
    }

    fn __pow__(&self, exponent: usize, modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Element> {
        if modulo.is_some() {
            return Err(PyTypeError::new_err("modular power is not supported"));
        }
        Ok(self.wrap(self.alg.pow(&self.value, exponent)))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        self.operand(other).is_ok_and(|o| o == self.value)
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn __len__(&self) -> usize {
        self.value.len()
    }

    /// `(index, (m1, m2, n1, n2, ell), coefficient)` for every nonzero
    /// term; coefficients are written in powers of `zeta`.
    fn terms(&self) -> Vec<(usize, Exponents, String)> {
        self.value
            .terms()
            .map(|(i, c)| {
                let m = self.alg.monomial(i);
                (i, (m.m1, m.m2, m.n1, m.n2, m.ell), c.to_string())
            })
            .collect()
    }

    /// Counit value, written in powers of `zeta`.
    fn counit(&self) -> String {
        self.alg.counit(&self.value).to_string()
    }

    fn antipode(&self) -> Element {
        self.wrap(self.alg.antipode(&self.value))
    }

    /// Coproduct as `(left index, right index, coefficient)` triples.
    fn coproduct(&self) -> Vec<(usize, usize, String)> {
        self.alg
            .coproduct(&self.value)
            .terms()
            .map(|((a, b), c)| (a, b, c.to_string()))
            .collect()
    }

    /// Exact JSON form with decimal numerator and denominator strings.
    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&ElementJson::from_element(&self.alg, &self.value)).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        if self.value.is_zero() {
            return "0".into();
        }
        self.value
            .terms()
            .map(|(i, c)| format!("({c}) {}", self.alg.monomial(i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn parse_blocks(p: &Params, blocks: Option<Vec<(usize, usize)>>) -> PyResult<Option<Vec<BlockLabel>>> {
    blocks
        .map(|list| {
            list.into_iter()
                .map(|(r1, r2)| BlockLabel::new(p, r1, r2).map_err(value_error))
                .collect()
        })
        .transpose()
}

/// Runs verification suites and returns the report as a dict with the same
/// layout as `qgroup verify --format json`.
#[pyfunction]
#[pyo3(signature = (p1, p2, suites = "all", sample = 1000, seed = 0, blocks = None))]
fn verify<'py>(
    py: Python<'py>,
    p1: usize,
    p2: usize,
    suites: &str,
    sample: usize,
    seed: u64,
    blocks: Option<Vec<(usize, usize)>>,
) -> PyResult<Bound<'py, PyAny>> {
    let p = params(p1, p2)?;
    let config = RunConfig {
        suites: Suite::parse_list(suites).map_err(value_error)?,
        sample,
        seed,
        blocks: parse_blocks(&p, blocks)?,
    };
    let output = py.detach(|| -> qgroup::Result<VerifyOutput> {
        let alg = CoreAlgebra::new(p);
        let outcome = run_suites(&alg, &config)?;
        Ok(VerifyOutput::from_run(&alg, &config, outcome))
    });
    json_to_python(py, &output.map_err(value_error)?)
}

/// Computes `block <r1> <r2>`, `slf`, `idempotents` or `integrals` and
/// returns it as a dict with the same layout as `qgroup dump`.
#[pyfunction]
fn dump<'py>(py: Python<'py>, p1: usize, p2: usize, target: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = params(p1, p2)?;
    let target = DumpTarget::parse(target, &p).map_err(value_error)?;
    let out = py.detach(|| dump_target(&CoreAlgebra::new(p), &target));
    json_to_python(py, &out.map_err(value_error)?)
}

#[pymodule]
#[pyo3(name = "qgroup")]
fn qgroup_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Element>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(dump, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
