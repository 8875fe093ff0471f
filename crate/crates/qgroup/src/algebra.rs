//! The algebra `g(p1, p2)` on its PBW basis `e1^m1 e2^m2 f1^n1 f2^n2 K^l`.
//!
//! Multiplication is derived from the defining relations alone. For each
//! rank-one subalgebra `<e_i, f_i, K>` the products `f_i^b e_i^a` are put in
//! normal order by repeatedly applying `f e = e f - [e, f]`; the resulting
//! tables give the product of any two `K`-free monomials, and `K` powers are
//! moved to the right using the weights of the monomials.
//!
//! Besides the PBW basis the module offers the weight-projector basis
//! `M pi_j`, where `M` is a `K`-free monomial and `pi_j` is the spectral
//! projector of `K` for the eigenvalue `zeta^{2j}`. Products are much sparser
//! there, so large products are routed through it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::{Cyclo, CycloField, Params};
use crate::error::{Error, Result};

/// Exponent tuple of the basis element `e1^m1 e2^m2 f1^n1 f2^n2 K^ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub m1: usize,
    pub m2: usize,
    pub n1: usize,
    pub n2: usize,
    pub ell: usize,
}

impl Monomial {
    pub fn new(m1: usize, m2: usize, n1: usize, n2: usize, ell: usize) -> Self {
        Monomial { m1, m2, n1, n2, ell }
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "e1^{} e2^{} f1^{} f2^{} K^{}",
            self.m1, self.m2, self.n1, self.n2, self.ell
        )
    }
}

/// Names of the algebra generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E1,
    E2,
    F1,
    F2,
    K,
    Kinv,
    One,
}

impl Gen {
    pub const GENERATORS: [Gen; 5] = [Gen::E1, Gen::E2, Gen::F1, Gen::F2, Gen::K];

    pub fn name(&self) -> &'static str {
        match self {
            Gen::E1 => "e1",
            Gen::E2 => "e2",
            Gen::F1 => "f1",
            Gen::F2 => "f2",
            Gen::K => "K",
            Gen::Kinv => "Kinv",
            Gen::One => "one",
        }
    }

    pub fn parse(s: &str) -> Option<Gen> {
        Some(match s {
            "e1" => Gen::E1,
            "e2" => Gen::E2,
            "f1" => Gen::F1,
            "f2" => Gen::F2,
            "K" => Gen::K,
            "Kinv" => Gen::Kinv,
            "one" | "1" => Gen::One,
            _ => return None,
        })
    }
}

/// A finitely supported linear combination of PBW basis elements, keyed by
/// basis index. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<u32, Cyclo>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclo)> {
        self.terms.iter().map(|(&k, v)| (k as usize, v))
    }

    pub fn coeff(&self, index: usize) -> Option<&Cyclo> {
        self.terms.get(&(index as u32))
    }

    pub fn from_terms(field: &CycloField, terms: impl IntoIterator<Item = (usize, Cyclo)>) -> Self {
        let mut e = Element::zero();
        for (k, c) in terms {
            e.add_term(field, k, &c);
        }
        e
    }

    /// Adds `c` to the coefficient at `index`.
    pub fn add_term(&mut self, field: &CycloField, index: usize, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        let key = index as u32;
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = field.add(v, c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }
}

/// A finitely supported element of the tensor square, keyed by pairs of
/// basis indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<(u32, u32), Cyclo>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Cyclo)> {
        self.terms.iter().map(|(&(a, b), v)| ((a as usize, b as usize), v))
    }

    pub fn add_term(&mut self, field: &CycloField, a: usize, b: usize, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        let key = (a as u32, b as u32);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = field.add(v, c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }
}

/// An element of the triple tensor power, used for coassociativity.
pub type Tensor3 = BTreeMap<(u32, u32, u32), Cyclo>;

/// Laurent polynomial in `K`, as (exponent modulo `2 p1 p2`, coefficient).
pub type KPoly = Vec<(usize, Cyclo)>;

/// Index of a `K`-free monomial `e1^m1 e2^m2 f1^n1 f2^n2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EfMonomial {
    pub m1: usize,
    pub m2: usize,
    pub n1: usize,
    pub n2: usize,
}

/// Element of the weight-projector basis `M pi_j`, keyed by
/// (`K`-free monomial index, `j`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightElement {
    terms: BTreeMap<(u32, u32), Cyclo>,
}

impl WeightElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Cyclo)> {
        self.terms.iter().map(|(&(a, b), v)| ((a as usize, b as usize), v))
    }

    fn add_term(&mut self, field: &CycloField, ef: usize, j: usize, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        let key = (ef as u32, j as u32);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = field.add(v, c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }
}

/// Normal-ordered product of two `K`-free monomials: a list of
/// (`K`-free monomial index, Laurent polynomial in `K` on the right).
type EfProduct = Vec<(usize, KPoly)>;

/// Full PBW structure-constant table with interned scalar coefficients.
#[derive(Clone, Debug)]
pub struct StructureTable {
    dim: usize,
    /// `entries[i * dim + j]` lists (result basis index, scalar id).
    entries: Vec<Vec<(u32, u32)>>,
    scalars: Vec<Cyclo>,
}

impl StructureTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scalars(&self) -> &[Cyclo] {
        &self.scalars
    }

    /// Terms of the product of basis elements `i` and `j`.
    pub fn product(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Cyclo)> {
        self.entries[i * self.dim + j]
            .iter()
            .map(|&(t, s)| (t as usize, &self.scalars[s as usize]))
    }

    pub fn raw_product(&self, i: usize, j: usize) -> &[(u32, u32)] {
        &self.entries[i * self.dim + j]
    }

    pub fn from_raw(dim: usize, entries: Vec<Vec<(u32, u32)>>, scalars: Vec<Cyclo>) -> Self {
        StructureTable { dim, entries, scalars }
    }

    pub fn total_terms(&self) -> usize {
        self.entries.iter().map(|e| e.len()).sum()
    }
}

/// Rank-one data for the pair `(e_i, f_i)`.
#[derive(Clone, Debug)]
struct RankOne {
    /// nilpotency order `p_i`
    p: usize,
    /// weight of `e_i` in units of `zeta`: `K e_i K^-1 = zeta^{w} e_i`
    w: i64,
    /// `K_i = K^{p_j}`
    kpow: usize,
    /// `[e_i, f_i] = (K_i - K_i^-1) / (Q_i - Q_i^-1)`, as a K-polynomial
    h: KPoly,
    /// `fe[b][a]` = normal form of `f^b e^a` as (j, K-poly) with
    /// `f^b e^a = sum_j e^{a-j} f^{b-j} h_j(K)`
    fe: Vec<Vec<Vec<(usize, KPoly)>>>,
}

/// The algebra together with its precomputed multiplication data.
#[derive(Debug)]
pub struct Algebra {
    params: Params,
    field: Arc<CycloField>,
    nk: usize,
    dim: usize,
    ef_count: usize,
    rank: [RankOne; 2],
    /// normal-ordered products of `K`-free monomials, `ef_count^2` entries
    ef_table: Vec<EfProduct>,
    structure: OnceLock<Arc<StructureTable>>,
    antipode_cache: OnceLock<Vec<Element>>,
    coproduct_cache: Vec<OnceLock<Tensor>>,
}

fn kpoly_add(field: &CycloField, poly: &mut KPoly, exp: usize, c: &Cyclo) {
    if c.is_zero() {
        return;
    }
    match poly.binary_search_by_key(&exp, |(e, _)| *e) {
        Ok(pos) => {
            let s = field.add(&poly[pos].1, c);
            if s.is_zero() {
                poly.remove(pos);
            } else {
                poly[pos].1 = s;
            }
        }
        Err(pos) => poly.insert(pos, (exp, c.clone())),
    }
}

impl Algebra {
    pub fn new(params: Params) -> Self {
        Self::with_field(params, Arc::new(CycloField::for_params(&params)))
    }

    pub fn with_field(params: Params, field: Arc<CycloField>) -> Self {
        let nk = params.k_order();
        let (p1, p2) = (params.p1, params.p2);
        let ef_count = p1 * p1 * p2 * p2;
        let dim = ef_count * nk;
        let rank = [Self::rank_one(&field, &params, 1), Self::rank_one(&field, &params, 2)];
        let mut alg = Algebra {
            params,
            field,
            nk,
            dim,
            ef_count,
            rank,
            ef_table: Vec::new(),
            structure: OnceLock::new(),
            antipode_cache: OnceLock::new(),
            coproduct_cache: (0..dim).map(|_| OnceLock::new()).collect(),
        };
        alg.ef_table = alg.build_ef_table();
        alg
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<CycloField> {
        self.field.clone()
    }

    /// Dimension `2 p1^3 p2^3` of the algebra.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Order `2 p1 p2` of `K`.
    pub fn k_order(&self) -> usize {
        self.nk
    }

    /// Number of `K`-free PBW monomials, `p1^2 p2^2`.
    pub fn ef_count(&self) -> usize {
        self.ef_count
    }

    // ----- constants -------------------------------------------------------

    /// `q = zeta_N`.
    pub fn q(&self) -> Cyclo {
        self.field.zeta_pow(1)
    }

    /// `q_i` as a power of `zeta`: `q1 = zeta^{2 p2}`, `q2 = zeta^{2 p1}`.
    pub fn q_i_exponent(&self, i: usize) -> i64 {
        2 * self.params.partner(i) as i64
    }

    pub fn q_i(&self, i: usize) -> Cyclo {
        self.field.zeta_pow(self.q_i_exponent(i))
    }

    /// The q-integer base `Q_i = q_i^{p_j}`.
    pub fn base(&self, i: usize) -> Cyclo {
        self.field.zeta_pow(self.q_i_exponent(i) * self.params.partner(i) as i64)
    }

    /// `[n]_i`.
    pub fn q_int(&self, i: usize, n: i64) -> Cyclo {
        self.field
            .q_int(n, &self.base(i))
            .expect("q-integer bases are nondegenerate for p_i >= 2")
    }

    /// `(q_i^{p_j} - q_i^{-p_j})`.
    pub fn base_gap(&self, i: usize) -> Cyclo {
        let b = self.base(i);
        let binv = self.field.inv(&b).expect("root of unity");
        self.field.sub(&b, &binv)
    }

    // ----- basis indexing --------------------------------------------------

    pub fn ef_index(&self, m: &EfMonomial) -> usize {
        let (p1, p2) = (self.params.p1, self.params.p2);
        ((m.m1 * p2 + m.m2) * p1 + m.n1) * p2 + m.n2
    }

    pub fn ef_monomial(&self, index: usize) -> EfMonomial {
        let (p1, p2) = (self.params.p1, self.params.p2);
        let n2 = index % p2;
        let r = index / p2;
        let n1 = r % p1;
        let r = r / p1;
        let m2 = r % p2;
        let m1 = r / p2;
        EfMonomial { m1, m2, n1, n2 }
    }

    pub fn index(&self, m: &Monomial) -> usize {
        let ef = self.ef_index(&EfMonomial {
            m1: m.m1,
            m2: m.m2,
            n1: m.n1,
            n2: m.n2,
        });
        ef * self.nk + m.ell
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        let ell = index % self.nk;
        let ef = self.ef_monomial(index / self.nk);
        Monomial {
            m1: ef.m1,
            m2: ef.m2,
            n1: ef.n1,
            n2: ef.n2,
            ell,
        }
    }

    /// Checks the exponent ranges of a monomial.
    pub fn validate(&self, m: &Monomial) -> Result<()> {
        let (p1, p2) = (self.params.p1, self.params.p2);
        if m.m1 < p1 && m.n1 < p1 && m.m2 < p2 && m.n2 < p2 && m.ell < self.nk {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("monomial {m:?}")))
        }
    }

    /// Weight of a `K`-free monomial in units of `zeta`:
    /// `K M K^-1 = zeta^{w} M`.
    pub fn ef_weight(&self, m: &EfMonomial) -> i64 {
        let w1 = self.rank[0].w;
        let w2 = self.rank[1].w;
        w1 * (m.m1 as i64 - m.n1 as i64) + w2 * (m.m2 as i64 - m.n2 as i64)
    }

    fn kexp(&self, e: i64) -> usize {
        e.rem_euclid(self.nk as i64) as usize
    }

    // ----- construction helpers --------------------------------------------

    pub fn zero(&self) -> Element {
        Element::zero()
    }

    pub fn one(&self) -> Element {
        self.monomial_element(&Monomial::new(0, 0, 0, 0, 0))
    }

    pub fn monomial_element(&self, m: &Monomial) -> Element {
        let mut e = Element::zero();
        e.add_term(&self.field, self.index(m), &self.field.one());
        e
    }

    pub fn basis_element(&self, index: usize) -> Element {
        let mut e = Element::zero();
        e.add_term(&self.field, index, &self.field.one());
        e
    }

    /// `K^e` for any integer exponent.
    pub fn k_power(&self, e: i64) -> Element {
        self.monomial_element(&Monomial::new(0, 0, 0, 0, self.kexp(e)))
    }

    pub fn generator(&self, g: Gen) -> Element {
        match g {
            Gen::E1 => self.monomial_element(&Monomial::new(1, 0, 0, 0, 0)),
            Gen::E2 => self.monomial_element(&Monomial::new(0, 1, 0, 0, 0)),
            Gen::F1 => self.monomial_element(&Monomial::new(0, 0, 1, 0, 0)),
            Gen::F2 => self.monomial_element(&Monomial::new(0, 0, 0, 1, 0)),
            Gen::K => self.k_power(1),
            Gen::Kinv => self.k_power(-1),
            Gen::One => self.one(),
        }
    }

    /// `e1^m1 e2^m2 f1^n1 f2^n2 K^ell` for arbitrary nonnegative exponents
    /// (zero when a nilpotency bound is exceeded) and any integer `ell`.
    pub fn word(&self, m1: usize, m2: usize, n1: usize, n2: usize, ell: i64) -> Element {
        let (p1, p2) = (self.params.p1, self.params.p2);
        if m1 >= p1 || n1 >= p1 || m2 >= p2 || n2 >= p2 {
            return Element::zero();
        }
        self.monomial_element(&Monomial::new(m1, m2, n1, n2, self.kexp(ell)))
    }

    pub fn scalar(&self, c: &Cyclo) -> Element {
        let mut e = Element::zero();
        e.add_term(&self.field, 0, c);
        e
    }

    // ----- linear structure ------------------------------------------------

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        for (k, v) in b.terms() {
            out.add_term(&self.field, k, v);
        }
        out
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        for (k, v) in b.terms() {
            out.add_term(&self.field, k, &self.field.neg(v));
        }
        out
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element {
            terms: a.terms.iter().map(|(&k, v)| (k, self.field.neg(v))).collect(),
        }
    }

    pub fn scale(&self, a: &Element, c: &Cyclo) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: a.terms.iter().map(|(&k, v)| (k, self.field.mul(v, c))).collect(),
        }
    }

    pub fn scale_int(&self, a: &Element, c: i64) -> Element {
        self.scale(a, &self.field.from_int(c))
    }

    pub fn scale_rational(&self, a: &Element, r: &BigRational) -> Element {
        if r.is_zero() {
            return Element::zero();
        }
        Element {
            terms: a.terms.iter().map(|(&k, v)| (k, self.field.scale_rational(v, r))).collect(),
        }
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut out = Element::zero();
        for it in items {
            for (k, v) in it.terms() {
                out.add_term(&self.field, k, v);
            }
        }
        out
    }

    /// Dense coefficient vector in basis order.
    pub fn to_dense(&self, a: &Element) -> Vec<Cyclo> {
        let mut v = vec![self.field.zero(); self.dim];
        for (k, c) in a.terms() {
            v[k] = c.clone();
        }
        v
    }

    pub fn from_dense(&self, v: &[Cyclo]) -> Element {
        Element::from_terms(&self.field, v.iter().cloned().enumerate())
    }

    // ----- rank-one normal ordering ----------------------------------------

    fn rank_one(field: &CycloField, params: &Params, i: usize) -> RankOne {
        let p = params.p(i);
        let pj = params.partner(i);
        let nk = params.k_order();
        let w = 4 * pj as i64; // q_i^2 = zeta^{4 p_j}
        let kpow = pj;
        // [e_i, f_i] = (K^{p_j} - K^{-p_j}) / (Q - Q^{-1}), Q = zeta^{2 p_j^2}
        let qexp = 2 * (pj * pj) as i64;
        let gap = field.sub(&field.zeta_pow(qexp), &field.zeta_pow(-qexp));
        let inv_gap = field.inv(&gap).expect("nondegenerate base");
        let mut h: KPoly = Vec::new();
        kpoly_add(field, &mut h, kpow % nk, &inv_gap);
        kpoly_add(field, &mut h, (nk - kpow % nk) % nk, &field.neg(&inv_gap));

        // Terms of the rank-one algebra: (a, b, K-exponent) -> coefficient,
        // meaning e^a f^b K^t.
        type Terms = BTreeMap<(usize, usize, usize), Cyclo>;
        let add = |t: &mut Terms, key: (usize, usize, usize), c: &Cyclo| {
            if c.is_zero() {
                return;
            }
            let s = match t.get(&key) {
                Some(v) => field.add(v, c),
                None => c.clone(),
            };
            if s.is_zero() {
                t.remove(&key);
            } else {
                t.insert(key, s);
            }
        };
        // left multiplication by e
        let left_e = |x: &Terms| -> Terms {
            let mut out = Terms::new();
            for (&(a, b, t), c) in x {
                if a + 1 < p {
                    add(&mut out, (a + 1, b, t), c);
                }
            }
            out
        };
        // left multiplication by a K-polynomial: P(K) e^a f^b K^t =
        // e^a f^b P(zeta^{w (a - b)} K) K^t
        let left_kpoly = |poly: &KPoly, x: &Terms| -> Terms {
            let mut out = Terms::new();
            for (&(a, b, t), c) in x {
                let wt = w * (a as i64 - b as i64);
                for (u, pc) in poly {
                    let coeff = field.mul_zeta(&field.mul(c, pc), wt * *u as i64);
                    add(&mut out, (a, b, (t + u) % nk), &coeff);
                }
            }
            out
        };
        // left multiplication by f, from f e = e f - [e, f]
        fn left_f(
            x: &Terms,
            p: usize,
            h: &KPoly,
            left_e: &dyn Fn(&Terms) -> Terms,
            left_kpoly: &dyn Fn(&KPoly, &Terms) -> Terms,
            add: &dyn Fn(&mut Terms, (usize, usize, usize), &Cyclo),
            field: &CycloField,
        ) -> Terms {
            let mut out = Terms::new();
            for (&(a, b, t), c) in x {
                if a == 0 {
                    if b + 1 < p {
                        add(&mut out, (0, b + 1, t), c);
                    }
                    continue;
                }
                // f e^a Y = e (f e^{a-1} Y) - [e, f] e^{a-1} Y
                let mut single = Terms::new();
                single.insert((a - 1, b, t), c.clone());
                let inner = left_f(&single, p, h, left_e, left_kpoly, add, field);
                for (k, v) in left_e(&inner) {
                    add(&mut out, k, &v);
                }
                for (k, v) in left_kpoly(h, &single) {
                    add(&mut out, k, &field.neg(&v));
                }
            }
            out
        }
        let mut fe = vec![vec![Vec::new(); p]; p];
        for a in 0..p {
            let mut cur = Terms::new();
            cur.insert((a, 0, 0), field.one());
            for b in 0..p {
                if b > 0 {
                    cur = left_f(&cur, p, &h, &left_e, &left_kpoly, &add, field);
                }
                let mut by_j: BTreeMap<usize, KPoly> = BTreeMap::new();
                for (&(a2, b2, t), c) in &cur {
                    let j = a - a2;
                    assert_eq!(b - b2, j, "rank-one normal form must preserve weight");
                    kpoly_add(field, by_j.entry(j).or_default(), t, c);
                }
                fe[b][a] = by_j.into_iter().collect();
            }
        }
        RankOne { p, w, kpow, h, fe }
    }

    /// `[e_i, f_i]` as a Laurent polynomial in `K`.
    pub fn cartan_commutator(&self, i: usize) -> KPoly {
        self.rank[i - 1].h.clone()
    }

    /// `K_i = K^{p_j}` exponent.
    pub fn cartan_power(&self, i: usize) -> usize {
        self.rank[i - 1].kpow
    }

    /// Nilpotency order of `e_i`, `f_i`.
    pub fn nilpotency(&self, i: usize) -> usize {
        self.rank[i - 1].p
    }

    /// Substitutes `K -> zeta^{w} K` in a Laurent polynomial.
    fn kpoly_twist(&self, poly: &KPoly, w: i64) -> KPoly {
        poly.iter()
            .map(|(u, c)| (*u, self.field.mul_zeta(c, w * *u as i64)))
            .collect()
    }

    fn kpoly_mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let mut out = Vec::new();
        for (u, c) in a {
            for (v, d) in b {
                kpoly_add(&self.field, &mut out, (u + v) % self.nk, &self.field.mul(c, d));
            }
        }
        out
    }

    fn build_ef_table(&self) -> Vec<EfProduct> {
        let n = self.ef_count;
        let (p1, p2) = (self.params.p1, self.params.p2);
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let mx = self.ef_monomial(x);
            for y in 0..n {
                let my = self.ef_monomial(y);
                let mut acc: BTreeMap<usize, KPoly> = BTreeMap::new();
                // f1^{b1} e1^{a2} and f2^{d1} e2^{c2}
                for (j, h1) in &self.rank[0].fe[mx.n1][my.m1] {
                    for (k, h2) in &self.rank[1].fe[mx.n2][my.m2] {
                        let m1 = mx.m1 + my.m1 - j;
                        let m2 = mx.m2 + my.m2 - k;
                        let n1 = mx.n1 - j + my.n1;
                        let n2 = mx.n2 - k + my.n2;
                        if m1 >= p1 || m2 >= p2 || n1 >= p1 || n2 >= p2 {
                            continue;
                        }
                        // move h1 past e2^{c2-k} f2^{d1-k}
                        let wy = self.rank[1].w * (my.m2 as i64 - mx.n2 as i64);
                        let prod = self.kpoly_mul(&self.kpoly_twist(h1, wy), h2);
                        // move the product past f1^{n1'} f2^{n2'} of the right factor
                        let wz = -self.rank[0].w * my.n1 as i64 - self.rank[1].w * my.n2 as i64;
                        let prod = self.kpoly_twist(&prod, wz);
                        let target = self.ef_index(&EfMonomial { m1, m2, n1, n2 });
                        let slot = acc.entry(target).or_default();
                        for (u, c) in prod {
                            kpoly_add(&self.field, slot, u, &c);
                        }
                    }
                }
                table.push(acc.into_iter().filter(|(_, p)| !p.is_empty()).collect());
            }
        }
        table
    }

    /// Normal-ordered product of two `K`-free monomials.
    pub fn ef_product(&self, x: usize, y: usize) -> &[(usize, KPoly)] {
        &self.ef_table[x * self.ef_count + y]
    }

    // ----- multiplication --------------------------------------------------

    /// Product of two PBW basis elements given by index.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, Cyclo)> {
        let nk = self.nk;
        let (x, l1) = (i / nk, i % nk);
        let (y, l2) = (j / nk, j % nk);
        let wy = self.ef_weight(&self.ef_monomial(y));
        let phase = wy * l1 as i64;
        let mut out = Vec::new();
        for (t, poly) in self.ef_product(x, y) {
            for (u, c) in poly {
                let ell = (u + l1 + l2) % nk;
                out.push((t * nk + ell, self.field.mul_zeta(c, phase)));
            }
        }
        out
    }

    fn mul_direct(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        let table = self.structure.get();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let c = self.field.mul(ca, cb);
                match table {
                    Some(t) => {
                        for (k, s) in t.product(i, j) {
                            out.add_term(&self.field, k, &self.field.mul(&c, s));
                        }
                    }
                    None => {
                        for (k, s) in self.basis_product(i, j) {
                            out.add_term(&self.field, k, &self.field.mul(&c, &s));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if a.is_zero() || b.is_zero() {
            return Element::zero();
        }
        if a.len() * b.len() <= 4 * self.nk * self.nk {
            self.mul_direct(a, b)
        } else {
            let wa = self.to_weight(a);
            let wb = self.to_weight(b);
            self.from_weight(&self.weight_mul(&wa, &wb))
        }
    }

    /// Product of a list of factors, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut it = factors.into_iter();
        let mut acc = match it.next() {
            Some(f) => f.clone(),
            None => return self.one(),
        };
        for f in it {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow(&self, a: &Element, e: usize) -> Element {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    // ----- weight-projector basis ------------------------------------------

    /// Converts to the basis `M pi_j`, `K pi_j = zeta^{2j} pi_j`.
    pub fn to_weight(&self, a: &Element) -> WeightElement {
        let nk = self.nk;
        let mut grouped: BTreeMap<usize, Vec<(usize, &Cyclo)>> = BTreeMap::new();
        for (k, c) in a.terms() {
            grouped.entry(k / nk).or_default().push((k % nk, c));
        }
        let mut out = WeightElement::default();
        for (ef, list) in grouped {
            for j in 0..nk {
                let mut acc = self.field.zero();
                for (l, c) in &list {
                    acc = self.field.add(&acc, &self.field.mul_zeta(c, 2 * (j * l) as i64));
                }
                out.add_term(&self.field, ef, j, &acc);
            }
        }
        out
    }

    pub fn from_weight(&self, w: &WeightElement) -> Element {
        let nk = self.nk;
        let inv_nk = BigRational::new(1.into(), (nk as i64).into());
        let mut grouped: BTreeMap<usize, Vec<(usize, &Cyclo)>> = BTreeMap::new();
        for ((ef, j), c) in w.terms() {
            grouped.entry(ef).or_default().push((j, c));
        }
        let mut out = Element::zero();
        for (ef, list) in grouped {
            for l in 0..nk {
                let mut acc = self.field.zero();
                for (j, c) in &list {
                    acc = self.field.add(&acc, &self.field.mul_zeta(c, -2 * (j * l) as i64));
                }
                let acc = self.field.scale_rational(&acc, &inv_nk);
                out.add_term(&self.field, ef * nk + l, &acc);
            }
        }
        out
    }

    /// Product in the weight-projector basis:
    /// `(M pi_j)(N pi_k) = delta_{k, j - w(N)/2} M N pi_k`.
    pub fn weight_mul(&self, a: &WeightElement, b: &WeightElement) -> WeightElement {
        let nk = self.nk as i64;
        let mut by_weight: HashMap<usize, Vec<(usize, &Cyclo)>> = HashMap::new();
        for ((ef, k), c) in b.terms() {
            let wn = self.ef_weight(&self.ef_monomial(ef));
            // left weight index of N pi_k is k + w(N)/2
            let left = (k as i64 + wn / 2).rem_euclid(nk) as usize;
            by_weight.entry(left).or_default().push((ef, c));
        }
        let mut out = WeightElement::default();
        for ((x, j), ca) in a.terms() {
            let Some(list) = by_weight.get(&j) else {
                continue;
            };
            for &(y, cb) in list {
                let wn = self.ef_weight(&self.ef_monomial(y));
                let k = (j as i64 - wn / 2).rem_euclid(nk) as usize;
                let c = self.field.mul(ca, cb);
                for (t, poly) in self.ef_product(x, y) {
                    let mut s = self.field.zero();
                    for (u, pc) in poly {
                        s = self.field.add(&s, &self.field.mul_zeta(pc, 2 * (u * k) as i64));
                    }
                    out.add_term(&self.field, *t, k, &self.field.mul(&c, &s));
                }
            }
        }
        out
    }

    // ----- structure-constant cache ----------------------------------------

    /// Builds (once) and returns the full PBW structure-constant table.
    pub fn structure_table(&self) -> Arc<StructureTable> {
        self.structure
            .get_or_init(|| Arc::new(self.compute_structure_table()))
            .clone()
    }

    pub fn has_structure_table(&self) -> bool {
        self.structure.get().is_some()
    }

    /// Installs a table loaded from elsewhere (for example from disk).
    pub fn install_structure_table(&self, table: StructureTable) -> Result<()> {
        if table.dim != self.dim {
            return Err(Error::Format("structure table dimension mismatch".into()));
        }
        let _ = self.structure.set(Arc::new(table));
        Ok(())
    }

    fn compute_structure_table(&self) -> StructureTable {
        let dim = self.dim;
        let mut scalars: Vec<Cyclo> = Vec::new();
        let mut ids: HashMap<Cyclo, u32> = HashMap::new();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.basis_product(i, j);
                let mut row = Vec::with_capacity(prod.len());
                for (k, c) in prod {
                    let id = *ids.entry(c.clone()).or_insert_with(|| {
                        scalars.push(c);
                        (scalars.len() - 1) as u32
                    });
                    row.push((k as u32, id));
                }
                entries.push(row);
            }
        }
        StructureTable { dim, entries, scalars }
    }

    // ----- Hopf structure --------------------------------------------------

    /// Counit: the coefficient sum over the pure `K` powers.
    pub fn counit(&self, a: &Element) -> Cyclo {
        let mut acc = self.field.zero();
        for (k, c) in a.terms() {
            if k < self.nk {
                acc = self.field.add(&acc, c);
            }
        }
        acc
    }

    /// Antipode on a generator.
    pub fn antipode_generator(&self, g: Gen) -> Element {
        let (p1, p2) = (self.params.p1 as i64, self.params.p2 as i64);
        match g {
            Gen::E1 => self.neg(&self.mul(&self.k_power(-p2), &self.generator(Gen::E1))),
            Gen::E2 => self.neg(&self.mul(&self.generator(Gen::E2), &self.k_power(-p1))),
            Gen::F1 => self.neg(&self.mul(&self.generator(Gen::F1), &self.k_power(p2))),
            Gen::F2 => self.neg(&self.mul(&self.k_power(p1), &self.generator(Gen::F2))),
            Gen::K => self.k_power(-1),
            Gen::Kinv => self.k_power(1),
            Gen::One => self.one(),
        }
    }

    fn antipode_basis(&self) -> &Vec<Element> {
        self.antipode_cache.get_or_init(|| {
            let se1 = self.antipode_generator(Gen::E1);
            let se2 = self.antipode_generator(Gen::E2);
            let sf1 = self.antipode_generator(Gen::F1);
            let sf2 = self.antipode_generator(Gen::F2);
            (0..self.dim)
                .map(|idx| {
                    let m = self.monomial(idx);
                    // S(e1^a e2^b f1^c f2^d K^l) = S(K)^l S(f2)^d S(f1)^c S(e2)^b S(e1)^a
                    let mut acc = self.k_power(-(m.ell as i64));
                    for (g, e) in [(&sf2, m.n2), (&sf1, m.n1), (&se2, m.m2), (&se1, m.m1)] {
                        for _ in 0..e {
                            acc = self.mul(&acc, g);
                        }
                    }
                    acc
                })
                .collect()
        })
    }

    pub fn antipode(&self, a: &Element) -> Element {
        let table = self.antipode_basis();
        let mut out = Element::zero();
        for (k, c) in a.terms() {
            for (t, v) in table[k].terms() {
                out.add_term(&self.field, t, &self.field.mul(c, v));
            }
        }
        out
    }

    /// Coproduct of a generator.
    pub fn coproduct_generator(&self, g: Gen) -> Tensor {
        let (p1, p2) = (self.params.p1 as i64, self.params.p2 as i64);
        let one = self.field.one();
        let idx = |e: &Element| e.terms().next().map(|(k, _)| k).expect("monomial");
        let mut t = Tensor::zero();
        let mut put = |a: &Element, b: &Element| t.add_term(&self.field, idx(a), idx(b), &one);
        let u = self.one();
        match g {
            Gen::E1 => {
                put(&self.generator(Gen::E1), &u);
                put(&self.k_power(p2), &self.generator(Gen::E1));
            }
            Gen::E2 => {
                put(&self.generator(Gen::E2), &self.k_power(p1));
                put(&u, &self.generator(Gen::E2));
            }
            Gen::F1 => {
                put(&self.generator(Gen::F1), &self.k_power(-p2));
                put(&u, &self.generator(Gen::F1));
            }
            Gen::F2 => {
                put(&self.generator(Gen::F2), &u);
                put(&self.k_power(-p1), &self.generator(Gen::F2));
            }
            Gen::K => put(&self.k_power(1), &self.k_power(1)),
            Gen::Kinv => put(&self.k_power(-1), &self.k_power(-1)),
            Gen::One => put(&u, &u),
        }
        t
    }

    /// Componentwise product in the tensor square.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for ((a1, a2), ca) in a.terms() {
            for ((b1, b2), cb) in b.terms() {
                let c = self.field.mul(ca, cb);
                let left = self.basis_product(a1, b1);
                let right = self.basis_product(a2, b2);
                for (l, cl) in &left {
                    let cl = self.field.mul(&c, cl);
                    for (r, cr) in &right {
                        out.add_term(&self.field, *l, *r, &self.field.mul(&cl, cr));
                    }
                }
            }
        }
        out
    }

    /// Coproduct of a PBW basis element, as the product of generator
    /// coproducts.
    pub fn coproduct_basis(&self, index: usize) -> Tensor {
        self.coproduct_cache[index]
            .get_or_init(|| self.compute_coproduct_basis(index))
            .clone()
    }

    fn compute_coproduct_basis(&self, index: usize) -> Tensor {
        let m = self.monomial(index);
        let mut acc = self.coproduct_generator(Gen::One);
        for (g, e) in [(Gen::E1, m.m1), (Gen::E2, m.m2), (Gen::F1, m.n1), (Gen::F2, m.n2)] {
            let d = self.coproduct_generator(g);
            for _ in 0..e {
                acc = self.tensor_mul(&acc, &d);
            }
        }
        let mut kk = Tensor::zero();
        let kl = self.index(&Monomial::new(0, 0, 0, 0, m.ell));
        kk.add_term(&self.field, kl, kl, &self.field.one());
        self.tensor_mul(&acc, &kk)
    }

    pub fn coproduct(&self, a: &Element) -> Tensor {
        let mut out = Tensor::zero();
        for (k, c) in a.terms() {
            for ((l, r), v) in self.coproduct_basis(k).terms() {
                out.add_term(&self.field, l, r, &self.field.mul(c, v));
            }
        }
        out
    }

    /// `(Delta (x) id) T` for a tensor `T`.
    pub fn coproduct_left(&self, t: &Tensor) -> Tensor3 {
        let mut out = Tensor3::new();
        for ((a, b), c) in t.terms() {
            for ((x, y), v) in self.coproduct_basis(a).terms() {
                add3(&self.field, &mut out, (x as u32, y as u32, b as u32), &self.field.mul(c, v));
            }
        }
        out
    }

    /// `(id (x) Delta) T` for a tensor `T`.
    pub fn coproduct_right(&self, t: &Tensor) -> Tensor3 {
        let mut out = Tensor3::new();
        for ((a, b), c) in t.terms() {
            for ((x, y), v) in self.coproduct_basis(b).terms() {
                add3(&self.field, &mut out, (a as u32, x as u32, y as u32), &self.field.mul(c, v));
            }
        }
        out
    }

    /// `m (S (x) id) T`.
    pub fn antipode_left_contract(&self, t: &Tensor) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in t.terms() {
            let sa = self.antipode(&self.basis_element(a));
            let prod = self.mul(&sa, &self.basis_element(b));
            for (k, v) in prod.terms() {
                out.add_term(&self.field, k, &self.field.mul(c, v));
            }
        }
        out
    }

    /// `m (id (x) S) T`.
    pub fn antipode_right_contract(&self, t: &Tensor) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in t.terms() {
            let sb = self.antipode(&self.basis_element(b));
            let prod = self.mul(&self.basis_element(a), &sb);
            for (k, v) in prod.terms() {
                out.add_term(&self.field, k, &self.field.mul(c, v));
            }
        }
        out
    }

    /// `(eps (x) id) T` and `(id (x) eps) T`.
    pub fn counit_contract(&self, t: &Tensor, left: bool) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in t.terms() {
            let (killed, kept) = if left { (a, b) } else { (b, a) };
            if killed < self.nk {
                out.add_term(&self.field, kept, c);
            }
        }
        out
    }

    /// Closed-form `[e_i^m, f_i^n]` from the divided-power commutation
    /// formula, independent of the multiplication routine.
    pub fn commutator_closed_form(&self, i: usize, m: usize, n: usize) -> Result<Element> {
        let p = self.params.p(i);
        if m == 0 || n == 0 || m >= p || n >= p {
            return Err(Error::OutOfRange(format!("commutator exponents ({m}, {n}) for p_{i} = {p}")));
        }
        let f = &self.field;
        let kp = self.params.partner(i) as i64;
        let base = self.base(i);
        let qexp = self.q_i_exponent(i) * kp; // Q = zeta^{qexp}
        let fact = |k: usize| f.q_factorial(k as i64, &base).expect("nonvanishing");
        // f^n e^m = sum_t [m]![n]!/([m-t]![n-t]!) e^{m-t} [K^{-1}; 2t-m-n; t] f^{n-t},
        // with [X; c; t] = prod_{s=1}^t (X Q^{c-s+1} - X^{-1} Q^{-c+s-1}) / (Q^s - Q^{-s})
        // and X = K_i^{-1}; finally move the K-polynomial past f^{n-t}.
        let mut out = Element::zero();
        for t in 1..=m.min(n) {
            let c = 2 * t as i64 - m as i64 - n as i64;
            let mut poly: KPoly = vec![(0, f.one())];
            for s in 1..=t as i64 {
                let den = f.sub(&f.zeta_pow(qexp * s), &f.zeta_pow(-qexp * s));
                let inv = f.inv(&den)?;
                let mut factor: KPoly = Vec::new();
                // X = K^{-p_j}: X Q^{c-s+1} - X^{-1} Q^{-(c-s+1)}
                kpoly_add(f, &mut factor, self.kexp(-kp), &f.mul(&f.zeta_pow(qexp * (c - s + 1)), &inv));
                kpoly_add(
                    f,
                    &mut factor,
                    self.kexp(kp),
                    &f.neg(&f.mul(&f.zeta_pow(-qexp * (c - s + 1)), &inv)),
                );
                poly = self.kpoly_mul(&poly, &factor);
            }
            let coeff = f.div(&f.mul(&fact(m), &fact(n)), &f.mul(&fact(m - t), &fact(n - t)))?;
            // P(K) f_i^{n-t} = f_i^{n-t} P(zeta^{-w (n-t)} K)
            let w = self.rank[i - 1].w;
            let poly = self.kpoly_twist(&poly, -w * (n - t) as i64);
            let (em, fm) = (m - t, n - t);
            for (u, pc) in poly {
                let mono = if i == 1 {
                    Monomial::new(em, 0, fm, 0, u)
                } else {
                    Monomial::new(0, em, 0, fm, u)
                };
                // [e^m, f^n] = e^m f^n - f^n e^m; the t = 0 term cancels
                out.add_term(f, self.index(&mono), &f.neg(&f.mul(&pc, &coeff)));
            }
        }
        Ok(out)
    }
}

fn add3(field: &CycloField, t: &mut Tensor3, key: (u32, u32, u32), c: &Cyclo) {
    if c.is_zero() {
        return;
    }
    let s = match t.get(&key) {
        Some(v) => field.add(v, c),
        None => c.clone(),
    };
    if s.is_zero() {
        t.remove(&key);
    } else {
        t.insert(key, s);
    }
}

/// Tensor `a (x) b` of two elements.
pub fn tensor_of(field: &CycloField, a: &Element, b: &Element) -> Tensor {
    let mut t = Tensor::zero();
    for (i, ca) in a.terms() {
        for (j, cb) in b.terms() {
            t.add_term(field, i, j, &field.mul(ca, cb));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Algebra {
        Algebra::new(Params::new(2, 3).unwrap())
    }

    #[test]
    fn indexing_round_trip() {
        let a = alg();
        assert_eq!(a.dim(), 432);
        for i in 0..a.dim() {
            assert_eq!(a.index(&a.monomial(i)), i);
        }
    }

    #[test]
    fn k_inverse_and_cartan_relation() {
        let a = alg();
        let k = a.generator(Gen::K);
        let kinv = a.generator(Gen::Kinv);
        assert_eq!(a.mul(&k, &kinv), a.one());
        let e1 = a.generator(Gen::E1);
        let f1 = a.generator(Gen::F1);
        let lhs = a.commutator(&e1, &f1);
        let gap = a.base_gap(1);
        let rhs = a.scale(&a.sub(&a.k_power(3), &a.k_power(-3)), &a.field().inv(&gap).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_basis_round_trip() {
        let a = alg();
        let x = a.add(&a.word(1, 2, 0, 1, 5), &a.scale_int(&a.word(0, 1, 1, 2, 7), 3));
        assert_eq!(a.from_weight(&a.to_weight(&x)), x);
    }
}
