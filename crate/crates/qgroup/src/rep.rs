//! Finite-dimensional representations given by generator matrices on a basis
//! of `K`-weight vectors.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{Algebra, EfMonomial, Element, Gen};
use crate::cyclotomic::{Cyclo, CycloField};
use crate::linalg::Matrix;

/// A module over the algebra, described by the matrices of `e1, e2, f1, f2`
/// and the `K`-eigenvalue `zeta^{k}` of every basis vector.
#[derive(Debug)]
pub struct ModuleRep {
    dim: usize,
    /// Matrices of `e1, e2, f1, f2` in this order.
    gens: [Matrix; 4],
    k_exp: Vec<i64>,
    ef_images: OnceLock<Vec<Matrix>>,
}

impl Clone for ModuleRep {
    fn clone(&self) -> Self {
        ModuleRep::new(self.gens.clone(), self.k_exp.clone())
    }
}

fn gen_slot(g: Gen) -> Option<usize> {
    match g {
        Gen::E1 => Some(0),
        Gen::E2 => Some(1),
        Gen::F1 => Some(2),
        Gen::F2 => Some(3),
        _ => None,
    }
}

impl ModuleRep {
    /// Builds a representation from the matrices of `e1, e2, f1, f2` and the
    /// `K`-eigenvalue exponents (in units of `zeta`) of the basis vectors.
    pub fn new(gens: [Matrix; 4], k_exp: Vec<i64>) -> Self {
        let dim = k_exp.len();
        for g in &gens {
            assert_eq!((g.rows(), g.cols()), (dim, dim), "generator matrix has the wrong size");
        }
        ModuleRep {
            dim,
            gens,
            k_exp,
            ef_images: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `K` acts on basis vector `j` by `zeta^{k_exponents()[j]}`.
    pub fn k_exponents(&self) -> &[i64] {
        &self.k_exp
    }

    pub fn generator(&self, field: &CycloField, g: Gen) -> Matrix {
        if let Some(s) = gen_slot(g) {
            return self.gens[s].clone();
        }
        match g {
            Gen::K => Matrix::diagonal(self.k_exp.iter().map(|&k| field.zeta_pow(k))),
            Gen::Kinv => Matrix::diagonal(self.k_exp.iter().map(|&k| field.zeta_pow(-k))),
            _ => Matrix::identity(field, self.dim),
        }
    }

    fn ef_images(&self, alg: &Algebra) -> &[Matrix] {
        self.ef_images.get_or_init(|| {
            let f = alg.field();
            let id = Matrix::identity(f, self.dim);
            let pow = |m: &Matrix, e: usize| {
                let mut acc = id.clone();
                for _ in 0..e {
                    acc = acc.mul(f, m);
                }
                acc
            };
            let (p1, p2) = (alg.params().p1, alg.params().p2);
            let e1: Vec<Matrix> = (0..p1).map(|e| pow(&self.gens[0], e)).collect();
            let e2: Vec<Matrix> = (0..p2).map(|e| pow(&self.gens[1], e)).collect();
            let f1: Vec<Matrix> = (0..p1).map(|e| pow(&self.gens[2], e)).collect();
            let f2: Vec<Matrix> = (0..p2).map(|e| pow(&self.gens[3], e)).collect();
            (0..alg.ef_count())
                .map(|idx| {
                    let EfMonomial { m1, m2, n1, n2 } = alg.ef_monomial(idx);
                    e1[m1].mul(f, &e2[m2]).mul(f, &f1[n1]).mul(f, &f2[n2])
                })
                .collect()
        })
    }

    /// The matrix by which `x` acts.
    pub fn represent(&self, alg: &Algebra, x: &Element) -> Matrix {
        let f = alg.field();
        let nk = alg.k_order();
        let mut grouped: BTreeMap<usize, Vec<(usize, &Cyclo)>> = BTreeMap::new();
        for (idx, c) in x.terms() {
            grouped.entry(idx / nk).or_default().push((idx % nk, c));
        }
        let images = self.ef_images(alg);
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (ef, list) in grouped {
            let image = &images[ef];
            if image.is_zero() {
                continue;
            }
            // K^l acts on column j by zeta^{l k_j}; collapse the K-polynomial
            // to one scalar per distinct eigenvalue
            let mut scale: BTreeMap<i64, Cyclo> = BTreeMap::new();
            for (i, j, c) in image.entries() {
                let kj = self.k_exp[j].rem_euclid(f.order() as i64);
                let s = scale.entry(kj).or_insert_with(|| {
                    let mut acc = f.zero();
                    for (l, cl) in &list {
                        acc = f.add(&acc, &f.mul_zeta(cl, *l as i64 * kj));
                    }
                    acc
                });
                if !s.is_zero() {
                    out.add_to(f, i, j, &f.mul(c, s));
                }
            }
        }
        out
    }

    /// Checks every defining relation of the algebra on the generator
    /// matrices; returns (relation name, holds) pairs.
    pub fn relation_checks(&self, alg: &Algebra) -> Vec<(String, bool)> {
        let f = alg.field();
        let n = f.order() as i64;
        let nk = alg.k_order() as i64;
        let mut out = Vec::new();
        out.push((
            "K has order 2 p1 p2".to_string(),
            self.k_exp.iter().all(|k| (k * nk).rem_euclid(n) == 0),
        ));
        let weights = [
            alg.ef_weight(&EfMonomial {
                m1: 1,
                m2: 0,
                n1: 0,
                n2: 0,
            }),
            alg.ef_weight(&EfMonomial {
                m1: 0,
                m2: 1,
                n1: 0,
                n2: 0,
            }),
        ];
        let names = ["e1", "e2", "f1", "f2"];
        for (s, name) in names.iter().enumerate() {
            let w = if s < 2 { weights[s] } else { -weights[s - 2] };
            let ok = self.gens[s]
                .entries()
                .all(|(a, b, _)| (self.k_exp[a] - self.k_exp[b] - w).rem_euclid(n) == 0);
            out.push((format!("K {name} K^-1 = q^({w}) {name}"), ok));
            let p = alg.params().p(s % 2 + 1);
            let mut pw = Matrix::identity(f, self.dim);
            for _ in 0..p {
                pw = pw.mul(f, &self.gens[s]);
            }
            out.push((format!("{name}^{p} = 0"), pw.is_zero()));
        }
        for i in 0..2 {
            let (e, fi) = (&self.gens[i], &self.gens[i + 2]);
            let lhs = e.mul(f, fi).sub(f, &fi.mul(f, e));
            let (ge, gf) = if i == 0 { (Gen::E1, Gen::F1) } else { (Gen::E2, Gen::F2) };
            let h = alg.commutator(&alg.generator(ge), &alg.generator(gf));
            let rhs = self.represent(alg, &h);
            out.push((format!("[e{0}, f{0}] = cartan element", i + 1), lhs == rhs));
        }
        for (a, b) in [(0, 1), (2, 3), (0, 3), (1, 2)] {
            let comm = self.gens[a].mul(f, &self.gens[b]).sub(f, &self.gens[b].mul(f, &self.gens[a]));
            out.push((format!("[{}, {}] = 0", names[a], names[b]), comm.is_zero()));
        }
        out
    }

    /// Whether all defining relations hold.
    pub fn is_module(&self, alg: &Algebra) -> bool {
        self.relation_checks(alg).iter().all(|(_, ok)| *ok)
    }
}
