//! Exact sparse linear algebra over the cyclotomic field: sparse matrices and
//! an incremental row-echelon basis with rank, coordinates and kernels.

use std::collections::{BTreeMap, HashMap};

use crate::cyclotomic::{Cyclo, CycloField};
use crate::error::{Error, Result};

/// Sparse vector keyed by coordinate. Zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Cyclo>;

/// Adds `c * x` into `acc`, dropping entries that cancel.
pub fn axpy(field: &CycloField, acc: &mut SparseVec, c: &Cyclo, x: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, v) in x {
        add_entry(field, acc, k, &field.mul(c, v));
    }
}

/// Adds `c` to the entry at `k`, dropping it when the sum vanishes.
pub fn add_entry(field: &CycloField, acc: &mut SparseVec, k: usize, c: &Cyclo) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(v) => {
            let s = field.add(v, c);
            if s.is_zero() {
                acc.remove(&k);
            } else {
                *v = s;
            }
        }
        None => {
            acc.insert(k, c.clone());
        }
    }
}

/// Sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: &CycloField, n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: impl IntoIterator<Item = Cyclo>) -> Self {
        let entries: Vec<Cyclo> = entries.into_iter().collect();
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, c) in entries.into_iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Cyclo> {
        self.data[i].get(&j)
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Cyclo) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        if c.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, c);
        }
    }

    pub fn add_to(&mut self, field: &CycloField, i: usize, j: usize, c: &Cyclo) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        add_entry(field, &mut self.data[i], j, c);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Cyclo)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(&j, c)| (i, j, c)))
    }

    pub fn mul(&self, field: &CycloField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, a) in row {
                axpy(field, &mut acc, a, &other.data[k]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, field: &CycloField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        let one = field.one();
        for (i, row) in other.data.iter().enumerate() {
            axpy(field, &mut out.data[i], &one, row);
        }
        out
    }

    pub fn sub(&self, field: &CycloField, other: &Matrix) -> Matrix {
        self.add(field, &other.scale(field, &field.from_int(-1)))
    }

    pub fn scale(&self, field: &CycloField, c: &Cyclo) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (i, row) in self.data.iter().enumerate() {
            out.data[i] = row.iter().map(|(&j, v)| (j, field.mul(c, v))).collect();
        }
        out
    }

    pub fn trace(&self, field: &CycloField) -> Cyclo {
        let mut acc = field.zero();
        for i in 0..self.rows.min(self.cols) {
            if let Some(c) = self.get(i, i) {
                acc = field.add(&acc, c);
            }
        }
        acc
    }

    /// The sub-matrix on the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (bi, i) in rows.enumerate() {
            for (&j, c) in self.data[i].range(cols.clone()) {
                out.data[bi].insert(j - cols.start, c.clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (i, j, c) in self.entries() {
            out.data[j].insert(i, c.clone());
        }
        out
    }

    /// The entries flattened row-major into a sparse vector.
    pub fn to_sparse_vec(&self) -> SparseVec {
        self.entries().map(|(i, j, c)| (i * self.cols + j, c.clone())).collect()
    }

    pub fn rank(&self, field: &CycloField) -> usize {
        let mut ech = Echelon::new(field);
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.rank()
    }
}

/// Outcome of inserting a vector into an [`Echelon`] basis.
#[derive(Clone, Debug)]
pub enum Insertion {
    /// The vector was independent of the previous ones.
    Independent,
    /// The vector was dependent; the sparse vector lists a nonzero relation
    /// `sum_i c_i v_i = 0` among the inserted vectors, by insertion index.
    Dependent(SparseVec),
}

#[derive(Clone, Debug)]
struct Row {
    /// Entries with column index at least the pivot; the pivot entry is one.
    vec: SparseVec,
    /// Expression of `vec` in terms of the inserted vectors.
    combo: SparseVec,
}

/// Incremental row-echelon form over the cyclotomic field. Every stored row
/// remembers how it was formed from the inserted vectors, which yields
/// coordinates of vectors in the span and relations among the inputs.
#[derive(Clone, Debug)]
pub struct Echelon<'f> {
    field: &'f CycloField,
    rows: Vec<Row>,
    pivot_row: HashMap<usize, usize>,
    inserted: usize,
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f CycloField) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows, returning the residual and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let f = self.field;
        let mut used = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.pivot_row.contains_key(k))
                .map(|(&k, c)| (k, c.clone()));
            let Some((k, c)) = next else {
                break;
            };
            let row = &self.rows[self.pivot_row[&k]];
            axpy(f, &mut v, &f.neg(&c), &row.vec);
            axpy(f, &mut used, &c, &row.combo);
            cursor = k + 1;
        }
        (v, used)
    }

    /// Adds a vector to the basis.
    pub fn insert(&mut self, v: SparseVec) -> Insertion {
        let f = self.field;
        let idx = self.inserted;
        self.inserted += 1;
        let (residual, used) = self.reduce(v);
        let mut combo = SparseVec::new();
        combo.insert(idx, f.one());
        axpy(f, &mut combo, &f.from_int(-1), &used);
        let Some((&pivot, lead)) = residual.iter().next() else {
            return Insertion::Dependent(combo);
        };
        let inv = f.inv(lead).expect("nonzero pivot is invertible");
        let vec: SparseVec = residual.iter().map(|(&k, c)| (k, f.mul(&inv, c))).collect();
        let combo = combo.iter().map(|(&k, c)| (k, f.mul(&inv, c))).collect();
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(Row { vec, combo });
        Insertion::Independent
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    /// Coefficients `c_i` with `v = sum_i c_i v_i` over the inserted vectors,
    /// or an error when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Result<SparseVec> {
        let (residual, used) = self.reduce(v.clone());
        if !residual.is_empty() {
            return Err(Error::NotInSpan(format!("{} residual coordinates", residual.len())));
        }
        Ok(used)
    }
}

/// A basis of the kernel of the linear map whose columns are `cols`: each
/// kernel vector is keyed by column index.
pub fn kernel(field: &CycloField, cols: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field);
    let mut out = Vec::new();
    for c in cols {
        if let Insertion::Dependent(rel) = ech.insert(c) {
            out.push(rel);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &CycloField, items: &[(usize, i64)]) -> SparseVec {
        items
            .iter()
            .map(|&(k, c)| (k, f.from_int(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    #[test]
    fn rank_and_coordinates() {
        let f = CycloField::new(24);
        let mut e = Echelon::new(&f);
        assert!(matches!(e.insert(v(&f, &[(0, 1), (2, 3)])), Insertion::Independent));
        assert!(matches!(e.insert(v(&f, &[(1, 2), (2, 1)])), Insertion::Independent));
        let target = v(&f, &[(0, 2), (1, -2), (2, 5)]);
        let c = e.coordinates(&target).unwrap();
        assert_eq!(c, v(&f, &[(0, 2), (1, -1)]));
        match e.insert(target) {
            Insertion::Dependent(rel) => assert_eq!(rel, v(&f, &[(0, -2), (1, 1), (2, 1)])),
            Insertion::Independent => panic!("expected a dependency"),
        }
        assert_eq!(e.rank(), 2);
        assert!(e.coordinates(&v(&f, &[(3, 1)])).is_err());
    }

    #[test]
    fn matrix_product_and_trace() {
        let f = CycloField::new(24);
        let mut a = Matrix::zeros(2, 2);
        a.set(0, 1, f.one());
        a.set(1, 0, f.zeta_pow(3));
        let sq = a.mul(&f, &a);
        assert_eq!(sq, Matrix::identity(&f, 2).scale(&f, &f.zeta_pow(3)));
        assert_eq!(sq.trace(&f), f.scale_int(&f.zeta_pow(3), 2));
        assert_eq!(a.rank(&f), 2);
        assert_eq!(a.block(0..1, 1..2).get(0, 0), Some(&f.one()));
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let f = CycloField::new(12);
        let cols = vec![v(&f, &[(0, 1)]), v(&f, &[(0, 2)]), v(&f, &[(1, 1)])];
        let k = kernel(&f, cols);
        assert_eq!(k, vec![v(&f, &[(0, -2), (1, 1)])]);
    }
}
