//! Column-major sparse square matrices over a [`Field`].

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::numeric::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    dim: usize,
    cols: Vec<BTreeMap<usize, T>>,
}

impl<T: Field> SparseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix::from_diagonal((0..dim).map(|_| T::one()).collect())
    }

    pub fn from_diagonal(diag: Vec<T>) -> Self {
        let mut m = SparseMatrix::zeros(diag.len());
        for (i, x) in diag.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.cols[col].get(&row).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, x: T) {
        if x.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, x);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, x: T) {
        let slot = self.cols[col].entry(row).or_insert_with(T::zero);
        *slot = slot.clone() + x;
        if slot.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, T> {
        &self.cols[col]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return SparseMatrix::zeros(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, x)| (*r, x.clone() * c.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.axpy(&T::one(), o)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.axpy(&-T::one(), o)
    }

    /// `self + c * o`
    pub fn axpy(&self, c: &T, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = self.clone();
        for (j, col) in o.cols.iter().enumerate() {
            for (i, x) in col {
                out.add_to(*i, j, c.clone() * x.clone());
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = SparseMatrix::zeros(self.dim);
        for (j, col) in o.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    let slot = acc.entry(*i).or_insert_with(T::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
            acc.retain(|_, x| !x.is_zero());
            out.cols[j] = acc;
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, col)| col.keys().all(|&i| i == j))
    }

    /// Largest entry magnitude over the selected columns.
    pub fn max_abs_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(j, _)| keep(*j))
            .flat_map(|(_, col)| col.values())
            .map(Field::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_where(|_| true)
    }

    /// True when every entry of the selected columns is exactly zero.
    pub fn is_zero_where(&self, keep: impl Fn(usize) -> bool) -> bool {
        self.cols
            .iter()
            .enumerate()
            .filter(|(j, _)| keep(*j))
            .all(|(_, col)| col.values().all(Zero::is_zero))
    }

    /// Row-major dense dump as `[re, im]` pairs.
    pub fn to_dense_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        let mut rows = vec![vec![[0.0, 0.0]; self.dim]; self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                let c = x.to_complex();
                rows[*i][j] = [c.re, c.im];
            }
        }
        rows
    }
}
