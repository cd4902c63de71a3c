//! Compressed sparse column matrices over complex scalars: a deterministic
//! triplet accumulator, a quotient-graph minimum-degree ordering, and a
//! left-looking sparse LU with partial pivoting.

pub mod lu;
pub mod ordering;

pub use lu::SparseLu;
pub use ordering::min_degree_cliques;

use crate::dense::DMat;
use crate::scalar::{Cplx, Real};
use std::collections::BTreeMap;

/// Column-compressed complex sparse matrix; row indices are sorted and
/// unique within each column.
#[derive(Clone, Debug)]
pub struct CscMatrix<T> {
    nrows: usize,
    ncols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<Cplx<T>>,
}

impl<T: Real> CscMatrix<T> {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Entries of column `j` as parallel (rows, values) slices.
    pub fn col(&self, j: usize) -> (&[usize], &[Cplx<T>]) {
        let r = self.col_ptr[j]..self.col_ptr[j + 1];
        (&self.row_idx[r.clone()], &self.values[r])
    }

    /// Entry (r, c), zero if not stored.
    pub fn get(&self, r: usize, c: usize) -> Cplx<T> {
        let (rows, vals) = self.col(c);
        match rows.binary_search(&r) {
            Ok(p) => vals[p],
            Err(_) => Cplx::new(T::zero(), T::zero()),
        }
    }

    /// y = A x. Accumulation runs column by column in index order, so the
    /// result does not depend on thread count.
    pub fn matvec(&self, x: &[Cplx<T>], y: &mut [Cplx<T>]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        for v in y.iter_mut() {
            *v = Cplx::new(T::zero(), T::zero());
        }
        for j in 0..self.ncols {
            let xj = x[j];
            if xj.norm_sqr() == T::zero() {
                continue;
            }
            let (rows, vals) = self.col(j);
            for (r, v) in rows.iter().zip(vals) {
                y[*r] += *v * xj;
            }
        }
    }

    /// Dense copy, for small tests and oracles.
    pub fn to_dense(&self) -> DMat<T> {
        let mut d = DMat::zeros(self.nrows, self.ncols);
        for j in 0..self.ncols {
            let (rows, vals) = self.col(j);
            for (r, v) in rows.iter().zip(vals) {
                d.set(*r, j, *v);
            }
        }
        d
    }

    /// Largest entry magnitude, zero for an empty matrix.
    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

/// Deterministic triplet accumulator: duplicate entries sum in insertion
/// order, and the built matrix is independent of how work was parallelized
/// as long as `add` calls arrive in a fixed order.
#[derive(Clone, Debug)]
pub struct Accumulator<T> {
    nrows: usize,
    ncols: usize,
    map: BTreeMap<(usize, usize), Cplx<T>>,
}

impl<T: Real> Accumulator<T> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            map: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, row: usize, col: usize, v: Cplx<T>) {
        debug_assert!(row < self.nrows && col < self.ncols);
        *self
            .map
            .entry((col, row))
            .or_insert_with(|| Cplx::new(T::zero(), T::zero())) += v;
    }

    pub fn build(self) -> CscMatrix<T> {
        let mut col_ptr = vec![0usize; self.ncols + 1];
        let mut row_idx = Vec::with_capacity(self.map.len());
        let mut values = Vec::with_capacity(self.map.len());
        for (&(c, r), &v) in &self.map {
            col_ptr[c + 1] += 1;
            row_idx.push(r);
            values.push(v);
        }
        for c in 0..self.ncols {
            col_ptr[c + 1] += col_ptr[c];
        }
        CscMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            col_ptr,
            row_idx,
            values,
        }
    }
}
