//! Dense complex matrices: storage, products, LU with partial pivoting.
//!
//! Used for per-element 12x12 systems, the near-field least-squares blocks of
//! the approximate-inverse preconditioner, the dense boundary-operator block,
//! and the direct reference solves in tests. Row-major storage; the LU
//! trailing update is parallelized over rows, which keeps results identical
//! for any worker count because each row is reduced sequentially.

use crate::scalar::{Cplx, Real};
use crate::SolveError;
use num_complex::Complex;
use rayon::prelude::*;

/// Row-major dense complex matrix.
#[derive(Clone, Debug)]
pub struct DMat<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Real> DMat<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![Complex::new(T::zero(), T::zero()); nrows * ncols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Cplx<T>>>) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        Self { nrows, ncols, data }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cplx<T> {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cplx<T>) {
        self.data[i * self.ncols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Cplx<T>) {
        self.data[i * self.ncols + j] += v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Cplx<T>] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn data(&self) -> &[Cplx<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Cplx<T>] {
        &mut self.data
    }

    /// `y = self * x`.
    pub fn matvec(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(x.len(), self.ncols);
        let mut y = vec![Complex::new(T::zero(), T::zero()); self.nrows];
        self.matvec_into(x, &mut y);
        y
    }

    /// `y = self * x`, reusing storage. Parallel over rows; each row is a
    /// sequential dot product, so the result does not depend on thread count.
    pub fn matvec_into(&self, x: &[Cplx<T>], y: &mut [Cplx<T>]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        let ncols = self.ncols;
        y.par_iter_mut().enumerate().for_each(|(i, yi)| {
            let row = &self.data[i * ncols..(i + 1) * ncols];
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, b) in row.iter().zip(x.iter()) {
                acc += *a * *b;
            }
            *yi = acc;
        });
    }

    /// `self * other`, naive triple loop (small matrices only).
    pub fn matmul(&self, other: &DMat<T>) -> DMat<T> {
        assert_eq!(self.ncols, other.nrows);
        let mut out = DMat::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == Complex::new(T::zero(), T::zero()) {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> T {
        self.data
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Max |entry|.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// LU factorization with partial pivoting, consuming self.
    pub fn lu(self) -> Result<DenseLu<T>, SolveError> {
        DenseLu::factor(self)
    }
}

/// LU factors of a square dense matrix, partial (row) pivoting.
#[derive(Clone, Debug)]
pub struct DenseLu<T> {
    lu: DMat<T>,
    /// Row permutation: `piv[k]` is the original row moved into position k.
    piv: Vec<usize>,
}

impl<T: Real> DenseLu<T> {
    pub fn factor(mut a: DMat<T>) -> Result<Self, SolveError> {
        assert_eq!(a.nrows, a.ncols, "LU of a non-square matrix");
        let n = a.nrows;
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            // Pivot: largest magnitude in column k at or below the diagonal.
            let mut p = k;
            let mut best = a.get(k, k).norm();
            for i in (k + 1)..n {
                let m = a.get(i, k).norm();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if !(best > T::zero()) || !best.is_finite() {
                return Err(SolveError::ZeroPivot { col: k });
            }
            if p != k {
                piv.swap(k, p);
                for j in 0..n {
                    let t = a.get(k, j);
                    a.set(k, j, a.get(p, j));
                    a.set(p, j, t);
                }
            }
            let d = a.get(k, k);
            let inv_d = Complex::new(T::one(), T::zero()) / d;
            for i in (k + 1)..n {
                let lik = a.get(i, k) * inv_d;
                a.set(i, k, lik);
            }
            // Trailing update; parallel over rows for the large reference
            // solves, sequential arithmetic within each row.
            let ncols = a.ncols;
            let (upper, lower) = a.data.split_at_mut((k + 1) * ncols);
            let pivot_row = &upper[k * ncols..(k + 1) * ncols];
            let update = |(ri, row): (usize, &mut [Cplx<T>])| {
                let _ = ri;
                let lik = row[k];
                if lik != Complex::new(T::zero(), T::zero()) {
                    for j in (k + 1)..ncols {
                        row[j] = row[j] - lik * pivot_row[j];
                    }
                }
            };
            if n > 256 {
                lower.par_chunks_mut(ncols).enumerate().for_each(update);
            } else {
                lower.chunks_mut(ncols).enumerate().for_each(update);
            }
        }
        Ok(Self { lu: a, piv })
    }

    pub fn n(&self) -> usize {
        self.lu.nrows
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let mut x: Vec<Cplx<T>> = self.piv.iter().map(|&p| b[p]).collect();
        // Forward: L y = P b (unit lower).
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu.get(i, j) * x[j];
            }
            x[i] = acc;
        }
        // Back: U x = y.
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu.get(i, j) * x[j];
            }
            x[i] = acc / self.lu.get(i, i);
        }
        x
    }

    /// Solve for several right-hand sides given as columns of a matrix.
    pub fn solve_mat(&self, b: &DMat<T>) -> DMat<T> {
        let n = self.n();
        assert_eq!(b.nrows, n);
        let mut out = DMat::zeros(n, b.ncols);
        let mut col = vec![Complex::new(T::zero(), T::zero()); n];
        for j in 0..b.ncols {
            for i in 0..n {
                col[i] = b.get(i, j);
            }
            let x = self.solve(&col);
            for i in 0..n {
                out.set(i, j, x[i]);
            }
        }
        out
    }

    /// min |U_ii| / max |U_ii|, a cheap conditioning indicator.
    pub fn diag_ratio(&self) -> T {
        let n = self.n();
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for i in 0..n {
            let d = self.lu.get(i, i).norm();
            if d < lo {
                lo = d;
            }
            if d > hi {
                hi = d;
            }
        }
        if hi > T::zero() {
            lo / hi
        } else {
            T::zero()
        }
    }
}
