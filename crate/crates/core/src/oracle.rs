//! Dense brute-force reference routines.
//!
//! Cubic-cost elimination on the full matrix, written independently of the
//! minor recurrences so the two can be checked against each other.

use std::ops::Range;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::TridiagonalMatrix;
use crate::scalar::Scalar;

/// Expands the bands into a full matrix.
pub fn to_dense<T: Scalar>(a: &TridiagonalMatrix<T>) -> DenseMatrix<T> {
    DenseMatrix::from_fn(a.order(), |i, j| a.get(i, j))
}

/// Row index in `from..n` of the largest `|m[(r, col)]|`.
fn pivot_row<T: Scalar>(m: &DenseMatrix<T>, col: usize, from: usize) -> usize {
    let mut best = from;
    let mut best_abs = m[(from, col)].abs();
    for r in from + 1..m.order() {
        let v = m[(r, col)].abs();
        if v > best_abs {
            best = r;
            best_abs = v;
        }
    }
    best
}

/// Determinant by elimination.
///
/// Exact scalars use fraction-free Bareiss elimination; floating scalars use
/// Gaussian elimination with partial pivoting.
pub fn dense_determinant<T: Scalar>(m: &DenseMatrix<T>) -> T {
    if T::EXACT {
        bareiss(m.clone())
    } else {
        partial_pivot_det(m.clone())
    }
}

fn bareiss<T: Scalar>(mut m: DenseMatrix<T>) -> T {
    let n = m.order();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[(k, k)].clone() * m[(i, j)].clone()
                    - m[(i, k)].clone() * m[(k, j)].clone())
                    / prev.clone();
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * prev
}

fn partial_pivot_det<T: Scalar>(mut m: DenseMatrix<T>) -> T {
    let n = m.order();
    let mut det = T::one();
    for k in 0..n {
        let p = pivot_row(&m, k, k);
        if m[(p, k)].is_zero() {
            return T::zero();
        }
        if p != k {
            m.swap_rows(k, p);
            det = -det;
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            let factor = m[(i, k)].clone() / pivot.clone();
            for j in k + 1..n {
                let v = m[(i, j)].clone() - factor.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
        det = det * pivot;
    }
    det
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn dense_inverse<T: Scalar>(m: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = m.order();
    let mut work = m.clone();
    let mut inv = DenseMatrix::<T>::identity(n);
    for k in 0..n {
        let p = pivot_row(&work, k, k);
        if work[(p, k)].is_zero() {
            return Err(Error::Singular);
        }
        work.swap_rows(k, p);
        inv.swap_rows(k, p);

        let pivot = work[(k, k)].clone();
        for j in 0..n {
            let w = work[(k, j)].clone() / pivot.clone();
            work[(k, j)] = w;
            let v = inv[(k, j)].clone() / pivot.clone();
            inv[(k, j)] = v;
        }
        for i in (0..n).filter(|&i| i != k) {
            let factor = work[(i, k)].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let w = work[(i, j)].clone() - factor.clone() * work[(k, j)].clone();
                work[(i, j)] = w;
                let v = inv[(i, j)].clone() - factor.clone() * inv[(k, j)].clone();
                inv[(i, j)] = v;
            }
        }
    }
    Ok(inv)
}

/// Determinant of the principal block on rows and columns `rows`.
pub fn submatrix_minor<T: Scalar>(m: &DenseMatrix<T>, rows: Range<usize>) -> Result<T> {
    let n = m.order();
    if rows.start >= rows.end || rows.end > n {
        return Err(Error::IndexOutOfRange {
            i: rows.start,
            j: rows.end,
            n,
        });
    }
    let lo = rows.start;
    let block = DenseMatrix::from_fn(rows.len(), |i, j| m[(lo + i, lo + j)].clone());
    Ok(dense_determinant(&block))
}
