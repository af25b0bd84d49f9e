//! The tridiagonal matrix type.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A general `n x n` tridiagonal matrix stored as its three bands.
///
/// Indices are zero-based: `diagonal()[i]` is entry `(i, i)`, `upper()[i]` is
/// `(i, i + 1)` and `lower()[i]` is `(i + 1, i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalMatrix<T> {
    d: Vec<T>,
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Scalar> TridiagonalMatrix<T> {
    /// Builds a matrix from its diagonal, superdiagonal and subdiagonal.
    pub fn new(diagonal: Vec<T>, upper: Vec<T>, lower: Vec<T>) -> Result<Self> {
        let n = diagonal.len();
        if n == 0 || upper.len() != n - 1 || lower.len() != n - 1 {
            return Err(Error::InvalidDimensions {
                n,
                d: diagonal.len(),
                a: upper.len(),
                b: lower.len(),
            });
        }
        Ok(Self {
            d: diagonal,
            a: upper,
            b: lower,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(diagonal: &[i64], upper: &[i64], lower: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| T::from_i64(x)).collect();
        Self::new(conv(diagonal), conv(upper), conv(lower))
    }

    pub fn identity(n: usize) -> Self {
        let m = n.saturating_sub(1);
        Self::new(vec![T::one(); n], vec![T::zero(); m], vec![T::zero(); m])
            .expect("identity of order >= 1")
    }

    pub fn order(&self) -> usize {
        self.d.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.d
    }

    pub fn upper(&self) -> &[T] {
        &self.a
    }

    pub fn lower(&self) -> &[T] {
        &self.b
    }

    /// Entry `(i, j)`, zero outside the three bands.
    pub fn get(&self, i: usize, j: usize) -> T {
        let n = self.order();
        assert!(
            i < n && j < n,
            "index ({i}, {j}) out of range for order {n}"
        );
        if i == j {
            self.d[i].clone()
        } else if j == i + 1 {
            self.a[i].clone()
        } else if i == j + 1 {
            self.b[j].clone()
        } else {
            T::zero()
        }
    }

    /// `a_i * b_i` for `i` in `0..n-1`, the coupling term in both recurrences.
    pub(crate) fn coupling(&self, i: usize) -> T {
        self.a[i].clone() * self.b[i].clone()
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    /// Whether `J A J = A` for the reversal matrix `J`, checked on the bands.
    pub fn is_centrosymmetric(&self) -> bool {
        let n = self.order();
        let d_palindrome = (0..n / 2).all(|i| self.d[i] == self.d[n - 1 - i]);
        // (J A J)_{i,i+1} = A_{n-1-i, n-2-i}, a subdiagonal entry
        d_palindrome && (0..n - 1).all(|i| self.a[i] == self.b[n - 2 - i])
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> TridiagonalMatrix<U> {
        TridiagonalMatrix {
            d: self.d.iter().map(&mut f).collect(),
            a: self.a.iter().map(&mut f).collect(),
            b: self.b.iter().map(&mut f).collect(),
        }
    }

    /// `self * m` in `O(n^2)`.
    pub fn mul_dense(&self, m: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        let n = self.order();
        if m.order() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: m.order(),
            });
        }
        Ok(DenseMatrix::from_fn(n, |i, j| {
            let mut acc = self.d[i].clone() * m[(i, j)].clone();
            if i > 0 {
                acc = acc + self.b[i - 1].clone() * m[(i - 1, j)].clone();
            }
            if i + 1 < n {
                acc = acc + self.a[i].clone() * m[(i + 1, j)].clone();
            }
            acc
        }))
    }

    /// `m * self` in `O(n^2)`.
    pub fn dense_mul(&self, m: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        let n = self.order();
        if m.order() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: m.order(),
            });
        }
        Ok(DenseMatrix::from_fn(n, |i, j| {
            let mut acc = m[(i, j)].clone() * self.d[j].clone();
            if j > 0 {
                acc = acc + m[(i, j - 1)].clone() * self.a[j - 1].clone();
            }
            if j + 1 < n {
                acc = acc + m[(i, j + 1)].clone() * self.b[j].clone();
            }
            acc
        }))
    }
}
