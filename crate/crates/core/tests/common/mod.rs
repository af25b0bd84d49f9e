#![allow(dead_code)]

use rand::Rng;
use tridkit::{DenseMatrix, Rational, Scalar, TridiagonalMatrix};

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

pub fn frac(p: i64, r: i64) -> Rational {
    Rational::new(p.into(), r.into())
}

pub fn mat(d: &[i64], a: &[i64], b: &[i64]) -> TridiagonalMatrix<Rational> {
    TridiagonalMatrix::from_i64(d, a, b).unwrap()
}

pub fn rows(entries: &[&[Rational]]) -> DenseMatrix<Rational> {
    DenseMatrix::from_rows(entries.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Singular although every proper leading minor is nonzero.
pub fn singular4() -> TridiagonalMatrix<Rational> {
    mat(&[2, 2, 2, -3], &[-1, 1, 3], &[-2, 1, -1])
}

pub const SINGULAR4_TEXT: &str = "4\n2 2 2 -3\n-1 1 3\n-2 1 -1\n";

/// Symmetric, determinant 576, inverse with denominator 576.
pub fn graded4() -> TridiagonalMatrix<Rational> {
    mat(&[25, 13, 5, 1], &[-9, -4, -1], &[-9, -4, -1])
}

pub const GRADED4_TEXT: &str = "4\n25 13 5 1\n-9 -4 -1\n-9 -4 -1\n";

pub fn graded4_inverse() -> DenseMatrix<Rational> {
    let r = [
        [36, 36, 36, 36],
        [36, 100, 100, 100],
        [36, 100, 244, 244],
        [36, 100, 244, 820],
    ];
    DenseMatrix::from_fn(4, |i, j| frac(r[i][j], 576))
}

/// The trailing minor on rows 3..5 (0-based) vanishes.
pub fn zero_minor5() -> TridiagonalMatrix<Rational> {
    mat(&[1, 3, 1, 1, 1], &[-1; 4], &[-1; 4])
}

pub fn zero_minor5_inverse() -> DenseMatrix<Rational> {
    let h = |x| frac(x, 2);
    rows(&[
        &[h(3), h(1), q(0), h(-1), h(-1)],
        &[h(1), h(1), q(0), h(-1), h(-1)],
        &[q(0), q(0), q(0), q(-1), q(-1)],
        &[h(-1), h(-1), q(-1), h(-1), h(-1)],
        &[h(-1), h(-1), q(-1), h(-1), h(1)],
    ])
}

/// Nonsingular with the second forward pivot zero.
pub fn zero_leading_pivot() -> TridiagonalMatrix<Rational> {
    mat(&[1, 1, 3], &[1, 2], &[1, 2])
}

/// Nonsingular with the second backward pivot zero.
pub fn zero_trailing_pivot() -> TridiagonalMatrix<Rational> {
    mat(&[3, 1, 1], &[2, 1], &[-1, 1])
}

/// Inverse is `[max(i, j)]` with 1-based indices.
pub fn max_inverse_matrix(n: usize) -> TridiagonalMatrix<Rational> {
    let mut d = vec![q(-2); n];
    d[0] = q(-1);
    d[n - 1] = frac(-(n as i64 - 1), n as i64);
    TridiagonalMatrix::new(d, vec![q(1); n - 1], vec![q(1); n - 1]).unwrap()
}

/// The second-difference matrix `tridiag(-1, 2, -1)`.
pub fn second_difference<T: Scalar>(n: usize) -> TridiagonalMatrix<T> {
    TridiagonalMatrix::new(
        vec![T::from_i64(2); n],
        vec![T::from_i64(-1); n - 1],
        vec![T::from_i64(-1); n - 1],
    )
    .unwrap()
}

pub fn second_difference_inverse(n: usize) -> DenseMatrix<Rational> {
    DenseMatrix::from_fn(n, |i, j| {
        let (lo, hi) = (i.min(j) as i64 + 1, i.max(j) as i64 + 1);
        frac(lo * (n as i64 + 1 - hi), n as i64 + 1)
    })
}

pub fn random_ints(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}
