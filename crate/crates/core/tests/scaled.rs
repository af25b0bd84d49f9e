mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tridkit::{determinant, invert, Rational, Scalar, Scaled, Tolerance, TridiagonalMatrix};

fn log2(x: &Scaled) -> f64 {
    x.exponent() as f64 + x.significand().abs().log2()
}

fn four_one(n: usize) -> TridiagonalMatrix<Scaled> {
    TridiagonalMatrix::new(
        vec![Scaled::from_i64(4); n],
        vec![Scaled::from_i64(1); n - 1],
        vec![Scaled::from_i64(1); n - 1],
    )
    .unwrap()
}

#[test]
fn determinant_beyond_double_range() {
    let n = 1000;
    let det = determinant(&four_one(n), Tolerance::default());
    let s3 = 3f64.sqrt();
    let want = ((n + 1) as f64 * (2.0 + s3).ln() - (2.0 * s3).ln()) / 2f64.ln();
    assert!(det.significand() > 0.0);
    assert!((log2(&det) - want).abs() < 1e-9, "{} vs {want}", log2(&det));
    assert!(determinant(&four_one(n).map(Scalar::to_f64), Tolerance::default()).is_infinite());
}

#[test]
fn inverse_survives_overflowing_minors() {
    let n = 600;
    let a = four_one(n);
    let inv = invert(&a, Tolerance::default()).unwrap();
    let alpha = inv.alpha.map(Scalar::to_f64);
    assert!(alpha.as_slice().iter().all(|x| x.is_finite()));
    let product = a.map(Scalar::to_f64).mul_dense(&alpha).unwrap();
    let residual = product.max_abs_diff(&tridkit::DenseMatrix::identity(n));
    assert!(residual < 1e-12, "{residual:e}");
}

#[test]
fn second_difference_at_large_order() {
    let n = 2000;
    let inv = invert(&second_difference::<Scaled>(n), Tolerance::default()).unwrap();
    assert!((inv.delta.to_f64() - (n + 1) as f64).abs() < 1e-9 * n as f64);
    for (i, j) in [(0, 0), (0, n - 1), (n / 2, n / 2), (17, 1500), (1999, 3)] {
        let (lo, hi) = (i.min(j) + 1, i.max(j) + 1);
        let want = (lo * (n + 1 - hi)) as f64 / (n + 1) as f64;
        let got = inv.alpha[(i, j)].to_f64();
        assert!(
            (got - want).abs() <= 1e-10 * want.max(1.0),
            "({i}, {j}): {got} vs {want}"
        );
    }
}

#[test]
fn agrees_with_exact_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let n = 1 + (random_ints(&mut rng, 1, 5)[0].unsigned_abs() as usize) * 2;
        let (d, a, b) = (
            random_ints(&mut rng, n, 5),
            random_ints(&mut rng, n - 1, 5),
            random_ints(&mut rng, n - 1, 5),
        );
        let exact = mat(&d, &a, &b);
        let scaled = TridiagonalMatrix::<Scaled>::from_i64(&d, &a, &b).unwrap();
        let want: Rational = determinant(&exact, Tolerance::default());
        let got = determinant(&scaled, Tolerance::default()).to_f64();
        let w = want.to_f64();
        assert!(
            (got - w).abs() <= 1e-12 * w.abs().max(1.0),
            "{d:?} {a:?} {b:?}: {got} vs {w}"
        );
    }
}
