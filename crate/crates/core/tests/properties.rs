mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tridkit::bench::random_diagonally_dominant;
use tridkit::io::{format_tridiag, parse_tridiag};
use tridkit::{
    determinant, invert, invert_parallel, leading_minors, trailing_minors, MinorTables, Rational,
    Tolerance, TridiagonalMatrix,
};

fn int_bands(max_n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(-5i64..=5, n),
            prop::collection::vec(-5i64..=5, n - 1),
            prop::collection::vec(-5i64..=5, n - 1),
        )
    })
}

fn unit_bands(max_n: usize) -> impl Strategy<Value = TridiagonalMatrix<f64>> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(-1.0f64..=1.0, n),
            prop::collection::vec(-1.0f64..=1.0, n - 1),
            prop::collection::vec(-1.0f64..=1.0, n - 1),
        )
            .prop_map(|(d, a, b)| TridiagonalMatrix::new(d, a, b).unwrap())
    })
}

fn three_term(d: &[Rational], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut f = vec![q(1), d[0].clone()];
    for k in 1..d.len() {
        let next =
            d[k].clone() * f[k].clone() - a[k - 1].clone() * b[k - 1].clone() * f[k - 1].clone();
        f.push(next);
    }
    f
}

fn reversed(a: &TridiagonalMatrix<Rational>) -> TridiagonalMatrix<Rational> {
    let rev = |v: &[Rational]| v.iter().rev().cloned().collect::<Vec<_>>();
    TridiagonalMatrix::new(rev(a.diagonal()), rev(a.lower()), rev(a.upper())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hybrid_minors_equal_three_term_recurrence((d, up, lo) in int_bands(14)) {
        let a = mat(&d, &up, &lo);
        let leading = leading_minors(&a, Tolerance::default());
        prop_assert_eq!(&leading.f, &three_term(a.diagonal(), a.upper(), a.lower()));

        // trailing minors are the leading minors of the reversed matrix
        let r = reversed(&a);
        let mut expected = three_term(r.diagonal(), r.upper(), r.lower());
        expected.reverse();
        prop_assert_eq!(trailing_minors(&a, Tolerance::default()).g, expected);
    }

    #[test]
    fn duality_in_double_mode(a in unit_bands(200)) {
        let t = MinorTables::compute(&a, Tolerance::default());
        let n = a.order();
        let (fnn, g1) = (*t.f(n), *t.g(0));
        prop_assert!((fnn - g1).abs() <= 1e-10 * fnn.abs().max(1.0), "f_n = {fnn}, g_1 = {g1}");
    }

    #[test]
    fn double_format_round_trips(
        bands in (1usize..=20).prop_flat_map(|n| (
            prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO, n),
            prop::collection::vec(prop::num::f64::NORMAL, n - 1),
            prop::collection::vec(prop::num::f64::NORMAL, n - 1),
        ))
    ) {
        let a = TridiagonalMatrix::new(bands.0, bands.1, bands.2).unwrap();
        let back: TridiagonalMatrix<f64> = parse_tridiag(&format_tridiag(&a)).unwrap();
        for (x, y) in a.diagonal().iter().chain(a.upper()).chain(a.lower())
            .zip(back.diagonal().iter().chain(back.upper()).chain(back.lower()))
        {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn rational_format_round_trips(
        bands in (1usize..=12).prop_flat_map(|n| (
            prop::collection::vec((-1000i64..=1000, 1i64..=97), n),
            prop::collection::vec((-1000i64..=1000, 1i64..=97), n - 1),
            prop::collection::vec((-1000i64..=1000, 1i64..=97), n - 1),
        ))
    ) {
        let to_q = |v: &[(i64, i64)]| v.iter().map(|&(p, r)| frac(p, r)).collect::<Vec<_>>();
        let a = TridiagonalMatrix::new(to_q(&bands.0), to_q(&bands.1), to_q(&bands.2)).unwrap();
        let back: TridiagonalMatrix<Rational> = parse_tridiag(&format_tridiag(&a)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn symmetric_input_gives_symmetric_inverse((d, up, _) in int_bands(12)) {
        let a = mat(&d, &up, &up);
        if let Ok(inv) = invert(&a, Tolerance::default()) {
            prop_assert!(inv.is_symmetric());
        } else {
            prop_assert_eq!(determinant(&a, Tolerance::default()), q(0));
        }
    }

    #[test]
    fn parallel_fill_is_bitwise_identical(a in unit_bands(120)) {
        let tol = Tolerance::default();
        match (invert(&a, tol), invert_parallel(&a, tol)) {
            (Ok(x), Ok(y)) => {
                let bits = |m: &tridkit::DenseMatrix<f64>| m.as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
                prop_assert_eq!(bits(&x.alpha), bits(&y.alpha));
            }
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonally_dominant_residual(n in 1usize..=500, seed in any::<u64>()) {
        let a = random_diagonally_dominant(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let inv = invert(&a, Tolerance::default()).unwrap();
        let r = inv.residual(&a).unwrap();
        prop_assert!(r <= 1e-8, "n = {n}: residual {r:e}");
    }
}

#[test]
fn double_mode_survives_exact_zero_pivots() {
    for exact in [zero_leading_pivot(), zero_trailing_pivot(), zero_minor5()] {
        let float = exact.map(tridkit::Scalar::to_f64);
        let want = invert(&exact, Tolerance::default()).unwrap();
        let got = invert(&float, Tolerance::default()).unwrap();
        let n = exact.order();
        for i in 0..n {
            for j in 0..n {
                let w = tridkit::Scalar::to_f64(&want.alpha[(i, j)]);
                assert!(
                    (got.alpha[(i, j)] - w).abs() <= 1e-12,
                    "({i}, {j}): {} vs {w}",
                    got.alpha[(i, j)]
                );
            }
        }
    }
}

#[test]
fn relative_breakdown_threshold_keeps_results_accurate() {
    // the second pivot is 2^-45: tiny but not zero
    let eps = 2f64.powi(-45);
    let a =
        TridiagonalMatrix::new(vec![1.0, 1.0 + eps, 3.0], vec![1.0, 2.0], vec![1.0, 2.0]).unwrap();
    for tol in [Tolerance::default(), Tolerance::robust()] {
        let inv = invert(&a, tol).unwrap();
        assert!(inv.residual(&a).unwrap() <= 1e-9, "{tol:?}");
    }
}
