//! Differential self-check of one matrix.
//!
//! Runs every inverse formula and the dense oracle on the same input and
//! compares them: exactly for exact scalars, to a relative tolerance
//! otherwise.

use std::fmt;

use crate::dense::DenseMatrix;
use crate::error::Error;
use crate::inverse::{
    hadamard_factors, hadamard_recombine, inverse_entry, inverse_entry_kumar, invert, invert_huang,
    zero_structure, SignedOffdiagonals,
};
use crate::matrix::TridiagonalMatrix;
use crate::minors::{MinorTables, Tolerance};
use crate::oracle::{dense_determinant, dense_inverse, submatrix_minor, to_dense};
use crate::scalar::Scalar;

/// Relative agreement required between floating results.
pub const FLOAT_AGREEMENT: f64 = 1e-9;

/// Largest order for which the `O(n^4)` minor-by-minor oracle check runs.
const MINOR_CHECK_LIMIT: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {}", self.name),
            Outcome::Fail(why) => write!(f, "FAIL {}: {why}", self.name),
            Outcome::Skip(why) => write!(f, "SKIP {}: {why}", self.name),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self
            .checks
            .iter()
            .any(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    fn push(&mut self, name: &'static str, outcome: Outcome) {
        self.checks.push(Check { name, outcome });
    }
}

fn close<T: Scalar>(x: &T, y: &T, scale: f64) -> bool {
    if T::EXACT {
        x == y
    } else {
        (x.to_f64() - y.to_f64()).abs() <= FLOAT_AGREEMENT * scale.max(1.0)
    }
}

fn compare_scalars<T: Scalar>(x: &T, y: &T) -> Outcome {
    let scale = x.to_f64().abs().max(y.to_f64().abs());
    if close(x, y, scale) {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{x:?} vs {y:?}"))
    }
}

fn compare_matrices<T: Scalar>(x: &DenseMatrix<T>, y: &DenseMatrix<T>) -> Outcome {
    let scale = x.max_abs().max(y.max_abs());
    let n = x.order();
    for i in 0..n {
        for j in 0..n {
            if !close(&x[(i, j)], &y[(i, j)], scale) {
                return Outcome::Fail(format!(
                    "entry ({i}, {j}): {:?} vs {:?}",
                    x[(i, j)],
                    y[(i, j)]
                ));
            }
        }
    }
    Outcome::Pass
}

fn all_pass(mut outcomes: impl Iterator<Item = Outcome>) -> Outcome {
    outcomes
        .find(|o| *o != Outcome::Pass)
        .unwrap_or(Outcome::Pass)
}

/// Runs the full battery of cross-checks on `a`.
pub fn verify<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> Report {
    let mut report = Report::default();
    let n = a.order();
    let tables = MinorTables::compute(a, tol);
    let (f, g) = (&tables.leading.f, &tables.trailing.g);
    let delta = tables.determinant().clone();
    let dense = to_dense(a);

    report.push("duality f_n = g_1", compare_scalars(&f[n], &g[0]));
    report.push(
        "determinant vs dense oracle",
        compare_scalars(&delta, &dense_determinant(&dense)),
    );

    if n <= MINOR_CHECK_LIMIT {
        let outcome = all_pass((1..=n).flat_map(|k| {
            let lead = submatrix_minor(&dense, 0..k).expect("valid range");
            let trail = submatrix_minor(&dense, k - 1..n).expect("valid range");
            [
                compare_scalars(&f[k], &lead),
                compare_scalars(&g[k - 1], &trail),
            ]
        }));
        report.push("principal minors vs dense oracle", outcome);
    } else {
        report.push(
            "principal minors vs dense oracle",
            Outcome::Skip(format!("n = {n} too large")),
        );
    }

    let minor_identity = all_pass((0..n).map(|k| {
        let d = &a.diagonal()[k];
        let lhs = f[k + 1].clone() * g[k + 1].clone() - d.clone() * f[k].clone() * g[k + 1].clone()
            + f[k].clone() * g[k].clone();
        compare_scalars(&lhs, &f[n])
    }));
    report.push("minor identity at every k", minor_identity);

    if a.is_centrosymmetric() {
        let outcome = all_pass((0..=n).map(|i| compare_scalars(&f[i], &g[n - i])));
        report.push("centrosymmetric minor symmetry", outcome);
    } else {
        report.push(
            "centrosymmetric minor symmetry",
            Outcome::Skip("not centrosymmetric".into()),
        );
    }

    let inverse = match invert(a, tol) {
        Ok(inv) => inv,
        Err(Error::Singular) => {
            let outcome = match dense_inverse(&dense) {
                Err(Error::Singular) => Outcome::Pass,
                Ok(_) if !T::EXACT => Outcome::Skip("numerically singular".into()),
                Ok(_) => Outcome::Fail("oracle found an inverse".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            };
            report.push("singularity agrees with oracle", outcome);
            return report;
        }
        Err(e) => {
            report.push("invert", Outcome::Fail(e.to_string()));
            return report;
        }
    };
    let alpha = &inverse.alpha;

    report.push(
        "invert vs dense oracle",
        match dense_inverse(&dense) {
            Ok(oracle) => compare_matrices(alpha, &oracle),
            Err(e) => Outcome::Fail(format!("oracle: {e}")),
        },
    );

    let offdiag = SignedOffdiagonals::new(a);
    let entrywise = DenseMatrix::from_fn(n, |i, j| {
        inverse_entry(&tables, &offdiag, &delta, i, j).expect("in range")
    });
    report.push(
        "single-entry formula vs invert",
        compare_matrices(&entrywise, alpha),
    );

    let kumar = DenseMatrix::from_fn(n, |i, j| {
        inverse_entry_kumar(&tables, &offdiag, &delta, i, j).expect("in range")
    });
    report.push(
        "Kronecker-sum formula vs invert",
        compare_matrices(&kumar, alpha),
    );

    report.push(
        "Hadamard factors vs invert",
        match hadamard_factors(a, tol).and_then(|h| hadamard_recombine(&h)) {
            Ok(h) => compare_matrices(&h.alpha, alpha),
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );

    report.push(
        "pivot recurrence vs invert",
        match invert_huang(a, tol) {
            Ok(h) => compare_matrices(&h.alpha, alpha),
            Err(e @ Error::BreakdownEncountered { .. }) => Outcome::Skip(e.to_string()),
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );

    let mask = zero_structure(a, &tables);
    let stray = mask.positions().find(|&(i, j)| !alpha[(i, j)].is_zero());
    report.push(
        "structural zeros",
        match stray {
            None => Outcome::Pass,
            Some((i, j)) => Outcome::Fail(format!("entry ({i}, {j}) = {:?}", alpha[(i, j)])),
        },
    );

    let identity = DenseMatrix::identity(n);
    report.push(
        "residual A * inverse = I",
        match a.mul_dense(alpha) {
            Ok(product) => {
                let scale = alpha.max_abs() * 4.0;
                if T::EXACT {
                    compare_matrices(&product, &identity)
                } else if product.max_abs_diff(&identity) <= FLOAT_AGREEMENT * scale.max(1.0) {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!(
                        "max residual {:e}",
                        product.max_abs_diff(&identity)
                    ))
                }
            }
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );

    if a.is_symmetric() {
        report.push(
            "symmetric input gives symmetric inverse",
            compare_matrices(alpha, &alpha.transpose()),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn zero_minor5_passes_every_check() {
        let m =
            TridiagonalMatrix::<Rational>::from_i64(&[1, 3, 1, 1, 1], &[-1; 4], &[-1; 4]).unwrap();
        let report = verify(&m, Tolerance::default());
        assert!(report.passed(), "{report:#?}");
        // e_4 = 0 rules out the pivot recurrence
        assert!(report.checks.iter().any(
            |c| c.name == "pivot recurrence vs invert" && matches!(c.outcome, Outcome::Skip(_))
        ));
    }

    #[test]
    fn singular_input_agrees_with_oracle() {
        let m = TridiagonalMatrix::<Rational>::from_i64(&[2, 2, 2, -3], &[-1, 1, 3], &[-2, 1, -1])
            .unwrap();
        let report = verify(&m, Tolerance::default());
        assert!(report.passed());
        assert_eq!(
            report.checks.last().unwrap().name,
            "singularity agrees with oracle"
        );
    }

    #[test]
    fn double_mode_passes_on_graded4() {
        let m = TridiagonalMatrix::<f64>::from_i64(&[25, 13, 5, 1], &[-9, -4, -1], &[-9, -4, -1])
            .unwrap();
        let report = verify(&m, Tolerance::default());
        assert!(report.passed(), "{report:#?}");
    }
}
