//! Breakdown-free determinants and inverses of general tridiagonal matrices.
//!
//! The determinant and every principal minor come from a hybrid scheme: a
//! continued-fraction sweep that falls back to a division-free three-term
//! recurrence at the first vanishing pivot, so singular leading or trailing
//! blocks never cause a division by zero. The inverse is assembled in
//! `Θ(n^2)` from those minors and running products of the off-diagonals.
//!
//! All algorithms are generic over [`Scalar`]: `f64`, exact [`Rational`], or
//! [`Scaled`] for orders whose minors overflow a double.
//!
//! ```
//! use tridkit::{invert, Rational, Tolerance, TridiagonalMatrix};
//!
//! let a = TridiagonalMatrix::<Rational>::from_i64(&[2, 2, 2], &[-1, -1], &[-1, -1]).unwrap();
//! let inv = invert(&a, Tolerance::default()).unwrap();
//! assert_eq!(inv.delta, Rational::from_integer(4.into()));
//! ```

pub mod bench;
pub mod cli;
pub mod dense;
pub mod error;
pub mod flops;
pub mod inverse;
pub mod io;
pub mod matrix;
pub mod minors;
pub mod oracle;
pub mod scalar;
pub mod verify;

pub use dense::DenseMatrix;
pub use error::{Error, Result, Sweep};
pub use inverse::{
    hadamard_factors, hadamard_recombine, inverse_entry, inverse_entry_kumar, invert, invert_huang,
    invert_parallel, zero_structure, HadamardFactors, InverseMatrix, RangeProducts,
    SignedOffdiagonals, ZeroMask,
};
pub use matrix::TridiagonalMatrix;
pub use minors::{
    determinant, is_nonsingular_sufficient, is_positive_definite_symmetric, leading_minors,
    trailing_minors, LeadingMinors, MinorTables, NonsingularEvidence, Tolerance, TrailingMinors,
};
pub use scalar::{Rational, Scalar, ScalarMode, Scaled};
