//! Principal minors and determinants by hybrid recurrences.
//!
//! Both sweeps start with the continued-fraction pivots
//!
//! ```text
//! c_1 = d_1,  c_i = d_i - a_{i-1} b_{i-1} / c_{i-1}      (forward)
//! e_n = d_n,  e_i = d_i - a_i b_i / e_{i+1}              (backward)
//! ```
//!
//! accumulating minors as running products of pivots. The first pivot that
//! vanishes ends the division-based phase for good, and the remaining minors
//! come from the division-free three-term recurrences
//!
//! ```text
//! f_k = d_k f_{k-1} - a_{k-1} b_{k-1} f_{k-2}
//! g_k = d_k g_{k+1} - a_k b_k g_{k+2}
//! ```
//!
//! so no input can cause a division by zero.
//!
//! Storage convention (zero-based): `f[k]` is the determinant of the leading
//! `k x k` block and `g[k]` the determinant of the trailing block that starts
//! at row `k`. Both have `n + 1` entries, `f[0] = g[n] = 1` and
//! `f[n] = g[0] = det A`. In one-based textbook notation `f[k] = f_k` and
//! `g[k] = g_{k+1}`.

use crate::error::{Error, Result};
use crate::matrix::TridiagonalMatrix;
use crate::scalar::Scalar;

/// Relative thresholds used by the floating-point modes.
///
/// Exact arithmetic ignores both and tests for zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// A pivot is treated as vanished when `|c_m| <= breakdown * (|d_m| + |a b / c_{m-1}|)`.
    /// Zero reproduces the exact `c_m != 0` test.
    pub breakdown: f64,
    /// The determinant is treated as zero when `|f_n| <= singular * max_i |f_i|`.
    /// `None` selects `n * 2^-52`.
    pub singular: Option<f64>,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            breakdown: 0.0,
            singular: None,
        }
    }
}

impl Tolerance {
    /// Recommended breakdown threshold for double precision.
    pub const ROBUST_BREAKDOWN: f64 = 1.0 / (1u64 << 40) as f64;

    pub fn robust() -> Self {
        Self {
            breakdown: Self::ROBUST_BREAKDOWN,
            singular: None,
        }
    }

    pub fn with_breakdown(breakdown: f64) -> Self {
        Self {
            breakdown,
            ..Self::default()
        }
    }

    pub fn singular_threshold(&self, n: usize) -> f64 {
        self.singular.unwrap_or(n as f64 * f64::EPSILON)
    }
}

/// Result of the forward sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingMinors<T> {
    /// `f[0..=n]`.
    pub f: Vec<T>,
    /// Pivots `c` computed before the switch; `c[k]` belongs to row `k`.
    pub c: Vec<T>,
}

impl<T> LeadingMinors<T> {
    /// One-based index of the last pivot computed. Equals `n` when the
    /// continued fraction ran to the end.
    pub fn switch_index(&self) -> usize {
        self.c.len()
    }
}

/// Result of the backward sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct TrailingMinors<T> {
    /// `g[0..=n]`.
    pub g: Vec<T>,
    /// Pivots `e` computed before the switch, in row order; `e[0]` belongs
    /// to row `n - e.len()`.
    pub e: Vec<T>,
}

impl<T> TrailingMinors<T> {
    /// One-based index of the last pivot computed (counting down from `n`).
    /// Equals 1 when the continued fraction ran to the end.
    pub fn switch_index(&self) -> usize {
        self.g.len() - self.e.len()
    }
}

/// Leading and trailing minors of one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorTables<T> {
    pub leading: LeadingMinors<T>,
    pub trailing: TrailingMinors<T>,
}

impl<T: Scalar> MinorTables<T> {
    pub fn compute(a: &TridiagonalMatrix<T>, tol: Tolerance) -> Self {
        Self {
            leading: leading_minors(a, tol),
            trailing: trailing_minors(a, tol),
        }
    }

    pub fn order(&self) -> usize {
        self.leading.f.len() - 1
    }

    /// Leading minor of size `k`, `k` in `0..=n`.
    pub fn f(&self, k: usize) -> &T {
        &self.leading.f[k]
    }

    /// Trailing minor starting at row `k`, `k` in `0..=n`.
    pub fn g(&self, k: usize) -> &T {
        &self.trailing.g[k]
    }

    pub fn determinant(&self) -> &T {
        self.f(self.order())
    }
}

/// Continued-fraction pivots up to and including the first that vanishes.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Pivots<T> {
    /// In sweep order: row `0, 1, ..` forward, row `n-1, n-2, ..` backward.
    pub values: Vec<T>,
    pub vanished: bool,
}

fn sweep_pivots<T: Scalar>(
    a: &TridiagonalMatrix<T>,
    tol: Tolerance,
    rows: impl Iterator<Item = usize>,
    coupling_of: impl Fn(usize) -> usize,
) -> Pivots<T> {
    let d = a.diagonal();
    let mut rows = rows;
    let first = rows.next().expect("order >= 1");
    let mut values = vec![d[first].clone()];
    let mut scale = d[first].abs();
    for row in rows {
        let prev = &values[values.len() - 1];
        if prev.negligible(tol.breakdown, &scale) {
            return Pivots {
                values,
                vanished: true,
            };
        }
        let t = a.coupling(coupling_of(row)) / prev.clone();
        if tol.breakdown > 0.0 {
            scale = d[row].abs() + t.abs();
        }
        values.push(d[row].clone() - t);
    }
    let vanished = values[values.len() - 1].negligible(tol.breakdown, &scale);
    Pivots { values, vanished }
}

/// `c_1, c_2, ..` until one vanishes.
pub(crate) fn forward_pivots<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> Pivots<T> {
    sweep_pivots(a, tol, 0..a.order(), |row| row - 1)
}

/// `e_n, e_{n-1}, ..` until one vanishes, in sweep (bottom-up) order.
pub(crate) fn backward_pivots<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> Pivots<T> {
    sweep_pivots(a, tol, (0..a.order()).rev(), |row| row)
}

/// Forward sweep: every leading principal minor.
pub fn leading_minors<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> LeadingMinors<T> {
    let n = a.order();
    let d = a.diagonal();
    let c = forward_pivots(a, tol).values;
    let mut f = Vec::with_capacity(n + 1);
    f.push(T::one());
    f.push(d[0].clone());
    for k in 2..=c.len() {
        let next = c[k - 1].clone() * f[k - 1].clone();
        f.push(next);
    }
    for k in f.len()..=n {
        let next = d[k - 1].clone() * f[k - 1].clone() - a.coupling(k - 2) * f[k - 2].clone();
        f.push(next);
    }
    LeadingMinors { f, c }
}

/// Backward sweep: every trailing principal minor.
pub fn trailing_minors<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> TrailingMinors<T> {
    let n = a.order();
    let d = a.diagonal();
    let mut e = backward_pivots(a, tol).values;
    let mut g = vec![T::zero(); n + 1];
    g[n] = T::one();
    g[n - 1] = d[n - 1].clone();
    for (k, ek) in e.iter().enumerate().skip(1) {
        let row = n - 1 - k;
        g[row] = ek.clone() * g[row + 1].clone();
    }
    for k in (0..n - e.len()).rev() {
        g[k] = d[k].clone() * g[k + 1].clone() - a.coupling(k) * g[k + 2].clone();
    }
    e.reverse();
    TrailingMinors { g, e }
}

/// Determinant from the forward sweep.
///
/// Debug builds over exact scalars also run the backward sweep and check
/// that both ends agree.
pub fn determinant<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> T {
    let mut f = leading_minors(a, tol).f;
    let det = f.pop().expect("f has n + 1 entries");
    if cfg!(debug_assertions) && T::EXACT {
        let g = trailing_minors(a, tol).g;
        debug_assert_eq!(det, g[0], "leading and trailing sweeps disagree");
    }
    det
}

/// Outcome of the cheap nonsingularity tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonsingularEvidence {
    /// Every forward pivot is nonzero.
    AllCNonzero,
    /// Every backward pivot is nonzero.
    AllENonzero,
    /// Neither holds. The matrix may still be nonsingular.
    Inconclusive,
}

/// Checks the two sufficient conditions for nonsingularity.
pub fn is_nonsingular_sufficient<T: Scalar>(
    a: &TridiagonalMatrix<T>,
    tol: Tolerance,
) -> NonsingularEvidence {
    if !forward_pivots(a, tol).vanished {
        NonsingularEvidence::AllCNonzero
    } else if !backward_pivots(a, tol).vanished {
        NonsingularEvidence::AllENonzero
    } else {
        NonsingularEvidence::Inconclusive
    }
}

/// Positive definiteness of a symmetric tridiagonal matrix: every forward
/// pivot is strictly positive.
pub fn is_positive_definite_symmetric<T: Scalar>(a: &TridiagonalMatrix<T>) -> Result<bool> {
    if let Some(index) = a.upper().iter().zip(a.lower()).position(|(x, y)| x != y) {
        return Err(Error::NotSymmetric { index });
    }
    let d = a.diagonal();
    let mut pivot = d[0].clone();
    for (i, di) in d.iter().enumerate().skip(1) {
        if pivot <= T::zero() {
            return Ok(false);
        }
        pivot = di.clone() - a.coupling(i - 1) / pivot;
    }
    Ok(pivot > T::zero())
}
