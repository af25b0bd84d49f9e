//! Inverses of general tridiagonal matrices.
//!
//! With `f`, `g` the leading and trailing minors (see [`crate::minors`]),
//! `p_r = -a_r`, `q_r = -b_r` and `delta = det A`, every entry of the
//! inverse is (zero-based)
//!
//! ```text
//! alpha_ii = f[i] g[i+1] / delta
//! alpha_ij = f[i] g[j+1] / delta * p_i p_{i+1} .. p_{j-1}      (i < j)
//! alpha_ij = f[j] g[i+1] / delta * q_j q_{j+1} .. q_{i-1}      (i > j)
//! ```
//!
//! [`invert`] fills the matrix with that formula. [`invert_huang`] and
//! [`inverse_entry_kumar`] evaluate two older, independent formulas and
//! exist for differential testing.

use rayon::prelude::*;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result, Sweep};
use crate::matrix::TridiagonalMatrix;
use crate::minors::{
    backward_pivots, forward_pivots, leading_minors, trailing_minors, LeadingMinors, MinorTables,
    Tolerance,
};
use crate::scalar::Scalar;

/// Dense inverse together with the determinant it was scaled by.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseMatrix<T> {
    pub alpha: DenseMatrix<T>,
    pub delta: T,
}

impl<T: Scalar> InverseMatrix<T> {
    pub fn order(&self) -> usize {
        self.alpha.order()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.alpha[(i, j)]
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha.is_symmetric()
    }

    /// `max |A alpha - I|` evaluated in this scalar type.
    pub fn residual(&self, a: &TridiagonalMatrix<T>) -> Result<f64> {
        let product = a.mul_dense(&self.alpha)?;
        Ok(product.max_abs_diff(&DenseMatrix::identity(self.order())))
    }
}

/// Products of contiguous runs of a sequence in `O(1)`.
///
/// The sequence is cut into zero-free segments. Each position stores the
/// product of its segment up to (not including) itself, so a query that
/// stays inside one segment is a single quotient, and any query that
/// crosses a zero is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeProducts<T> {
    values: Vec<T>,
    zeros_before: Vec<usize>,
    prefix: Vec<T>,
}

impl<T: Scalar> RangeProducts<T> {
    pub fn new(values: Vec<T>) -> Self {
        let mut zeros_before = Vec::with_capacity(values.len() + 1);
        let mut prefix = Vec::with_capacity(values.len() + 1);
        zeros_before.push(0);
        prefix.push(T::one());
        for v in &values {
            if v.is_zero() {
                zeros_before.push(zeros_before[zeros_before.len() - 1] + 1);
                prefix.push(T::one());
            } else {
                zeros_before.push(zeros_before[zeros_before.len() - 1]);
                prefix.push(prefix[prefix.len() - 1].clone() * v.clone());
            }
        }
        Self {
            values,
            zeros_before,
            prefix,
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `values[lo] * .. * values[hi - 1]`; one for an empty range.
    pub fn product(&self, lo: usize, hi: usize) -> T {
        assert!(
            lo <= hi && hi <= self.values.len(),
            "range {lo}..{hi} out of bounds"
        );
        if lo == hi {
            return T::one();
        }
        if self.zeros_before[hi] != self.zeros_before[lo] {
            return T::zero();
        }
        self.prefix[hi].clone() / self.prefix[lo].clone()
    }
}

/// The negated off-diagonals `p = -a` and `q = -b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedOffdiagonals<T> {
    pub p: RangeProducts<T>,
    pub q: RangeProducts<T>,
}

impl<T: Scalar> SignedOffdiagonals<T> {
    pub fn new(a: &TridiagonalMatrix<T>) -> Self {
        let neg = |v: &[T]| v.iter().map(|x| -x.clone()).collect();
        Self {
            p: RangeProducts::new(neg(a.upper())),
            q: RangeProducts::new(neg(a.lower())),
        }
    }
}

/// Singularity test on the leading minors.
fn check_nonsingular<T: Scalar>(leading: &LeadingMinors<T>, tol: Tolerance) -> Result<()> {
    let n = leading.f.len() - 1;
    let det = &leading.f[n];
    let largest = leading
        .f
        .iter()
        .map(Scalar::abs)
        .fold(T::zero(), |m, x| if x > m { x } else { m });
    if det.negligible(tol.singular_threshold(n), &largest) {
        Err(Error::Singular)
    } else {
        Ok(())
    }
}

/// Everything needed to fill rows of the inverse.
struct RowFill<'a, T> {
    f: &'a [T],
    g: &'a [T],
    p: Vec<T>,
    q: Vec<T>,
    delta: &'a T,
}

impl<'a, T: Scalar> RowFill<'a, T> {
    fn new(a: &TridiagonalMatrix<T>, f: &'a [T], g: &'a [T]) -> Self {
        let neg = |v: &[T]| v.iter().map(|x| -x.clone()).collect();
        let n = f.len() - 1;
        Self {
            f,
            g,
            p: neg(a.upper()),
            q: neg(a.lower()),
            delta: &f[n],
        }
    }

    /// Writes row `i` into `row`, which must be zero-initialised.
    ///
    /// Right of the diagonal a running product of `p` walks outwards from
    /// the diagonal; left of it a running product of `q` does the same.
    /// Once a running product or the row's minor factor is zero the rest of
    /// that side stays zero.
    fn fill(&self, i: usize, row: &mut [T]) {
        let n = row.len();
        let (f, g) = (self.f, self.g);
        let f_row = f[i].clone() / self.delta.clone();
        let g_row = g[i + 1].clone() / self.delta.clone();
        row[i] = f_row.clone() * g[i + 1].clone();

        if !f_row.is_zero() {
            let mut run = T::one();
            for j in i + 1..n {
                run = run * self.p[j - 1].clone();
                if run.is_zero() {
                    break;
                }
                row[j] = f_row.clone() * g[j + 1].clone() * run.clone();
            }
        }
        if !g_row.is_zero() {
            let mut run = T::one();
            for j in (0..i).rev() {
                run = run * self.q[j].clone();
                if run.is_zero() {
                    break;
                }
                row[j] = f[j].clone() * g_row.clone() * run.clone();
            }
        }
    }
}

fn tables<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> Result<MinorTables<T>> {
    let leading = leading_minors(a, tol);
    check_nonsingular(&leading, tol)?;
    Ok(MinorTables {
        leading,
        trailing: trailing_minors(a, tol),
    })
}

/// Full inverse in `Θ(n^2)`, breakdown-free.
///
/// Fails with [`Error::Singular`] when the determinant is zero (exact modes)
/// or negligible against the largest leading minor (floating modes).
pub fn invert<T: Scalar>(a: &TridiagonalMatrix<T>, tol: Tolerance) -> Result<InverseMatrix<T>> {
    let t = tables(a, tol)?;
    let n = a.order();
    let fill = RowFill::new(a, &t.leading.f, &t.trailing.g);
    let mut alpha = DenseMatrix::zeros(n);
    for i in 0..n {
        fill.fill(i, alpha.row_mut(i));
    }
    Ok(InverseMatrix {
        alpha,
        delta: t.determinant().clone(),
    })
}

/// [`invert`] with rows filled concurrently. Bitwise identical output.
pub fn invert_parallel<T: Scalar>(
    a: &TridiagonalMatrix<T>,
    tol: Tolerance,
) -> Result<InverseMatrix<T>> {
    let t = tables(a, tol)?;
    let n = a.order();
    let fill = RowFill::new(a, &t.leading.f, &t.trailing.g);
    let mut entries = vec![T::zero(); n * n];
    entries
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, row)| fill.fill(i, row));
    let alpha = DenseMatrix::from_row_major(n, entries)?;
    Ok(InverseMatrix {
        alpha,
        delta: t.determinant().clone(),
    })
}

/// One entry of the inverse in `O(1)` from precomputed tables.
pub fn inverse_entry<T: Scalar>(
    tables: &MinorTables<T>,
    offdiag: &SignedOffdiagonals<T>,
    delta: &T,
    i: usize,
    j: usize,
) -> Result<T> {
    let n = tables.order();
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    let (f, g) = (&tables.leading.f, &tables.trailing.g);
    let (lo, hi) = (i.min(j), i.max(j));
    let r = f[lo].clone() * g[hi + 1].clone() / delta.clone();
    Ok(match i.cmp(&j) {
        std::cmp::Ordering::Equal => r,
        std::cmp::Ordering::Less => r * offdiag.p.product(i, j),
        std::cmp::Ordering::Greater => r * offdiag.q.product(j, i),
    })
}

/// Inverse from the continued-fraction pivots alone:
///
/// ```text
/// alpha_ii = 1 / (c_i - d_i + e_i)
/// alpha_ij = -(a_i / c_i) alpha_{i+1,j}          (i < j)
/// alpha_ij = -(b_{i-1} / e_i) alpha_{i-1,j}      (i > j)
/// ```
///
/// Needs every pivot `c_i` and `e_i` to be nonzero. Otherwise fails with
/// [`Error::BreakdownEncountered`], an ordinary outcome on many nonsingular
/// matrices. Only used to cross-check [`invert`].
pub fn invert_huang<T: Scalar>(
    a: &TridiagonalMatrix<T>,
    tol: Tolerance,
) -> Result<InverseMatrix<T>> {
    let n = a.order();
    let forward = forward_pivots(a, tol);
    if forward.vanished {
        return Err(Error::BreakdownEncountered {
            sweep: Sweep::Leading,
            index: forward.values.len() - 1,
        });
    }
    let backward = backward_pivots(a, tol);
    if backward.vanished {
        return Err(Error::BreakdownEncountered {
            sweep: Sweep::Trailing,
            index: n - backward.values.len(),
        });
    }
    let c = forward.values;
    let mut e = backward.values;
    e.reverse();
    let d = a.diagonal();

    let y: Vec<T> = (0..n - 1)
        .map(|i| a.upper()[i].clone() / c[i].clone())
        .collect();
    let v: Vec<T> = (0..n - 1)
        .map(|i| a.lower()[i].clone() / e[i + 1].clone())
        .collect();

    let mut alpha = DenseMatrix::zeros(n);
    for j in 0..n {
        alpha[(j, j)] = T::one() / (c[j].clone() - d[j].clone() + e[j].clone());
        for i in (0..j).rev() {
            alpha[(i, j)] = -(y[i].clone() * alpha[(i + 1, j)].clone());
        }
        for i in j + 1..n {
            alpha[(i, j)] = -(v[i - 1].clone() * alpha[(i - 1, j)].clone());
        }
    }
    let delta = c.into_iter().fold(T::one(), |acc, x| acc * x);
    Ok(InverseMatrix { alpha, delta })
}

/// One entry via the Kronecker-delta sum
///
/// ```text
/// alpha_ij = [ g[j+1] sum_{k<j} delta_ik f[k] p_k..p_{j-1}
///            + delta_ij f[j] g[j+1]
///            + f[j] sum_{k>j} delta_ik g[k+1] q_j..q_{k-1} ] / det
/// ```
///
/// evaluated term by term, without collapsing the sums. `O(n)` per entry.
pub fn inverse_entry_kumar<T: Scalar>(
    tables: &MinorTables<T>,
    offdiag: &SignedOffdiagonals<T>,
    delta: &T,
    i: usize,
    j: usize,
) -> Result<T> {
    let n = tables.order();
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    let (f, g) = (&tables.leading.f, &tables.trailing.g);
    let (p, q) = (offdiag.p.values(), offdiag.q.values());
    let kronecker = |x: usize, y: usize| if x == y { T::one() } else { T::zero() };

    let mut upper = T::zero();
    let mut run = T::one();
    for k in (0..j).rev() {
        run = run * p[k].clone();
        upper = upper + kronecker(i, k) * f[k].clone() * run.clone();
    }
    let diagonal = kronecker(i, j) * f[j].clone() * g[j + 1].clone();
    let mut lower = T::zero();
    let mut run = T::one();
    for k in j + 1..n {
        run = run * q[k - 1].clone();
        lower = lower + kronecker(i, k) * g[k + 1].clone() * run.clone();
    }
    Ok((g[j + 1].clone() * upper + diagonal + f[j].clone() * lower) / delta.clone())
}

/// The factors of `A^-1 = R ∘ S`: `R` holds the minor ratios, `S` the
/// off-diagonal products.
#[derive(Clone, Debug, PartialEq)]
pub struct HadamardFactors<T> {
    pub r: DenseMatrix<T>,
    pub s: DenseMatrix<T>,
    pub delta: T,
}

/// `r_ij = f[min] g[max + 1] / det`, `s_ii = 1`, `s_ij` the `p` (above) or
/// `q` (below) product between `i` and `j`.
pub fn hadamard_factors<T: Scalar>(
    a: &TridiagonalMatrix<T>,
    tol: Tolerance,
) -> Result<HadamardFactors<T>> {
    let t = tables(a, tol)?;
    let n = a.order();
    let delta = t.determinant().clone();
    let r = DenseMatrix::from_fn(n, |i, j| {
        let (lo, hi) = (i.min(j), i.max(j));
        t.f(lo).clone() * t.g(hi + 1).clone() / delta.clone()
    });
    let offdiag = SignedOffdiagonals::new(a);
    let mut s = DenseMatrix::identity(n);
    for i in 0..n {
        let mut run = T::one();
        for j in i + 1..n {
            run = run * offdiag.p.values()[j - 1].clone();
            s[(i, j)] = run.clone();
        }
        let mut run = T::one();
        for j in (0..i).rev() {
            run = run * offdiag.q.values()[j].clone();
            s[(i, j)] = run.clone();
        }
    }
    Ok(HadamardFactors { r, s, delta })
}

/// `R ∘ S`.
pub fn hadamard_recombine<T: Scalar>(factors: &HadamardFactors<T>) -> Result<InverseMatrix<T>> {
    Ok(InverseMatrix {
        alpha: factors.r.hadamard(&factors.s)?,
        delta: factors.delta.clone(),
    })
}

/// Positions of the inverse that are zero by structure alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroMask {
    n: usize,
    mask: Vec<bool>,
}

impl ZeroMask {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_forced_zero(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.n + j]
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(k, _)| (k / self.n, k % self.n))
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    fn set(&mut self, i: usize, j: usize) {
        self.mask[i * self.n + j] = true;
    }
}

/// Entries forced to zero by a vanishing off-diagonal or principal minor:
///
/// - `a[k] = 0`: rows `0..=k` times columns `k+1..n`;
/// - `b[k] = 0`: rows `k+1..n` times columns `0..=k`;
/// - `f[k] = 0`, `1 <= k < n`: row and column `k` from index `k` on;
/// - `g[k] = 0`, `1 <= k < n`: row and column `k-1` up to index `k-1`.
pub fn zero_structure<T: Scalar>(a: &TridiagonalMatrix<T>, tables: &MinorTables<T>) -> ZeroMask {
    let n = a.order();
    let mut mask = ZeroMask {
        n,
        mask: vec![false; n * n],
    };
    for k in 0..n - 1 {
        if a.upper()[k].is_zero() {
            for i in 0..=k {
                for j in k + 1..n {
                    mask.set(i, j);
                }
            }
        }
        if a.lower()[k].is_zero() {
            for i in k + 1..n {
                for j in 0..=k {
                    mask.set(i, j);
                }
            }
        }
    }
    for k in 1..n {
        if tables.f(k).is_zero() {
            for j in k..n {
                mask.set(k, j);
                mask.set(j, k);
            }
        }
        if tables.g(k).is_zero() {
            for i in 0..k {
                mask.set(i, k - 1);
                mask.set(k - 1, i);
            }
        }
    }
    mask
}
