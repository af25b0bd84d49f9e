//! Complexity bench: wall time and instrumented flop counts per size.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flops::{self, Counted};
use crate::inverse::invert;
use crate::matrix::TridiagonalMatrix;
use crate::minors::{determinant, Tolerance};
use crate::oracle::{dense_inverse, to_dense};

/// The dense oracle is only benchmarked up to this order.
pub const DENSE_LIMIT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum BenchOp {
    Determinant,
    Invert,
    DenseInverse,
}

impl BenchOp {
    pub const ALL: [BenchOp; 3] = [BenchOp::Determinant, BenchOp::Invert, BenchOp::DenseInverse];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Determinant => "determinant",
            BenchOp::Invert => "invert",
            BenchOp::DenseInverse => "dense_inverse",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchOp::ALL
            .into_iter()
            .find(|op| op.name() == s.trim())
            .ok_or_else(|| format!("unknown bench op `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub op: BenchOp,
    pub flops: u64,
    /// Mean wall time per repetition.
    pub nanos: u128,
    pub reps: u32,
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str = "n,op,flops,nanos,reps";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.op, self.flops, self.nanos, self.reps
        )
    }
}

/// Random strictly diagonally dominant matrix: off-diagonals uniform in
/// `[-1, 1]`, each diagonal entry exceeding its row's off-diagonal mass by a
/// margin in `[0.5, 1.5]`, with random sign.
pub fn random_diagonally_dominant(n: usize, rng: &mut impl Rng) -> TridiagonalMatrix<f64> {
    let a: Vec<f64> = (0..n.saturating_sub(1))
        .map(|_| rng.gen_range(-1.0..=1.0))
        .collect();
    let b: Vec<f64> = (0..n.saturating_sub(1))
        .map(|_| rng.gen_range(-1.0..=1.0))
        .collect();
    let d = (0..n)
        .map(|i| {
            let mass = a.get(i).map_or(0.0, |x: &f64| x.abs())
                + i.checked_sub(1).map_or(0.0, |j| b[j].abs());
            let v = mass + rng.gen_range(0.5..=1.5);
            if rng.gen_bool(0.5) {
                v
            } else {
                -v
            }
        })
        .collect();
    TridiagonalMatrix::new(d, a, b).expect("consistent band lengths")
}

/// Flops spent by `op` on `a`.
pub fn count_flops(op: BenchOp, a: &TridiagonalMatrix<f64>) -> u64 {
    let counted = a.map(|&x| Counted(x));
    let tol = Tolerance::default();
    let ((), flops) = flops::measure(|| match op {
        BenchOp::Determinant => {
            determinant(&counted, tol);
        }
        BenchOp::Invert => {
            // singular inputs still count the work done before bailing out
            let _ = invert(&counted, tol);
        }
        BenchOp::DenseInverse => {
            let _ = dense_inverse(&to_dense(&counted));
        }
    });
    flops
}

fn time_op(op: BenchOp, a: &TridiagonalMatrix<f64>, reps: u32) -> u128 {
    let tol = Tolerance::default();
    let dense = (op == BenchOp::DenseInverse).then(|| to_dense(a));
    let start = Instant::now();
    for _ in 0..reps {
        match op {
            BenchOp::Determinant => {
                std::hint::black_box(determinant(std::hint::black_box(a), tol));
            }
            BenchOp::Invert => {
                let _ = std::hint::black_box(invert(std::hint::black_box(a), tol));
            }
            BenchOp::DenseInverse => {
                let m = dense.as_ref().expect("built above");
                let _ = std::hint::black_box(dense_inverse(std::hint::black_box(m)));
            }
        }
    }
    start.elapsed().as_nanos() / u128::from(reps.max(1))
}

/// One record per `(size, op)`, sizes in order. The dense oracle is skipped
/// above [`DENSE_LIMIT`].
pub fn run_bench(sizes: &[usize], ops: &[BenchOp], seed: u64, reps: u32) -> Vec<BenchRecord> {
    let mut records = Vec::new();
    for &n in sizes {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let a = random_diagonally_dominant(n, &mut rng);
        for &op in ops {
            if op == BenchOp::DenseInverse && n > DENSE_LIMIT {
                continue;
            }
            records.push(BenchRecord {
                n,
                op,
                flops: count_flops(op, &a),
                nanos: time_op(op, &a, reps),
                reps,
            });
        }
    }
    records
}
