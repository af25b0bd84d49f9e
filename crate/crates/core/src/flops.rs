//! Operation counting for the complexity benches.
//!
//! [`Counted`] wraps any [`Scalar`] and bumps a thread-local counter on every
//! add, subtract, multiply, divide and negate. Comparisons, `abs` and
//! conversions are free. Running an algorithm over `Counted<f64>` instead of
//! `f64` gives a deterministic flop count for that input.

use std::cell::Cell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Scalar, ScalarMode};

thread_local! {
    static FLOPS: Cell<u64> = const { Cell::new(0) };
}

fn tick() {
    FLOPS.with(|c| c.set(c.get() + 1));
}

/// Current value of this thread's counter.
pub fn count() -> u64 {
    FLOPS.with(Cell::get)
}

pub fn reset() {
    FLOPS.with(|c| c.set(0));
}

/// Runs `f` and returns its result with the number of counted operations.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let start = count();
    let out = f();
    (out, count() - start)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Counted<T>(pub T);

impl<T> Counted<T> {
    pub fn into_inner(self) -> T {
        self.0
    }
}

impl<T: PartialOrd> PartialOrd for Counted<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! counted_binop {
    ($trait:ident, $method:ident) => {
        impl<T: $trait<Output = T>> $trait for Counted<T> {
            type Output = Counted<T>;

            fn $method(self, rhs: Self) -> Self {
                tick();
                Counted(self.0.$method(rhs.0))
            }
        }
    };
}

counted_binop!(Add, add);
counted_binop!(Sub, sub);
counted_binop!(Mul, mul);
counted_binop!(Div, div);

impl<T: Neg<Output = T>> Neg for Counted<T> {
    type Output = Counted<T>;

    fn neg(self) -> Self {
        tick();
        Counted(-self.0)
    }
}

impl<T: Scalar> Zero for Counted<T> {
    fn zero() -> Self {
        Counted(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<T: Scalar> One for Counted<T> {
    fn one() -> Self {
        Counted(T::one())
    }
}

impl<T: Scalar> Scalar for Counted<T> {
    const EXACT: bool = T::EXACT;
    const MODE: ScalarMode = T::MODE;

    fn abs(&self) -> Self {
        Counted(self.0.abs())
    }

    fn from_i64(v: i64) -> Self {
        Counted(T::from_i64(v))
    }

    fn from_f64(v: f64) -> Self {
        Counted(T::from_f64(v))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn parse_text(s: &str) -> Option<Self> {
        T::parse_text(s).map(Counted)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn negligible(&self, tol: f64, scale: &Self) -> bool {
        self.0.negligible(tol, &scale.0)
    }
}
