//! Scalar field abstraction and the three arithmetic modes.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Three
//! implementations ship with the crate:
//!
//! - `f64` for plain double precision,
//! - [`Rational`] (arbitrary precision numerator/denominator) for exact results,
//! - [`Scaled`], a significand/exponent pair whose exponent absorbs the
//!   geometric growth of long products of minors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Arithmetic mode selected by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum ScalarMode {
    Double,
    Rational,
    Scaled,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarMode::Double => "double",
            ScalarMode::Rational => "rational",
            ScalarMode::Scaled => "scaled",
        })
    }
}

impl FromStr for ScalarMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "double" => Ok(ScalarMode::Double),
            "rational" => Ok(ScalarMode::Rational),
            "scaled" => Ok(ScalarMode::Scaled),
            other => Err(format!("unknown scalar mode `{other}`")),
        }
    }
}

/// A field element usable by the minor recurrences and inverse formulas.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    /// `true` when arithmetic is exact and zero tests need no tolerance.
    const EXACT: bool;

    const MODE: ScalarMode;

    fn abs(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Converts a finite double. Exact for [`Rational`] and [`Scaled`].
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses a decimal literal or a `p/q` fraction.
    fn parse_text(s: &str) -> Option<Self>;

    /// Canonical text encoding; `parse_text(to_text(x)) == x`.
    fn to_text(&self) -> String;

    /// Whether `|self| <= tol * |scale|`. Exact modes ignore `tol` and
    /// test for zero, as does `tol == 0`.
    fn negligible(&self, tol: f64, scale: &Self) -> bool {
        if Self::EXACT || tol == 0.0 {
            self.is_zero()
        } else {
            self.abs() <= scale.abs() * Self::from_f64(tol)
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE: ScalarMode = ScalarMode::Double;

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_text(s: &str) -> Option<Self> {
        let v = match s.split_once('/') {
            Some((p, q)) => p.parse::<f64>().ok()? / q.parse::<f64>().ok()?,
            None => s.parse::<f64>().ok()?,
        };
        v.is_finite().then_some(v)
    }

    fn to_text(&self) -> String {
        // Debug output is the shortest representation that parses back to
        // the same bits, with an exponent for very large or small values.
        format!("{self:?}")
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: ScalarMode = ScalarMode::Rational;

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite double")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_text(s: &str) -> Option<Self> {
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_decimal(p)?;
            let q = parse_decimal(q)?;
            if q.is_zero() {
                return None;
            }
            return Some(p / q);
        }
        parse_decimal(s)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Parses `[-+]digits[.digits][e[-+]digits]` into an exact rational.
fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let scale = exp - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(digits, Pow::pow(&ten, scale.unsigned_abs()))
    };
    Some(if neg { -value } else { value })
}

/// A double significand paired with an unbounded base-2 exponent.
///
/// The value is `sig * 2^exp` with `|sig|` in `[1, 2)`, or exactly zero
/// (`sig == 0.0`, `exp == 0`). Renormalized after every operation, so long
/// products neither overflow nor underflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    sig: f64,
    exp: i64,
}

const SCALED_ADD_CUTOFF: i64 = 64;

impl Scaled {
    pub const ZERO: Scaled = Scaled { sig: 0.0, exp: 0 };

    pub fn new(sig: f64, exp: i64) -> Self {
        normalize(sig, exp)
    }

    pub fn significand(&self) -> f64 {
        self.sig
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_finite(&self) -> bool {
        self.sig.is_finite()
    }
}

/// Splits a finite nonzero double into `(m, k)` with `x = m * 2^k`, `|m|` in `[1, 2)`.
fn frexp(x: f64) -> (f64, i64) {
    const MANTISSA_MASK: u64 = (1 << 52) - 1;
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal: lift into the normal range first
        let (m, k) = frexp(x * pow2(64));
        return (m, k - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1023 << 52));
    debug_assert_eq!(m.to_bits() & MANTISSA_MASK, bits & MANTISSA_MASK);
    (m, biased - 1023)
}

/// Exact power of two for `k` in the normal exponent range.
fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= pow2(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= pow2(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * pow2(e)
}

fn normalize(x: f64, exp: i64) -> Scaled {
    if x == 0.0 {
        return Scaled::ZERO;
    }
    if !x.is_finite() {
        return Scaled { sig: x, exp: 0 };
    }
    let (m, k) = frexp(x);
    Scaled {
        sig: m,
        exp: exp + k,
    }
}

impl Add for Scaled {
    type Output = Scaled;

    fn add(self, rhs: Scaled) -> Scaled {
        if rhs.sig == 0.0 {
            return self;
        }
        if self.sig == 0.0 {
            return rhs;
        }
        if !self.is_finite() || !rhs.is_finite() {
            return normalize(self.sig + rhs.sig, 0);
        }
        let (hi, lo) = if self.exp >= rhs.exp {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = hi.exp - lo.exp;
        if shift > SCALED_ADD_CUTOFF {
            return hi;
        }
        normalize(hi.sig + lo.sig * pow2(-shift), hi.exp)
    }
}

impl Sub for Scaled {
    type Output = Scaled;

    fn sub(self, rhs: Scaled) -> Scaled {
        self + (-rhs)
    }
}

impl Mul for Scaled {
    type Output = Scaled;

    fn mul(self, rhs: Scaled) -> Scaled {
        normalize(self.sig * rhs.sig, self.exp + rhs.exp)
    }
}

impl Div for Scaled {
    type Output = Scaled;

    fn div(self, rhs: Scaled) -> Scaled {
        normalize(self.sig / rhs.sig, self.exp - rhs.exp)
    }
}

impl Neg for Scaled {
    type Output = Scaled;

    fn neg(self) -> Scaled {
        if self.sig == 0.0 {
            self
        } else {
            Scaled {
                sig: -self.sig,
                exp: self.exp,
            }
        }
    }
}

impl Zero for Scaled {
    fn zero() -> Self {
        Scaled::ZERO
    }

    fn is_zero(&self) -> bool {
        self.sig == 0.0
    }
}

impl One for Scaled {
    fn one() -> Self {
        Scaled { sig: 1.0, exp: 0 }
    }
}

impl PartialOrd for Scaled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !self.is_finite() || !other.is_finite() {
            return self.sig.partial_cmp(&other.sig);
        }
        let sign = |s: &Scaled| s.sig.partial_cmp(&0.0);
        let (sa, sb) = (sign(self)?, sign(other)?);
        if sa != sb {
            return sa.partial_cmp(&sb);
        }
        if sa == Ordering::Equal {
            return Some(Ordering::Equal);
        }
        let magnitude = self
            .exp
            .cmp(&other.exp)
            .then(self.sig.abs().partial_cmp(&other.sig.abs())?);
        Some(if sa == Ordering::Less {
            magnitude.reverse()
        } else {
            magnitude
        })
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Scalar for Scaled {
    const EXACT: bool = false;
    const MODE: ScalarMode = ScalarMode::Scaled;

    fn abs(&self) -> Self {
        Scaled {
            sig: self.sig.abs(),
            exp: self.exp,
        }
    }

    fn from_i64(v: i64) -> Self {
        normalize(v as f64, 0)
    }

    fn from_f64(v: f64) -> Self {
        normalize(v, 0)
    }

    fn to_f64(&self) -> f64 {
        ldexp(self.sig, self.exp)
    }

    fn parse_text(s: &str) -> Option<Self> {
        if let Some((sig, exp)) = s.split_once('p') {
            let sig = sig.parse::<f64>().ok().filter(|v| v.is_finite())?;
            return Some(normalize(sig, exp.parse::<i64>().ok()?));
        }
        if let Some((p, q)) = s.split_once('/') {
            return Some(Self::parse_text(p)? / Self::parse_text(q)?);
        }
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(|v| normalize(v, 0))
    }

    fn to_text(&self) -> String {
        // Within the normal double range the plain decimal is exact.
        if self.sig == 0.0 || (-1022..=1023).contains(&self.exp) {
            format!("{:?}", self.to_f64())
        } else {
            format!("{:?}p{}", self.sig, self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_survives_overflowing_products() {
        let big = Scaled::from_f64(1e300);
        let p = big * big * big;
        assert!(p.is_finite());
        let back = p / big / big;
        assert!((back.to_f64() - 1e300).abs() / 1e300 < 1e-15);
        assert_eq!(p.to_f64(), f64::INFINITY);
    }

    #[test]
    fn scaled_normalization() {
        let x = Scaled::from_f64(-12.0);
        assert_eq!((x.significand(), x.exponent()), (-1.5, 3));
        let tiny = Scaled::from_f64(f64::MIN_POSITIVE / 8.0);
        assert_eq!(tiny.significand(), 1.0);
        assert_eq!(tiny.exponent(), -1025);
        assert_eq!(tiny.to_f64(), f64::MIN_POSITIVE / 8.0);
        assert_eq!(Scaled::from_f64(3.0) - Scaled::from_f64(3.0), Scaled::ZERO);
    }

    #[test]
    fn scaled_ordering() {
        let vals = [-1e10, -2.0, -0.5, 0.0, 1e-300, 0.75, 3.0, 1e200];
        for w in vals.windows(2) {
            assert!(Scaled::from_f64(w[0]) < Scaled::from_f64(w[1]), "{w:?}");
        }
    }

    #[test]
    fn scaled_text_outside_double_range() {
        let x = Scaled::new(1.25, 5000);
        assert_eq!(x.to_text(), "1.25p5000");
        assert_eq!(Scaled::parse_text(&x.to_text()), Some(x));
    }

    #[test]
    fn rational_decimal_parsing() {
        let r = |s| Rational::parse_text(s).unwrap();
        assert_eq!(r("3/6"), Rational::new(1.into(), 2.into()));
        assert_eq!(r("-2.5e-1"), Rational::new((-1).into(), 4.into()));
        assert_eq!(r("12"), Rational::from_i64(12));
        assert_eq!(r(".5/3"), Rational::new(1.into(), 6.into()));
        assert!(Rational::parse_text("1/0").is_none());
        assert!(Rational::parse_text("abc").is_none());
        assert!(Rational::parse_text("").is_none());
    }

    #[test]
    fn double_parsing() {
        assert_eq!(f64::parse_text("1/4"), Some(0.25));
        assert_eq!(f64::parse_text("-3e2"), Some(-300.0));
        assert_eq!(f64::parse_text("inf"), None);
        assert_eq!(f64::parse_text("1/0"), None);
    }

    #[test]
    fn negligible_respects_mode() {
        assert!(!1e-20f64.negligible(0.0, &1.0));
        assert!(1e-20f64.negligible(1e-12, &1.0));
        let r = Rational::new(1.into(), BigInt::from(10).pow(30u32));
        assert!(!r.negligible(1e-12, &Rational::one()));
    }
}
