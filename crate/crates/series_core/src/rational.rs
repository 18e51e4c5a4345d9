//! Exact rational scalars and small helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::SeriesError;

/// Exact fraction, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `"num/den"`, denominator always present.
pub fn fmt_rat(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"num/den"`, `"num"` or a signed decimal-free integer pair.
pub fn parse_rat(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Denominator as `i64`; exponent lattices in this crate stay small.
pub fn denom_i64(x: &Rational) -> i64 {
    x.denom().to_i64().expect("denominator fits in i64")
}

/// `x * scale` as an exact `i64`, or `None` if `x` is off the lattice `(1/scale)Z`.
pub fn scaled(x: &Rational, scale: i64) -> Option<i64> {
    let y = x * BigInt::from(scale);
    if y.is_integer() {
        y.to_integer().to_i64()
    } else {
        None
    }
}

/// Largest integer `<= x`.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

/// Smallest integer `>= x`.
pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

/// Whether `x` is an integer.
pub fn is_int(x: &Rational) -> bool {
    x.is_integer()
}

/// `(-1)^x` for integer `x`; `None` otherwise.
pub fn sign_pow(x: &Rational) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    let n = x.to_integer();
    Some(if n.is_even() { 1 } else { -1 })
}

/// `x mod m` reduced into `[0, m)` for positive `m`.
pub fn rem_euclid(x: &Rational, m: &Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}

/// Least common multiple of two positive `i64`.
pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Approximate value, for diagnostics and numeric bounds only.
pub fn to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Absolute value.
pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

/// `true` iff `x == 0`.
pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

/// `1` as a rational.
pub fn one() -> Rational {
    Rational::one()
}
