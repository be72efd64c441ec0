//! Exact rational scalars and their string form.
//!
//! Every value that crosses an API boundary is a `Q`. The textual form is
//! `"p/q"` in lowest terms, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// `x^e` for a possibly negative exponent. Panics on `0^e` with `e < 0`.
pub fn powi(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `x^{(-1)^q}`.
pub fn alt_pow(x: &Q, q: usize) -> Q {
    if q % 2 == 0 {
        x.clone()
    } else {
        x.recip()
    }
}

pub fn sign_of(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `(-1)^k` as a scalar.
pub fn minus_one_pow(k: u64) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Size of a rational measured as bits of numerator plus denominator.
/// Used only to break ties between pivot candidates.
pub fn height(x: &Q) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
