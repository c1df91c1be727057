//! `p/q` text syntax for exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Longest accepted numerator or denominator, in decimal digits.
const MAX_DIGITS: usize = 4096;

/// Parses `p`, `p/q`, with an optional leading `+` or `-` (e.g. `-3/2`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer = parse_integer(num, true)?;
    let denom = match den {
        Some(d) => parse_integer(d, false)?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_integer(s: &str, signed: bool) -> Result<BigInt> {
    let digits = if signed {
        s.strip_prefix(['+', '-']).unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || digits.len() > MAX_DIGITS || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("invalid rational component {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid rational component {s:?}")))
}

/// Comma-separated list, e.g. `2,-3/2,1/4`.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty parameter list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical `p/q` form (always with a denominator, e.g. `2/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
