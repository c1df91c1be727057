//! Binary fixed-point reals: a value is `mantissa · 2^(−precision)`.
//!
//! Every value is a dyadic rational, so it converts exactly to a rational
//! and to a finite decimal expansion. Operations either stay exact (add,
//! sub, mul) or take the output precision explicitly (`mul_rational_floor`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigReal {
    mant: BigInt,
    prec: u32,
}

impl BigReal {
    pub fn from_scaled(mant: BigInt, prec: u32) -> Self {
        BigReal { mant, prec }
    }

    pub fn zero(prec: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn from_integer(n: i64, prec: u32) -> Self {
        BigReal {
            mant: BigInt::from(n) << prec,
            prec,
        }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(BigReal::zero(0));
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        let mut m = BigInt::from(mant);
        if negative {
            m = -m;
        }
        Some(if exp >= 0 {
            BigReal {
                mant: m << exp as usize,
                prec: 0,
            }
        } else {
            BigReal {
                mant: m,
                prec: (-exp) as u32,
            }
        })
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Same value at a higher precision (exact).
    pub fn with_precision(&self, prec: u32) -> BigReal {
        assert!(prec >= self.prec, "precision can only be raised exactly");
        BigReal {
            mant: &self.mant << (prec - self.prec),
            prec,
        }
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let prec = self.prec.max(other.prec);
        BigReal {
            mant: self.with_precision(prec).mant + other.with_precision(prec).mant,
            prec,
        }
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> BigReal {
        BigReal {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    pub fn mul_exact(&self, other: &BigReal) -> BigReal {
        BigReal {
            mant: &self.mant * &other.mant,
            prec: self.prec + other.prec,
        }
    }

    /// `floor(self · c · 2^prec) · 2^(−prec)`; the rounding error lies in
    /// `[0, 2^(−prec))`.
    pub fn mul_rational_floor(&self, c: &BigRational, prec: u32) -> BigReal {
        let num = (&self.mant * c.numer()) << prec;
        let den = c.denom() << self.prec;
        BigReal {
            mant: num.div_floor(&den),
            prec,
        }
    }

    /// Round an arbitrary rational down onto the `2^(−prec)` grid.
    pub fn from_rational_floor(r: &BigRational, prec: u32) -> BigReal {
        BigReal {
            mant: (r.numer() << prec).div_floor(r.denom()),
            prec,
        }
    }

    /// Nearest decimal with `frac_digits` digits after the point.
    pub fn to_decimal(&self, frac_digits: usize) -> String {
        rational_to_decimal(&self.to_rational(), frac_digits)
    }

    /// The full, exact decimal expansion (`precision` fractional digits).
    pub fn to_exact_decimal(&self) -> String {
        let scaled = self.mant.abs() * BigInt::from(5u32).pow(self.prec);
        let digits = scaled.to_string();
        let p = self.prec as usize;
        let sign = if self.mant.is_negative() { "-" } else { "" };
        if p == 0 {
            return format!("{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = p + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - p);
        format!("{sign}{int_part}.{frac_part}")
    }

    /// Inverse of [`BigReal::to_exact_decimal`]. Fails unless the decimal is
    /// a dyadic rational whose expansion length equals its binary precision.
    pub fn from_exact_decimal(s: &str) -> Result<BigReal> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || body.ends_with('.')
        {
            return Err(Error::Parse(format!("invalid decimal {s:?}")));
        }
        let prec =
            u32::try_from(frac_part.len()).map_err(|_| Error::Parse("decimal too long".into()))?;
        let digits = BigUint::parse_bytes(format!("{int_part}{frac_part}").as_bytes(), 10)
            .ok_or_else(|| Error::Parse(format!("invalid decimal {s:?}")))?;
        let five_pow = BigUint::from(5u32).pow(prec);
        let (mant, rem) = digits.div_rem(&five_pow);
        if !rem.is_zero() {
            return Err(Error::Parse(format!(
                "{s:?} is not an exact binary fraction"
            )));
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Ok(BigReal {
            mant: BigInt::from_biguint(sign, mant),
            prec,
        })
    }

    pub fn cmp_value(&self, other: &BigReal) -> Ordering {
        let prec = self.prec.max(other.prec);
        self.with_precision(prec)
            .mant
            .cmp(&other.with_precision(prec).mant)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.prec as usize) * 3 / 10).max(1));
        f.write_str(&self.to_decimal(digits))
    }
}

impl FromStr for BigReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigReal::from_exact_decimal(s.trim())
    }
}

/// Round-half-away-from-zero decimal rendering of a rational.
pub fn rational_to_decimal(r: &BigRational, frac_digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = r.abs() * BigRational::from_integer(scale);
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
    let digits = rounded.to_integer().to_string();
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if frac_digits == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = frac_digits + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - frac_digits);
    format!("{sign}{int_part}.{frac_part}")
}

/// Scientific notation with `sig` significant digits, rounded *up* in
/// magnitude, so the printed number never understates a bound.
pub fn format_sci_up(r: &BigRational, sig: u32) -> String {
    format_sci(r, sig, true)
}

/// Scientific notation with `sig` significant digits, rounded to nearest.
pub fn format_sci_nearest(r: &BigRational, sig: u32) -> String {
    format_sci(r, sig, false)
}

fn format_sci(r: &BigRational, sig: u32, round_up: bool) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let x = r.abs();
    // Find e with 10^e <= x < 10^(e+1).
    let mut e: i64 = estimate_log10(&x);
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::from(10).pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(10).pow((-e) as u32))
        }
    };
    while pow10(e) > x {
        e -= 1;
    }
    while pow10(e + 1) <= x {
        e += 1;
    }
    let shift = i64::from(sig) - 1 - e;
    let scaled = &x * pow10(shift);
    let mut m = if round_up {
        scaled.ceil().to_integer()
    } else {
        (scaled + BigRational::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer()
    };
    let limit = BigInt::from(10).pow(sig);
    if m >= limit {
        // only reachable when rounding produced exactly 10^sig
        m /= 10;
        e += 1;
    }
    let digits = m.to_string();
    let (lead, rest) = digits.split_at(1);
    if rest.is_empty() {
        format!("{sign}{lead}e{e}")
    } else {
        format!("{sign}{lead}.{rest}e{e}")
    }
}

fn estimate_log10(x: &BigRational) -> i64 {
    let num_bits = x.numer().bits() as f64;
    let den_bits = x.denom().bits() as f64;
    ((num_bits - den_bits) * std::f64::consts::LOG10_2).floor() as i64
}

/// `2^(−bits)` as a rational.
pub fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// `10^(−digits)` as a rational.
pub fn pow10_neg(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(digits))
}

/// Smallest `b ≥ 0` with `2^(−b) ≤ tol`.
pub fn bits_for_tolerance(tol: &BigRational) -> u32 {
    assert!(tol.is_positive(), "tolerance must be positive");
    // 2^-b <= n/d  <=>  d <= n·2^b
    let n = tol.numer();
    let d = tol.denom();
    if d <= n {
        return 0;
    }
    let mut b = (d.bits() - n.bits()).saturating_sub(1) as u32;
    while (n << b) < *d {
        b += 1;
    }
    b
}
