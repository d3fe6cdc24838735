//! Exact rational scalars.
//!
//! Every coordinate, tolerance and cotangent in this crate is a
//! `BigRational`. No floating point is used in any decision path; `f64`
//! appears only in the SVG emitter, which has no semantic role.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"n"`, `"n/d"`, or a plain decimal literal such as `"-2.75"`.
pub fn parse_rat(s: &str) -> Result<Rat, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| RationalParseError::Invalid(s.to_string()))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Invalid(s.to_string()));
        }
        let frac_num =
            BigInt::from_str(frac_part).map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigRational::new(frac_num, scale);
        let int = BigRational::from_integer(int_part);
        return Ok(if negative { int - frac } else { int + frac });
    }
    let n = BigInt::from_str(s).map_err(|_| RationalParseError::Invalid(s.to_string()))?;
    Ok(BigRational::from_integer(n))
}

/// Canonical text form: lowest terms, `"n"` when the denominator is one,
/// `"n/d"` otherwise, denominator always positive.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// min of two rationals by value.
pub fn rat_min(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// max of two rationals by value.
pub fn rat_max(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Interval overlap length `max(0, min(r1,r2) - max(l1,l2))`.
pub fn overlap_len(l1: &Rat, r1: &Rat, l2: &Rat, r2: &Rat) -> Rat {
    let lo = rat_max(l1, l2);
    let hi = rat_min(r1, r2);
    let d = hi - lo;
    if d.is_negative() {
        Rat::zero()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("2.9").unwrap(), rat(29, 10));
        assert_eq!(parse_rat("-2.75").unwrap(), rat(-11, 4));
        assert_eq!(parse_rat("5/0"), Err(RationalParseError::ZeroDenominator("5/0".into())));
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_rat(&rat(6, 4)), "3/2");
        assert_eq!(format_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rat(&rat(8, 4)), "2");
        assert_eq!(format_rat(&rat_int(0)), "0");
        // round-trip on the canonical encoding
        for s in ["3/2", "-3/2", "2", "0", "29/10"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
    }

    #[test]
    fn overlap() {
        assert_eq!(overlap_len(&rat_int(0), &rat_int(4), &rat_int(2), &rat_int(8)), rat_int(2));
        assert_eq!(overlap_len(&rat_int(0), &rat_int(1), &rat_int(5), &rat_int(6)), rat_int(0));
    }
}
