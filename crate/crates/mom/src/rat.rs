//! Exact rational scalars.
//!
//! Every distance value in this crate is a [`Rat`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating point anywhere; all comparisons and arithmetic are exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational number. Always normalized: lowest terms, positive denominator.
pub type Rat = num_rational::BigRational;

/// Error parsing a rational from its `"p/q"` / `"p"` text form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal: {0:?}")]
    BadInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("too many '/' in rational literal: {0:?}")]
    ExtraSlash(String),
}

/// `p/q` as a [`Rat`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `2^exp`, with negative exponents giving `1/2^|exp|`.
pub fn pow2(exp: i32) -> Rat {
    let mag = BigInt::from(1u8) << exp.unsigned_abs();
    if exp >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::from(1u8), mag)
    }
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Non-canonical input like `"4/6"` is
/// accepted and normalized.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(RatParseError::Empty);
    }
    let mut parts = trimmed.split('/');
    let num_text = parts.next().ok_or(RatParseError::Empty)?;
    let num: BigInt = num_text
        .trim()
        .parse()
        .map_err(|_| RatParseError::BadInteger(num_text.trim().to_owned()))?;
    let den = match parts.next() {
        None => BigInt::from(1u8),
        Some(den_text) => den_text
            .trim()
            .parse()
            .map_err(|_| RatParseError::BadInteger(den_text.trim().to_owned()))?,
    };
    if parts.next().is_some() {
        return Err(RatParseError::ExtraSlash(trimmed.to_owned()));
    }
    if den.is_zero() {
        return Err(RatParseError::ZeroDenominator);
    }
    Ok(Rat::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` when the
/// denominator is 1. Inverse of [`parse_rat`] on canonical output.
pub fn rat_to_string(value: &Rat) -> String {
    value.to_string()
}

/// `|x|`.
pub fn abs(value: &Rat) -> Rat {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trips() {
        for text in ["0", "1", "-1", "3/2", "-7/16", "123456789/2"] {
            let value = parse_rat(text).unwrap();
            assert_eq!(rat_to_string(&value), text);
        }
    }

    #[test]
    fn non_canonical_input_normalizes() {
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rat(" -2/4 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(rat_to_string(&parse_rat("5/1").unwrap()), "5");
    }

    #[test]
    fn rejects_malformed_literals() {
        assert_eq!(parse_rat("1/0"), Err(RatParseError::ZeroDenominator));
        assert_eq!(parse_rat(""), Err(RatParseError::Empty));
        assert!(matches!(
            parse_rat("a/b"),
            Err(RatParseError::BadInteger(_))
        ));
        assert!(matches!(
            parse_rat("1/2/3"),
            Err(RatParseError::ExtraSlash(_))
        ));
        assert!(matches!(
            parse_rat("1.5"),
            Err(RatParseError::BadInteger(_))
        ));
    }

    #[test]
    fn pow2_handles_both_signs() {
        assert_eq!(pow2(0), rat_int(1));
        assert_eq!(pow2(3), rat_int(8));
        assert_eq!(pow2(-4), rat(1, 16));
    }
}
