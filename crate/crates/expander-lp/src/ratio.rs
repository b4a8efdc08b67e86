//! Exact rational scalars and their canonical `"p/q"` text form.
//!
//! Every threshold in this crate ((2ε−1)c, δn, the x interval) is compared
//! exactly; floats never touch these code paths. Rationals serialize as
//! reduced `"p/q"` with q ≥ 1, e.g. `"3/4"`, `"0/1"`, `"-7/24"`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatioError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Builds p/q from machine integers.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn ratio_int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or a bare integer `"p"`. No whitespace, base 10,
/// optional leading sign on p only.
pub fn parse_ratio(text: &str) -> Result<Rational, RatioError> {
    if text.is_empty() {
        return Err(RatioError::Empty);
    }
    let malformed = || RatioError::Malformed(text.to_string());
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_text.parse().map_err(|_| malformed())?;
    let denom: BigInt = match den_text {
        Some(d) => {
            // The denominator carries no sign of its own.
            if d.starts_with('+') || d.starts_with('-') {
                return Err(malformed());
            }
            d.parse().map_err(|_| malformed())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RatioError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Canonical text form: reduced, denominator always present and positive.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// ⌊r·n⌋ for nonnegative r, as a count.
pub fn floor_mul(r: &Rational, n: usize) -> usize {
    let scaled = r * BigRational::from_integer(BigInt::from(n));
    let f = scaled.numer().div_floor(scaled.denom());
    assert!(!f.is_negative(), "floor_mul takes nonnegative arguments");
    let digits = f.to_u64_digits().1;
    match digits.len() {
        0 => 0,
        1 => digits[0] as usize,
        _ => panic!("floor_mul overflow"),
    }
}

/// Serde adapter: rationals as canonical `"p/q"` strings.
pub mod serde_pq {
    use super::{format_ratio, parse_ratio, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_ratio(&text).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_integer_forms() {
        assert_eq!(parse_ratio("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_ratio("-7/24").unwrap(), ratio(-7, 24));
        assert_eq!(parse_ratio("5").unwrap(), ratio_int(5));
        assert_eq!(parse_ratio("-2").unwrap(), ratio_int(-2));
        assert_eq!(parse_ratio("6/8").unwrap(), ratio(3, 4));
    }

    #[test]
    fn rejects_malformed_literals() {
        assert_eq!(parse_ratio(""), Err(RatioError::Empty));
        for bad in ["1/2/3", "a/b", "1/", "/2", "1.5", "1/-2", "1/+2", "1 /2"] {
            assert!(
                matches!(parse_ratio(bad), Err(RatioError::Malformed(_))),
                "accepted {bad:?}"
            );
        }
        assert_eq!(
            parse_ratio("1/0"),
            Err(RatioError::ZeroDenominator("1/0".to_string()))
        );
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format_ratio(&ratio(6, 8)), "3/4");
        assert_eq!(format_ratio(&ratio(0, 5)), "0/1");
        assert_eq!(format_ratio(&ratio(3, -4)), "-3/4");
        assert_eq!(format_ratio(&ratio_int(7)), "7/1");
    }

    #[test]
    fn format_parse_round_trip() {
        for p in -12i64..=12 {
            for q in 1i64..=9 {
                let r = ratio(p, q);
                assert_eq!(parse_ratio(&format_ratio(&r)).unwrap(), r);
            }
        }
    }

    #[test]
    fn floor_mul_matches_hand_values() {
        assert_eq!(floor_mul(&ratio(3, 14), 14), 3);
        assert_eq!(floor_mul(&ratio(3, 14), 13), 2);
        assert_eq!(floor_mul(&ratio(1, 2), 7), 3);
        assert_eq!(floor_mul(&ratio(1, 1), 9), 9);
        assert_eq!(floor_mul(&ratio(0, 1), 5), 0);
        assert_eq!(floor_mul(&ratio(3, 13), 13), 3);
    }
}
