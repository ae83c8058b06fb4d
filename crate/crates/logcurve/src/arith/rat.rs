//! Exact rational scalars.
//!
//! Every scalar in this crate is a [`Rat`], an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. There is no floating
//! point anywhere in the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal-free rational string such as `"5"`, `"-3/2"` or `"+7/4"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.parse::<BigInt>()
            .map_err(|_| format!("invalid integer `{t}`"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Canonical string form: `"n"` for integers, `"n/d"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "5", "-3/2", "7/4", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s.trim_start_matches('+'));
        }
        // non-canonical input normalizes
        assert_eq!(rat_to_string(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&parse_rat("3/-2").unwrap()), "-3/2");
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/2").is_err());
    }
}
