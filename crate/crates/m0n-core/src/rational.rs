//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals.  The
//! canonical text form is `p/q` in lowest terms with `q > 0`, abbreviated to
//! the bare numerator when `q = 1`; [`format_q`] and [`parse_q`] are the two
//! ends of that round trip.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The scalar type: an arbitrary-precision rational number.
pub type Q = num_rational::BigRational;

/// The rational `value/1`.
#[inline]
pub fn q(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

/// The rational `numer/denom` in lowest terms.
///
/// Panics if `denom == 0`; use only with literal denominators.
#[inline]
pub fn qq(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

/// Formats a rational in canonical text form: `p/q` in lowest terms with a
/// positive denominator, or just `p` for integers.
pub fn format_q(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p` or `p/q` into a rational.  Accepts a leading `-` on the
/// numerator; the denominator must be a positive integer.
pub fn parse_q(text: &str) -> Result<Q> {
    let err = |msg: String| Error::Parse { pos: 0, msg };
    let (numer, denom) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (text.trim(), None),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| err(format!("expected an integer numerator, found {numer:?}")))?;
    let denom: BigInt = match denom {
        Some(d) => d
            .parse()
            .map_err(|_| err(format!("expected an integer denominator, found {d:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err("zero denominator".into()));
    }
    if denom.is_negative() {
        return Err(err(format!("denominator must be positive, found {denom}")));
    }
    Ok(Q::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_q(&q(0)), "0");
        assert_eq!(format_q(&q(-12)), "-12");
        assert_eq!(format_q(&qq(5, 3)), "5/3");
        assert_eq!(format_q(&qq(-1, 3)), "-1/3");
        // Reduction to lowest terms happens on construction.
        assert_eq!(format_q(&qq(6, 4)), "3/2");
    }

    #[test]
    fn parses_canonical_and_unreduced_forms() {
        assert_eq!(parse_q("5/3").unwrap(), qq(5, 3));
        assert_eq!(parse_q("-7").unwrap(), q(-7));
        assert_eq!(parse_q("6/4").unwrap(), qq(3, 2));
        assert_eq!(parse_q(" 0 ").unwrap(), q(0));
    }

    #[test]
    fn rejects_bad_denominators() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("1/-3").is_err());
        assert!(parse_q("a/b").is_err());
        assert!(parse_q("1.5").is_err());
    }
}
