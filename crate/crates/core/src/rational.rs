//! Exact rational arithmetic helpers and the `"p/q"` wire format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::Result;

/// The single number type of the crate: an arbitrary-precision rational.
pub type Q = BigRational;

/// Builds `n/d` from machine integers. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn qi(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// Parses the wire format: `"p/q"` or a bare integer `"n"`.
///
/// Rejects zero denominators instead of panicking, so untrusted input can
/// be routed through here safely.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let fail = |reason: &str| Error::InvalidRational {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty string"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| fail("numerator is not an integer"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| fail("denominator is not an integer"))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(fail("zero denominator"));
    }
    Ok(Q::new(numer, denom))
}

/// Parses a rational and additionally requires it to be non-negative
/// (distance tables, radii).
pub fn parse_nonnegative(s: &str) -> Result<Q> {
    let v = parse_rational(s)?;
    if v.is_negative() {
        return Err(Error::InvalidRational {
            input: s.to_string(),
            reason: "negative value not allowed here".to_string(),
        });
    }
    Ok(v)
}

/// Renders a rational in the wire format (`Display` of `BigRational`
/// already prints `p/q`, or just `p` when the denominator is one).
pub fn format_rational(v: &Q) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_integer() {
        assert_eq!(parse_rational("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_rational("7").unwrap(), qi(7));
        assert_eq!(parse_rational("-4/6").unwrap(), q(-2, 3));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn round_trips_reduced_form() {
        let v = q(2, 4);
        assert_eq!(format_rational(&v), "1/2");
        assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
    }
}
