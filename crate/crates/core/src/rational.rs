//! Exact rationals and their canonical text rendering.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational.
pub type Q = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Q::from_integer(acc)
}

/// Canonical rendering `p/q` with `q > 0` and `gcd(p, q) = 1`; integers keep
/// the explicit denominator `1` so that every rational has one textual shape.
pub fn render(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q`, `p` or `-p/q`.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

/// Human-oriented rendering used in equations: integers without denominator,
/// negative values with a leading minus.
pub fn pretty(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}{}/{}", if x.is_negative() { "-" } else { "" }, x.numer().abs(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_reduced_with_positive_denominator() {
        assert_eq!(render(&q(2, -4)), "-1/2");
        assert_eq!(render(&qi(6)), "6/1");
        assert_eq!(render(&Q::zero()), "0/1");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["-1/2", "6/1", "0/1", "17/24"] {
            assert_eq!(render(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("3").unwrap(), qi(3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), qi(1));
        assert_eq!(factorial(5), qi(120));
    }
}
