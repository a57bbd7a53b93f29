//! Exact rational arithmetic, polynomials over Q, interpolation and special
//! constants (binomials, Bernoulli numbers, zeta at negative odd integers).
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere.

mod special;
mod squarepoly;
mod unipoly;

pub use special::{bernoulli, binomial_int, binomial_rat, factorial, zeta_negative};
pub use squarepoly::{tensor_interpolate, PolyJson, SquarePolynomial, TermJson};
pub use unipoly::{interpolate_univariate, UniPolynomial};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact rational number. Always stored in lowest terms
/// with positive denominator (guaranteed by `num_rational`).
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer as a `Rational`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the exact fraction n/d.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (decimal-free fraction strings).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// True when the rational is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7", "1152921504606846976/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_form_arithmetic() {
        let a = frac(1, 6);
        let b = frac(1, 4);
        assert_eq!(a.clone() - b.clone(), frac(-1, 12));
        assert_eq!((a.clone() + (-a.clone())), rat(0));
        assert_eq!(frac(2, 4), frac(1, 2));
    }
}
