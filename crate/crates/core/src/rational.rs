//! Exact rationals. Every distance, weight and constant is one of these;
//! nothing in the library compares floats.

use num_rational::{BigRational, Ratio};
use num_traits::Signed;

use crate::{Error, Result};

/// Fraction used for distances and weights. Numerators and denominators stay
/// far below `i64::MAX` for every instance the library enumerates.
pub type Frac = Ratio<i64>;

/// Arbitrary-precision fraction, used for the closed-form constants.
pub type BigFrac = BigRational;

pub fn frac(num: i64, den: i64) -> Frac {
    Frac::new(num, den)
}

/// Renders as `p/q`, always with an explicit denominator.
pub fn format_frac(x: &Frac) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn format_big(x: &BigFrac) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_frac(s: &str) -> Result<Frac> {
    let bad = || Error::Parse(format!("expected a fraction p/q, got {s:?}"));
    let (num, den) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Frac::new(num, den))
}

pub fn to_big(x: &Frac) -> BigFrac {
    BigFrac::new((*x.numer()).into(), (*x.denom()).into())
}

/// Float rendering for display only.
pub fn approx(x: &Frac) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn is_nonnegative(x: &Frac) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_with_denominator() {
        assert_eq!(format_frac(&frac(2, 4)), "1/2");
        assert_eq!(format_frac(&frac(0, 7)), "0/1");
        assert_eq!(format_frac(&frac(3, 1)), "3/1");
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_frac("1/3").unwrap(), frac(1, 3));
        assert_eq!(parse_frac(" 4 / 6 ").unwrap(), frac(2, 3));
        assert_eq!(parse_frac("5").unwrap(), frac(5, 1));
        assert!(parse_frac("1/0").is_err());
        assert!(parse_frac("x").is_err());
    }
}
