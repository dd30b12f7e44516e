//! Rational-number helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `"5/2"`, `"-1"` or `"0.5"`-free rational literals.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `Some(n)` when `r` is an integer fitting in `i64`.
pub fn to_i64(r: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Render as `n` or `n/d`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("5/2").unwrap(), rat(5, 2));
        assert_eq!(parse_rat(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rat("4/-8").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(-3, 6)), "-1/2");
        assert_eq!(to_i64(&int(7)), Some(7));
        assert_eq!(to_i64(&rat(7, 2)), None);
    }
}
