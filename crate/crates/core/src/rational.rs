//! Exact rational scalars and their canonical wire form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parse a rational from its wire form: `"num/den"` or a bare integer.
/// Input need not be reduced; the result always is.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let numer = BigInt::from_str(n.trim()).map_err(|_| Error::BadRational(s.to_string()))?;
        let denom = BigInt::from_str(d.trim()).map_err(|_| Error::BadRational(s.to_string()))?;
        if denom.is_zero() {
            return Err(Error::BadRational(s.to_string()));
        }
        Ok(BigRational::new(numer, denom))
    } else {
        let numer = BigInt::from_str(t).map_err(|_| Error::BadRational(s.to_string()))?;
        Ok(BigRational::from_integer(numer))
    }
}

/// Canonical wire form: reduced, positive denominator, `/1` elided.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64()
        .expect("rational convertible to f64 at desk scale")
}

pub fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn abs(q: &BigRational) -> BigRational {
    q.abs()
}
