//! Rationals in lowest terms, plus the string form used by every JSON schema.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always normalized (denominator positive).
pub type Q = BigRational;

/// The integer `n` as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qz(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// `base^e` for a possibly negative exponent.
pub fn qpow(base: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Canonical string: `"a/b"`, or `"a"` when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseQError {
    #[error("empty rational string")]
    Empty,
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parse `"a"` or `"a/b"` with optional sign on the numerator.
pub fn parse_q(s: &str) -> Result<Q, ParseQError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseQError::Empty);
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let bad = || ParseQError::Malformed(s.to_string());
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = match d {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseQError::ZeroDenominator(s.to_string()));
    }
    Ok(Q::new(num, den))
}

/// Nearest `f64`, for the optional decimal annotations in reports.
pub fn to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both down to avoid overflow on huge operands.
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Binomial coefficient as a rational.
pub fn binom(n: u64, k: u64) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Q::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_strings() {
        for s in ["0", "1", "-3", "1/2", "-7/12", "12345678901234567890/7"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("4/6").unwrap()), "2/3");
        assert!(parse_q("3/-1").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_q("1/0"), Err(ParseQError::ZeroDenominator("1/0".into())));
        assert!(matches!(parse_q("x"), Err(ParseQError::Malformed(_))));
        assert!(matches!(parse_q(""), Err(ParseQError::Empty)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), q(10));
        assert_eq!(binom(2, 5), q(0));
        assert_eq!(factorial(5), q(120));
        assert_eq!(qpow(&q(2), -3), qf(1, 8));
    }
}
