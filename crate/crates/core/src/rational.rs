//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(x: impl Into<BigInt>) -> Rational {
    Rational::from_integer(x.into())
}

/// `p/q`; panics if `q` is zero.
pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Renders as `p/q`, always with the denominator (`12/1`, `-3/4`).
pub fn to_pq(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`, with an optional leading `-`.
/// Decimal points and exponents are rejected so that no floating-point
/// value can slip in.
pub fn parse_rational(text: &str) -> Result<Rational> {
    fn integer(s: &str, offset: usize, allow_sign: bool) -> Result<BigInt> {
        let digits = if allow_sign { s.strip_prefix('-').unwrap_or(s) } else { s };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(offset, format!("expected an integer, found {s:?}")));
        }
        s.parse::<BigInt>()
            .map_err(|e| Error::parse(offset, e.to_string()))
    }
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    match t.split_once('/') {
        None => Ok(int(integer(t, lead, true)?)),
        Some((p, q)) => {
            let num = integer(p, lead, true)?;
            let den = integer(q, lead + p.len() + 1, false)?;
            if den.is_zero() {
                return Err(Error::parse(lead + p.len() + 1, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `x^k` for a non-negative exponent.
pub fn pow(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Smallest integer not below `x`.
pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}

pub(crate) mod serde_pq {
    use super::{to_pq, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(x))
    }

    pub mod option {
        use super::{to_pq, Rational};
        use serde::Serializer;

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_str(&to_pq(v)),
                None => s.serialize_none(),
            }
        }
    }
}

/// Integers serialize as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise.
pub(crate) mod serde_bigint {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            None => s.serialize_none(),
            Some(v) => match (v.to_u64(), v.to_i64()) {
                (Some(u), _) => s.serialize_u64(u),
                (None, Some(i)) => s.serialize_i64(i),
                _ => s.serialize_str(&v.to_string()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_with_denominator() {
        assert_eq!(to_pq(&int(12)), "12/1");
        assert_eq!(to_pq(&ratio(6, -8)), "-3/4");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/12").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for bad in ["0.1", "1e3", "1/0", "", "/2", "1/", "1/-2", "a/b", "1/2/3", "+1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn ceil_and_pow() {
        assert_eq!(ceil(&ratio(7, 2)), BigInt::from(4));
        assert_eq!(ceil(&ratio(-7, 2)), BigInt::from(-3));
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&ratio(2, 3), 0), int(1));
    }
}
