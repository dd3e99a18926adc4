use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            s.parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Serde adapter writing a [`Rational`] as `"num/den"` (`"num"` when the
/// denominator is one).
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_omits_unit_denominator() {
        let r = Rational::new(BigInt::from(10), BigInt::from(5));
        assert_eq!(r.to_string(), "2");
        let r = Rational::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(parse_rational("17").unwrap().to_string(), "17");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
