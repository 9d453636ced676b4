//! Nonnegative exact rationals extended by `+inf`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A nonnegative reduced rational, or the distinguished value `+inf`.
///
/// The derived ordering places every finite value below `Infinity`, so `min`
/// and `max` behave as infimum and supremum over finite sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExtRationalError {
    #[error("negative value {0} is not a valid log-distance")]
    Negative(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a rational or \"inf\"")]
    Parse(String),
}

impl ExtRational {
    pub fn infinity() -> Self {
        ExtRational::Infinity
    }

    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRational::Finite(BigRational::one())
    }

    /// `num/den`, reduced. Fails on a zero denominator or a negative quotient.
    pub fn new(num: i64, den: i64) -> Result<Self, ExtRationalError> {
        if den == 0 {
            return Err(ExtRationalError::ZeroDenominator);
        }
        Self::from_ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ratio(value: BigRational) -> Result<Self, ExtRationalError> {
        if value.is_negative() {
            return Err(ExtRationalError::Negative(value.to_string()));
        }
        Ok(ExtRational::Finite(value))
    }

    pub fn from_integer(n: u64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact `num/den` for nonnegative integers; panics on `den == 0`.
    pub fn frac(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtRational::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    /// True for finite values with denominator one.
    pub fn is_integer(&self) -> bool {
        self.finite().is_some_and(|r| r.is_integer())
    }

    /// The value as a `u64` when it is a finite integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.finite()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_u64())
    }

    /// Multiply by a nonnegative integer. `inf * 0` is left as `inf`.
    pub fn scale(&self, factor: u64) -> ExtRational {
        match self {
            ExtRational::Finite(r) => {
                ExtRational::Finite(r * BigRational::from_integer(BigInt::from(factor)))
            }
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    /// Divide by a positive integer.
    pub fn div_int(&self, divisor: u64) -> ExtRational {
        assert!(divisor != 0, "division by zero");
        match self {
            ExtRational::Finite(r) => {
                ExtRational::Finite(r / BigRational::from_integer(BigInt::from(divisor)))
            }
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    /// Subtract an integer, saturating nothing: the result must stay nonnegative.
    pub fn checked_sub_int(&self, k: u64) -> Option<ExtRational> {
        match self {
            ExtRational::Finite(r) => {
                let out = r - BigRational::from_integer(BigInt::from(k));
                (!out.is_negative()).then_some(ExtRational::Finite(out))
            }
            ExtRational::Infinity => Some(ExtRational::Infinity),
        }
    }

    /// The ultrametric dual `1/delta`, with `1/inf = 0` and `1/0 = inf`.
    pub fn reciprocal(&self) -> ExtRational {
        match self {
            ExtRational::Infinity => ExtRational::zero(),
            ExtRational::Finite(r) if r.is_zero() => ExtRational::Infinity,
            ExtRational::Finite(r) => ExtRational::Finite(r.recip()),
        }
    }
}

impl From<BigRational> for ExtRational {
    /// Panics on negative input; use [`ExtRational::from_ratio`] for a checked path.
    fn from(value: BigRational) -> Self {
        Self::from_ratio(value).expect("negative rational")
    }
}

impl From<u64> for ExtRational {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Infinity => f.write_str("inf"),
            ExtRational::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = ExtRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "inf" | "+inf" | "infinity" | "+infinity" | "∞") {
            return Ok(ExtRational::Infinity);
        }
        let parse_int = |x: &str| -> Result<BigInt, ExtRationalError> {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| ExtRationalError::Parse(s.to_string()))
        };
        let value = match t.split_once('/') {
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(ExtRationalError::ZeroDenominator);
                }
                BigRational::new(parse_int(p)?, q)
            }
            None => BigRational::from_integer(parse_int(t)?),
        };
        Self::from_ratio(value)
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(u64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(ExtRational::from_integer(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_on_top() {
        let a = ExtRational::frac(3, 2);
        let b = ExtRational::from_integer(2);
        assert!(a < b);
        assert!(b < ExtRational::Infinity);
        assert_eq!(a.clone().min(ExtRational::Infinity), a);
    }

    #[test]
    fn parse_and_display() {
        let x: ExtRational = "6/4".parse().unwrap();
        assert_eq!(x.to_string(), "3/2");
        assert_eq!("inf".parse::<ExtRational>().unwrap(), ExtRational::Infinity);
        assert_eq!("7".parse::<ExtRational>().unwrap().to_u64(), Some(7));
        assert!("-1/2".parse::<ExtRational>().is_err());
        assert!("1/0".parse::<ExtRational>().is_err());
        assert!("abc".parse::<ExtRational>().is_err());
    }

    #[test]
    fn reciprocal_convention() {
        assert_eq!(ExtRational::Infinity.reciprocal(), ExtRational::zero());
        assert_eq!(ExtRational::zero().reciprocal(), ExtRational::Infinity);
        assert_eq!(ExtRational::frac(3, 2).reciprocal(), ExtRational::frac(2, 3));
    }

    #[test]
    fn serde_uses_strings() {
        let v = vec![ExtRational::frac(13, 8), ExtRational::Infinity];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["13/8","inf"]"#);
        let back: Vec<ExtRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
