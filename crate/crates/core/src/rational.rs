//! Exact rational sequences and the `"p/q"` string encoding used at every boundary.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.75"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mag = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(mag, den);
        return Ok(if negative { -r } else { r });
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Canonical `"p/q"` text; integers print without a denominator.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // ratios of huge integers overflow the direct conversion
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn sign(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_int(v: &BigInt) -> Sign {
        match v.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a big integer as a decimal string.
pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a list of rationals as a JSON array of `"p/q"` strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// What a [`RationalSeq`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Moment,
    Classical,
    Free,
    Boolean,
    Shifted,
}

/// A finite exact sequence indexed from 0.
///
/// Cumulant sequences carry an unused (zero) entry at index 0 so that index `n`
/// always holds the order-`n` value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeq {
    #[serde(with = "serde_rational_vec")]
    values: Vec<BigRational>,
    role: Role,
}

impl RationalSeq {
    pub fn new(values: Vec<BigRational>, role: Role) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a sequence needs at least one entry"));
        }
        if role == Role::Moment && !values[0].is_one() {
            return Err(Error::domain(format!(
                "moment sequences start with m0 = 1, got {}",
                values[0]
            )));
        }
        Ok(RationalSeq { values, role })
    }

    pub fn moments(values: Vec<BigRational>) -> Result<Self> {
        Self::new(values, Role::Moment)
    }

    pub fn from_ints(values: &[i64], role: Role) -> Result<Self> {
        Self::new(values.iter().map(|&v| int(v)).collect(), role)
    }

    pub fn from_bigints(values: Vec<BigInt>, role: Role) -> Result<Self> {
        Self::new(values.into_iter().map(BigRational::from_integer).collect(), role)
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigRational> {
        self.values
    }

    /// Highest index held.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, n: usize) -> Option<&BigRational> {
        self.values.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut values = self.values.clone();
        values.truncate(order + 1);
        RationalSeq {
            values,
            role: self.role,
        }
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    /// True when every odd-indexed entry vanishes.
    pub fn is_even(&self) -> bool {
        self.values.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(format_rational).collect()
    }

    pub(crate) fn require_aligned(&self, other: &RationalSeq) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::domain(format!(
                "length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl Index<usize> for RationalSeq {
    type Output = BigRational;

    fn index(&self, n: usize) -> &BigRational {
        &self.values[n]
    }
}

impl fmt::Display for RationalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.values.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("9/10").unwrap(), rat(9, 10));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("-0.75").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.9").unwrap(), rat(9, 10));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn moment_sequences_start_at_one() {
        assert!(RationalSeq::from_ints(&[2, 0, 1], Role::Moment).is_err());
        assert!(RationalSeq::from_ints(&[1, 0, 1], Role::Moment).is_ok());
        assert!(RationalSeq::from_ints(&[], Role::Free).is_err());
    }

    #[test]
    fn json_uses_strings() {
        let s = RationalSeq::new(vec![int(1), rat(1, 2)], Role::Moment).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"values":["1","1/2"],"role":"moment"}"#);
        let back: RationalSeq = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn huge_ratio_to_f64() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
