//! Exact rational helpers. Every ratio, bound and cost in the crate is a
//! [`Rational`]; floating point only appears in display-only logarithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `H_n = 1 + 1/2 + ... + 1/n`; `H_0 = 0`.
pub fn harmonic(n: usize) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, i| acc + ratio(1, i as i64))
}

/// Canonical text form: `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `p/q` or `-p/q`. The denominator must be nonzero.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Lossy conversion for display-only quantities.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn ceil_to_u64(r: &Rational) -> u64 {
    use num_traits::ToPrimitive;
    r.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

pub fn one() -> Rational {
    Rational::one()
}

pub mod serde_string {
    //! Serializes a [`Rational`] as its canonical fraction string.
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}
