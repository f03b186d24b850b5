//! Rational scalars and their string form.
//!
//! Every scalar in the crate is a [`Rational`] (an always-reduced
//! `BigRational`). In all textual I/O a rational is written `"p/q"`, or `"p"`
//! when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_q(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Formats as `p/q`, or `p` for integers.
pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p/q` or `p` (optional sign, surrounding whitespace allowed).
pub fn parse(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::MalformedRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn is_nonzero(q: &Rational) -> bool {
    !q.is_zero()
}

/// `serde(with = ...)` adapter writing a rational as its string form.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`as_string`] for sequences.
pub mod vec_as_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&to_string(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Least common multiple of the denominators of `row`.
pub fn common_denominator<'a>(row: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    row.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse(" -4 ").unwrap(), rat(-4));
        assert_eq!(parse("2/-4").unwrap(), frac(-1, 2));
        assert_eq!(to_string(&frac(6, 3)), "2");
        assert_eq!(to_string(&frac(-1, 5040)), "-1/5040");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn reduced_form() {
        let q = frac(10, -4);
        assert_eq!(q.numer(), &BigInt::from(-5));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(7), BigInt::from(5040));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
