//! Exact arithmetic substrate: integer polynomials in `q`, exact rationals, and
//! truncated power series in an auxiliary variable `z` with `QPoly` coefficients.
//!
//! Nothing in this crate uses floating point.

mod poly;
mod rational;
mod series;

pub use poly::QPoly;
pub use rational::Rational;
pub use series::QZSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("projective space of dimension {0} is undefined (need n >= -1)")]
    ProjectiveDimension(i64),
    #[error("gaussian binomial [{n} choose {k}] needs 0 <= k <= n")]
    BinomialRange { n: i64, k: i64 },
    #[error("series truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Exact JSON numbers for `BigInt` values, whatever their size.
pub(crate) mod bigint_json {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    fn to_number(n: &BigInt) -> Number {
        Number::from_str(&n.to_string()).expect("integer literal is a valid JSON number")
    }

    fn from_number<E: serde::de::Error>(n: &Number) -> Result<BigInt, E> {
        let text = n.to_string();
        BigInt::from_str(&text).map_err(|_| E::custom(format!("expected an integer, got {text}")))
    }

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_number(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_number(&Number::deserialize(d)?)
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Number>::deserialize(d)?
            .iter()
            .map(from_number::<D::Error>)
            .collect()
    }
}

pub(crate) use bigint_json::{deserialize as de_bigint, serialize as ser_bigint};
