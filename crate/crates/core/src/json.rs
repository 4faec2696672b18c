//! Serde helpers writing big integers as plain JSON numbers.
//!
//! Relies on serde_json's `arbitrary_precision` feature so that integers of
//! any size round-trip through [`serde_json::Number`] without loss.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{de::Error as _, ser::Error as _, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

pub(crate) fn to_number(x: &BigInt) -> Result<Number, String> {
    Number::from_str(&x.to_string()).map_err(|e| e.to_string())
}

pub(crate) fn from_number(n: &Number) -> Result<BigInt, String> {
    BigInt::from_str(&n.to_string()).map_err(|_| format!("`{n}` is not an integer"))
}

pub(crate) mod bigint_seq {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums = v
            .iter()
            .map(to_number)
            .collect::<Result<Vec<_>, _>>()
            .map_err(S::Error::custom)?;
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let nums = Vec::<Number>::deserialize(d)?;
        nums.iter()
            .map(from_number)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)
    }
}
