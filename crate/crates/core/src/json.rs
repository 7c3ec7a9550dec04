//! Exact big-integer values in JSON documents. With `arbitrary_precision`
//! enabled, `serde_json::Number` carries the decimal digits verbatim.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

pub(crate) fn number<T: ToString>(value: &T) -> Number {
    Number::from_str(&value.to_string()).expect("integer renders as a JSON number")
}

pub(crate) mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        number(value).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(|_| D::Error::custom("expected an integer"))
    }
}

pub(crate) mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        number(value).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = Number::deserialize(d)?;
        BigUint::from_str(&n.to_string())
            .map_err(|_| D::Error::custom("expected a nonnegative integer"))
    }
}
