//! JSON helpers for exact integers.

use std::fmt::Display;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use serde_json::{Number, Value};

/// Serializes any integer with a decimal `Display` as an exact JSON number.
pub(crate) fn big_number<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    let n = Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

/// Exact JSON number from a decimal integer.
pub fn number<T: Display>(v: &T) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer"))
}
