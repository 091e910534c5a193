//! Big integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub fn int(n: &BigInt) -> Value {
    // arbitrary_precision keeps every digit
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal is valid JSON"))
}

pub fn ints<'a>(ns: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(ns.into_iter().map(int).collect())
}

pub fn to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::InvalidInput(format!("expected an integer, got {n}"))),
        other => Err(Error::InvalidInput(format!("expected an integer, got {other}"))),
    }
}

pub fn to_ints(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("expected an array, got {v}")))?
        .iter()
        .map(to_int)
        .collect()
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("missing field \"{key}\"")))
}
