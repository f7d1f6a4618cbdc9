//! JSON encoding of unbounded integers.
//!
//! Integers with magnitude up to 2^53 are emitted as JSON numbers; anything
//! larger is emitted as a decimal string so that consumers parsing into IEEE
//! doubles never silently lose precision.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

const SAFE_MAX: i64 = 1 << 53;

pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE_MAX => s.serialize_i64(v),
        _ => s.serialize_str(&x.to_string()),
    }
}

pub fn opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => int(v, s),
        None => s.serialize_none(),
    }
}

/// Borrowed wrapper so integers can sit inside arrays and tuples.
pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int(self.0, s)
    }
}

/// Decodes a value produced by [`int`].
pub fn parse_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn needs_string(x: &BigInt) -> bool {
    x.abs() > BigInt::from(SAFE_MAX)
}
