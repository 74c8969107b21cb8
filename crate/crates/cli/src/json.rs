//! Integer encoding shared by input and output: JSON numbers when
//! `|v| < 2^53`, decimal strings otherwise. Anything else is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use seifert_core::exactmath::{NormalForm, Rat};

const LIMIT: i64 = 1 << 53;

fn is_small(v: &BigInt) -> bool {
    v.abs() < BigInt::from(LIMIT)
}

pub fn int(v: &BigInt) -> Value {
    if is_small(v) {
        Value::from(v.to_i64().expect("below 2^53"))
    } else {
        Value::String(v.to_string())
    }
}

pub fn uint(v: u64) -> Value {
    int(&BigInt::from(v))
}

pub fn ints(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(int).collect())
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn group(nf: &NormalForm) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("free_rank".into(), Value::from(nf.free_rank));
    m.insert("torsion".into(), ints(&nf.torsion));
    Value::Object(m)
}

/// An integer as it appears in a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JInt(pub BigInt);

impl JInt {
    pub fn to_u64(&self, what: &str) -> Result<u64, String> {
        self.0
            .to_u64()
            .ok_or_else(|| format!("{what} must be a non-negative integer below 2^64, got {}", self.0))
    }
}

impl From<BigInt> for JInt {
    fn from(v: BigInt) -> Self {
        JInt(v)
    }
}

impl From<u64> for JInt {
    fn from(v: u64) -> Self {
        JInt(BigInt::from(v))
    }
}

impl Serialize for JInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if is_small(&self.0) {
            s.serialize_i64(self.0.to_i64().expect("below 2^53"))
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

struct JIntVisitor;

impl<'de> Visitor<'de> for JIntVisitor {
    type Value = JInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer: a JSON number below 2^53 in absolute value or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JInt, E> {
        let v = BigInt::from(v);
        if !is_small(&v) {
            return Err(E::custom(format!("{v} is at least 2^53 in absolute value; write it as a string")));
        }
        Ok(JInt(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JInt, E> {
        let v = BigInt::from(v);
        if !is_small(&v) {
            return Err(E::custom(format!("{v} is at least 2^53; write it as a string")));
        }
        Ok(JInt(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<JInt, E> {
        Err(E::custom(format!("{v} is not an integer")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JInt, E> {
        let parsed: BigInt = v
            .parse()
            .map_err(|_| E::custom(format!("{v:?} is not a decimal integer")))?;
        if is_small(&parsed) {
            return Err(E::custom(format!("{v:?} is below 2^53; write it as a JSON number")));
        }
        Ok(JInt(parsed))
    }
}

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<JInt, D::Error> {
        d.deserialize_any(JIntVisitor)
    }
}
