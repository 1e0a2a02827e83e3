//! JSON encoding shared by every schema: rationals travel as `"p/q"` strings
//! (integral values as `"p"`), integers as JSON numbers. Readers accept either
//! form for both.

use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::{Int, Rat};

pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).map_err(|_| bad())?;
            let q = Int::from_str(q.trim()).map_err(|_| bad())?;
            if q == Int::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(Int::from_str(s).map_err(|_| bad())?)),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Str(String),
}

impl Number {
    fn into_rat<E: serde::de::Error>(self) -> Result<Rat, E> {
        match self {
            Number::Int(i) => Ok(crate::rat(i)),
            Number::Str(s) => parse_rat(&s).map_err(E::custom),
        }
    }

    fn into_int<E: serde::de::Error>(self) -> Result<Int, E> {
        let r = self.into_rat::<E>()?;
        if !r.is_integer() {
            return Err(E::custom(format!("expected an integer, found {}", rat_to_string(&r))));
        }
        Ok(r.to_integer())
    }
}

fn int_value(x: &Int) -> serde_json::Value {
    match x.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(x.to_string()),
    }
}

fn rat_value(x: &Rat) -> serde_json::Value {
    serde_json::Value::from(rat_to_string(x))
}

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        rat_value(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        Number::deserialize(d)?.into_rat()
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rat_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<Number>::deserialize(d)?.into_iter().map(Number::into_rat).collect()
    }
}

pub mod rat_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(rat_value).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        Vec::<Vec<Number>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(Number::into_rat).collect())
            .collect()
    }
}

pub mod rat_matrices {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Vec<Rat>>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|m| m.iter().map(|r| r.iter().map(rat_value).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Vec<Rat>>>, D::Error> {
        Vec::<Vec<Vec<Number>>>::deserialize(d)?
            .into_iter()
            .map(|m| m.into_iter().map(|r| r.into_iter().map(Number::into_rat).collect()).collect())
            .collect()
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(int_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        Vec::<Number>::deserialize(d)?.into_iter().map(Number::into_int).collect()
    }
}

pub mod int_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(int_value).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        Vec::<Vec<Number>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(Number::into_int).collect())
            .collect()
    }
}

/// Parse a JSON document, reporting the line and column on failure.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    // serde_json already appends "at line L column C" to its messages.
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Doc {
        #[serde(with = "rat_matrix")]
        m: Vec<Vec<Rat>>,
        #[serde(with = "int_vec")]
        v: Vec<Int>,
    }

    #[test]
    fn rationals_as_strings() {
        assert_eq!(rat_to_string(&ratio(-3, 6)), "-1/2");
        assert_eq!(rat_to_string(&rat(4)), "4");
        assert_eq!(parse_rat(" 6/-4 ").unwrap(), ratio(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn document_round_trip() {
        let d: Doc = from_json(r#"{"m": [["1/2", 3], ["-2", "0"]], "v": [1, "-7"]}"#).unwrap();
        assert_eq!(d.m, vec![vec![ratio(1, 2), rat(3)], vec![rat(-2), rat(0)]]);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"m":[["1/2","3"],["-2","0"]],"v":[1,-7]}"#);
        assert_eq!(from_json::<Doc>(&text).unwrap(), d);
        let err = from_json::<Doc>("{\"m\": [[\"1/2\"]],\n \"v\": [\"1/2\"]}").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
