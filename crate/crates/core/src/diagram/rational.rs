//! JSON representation of exact rationals: integers, or strings `"p/q"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(super) enum Json {
    Int(i64),
    Text(String),
}

impl Json {
    pub(super) fn into_rational(self) -> Result<BigRational, String> {
        match self {
            Json::Int(v) => Ok(BigRational::from_integer(v.into())),
            Json::Text(s) => parse(&s).ok_or_else(|| format!("not a rational: {s:?}")),
        }
    }

    pub(super) fn from_rational(v: &BigRational) -> Json {
        match (v.is_integer(), v.to_integer().to_i64()) {
            (true, Some(i)) => Json::Int(i),
            (true, None) => Json::Text(v.numer().to_string()),
            _ => Json::Text(format!("{}/{}", v.numer(), v.denom())),
        }
    }
}

pub(super) fn parse(s: &str) -> Option<BigRational> {
    let int = |t: &str| -> Option<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        t.parse().ok()
    };
    match s.split_once('/') {
        None => Some(BigRational::from_integer(int(s)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(int(p)?, q))
        }
    }
}
