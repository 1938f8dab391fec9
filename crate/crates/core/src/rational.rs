//! Exact rational scalars.
//!
//! `Q` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. On the wire a rational is the string `"p/q"` or
//! `"p"`; plain JSON integers are accepted on input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qz() -> Q {
    Q::zero()
}

pub fn qone() -> Q {
    Q::one()
}

/// `n` as a rational.
pub fn from_usize(n: usize) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn format(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer value of `x`, if it is one.
pub fn as_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

/// Serde wrapper: a rational as `"p/q"`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rat(pub Q);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(&self.0))
    }
}

impl From<Q> for Rat {
    fn from(x: Q) -> Self {
        Rat(x)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                parse(v).map(Rat).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(q(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(Q::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

pub fn to_rats(v: &[Q]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

pub fn from_rats(v: Vec<Rat>) -> Vec<Q> {
    v.into_iter().map(|r| r.0).collect()
}

pub fn to_rat_matrix(m: &[Vec<Q>]) -> Vec<Vec<Rat>> {
    m.iter().map(|r| to_rats(r)).collect()
}

pub fn from_rat_matrix(m: Vec<Vec<Rat>>) -> Vec<Vec<Q>> {
    m.into_iter().map(from_rats).collect()
}
