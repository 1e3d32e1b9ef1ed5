//! Exact rational scalars and their canonical text form.
//!
//! Every rational that leaves the crate (JSON reports, config files) is
//! written as `"p/q"` with `q > 0` and `gcd(p, q) = 1`, or `"p"` when `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Canonical `p/q` rendering (`BigRational` is always kept reduced with a
/// positive denominator).
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Converts an integral rational to `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer().clone()).ok()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

pub fn fmt_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn fmt_rows(rows: &[Vec<Q>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| fmt_vec(r)).collect()
}

/// Accepts either an integer or a `"p/q"` string in hand-written configs.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    pub fn to_q(&self) -> Result<Q> {
        match self {
            RawRational::Int(n) => Ok(q(*n)),
            RawRational::Text(s) => parse_q(s),
        }
    }
}
