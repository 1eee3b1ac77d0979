use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A line `s = m(t - s) + b` together with the page index `r` it is asserted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub m: Rational64,
    pub b: Rational64,
    pub r: i32,
}

impl LineSpec {
    pub fn new(m: Rational64, b: Rational64, r: i32) -> Result<Self> {
        if r < 1 {
            return Err(Error::BadPage(r));
        }
        Ok(Self { m, b, r })
    }
}

impl fmt::Display for LineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} b={} r={}", self.m, self.b, self.r)
    }
}

impl Serialize for LineSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("LineSpec", 3)?;
        st.serialize_field("m", &self.m.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("r", &self.r)?;
        st.end()
    }
}

/// Supremum of the intercepts at which a condition fails: it holds for `b`
/// exactly when `b > β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Intercept {
    NegInf,
    Finite(Rational64),
}

impl Intercept {
    pub fn is_finite(self) -> bool {
        matches!(self, Intercept::Finite(_))
    }

    pub fn finite(self) -> Option<Rational64> {
        match self {
            Intercept::Finite(x) => Some(x),
            Intercept::NegInf => None,
        }
    }

    /// Whether the condition holds at intercept `b`.
    pub fn admits(self, b: Rational64) -> bool {
        match self {
            Intercept::NegInf => true,
            Intercept::Finite(beta) => b > beta,
        }
    }

    pub fn shifted(self, by: Rational64) -> Intercept {
        match self {
            Intercept::NegInf => Intercept::NegInf,
            Intercept::Finite(x) => Intercept::Finite(x + by),
        }
    }

    pub fn max(self, other: Intercept) -> Intercept {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Intercept {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Intercept {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Intercept::NegInf, Intercept::NegInf) => Ordering::Equal,
            (Intercept::NegInf, _) => Ordering::Less,
            (_, Intercept::NegInf) => Ordering::Greater,
            (Intercept::Finite(a), Intercept::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Intercept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intercept::NegInf => f.write_str("-inf"),
            Intercept::Finite(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Intercept {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Parses `"NUM/DEN"` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let bad = || Error::Params(format!("not a rational number: \"{text}\""));
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num = i64::from_str(num.trim()).map_err(|_| bad())?;
            let den = i64::from_str(den.trim()).map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(num, den))
        }
        None => Ok(Rational64::from_integer(i64::from_str(text).map_err(|_| bad())?)),
    }
}

/// Spacing of the lattice `{s - m·x : s, x integers}`.
pub fn lattice_step(m: Rational64) -> Rational64 {
    Rational64::new(1, *m.denom())
}
