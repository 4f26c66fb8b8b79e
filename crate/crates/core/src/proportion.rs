//! Exact rational proportions in `(0, 1]`.
//!
//! Every comparison is an integer cross-multiplication. Thresholds such as
//! `(n+1)/(2n)` are interval endpoints that must classify exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `0 < num <= den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Proportion {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Proportion {
    pub const ONE: Proportion = Proportion { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidProportion(format!("{num}/0 has zero denominator")));
        }
        if num == 0 || num > den {
            return Err(Error::InvalidProportion(format!("{num}/{den} is not in (0,1]")));
        }
        let g = gcd(num, den);
        Ok(Proportion { num: num / g, den: den / g })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Smallest coverage count `c` with `c / n >= self`, i.e. `ceil(num*n/den)`.
    pub fn required_coverage(self, n: usize) -> usize {
        let prod = self.num as u128 * n as u128;
        prod.div_ceil(self.den as u128) as usize
    }

    /// `coverage / n >= self`, evaluated as `den * coverage >= num * n`.
    pub fn is_met_by(self, coverage: usize, n: usize) -> bool {
        self.den as u128 * coverage as u128 >= self.num as u128 * n as u128
    }

    /// `(a + b) / 2` for two endpoints given as raw fractions; either may be `0/1`.
    pub(crate) fn midpoint_raw(a: (u64, u64), b: (u64, u64)) -> Result<Self> {
        let num = a.0 as u128 * b.1 as u128 + b.0 as u128 * a.1 as u128;
        let den = 2 * a.1 as u128 * b.1 as u128;
        Self::from_u128(num, den)
    }

    /// A value strictly above `lo = x/y` and strictly below every fraction
    /// `c / resolution` that exceeds `lo`. Used to probe the open left end of
    /// an interval whose breakpoints all have denominator `resolution`.
    pub(crate) fn just_above_raw(lo: (u64, u64), resolution: usize) -> Result<Self> {
        let scale = 4 * resolution as u128 * lo.1 as u128;
        let num = lo.0 as u128 * scale / lo.1 as u128 + 1;
        Self::from_u128(num, scale)
    }

    fn from_u128(num: u128, den: u128) -> Result<Self> {
        let (mut a, mut b) = (num, den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        let g = a.max(1);
        let (n, d) = (num / g, den / g);
        if n > u64::MAX as u128 || d > u64::MAX as u128 {
            return Err(Error::InvalidProportion(format!("{num}/{den} overflows")));
        }
        Self::new(n as u64, d as u64)
    }
}

impl Ord for Proportion {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Proportion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Proportion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidProportion(format!("cannot parse {s:?}; expected a/b"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a = a.trim().parse::<u64>().map_err(|_| bad())?;
                let b = b.trim().parse::<u64>().map_err(|_| bad())?;
                Proportion::new(a, b)
            }
            None => {
                let a = s.parse::<u64>().map_err(|_| bad())?;
                Proportion::new(a, 1)
            }
        }
    }
}

impl Serialize for Proportion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Proportion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
