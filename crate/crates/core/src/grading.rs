use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::Q;

/// Z/2 grading. Even sorts before odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign `(-1)^{self * other}` as `true` when negative.
    pub fn swap_negates(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// Conformal weight stored as the doubled integer `2Δ`; serialized as `"3"` or `"5/2"`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub i64);

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Weight::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad weight `{s}`")))
    }
}

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const HALF: Weight = Weight(1);
    pub const ONE: Weight = Weight(2);

    pub fn from_twice(twice: i64) -> Self {
        Weight(twice)
    }

    pub fn integer(n: i64) -> Self {
        Weight(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_q(self) -> Q {
        Q::new(self.0.into(), 2.into())
    }

    /// Parses `3`, `3/2` or `1.5`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: i64 = a.trim().parse().ok()?;
            let b: i64 = b.trim().parse().ok()?;
            return match b {
                1 => Some(Weight(2 * a)),
                2 => Some(Weight(a)),
                _ => None,
            };
        }
        if let Some((a, b)) = s.split_once('.') {
            let a: i64 = a.parse().ok()?;
            return match b {
                "0" => Some(Weight(2 * a)),
                "5" if a >= 0 => Some(Weight(2 * a + 1)),
                _ => None,
            };
        }
        s.parse::<i64>().ok().map(Weight::integer)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(Weight::parse("3"), Some(Weight(6)));
        assert_eq!(Weight::parse("5/2"), Some(Weight(5)));
        assert_eq!(Weight::parse("2.5"), Some(Weight(5)));
        assert_eq!(Weight::parse("4/3"), None);
        assert_eq!(Weight(5).to_string(), "5/2");
        assert_eq!(Weight(4).to_string(), "2");
    }
}
