//! Exact half-integer spin quantum numbers.
//!
//! Spins are stored as twice their value so that dimensions and ladder
//! arithmetic are exact integers; no floating-point drift can creep into
//! Hilbert-space bookkeeping.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A non-negative half-integer j ∈ {0, 1/2, 1, 3/2, …}, stored as 2j.
/// Serializes as its numeric value (e.g. 2.5), not the doubled storage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: u32,
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for HalfInteger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = f64::deserialize(deserializer)?;
        HalfInteger::from_f64(value).map_err(D::Error::custom)
    }
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice: 1 };
    pub const ONE: HalfInteger = HalfInteger { twice: 2 };

    /// Construct from 2j.
    pub const fn from_twice(twice: u32) -> Self {
        Self { twice }
    }

    /// Construct from a float that must be an exact multiple of 1/2.
    pub fn from_f64(value: f64) -> Result<Self, Error> {
        let twice = value * 2.0;
        if !(value >= 0.0) || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(Error::InvalidHalfInteger(format!("{value}")));
        }
        Ok(Self { twice: twice as u32 })
    }

    /// 2j as an integer.
    pub const fn twice(self) -> u32 {
        self.twice
    }

    /// j as a float.
    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Dimension of the spin-j representation, 2j + 1.
    pub const fn dimension(self) -> usize {
        self.twice as usize + 1
    }

    /// j(j+1), the Casimir eigenvalue.
    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn plus_half(self) -> Self {
        Self { twice: self.twice + 1 }
    }

    pub fn plus_one(self) -> Self {
        Self { twice: self.twice + 2 }
    }

    /// j − 1/2, or `None` when the subtraction would go below zero.
    pub fn minus_half(self) -> Option<Self> {
        self.twice.checked_sub(1).map(|twice| Self { twice })
    }

    /// j − 1; `None` marks the empty subspace (e.g. coupling 1 ⊗ 1/2 has no
    /// total spin below 1/2).
    pub fn minus_one(self) -> Option<Self> {
        self.twice.checked_sub(2).map(|twice| Self { twice })
    }

    /// Magnetic quantum numbers m = j, j−1, …, −j as twice-m integers,
    /// in the descending basis order used everywhere in this crate.
    pub fn twice_m_descending(self) -> impl Iterator<Item = i64> {
        let tj = self.twice as i64;
        (0..=tj).map(move |k| tj - 2 * k)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts "n/2" fractions and decimals on the 0.5 grid: "5/2", "2.5", "3".
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidHalfInteger(s.to_string()))?;
            match den.trim() {
                "2" => Ok(Self { twice: num }),
                "1" => Ok(Self { twice: num.checked_mul(2).ok_or_else(|| Error::InvalidHalfInteger(s.to_string()))? }),
                _ => Err(Error::InvalidHalfInteger(s.to_string())),
            }
        } else {
            let value: f64 = s.parse().map_err(|_| Error::InvalidHalfInteger(s.to_string()))?;
            Self::from_f64(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_value() {
        assert_eq!(HalfInteger::HALF.dimension(), 2);
        assert_eq!(HalfInteger::from_twice(5).dimension(), 6);
        assert_eq!(HalfInteger::from_twice(5).value(), 2.5);
        assert_eq!(HalfInteger::ZERO.dimension(), 1);
    }

    #[test]
    fn arithmetic_is_exact_and_guarded() {
        let j = HalfInteger::HALF;
        assert_eq!(j.plus_one(), HalfInteger::from_twice(5).minus_one().unwrap());
        assert_eq!(j.minus_one(), None);
        assert_eq!(HalfInteger::ZERO.minus_half(), None);
        assert_eq!(j.plus_half(), HalfInteger::ONE);
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("5/2".parse::<HalfInteger>().unwrap(), HalfInteger::from_twice(5));
        assert_eq!("2.5".parse::<HalfInteger>().unwrap(), HalfInteger::from_twice(5));
        assert_eq!("3".parse::<HalfInteger>().unwrap(), HalfInteger::from_twice(6));
        assert_eq!("3/1".parse::<HalfInteger>().unwrap(), HalfInteger::from_twice(6));
        assert!("0.3".parse::<HalfInteger>().is_err());
        assert!("-1".parse::<HalfInteger>().is_err());
        assert!("1/3".parse::<HalfInteger>().is_err());
    }

    #[test]
    fn displays_as_fraction_or_integer() {
        assert_eq!(HalfInteger::HALF.to_string(), "1/2");
        assert_eq!(HalfInteger::from_twice(5).to_string(), "5/2");
        assert_eq!(HalfInteger::from_twice(6).to_string(), "3");
    }

    #[test]
    fn m_values_descend() {
        let ms: Vec<i64> = HalfInteger::from_twice(3).twice_m_descending().collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
    }
}
