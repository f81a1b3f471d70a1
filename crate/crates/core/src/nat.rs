//! Natural numbers viewed through their binary digits.
//!
//! Positions are 0-based exponents of 2: position 0 is the rightmost digit.
//! Every diagnostic in this crate is generic over [`Binary`], which is
//! implemented for the arbitrary-precision [`Nat`] and for plain `u64`. The
//! exhaustive engines run on `u64`; the CLI accepts numbers of any size.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Digit access needed by the binary diagnostics.
pub trait Binary: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;

    /// Digit at `pos` (0 or 1, as a bool).
    fn bit(&self, pos: usize) -> bool;

    /// Position of the least significant 1, `None` for zero.
    fn first_pos(&self) -> Option<usize>;

    /// Position of the most significant 1, `None` for zero.
    fn last_pos(&self) -> Option<usize>;

    fn plus(&self, rhs: &Self) -> Self;

    /// `self - rhs`. Panics if `rhs > self`.
    fn minus(&self, rhs: &Self) -> Self;

    /// True when some position holds a 1 in both numbers.
    fn shares_one(&self, other: &Self) -> bool {
        let (Some(lo), Some(hi)) = (
            self.first_pos().max(other.first_pos()),
            self.last_pos().min(other.last_pos()),
        ) else {
            return false;
        };
        (lo..=hi).any(|i| self.bit(i) && other.bit(i))
    }
}

impl Binary for u64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn bit(&self, pos: usize) -> bool {
        pos < 64 && (self >> pos) & 1 == 1
    }

    fn first_pos(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }

    fn last_pos(&self) -> Option<usize> {
        (*self != 0).then(|| 63 - self.leading_zeros() as usize)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(*rhs).expect("u64 overflow in digit arithmetic")
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(*rhs).expect("u64 underflow in digit arithmetic")
    }

    fn shares_one(&self, other: &Self) -> bool {
        self & other != 0
    }
}

/// Arbitrary-precision natural number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    /// `2^pos`.
    pub fn pow2(pos: usize) -> Self {
        let mut v = BigUint::zero();
        v.set_bit(pos as u64, true);
        Nat(v)
    }

    /// Builds the number whose support is `positions`.
    pub fn from_support<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        let mut v = BigUint::zero();
        for p in positions {
            v.set_bit(p as u64, true);
        }
        Nat(v)
    }

    /// Parses a binary digit string, most significant digit first.
    pub fn from_binary_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty binary literal".into(),
            });
        }
        if let Some(pos) = s.bytes().position(|c| c != b'0' && c != b'1') {
            return Err(Error::Parse {
                position: pos,
                message: format!("invalid binary digit {:?}", s.as_bytes()[pos] as char),
            });
        }
        Ok(Nat(BigUint::parse_bytes(s.as_bytes(), 2).expect("validated")))
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// Binary expansion, most significant digit first; `"0"` for zero.
    pub fn to_binary_string(&self) -> String {
        self.0.to_str_radix(2)
    }
}

impl Binary for Nat {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn bit(&self, pos: usize) -> bool {
        self.0.bit(pos as u64)
    }

    fn first_pos(&self) -> Option<usize> {
        self.0.trailing_zeros().map(|p| p as usize)
    }

    fn last_pos(&self) -> Option<usize> {
        let bits = self.0.bits();
        (bits > 0).then(|| bits as usize - 1)
    }

    fn plus(&self, rhs: &Self) -> Self {
        Nat(&self.0 + &rhs.0)
    }

    fn minus(&self, rhs: &Self) -> Self {
        assert!(rhs.0 <= self.0, "Nat subtraction underflow");
        Nat(&self.0 - &rhs.0)
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nat({})", self.0)
    }
}

/// Accepts decimal (`200`) or binary with a `0b` prefix (`0b11001000`).
/// Underscores are allowed as digit separators.
impl FromStr for Nat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, radix, offset) = match s.strip_prefix("0b") {
            Some(rest) => (rest, 2, 2),
            None => (s, 10, 0),
        };
        if digits.is_empty() {
            return Err(Error::Parse {
                position: offset,
                message: "missing digits".into(),
            });
        }
        for (i, c) in digits.char_indices() {
            if c != '_' && !c.is_digit(radix) {
                return Err(Error::Parse {
                    position: offset + i,
                    message: format!("invalid digit {c:?} for radix {radix}"),
                });
            }
        }
        let cleaned: String = digits.chars().filter(|&c| c != '_').collect();
        BigUint::parse_bytes(cleaned.as_bytes(), radix)
            .map(Nat)
            .ok_or_else(|| Error::Parse {
                position: offset,
                message: "missing digits".into(),
            })
    }
}

impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_and_binary() {
        assert_eq!("200".parse::<Nat>().unwrap(), Nat::from(200));
        assert_eq!("0b11001000".parse::<Nat>().unwrap(), Nat::from(200));
        assert_eq!("1_000".parse::<Nat>().unwrap(), Nat::from(1000));
    }

    #[test]
    fn parse_error_reports_position() {
        match "12x4".parse::<Nat>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        match "0b102".parse::<Nat>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!("0b".parse::<Nat>().is_err());
        assert!("".parse::<Nat>().is_err());
    }

    #[test]
    fn u64_and_nat_agree_on_digits() {
        for v in [1u64, 2, 7, 200, 0xdead_beef, u64::MAX >> 1] {
            let n = Nat::from(v);
            assert_eq!(v.first_pos(), n.first_pos());
            assert_eq!(v.last_pos(), n.last_pos());
            for i in 0..70 {
                assert_eq!(v.bit(i), n.bit(i));
            }
        }
        assert_eq!(0u64.first_pos(), None);
        assert_eq!(Nat::zero().last_pos(), None);
    }

    #[test]
    fn big_values_beyond_u64() {
        let n = Nat::pow2(100).plus(&Nat::from(5));
        assert_eq!(n.last_pos(), Some(100));
        assert_eq!(n.first_pos(), Some(0));
        assert!(n.to_u64().is_none());
        assert_eq!(Nat::from_support([0, 2, 100]), n);
    }

    #[test]
    fn shares_one_matches_and() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                assert_eq!(
                    Nat::from(a).shares_one(&Nat::from(b)),
                    a & b != 0,
                    "{a} {b}"
                );
            }
        }
    }
}
