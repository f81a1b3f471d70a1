use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nat::Binary;

/// Positions of the first (least significant) and last (most significant) 1.
pub fn digit_bounds<T: Binary>(n: &T) -> Result<(usize, usize)> {
    match (n.first_pos(), n.last_pos()) {
        (Some(f), Some(l)) => Ok((f, l)),
        _ => Err(Error::Zero),
    }
}

pub fn first_digit<T: Binary>(n: &T) -> Result<usize> {
    n.first_pos().ok_or(Error::Zero)
}

pub fn last_digit<T: Binary>(n: &T) -> Result<usize> {
    n.last_pos().ok_or(Error::Zero)
}

/// Ascending positions holding a 1.
pub fn support<T: Binary>(n: &T) -> Result<Vec<usize>> {
    let (f, l) = digit_bounds(n)?;
    Ok((f..=l).filter(|&i| n.bit(i)).collect())
}

/// Digits of `n` at positions `hi` down to `lo`, most significant first.
/// Empty when `lo > hi`.
pub fn readout<T: Binary>(n: &T, lo: usize, hi: usize) -> String {
    if lo > hi {
        return String::new();
    }
    (lo..=hi)
        .rev()
        .map(|i| if n.bit(i) { '1' } else { '0' })
        .collect()
}

/// The three digits at positions `f+2, f+1, f` where `f` is the first digit.
/// The rightmost of the three is always 1, so four windows exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct LowWindow(u8);

impl LowWindow {
    pub const ALL: [LowWindow; 4] = [LowWindow(1), LowWindow(3), LowWindow(5), LowWindow(7)];

    /// Value of the window read as a 3-digit binary number (1, 3, 5 or 7).
    pub fn value(self) -> u8 {
        self.0
    }

    /// Index 0..4 of the window among the four possibilities.
    pub fn index(self) -> u8 {
        self.0 >> 1
    }

    pub fn from_index(i: u8) -> Option<Self> {
        (i < 4).then_some(LowWindow(2 * i + 1))
    }
}

impl fmt::Display for LowWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03b}", self.0)
    }
}

impl From<LowWindow> for String {
    fn from(w: LowWindow) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for LowWindow {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        match s.as_str() {
            "001" => Ok(LowWindow(1)),
            "011" => Ok(LowWindow(3)),
            "101" => Ok(LowWindow(5)),
            "111" => Ok(LowWindow(7)),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("{s:?} is not a window ending in 1"),
            }),
        }
    }
}

pub fn first_three_digits<T: Binary>(n: &T) -> Result<LowWindow> {
    let f = first_digit(n)?;
    let v = 1 | (u8::from(n.bit(f + 1)) << 1) | (u8::from(n.bit(f + 2)) << 2);
    Ok(LowWindow(v))
}

/// Joint label of a position for a pair of numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    /// Exactly one of the two numbers has a 1.
    One,
    /// Both numbers have a 1.
    Two,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::One => "1",
            Label::Two => "2",
        })
    }
}

/// Labels every position where at least one of `a`, `b` has a 1, ascending.
pub fn label_positions<T: Binary>(a: &T, b: &T) -> Vec<(usize, Label)> {
    let top = match a.last_pos().max(b.last_pos()) {
        Some(t) => t,
        None => return Vec::new(),
    };
    let bottom = [a.first_pos(), b.first_pos()]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(0);
    (bottom..=top)
        .filter_map(|i| match (a.bit(i), b.bit(i)) {
            (true, true) => Some((i, Label::Two)),
            (true, false) | (false, true) => Some((i, Label::One)),
            (false, false) => None,
        })
        .collect()
}

/// Number of '2 to 1' transitions in the labelling, traversed upward.
pub fn jumps<T: Binary>(a: &T, b: &T) -> usize {
    label_positions(a, b)
        .windows(2)
        .filter(|w| w[0].1 == Label::Two && w[1].1 == Label::One)
        .count()
}

/// Number of maximal runs of 1s in the binary expansion.
pub fn intervals<T: Binary>(c: &T) -> Result<usize> {
    let (f, l) = digit_bounds(c)?;
    let mut count = 0;
    let mut prev = false;
    for i in f..=l {
        let cur = c.bit(i);
        if cur && !prev {
            count += 1;
        }
        prev = cur;
    }
    Ok(count)
}

/// The minimal position interval in which binary carrying happens when adding
/// two numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarryRegion {
    /// Least position where both summands hold a 1.
    pub start: usize,
    /// Greatest position where the sum digit differs from the column sum.
    pub stop: usize,
}

/// `None` exactly when the supports are disjoint.
pub fn carry_region<T: Binary>(m: &T, n: &T) -> Option<CarryRegion> {
    let lo = m.first_pos()?.max(n.first_pos()?);
    let hi = m.last_pos()?.min(n.last_pos()?);
    let start = (lo..=hi).find(|&i| m.bit(i) && n.bit(i))?;
    let sum = m.plus(n);
    let top = sum.last_pos().expect("sum of positive numbers");
    let stop = (start..=top)
        .rev()
        .find(|&i| u8::from(sum.bit(i)) != u8::from(m.bit(i)) + u8::from(n.bit(i)))
        .expect("a shared 1 always disagrees with its column sum");
    Some(CarryRegion { start, stop })
}

/// Neither the supports interleave nor touch: the last digit of `a` lies
/// strictly below the first digit of `b`.
pub fn right_to_left_disjoint<T: Binary>(a: &T, b: &T) -> Result<bool> {
    Ok(last_digit(a)? < first_digit(b)?)
}
