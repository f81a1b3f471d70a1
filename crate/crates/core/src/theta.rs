//! The seven-component pair colouring and its stage restrictions.
//!
//! A pair `a < b` is coloured by
//!
//! | component | value                                             |
//! |-----------|---------------------------------------------------|
//! | `c0`      | last digit position of `b - a`, mod 3             |
//! | `c1`      | first digit position of `b - a`, mod 3            |
//! | `c2`      | last digit position of `a` (not `b - a`), mod 3   |
//! | `c3`      | digits of `b - a` at `f+2, f+1, f`                |
//! | `c4`      | number of '2 to 1' jumps of `(a, b)`, mod 2       |
//! | `c5`      | number of intervals of `b - a`, mod 2             |
//! | `c6`      | number of common-fragments of `(a, b)`, mod 2     |
//!
//! Stage 1 uses `c0..c3`, stage 2 adds `c4, c5`, the full colouring adds
//! `c6`: `3 * 3 * 3 * 4 * 2 * 2 * 2 = 864` colours.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binary::{
    common_fragment_count, digit_bounds, first_three_digits, intervals, jumps, last_digit,
    LowWindow,
};
use crate::error::{Error, Result};
use crate::nat::Binary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Stage1,
    Stage2,
    Full,
}

impl Stage {
    pub const ALL: [Stage; 3] = [Stage::Stage1, Stage::Stage2, Stage::Full];

    /// Number of distinct colours the stage can produce.
    pub fn colour_count(self) -> u16 {
        match self {
            Stage::Stage1 => 108,
            Stage::Stage2 => 432,
            Stage::Full => 864,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Stage1 => "stage1",
            Stage::Stage2 => "stage2",
            Stage::Full => "full",
        })
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stage1" => Ok(Stage::Stage1),
            "stage2" => Ok(Stage::Stage2),
            "full" | "stage3" => Ok(Stage::Full),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown stage {other:?} (expected stage1, stage2 or full)"),
            }),
        }
    }
}

/// A colour of the pair colouring. Components outside the stage are `None`,
/// never zero, so an ablated colour cannot be mistaken for a real one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairColour {
    pub c0: u8,
    pub c1: u8,
    pub c2: u8,
    pub c3: LowWindow,
    pub c4: Option<u8>,
    pub c5: Option<u8>,
    pub c6: Option<u8>,
}

impl PairColour {
    pub fn stage(&self) -> Stage {
        match (self.c5, self.c6) {
            (_, Some(_)) => Stage::Full,
            (Some(_), None) => Stage::Stage2,
            (None, None) => Stage::Stage1,
        }
    }

    /// Restricts to a coarser stage. Asking for a finer stage than the colour
    /// carries returns `None`.
    pub fn project(&self, stage: Stage) -> Option<PairColour> {
        if stage > self.stage() {
            return None;
        }
        let mut c = *self;
        if stage < Stage::Full {
            c.c6 = None;
        }
        if stage < Stage::Stage2 {
            c.c4 = None;
            c.c5 = None;
        }
        Some(c)
    }

    /// Mixed-radix encoding `(3, 3, 3, 4, 2, 2, 2)` within the colour's own
    /// stage: `0..108`, `0..432` or `0..864`.
    pub fn dense_index(&self) -> u16 {
        let mut v = ((self.c0 as u16 * 3 + self.c1 as u16) * 3 + self.c2 as u16) * 4
            + self.c3.index() as u16;
        for c in [self.c4, self.c5, self.c6].into_iter().flatten() {
            v = v * 2 + c as u16;
        }
        v
    }

    pub fn from_dense_index(stage: Stage, index: u16) -> Option<PairColour> {
        if index >= stage.colour_count() {
            return None;
        }
        let mut v = index;
        let mut tail = [None; 3];
        let extra = match stage {
            Stage::Stage1 => 0,
            Stage::Stage2 => 2,
            Stage::Full => 3,
        };
        for slot in (0..extra).rev() {
            tail[slot] = Some((v % 2) as u8);
            v /= 2;
        }
        let c3 = LowWindow::from_index((v % 4) as u8)?;
        v /= 4;
        let c2 = (v % 3) as u8;
        v /= 3;
        let c1 = (v % 3) as u8;
        let c0 = (v / 3) as u8;
        Some(PairColour { c0, c1, c2, c3, c4: tail[0], c5: tail[1], c6: tail[2] })
    }
}

/// `c0c1c2-c3-c4c5c6`, absent components written as `*`.
impl fmt::Display for PairColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |c: Option<u8>| c.map_or('*', |v| char::from(b'0' + v));
        write!(
            f,
            "{}{}{}-{}-{}{}{}",
            self.c0,
            self.c1,
            self.c2,
            self.c3,
            opt(self.c4),
            opt(self.c5),
            opt(self.c6)
        )
    }
}

impl FromStr for PairColour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let b = s.as_bytes();
        if b.len() != 11 || b[3] != b'-' || b[7] != b'-' {
            return Err(bad(0, "expected the form c0c1c2-c3-c4c5c6"));
        }
        let tri = |i: usize| match b[i] {
            c @ b'0'..=b'2' => Ok(c - b'0'),
            _ => Err(bad(i, "expected a residue mod 3")),
        };
        let bit = |i: usize| match b[i] {
            b'*' => Ok(None),
            c @ b'0'..=b'1' => Ok(Some(c - b'0')),
            _ => Err(bad(i, "expected 0, 1 or *")),
        };
        let c3 = LowWindow::try_from(s[4..7].to_string()).map_err(|_| bad(4, "bad window"))?;
        let colour = PairColour {
            c0: tri(0)?,
            c1: tri(1)?,
            c2: tri(2)?,
            c3,
            c4: bit(8)?,
            c5: bit(9)?,
            c6: bit(10)?,
        };
        let consistent = matches!(
            (colour.c4, colour.c5, colour.c6),
            (None, None, None) | (Some(_), Some(_), None) | (Some(_), Some(_), Some(_))
        );
        if !consistent {
            return Err(bad(8, "absent components must form a stage suffix"));
        }
        Ok(colour)
    }
}

/// Colours the pair `a < b`, computing only the components of `stage`.
pub fn colour_pair<T: Binary>(a: &T, b: &T, stage: Stage) -> Result<PairColour> {
    if a.is_zero() {
        return Err(Error::Zero);
    }
    if a >= b {
        return Err(Error::Precondition(format!("a < b (got a = {a}, b = {b})")));
    }
    let d = b.minus(a);
    let (d_first, d_last) = digit_bounds(&d)?;
    let mut colour = PairColour {
        c0: (d_last % 3) as u8,
        c1: (d_first % 3) as u8,
        c2: (last_digit(a)? % 3) as u8,
        c3: first_three_digits(&d)?,
        c4: None,
        c5: None,
        c6: None,
    };
    if stage >= Stage::Stage2 {
        colour.c4 = Some((jumps(a, b) % 2) as u8);
        colour.c5 = Some((intervals(&d)? % 2) as u8);
    }
    if stage == Stage::Full {
        colour.c6 = Some((common_fragment_count(a, b) % 2) as u8);
    }
    Ok(colour)
}

/// Whether, on the two given pairs, equality under `fine` implies equality
/// under `coarse`.
pub fn refines<T: Binary>(coarse: Stage, fine: Stage, p: (&T, &T), q: (&T, &T)) -> Result<bool> {
    let fine_equal = colour_pair(p.0, p.1, fine)? == colour_pair(q.0, q.1, fine)?;
    let coarse_equal = colour_pair(p.0, p.1, coarse)? == colour_pair(q.0, q.1, coarse)?;
    Ok(!fine_equal || coarse_equal)
}
