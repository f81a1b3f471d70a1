//! The word colouring induced by the pair colouring and first occurrences in a
//! reference word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nat::Binary;
use crate::theta::{colour_pair, PairColour, Stage};
use crate::word::{FirstOccurrence, Letter, OccurrenceOracle, Scan, WordSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiColour {
    /// `u` is not a factor of the reference word.
    NotFactor,
    /// `tag` is 0 when some split `u = vw` has `v` starting and `w` ending
    /// the first occurrence of `u`, 1 otherwise.
    Coloured { theta: PairColour, tag: u8 },
}

/// `2` or `(<theta>,<tag>)`.
impl fmt::Display for PhiColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiColour::NotFactor => f.write_str("2"),
            PhiColour::Coloured { theta, tag } => write!(f, "({theta},{tag})"),
        }
    }
}

impl FromStr for PhiColour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "2" {
            return Ok(PhiColour::NotFactor);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(Error::Parse { position: 0, message: "expected 2 or (<theta>,<tag>)".into() })?;
        let (theta, tag) = inner
            .rsplit_once(',')
            .ok_or(Error::Parse { position: 1, message: "missing ',<tag>'".into() })?;
        let theta: PairColour = theta.parse().map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse { position: position + 1, message },
            other => other,
        })?;
        let tag = match tag {
            "0" => 0,
            "1" => 1,
            _ => {
                return Err(Error::Parse {
                    position: s.len() - 1 - tag.len(),
                    message: "tag must be 0 or 1".into(),
                })
            }
        };
        Ok(PhiColour::Coloured { theta, tag })
    }
}

impl Serialize for PhiColour {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PhiColour {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The colouring with the full pair colouring. `Ok(None)` when a needed
/// first occurrence is unknown within `scan_bound`.
pub fn phi(x: &WordSource, u: &[Letter], scan_bound: usize) -> Result<Option<PhiColour>> {
    phi_with(&Scan { source: x, scan_bound }, u, Stage::Full)
}

/// Same as [`phi`] for any occurrence oracle and pair-colouring stage.
///
/// Splits are tried with `|v|` ascending. An unknown occurrence on a split
/// only matters if no split has already produced tag 0.
pub fn phi_with<O: OccurrenceOracle + ?Sized>(
    oracle: &O,
    u: &[Letter],
    stage: Stage,
) -> Result<Option<PhiColour>> {
    let whole = match oracle.first_occurrence(u)? {
        FirstOccurrence::Found(o) => o,
        FirstOccurrence::NotAFactor => return Ok(Some(PhiColour::NotFactor)),
        FirstOccurrence::NotFoundWithinBound => return Ok(None),
    };
    let theta = colour_pair(&(whole.start as u64), &(whole.end as u64), stage)?;
    let mut unknown = false;
    for cut in 1..u.len() {
        let (v, w) = u.split_at(cut);
        // v occurs wherever u does, so it is always found
        let starts_at = match oracle.first_occurrence(v)? {
            FirstOccurrence::Found(o) => o.start == whole.start,
            _ => {
                unknown = true;
                continue;
            }
        };
        if !starts_at {
            continue;
        }
        match oracle.first_occurrence(w)? {
            FirstOccurrence::Found(o) if o.end == whole.end => {
                return Ok(Some(PhiColour::Coloured { theta, tag: 0 }))
            }
            FirstOccurrence::Found(_) => {}
            _ => unknown = true,
        }
    }
    if unknown {
        return Ok(None);
    }
    Ok(Some(PhiColour::Coloured { theta, tag: 1 }))
}

/// For `m_i = B_x(u_i)` and `2 <= k_1 < .. < k_t`, returns
/// `(m_{k_1-1} - m_{k_1} + m_{k_2-1} - m_{k_2} + .. + m_{k_t-1}, m_{k_t})`,
/// which are `A_x` and `B_x` of `u_{k_1} .. u_{k_t}` for a standardised
/// factorisation whose factors are suffixes of their successors.
pub fn altsum_identity_check<T: Binary>(ms: &[T], ks: &[usize]) -> Result<(T, T)> {
    if let Some(w) = ms.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "ms strictly increasing ({} >= {})",
            w[0], w[1]
        )));
    }
    match ks.first() {
        None => return Err(Error::Precondition("ks nonempty".into())),
        Some(&k) if k < 2 => return Err(Error::Precondition(format!("k_1 >= 2 (got {k})"))),
        _ => {}
    }
    if ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("ks strictly increasing".into()));
    }
    let last = *ks.last().expect("nonempty");
    if last > ms.len() {
        return Err(Error::IndexOutOfRange { index: last, len: ms.len() });
    }
    let m = |k: usize| &ms[k - 1];
    let mut plus = m(ks[0] - 1).clone();
    let mut minus: Option<T> = None;
    for w in ks.windows(2) {
        minus = Some(match minus {
            None => m(w[0]).clone(),
            Some(acc) => acc.plus(m(w[0])),
        });
        plus = plus.plus(m(w[1] - 1));
    }
    let left = match minus {
        None => plus,
        Some(neg) => plus.minus(&neg),
    };
    Ok((left, m(last).clone()))
}
