//! Fragments: maximal digit strings that survive unchanged into a sum (or
//! that two numbers share), each ending in a 1 at its most significant end.

use serde::{Deserialize, Serialize};

use super::digits::{digit_bounds, readout};
use crate::error::{Error, Result};
use crate::nat::Binary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FragmentSide {
    /// A fragment of the upper number found in the overlap window of the lower
    /// one ("right fragment").
    RightOfUpperInLower,
    /// A fragment of the lower number found in the overlap window of the upper
    /// one ("left fragment").
    LeftOfLowerInUpper,
    /// A string both numbers carry at the same positions.
    Common,
}

/// Which fragments of a pair to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fragment {
    /// Digits from `hi` down to `lo`; the first character is always '1'.
    pub bits: String,
    pub lo: usize,
    pub hi: usize,
    pub side: FragmentSide,
}

/// Checks the standing hypotheses on a pair used for fragments: the lower
/// number starts and ends below the upper one, the supports are disjoint but
/// the spans still overlap.
pub fn check_fragment_pair<T: Binary>(lower: &T, upper: &T) -> Result<()> {
    let (f_lo, l_lo) = digit_bounds(lower)?;
    let (f_up, l_up) = digit_bounds(upper)?;
    if f_lo >= f_up {
        return Err(Error::Precondition(format!(
            "f_lower < f_upper ({f_lo} >= {f_up})"
        )));
    }
    if l_lo >= l_up {
        return Err(Error::Precondition(format!(
            "l_lower < l_upper ({l_lo} >= {l_up})"
        )));
    }
    if lower.shares_one(upper) {
        return Err(Error::Precondition("supports are disjoint".into()));
    }
    if l_lo < f_up {
        return Err(Error::Precondition(format!(
            "l_lower >= f_upper ({l_lo} < {f_up}; supports are right-to-left disjoint)"
        )));
    }
    Ok(())
}

/// Right fragments (of `upper` in `lower`) or left fragments (of `lower` in
/// `upper`), ascending by position, counted with multiplicity.
///
/// The window is `[f_upper, l_lower]`. Because the supports are disjoint the
/// sum agrees with one summand exactly where the other has a 0, so each
/// fragment is a maximal stretch where the other summand is 0, trimmed to end
/// at the owner's highest 1 in that stretch.
pub fn fragments<T: Binary>(lower: &T, upper: &T, side: Side) -> Result<Vec<Fragment>> {
    check_fragment_pair(lower, upper)?;
    let f_up = upper.first_pos().expect("checked");
    let l_lo = lower.last_pos().expect("checked");
    let (owner, other, tag) = match side {
        Side::Right => (upper, lower, FragmentSide::RightOfUpperInLower),
        Side::Left => (lower, upper, FragmentSide::LeftOfLowerInUpper),
    };

    let mut out = Vec::new();
    let mut run_start = f_up;
    let mut top: Option<usize> = None;
    for p in f_up..=l_lo + 1 {
        let ends_run = p > l_lo || other.bit(p);
        if ends_run {
            if let Some(hi) = top.take() {
                out.push(Fragment {
                    bits: readout(owner, run_start, hi),
                    lo: run_start,
                    hi,
                    side: tag,
                });
            }
            run_start = p + 1;
        } else if owner.bit(p) {
            top = Some(p);
        }
    }
    Ok(out)
}

/// Maximal strings both numbers carry at the same positions, ending in a
/// shared 1 and bounded below by position 0 or a disagreeing digit.
pub fn common_fragments<T: Binary>(a: &T, b: &T) -> Vec<Fragment> {
    let top_shared = match a.last_pos().min(b.last_pos()) {
        Some(t) => t,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    let mut run_start = 0;
    let mut top: Option<usize> = None;
    for p in 0..=top_shared + 1 {
        let agree = a.bit(p) == b.bit(p);
        if !agree || p > top_shared {
            if let Some(hi) = top.take() {
                out.push(Fragment {
                    bits: readout(a, run_start, hi),
                    lo: run_start,
                    hi,
                    side: FragmentSide::Common,
                });
            }
            run_start = p + 1;
        } else if a.bit(p) {
            top = Some(p);
        }
    }
    out
}

/// `F(a, b)`: the number of common-fragments, with multiplicity.
pub fn common_fragment_count<T: Binary>(a: &T, b: &T) -> usize {
    common_fragments(a, b).len()
}

/// The digits of a middle number strictly between its neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Centre {
    /// Most significant first; never empty.
    pub bits: String,
    pub lo: usize,
    pub hi: usize,
}

impl Centre {
    pub fn is_all_ones(&self) -> bool {
        self.bits.bytes().all(|c| c == b'1')
    }

    pub fn has_one(&self) -> bool {
        self.bits.contains('1')
    }
}

/// Centre of `r` with respect to `p` and `s`: the digits of `r` strictly
/// between `l_p` and `f_s`.
pub fn centre<T: Binary>(r: &T, p: &T, s: &T) -> Result<Centre> {
    let (f_p, l_p) = digit_bounds(p)?;
    let (f_r, l_r) = digit_bounds(r)?;
    let (f_s, l_s) = digit_bounds(s)?;
    let checks = [
        (f_p < f_r, "f_p < f_r"),
        (f_r < f_s, "f_r < f_s"),
        (l_p < l_r, "l_p < l_r"),
        (l_r < l_s, "l_r < l_s"),
        (l_p >= f_r, "l_p >= f_r"),
        (l_r >= f_s, "l_r >= f_s"),
        (l_p + 1 < f_s, "l_p + 1 < f_s"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::Precondition((*what).to_string()));
    }
    let (lo, hi) = (l_p + 1, f_s - 1);
    Ok(Centre {
        bits: readout(r, lo, hi),
        lo,
        hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypothesis_violations_are_named() {
        // lower starts above upper
        let err = fragments(&0b10100u64, &0b1000010u64, Side::Right).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.starts_with("f_lower < f_upper")));
        // shared digit
        let err = fragments(&0b1011u64, &0b11010u64, Side::Left).unwrap_err();
        assert_eq!(err, Error::Precondition("supports are disjoint".into()));
        // right-to-left disjoint
        let err = fragments(&0b11u64, &0b1100u64, Side::Left).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.starts_with("l_lower >= f_upper")));
        assert_eq!(fragments(&0u64, &4u64, Side::Left).unwrap_err(), Error::Zero);
    }

    #[test]
    fn fragments_of_an_interleaved_pair() {
        // lower = 101001 (f 0, l 5), upper = 1010010 (f 1, l 6); window 1..5.
        let lower = 0b101001u64;
        let upper = 0b1010010u64;
        let right = fragments(&lower, &upper, Side::Right).unwrap();
        assert_eq!(
            right,
            vec![
                Fragment { bits: "1".into(), lo: 1, hi: 1, side: FragmentSide::RightOfUpperInLower },
                Fragment { bits: "1".into(), lo: 4, hi: 4, side: FragmentSide::RightOfUpperInLower },
            ]
        );
        let left = fragments(&lower, &upper, Side::Left).unwrap();
        assert_eq!(
            left,
            vec![
                Fragment { bits: "10".into(), lo: 2, hi: 3, side: FragmentSide::LeftOfLowerInUpper },
                Fragment { bits: "1".into(), lo: 5, hi: 5, side: FragmentSide::LeftOfLowerInUpper },
            ]
        );
    }

    #[test]
    fn fragments_carry_trailing_zeros() {
        let v = fragments(&0b1000001u64, &0b11110100u64, Side::Right);
        assert!(v.is_err(), "shared digit at 6 violates disjointness");
        // lower = 1000001 (f 0, l 6), upper = 10110100 (f 2, l 7); window 2..6
        // is one stretch where lower is 0, topped by upper's 1 at 5.
        let v = fragments(&0b1000001u64, &0b10110100u64, Side::Right).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].lo, v[0].hi, v[0].bits.as_str()), (2, 5, "1101"));
    }

    #[test]
    fn common_fragment_examples() {
        assert_eq!(
            common_fragments(&0b101u64, &0b100u64),
            vec![Fragment { bits: "10".into(), lo: 1, hi: 2, side: FragmentSide::Common }]
        );
        for a in [1u64, 6, 0b1011_0110, 12345] {
            let fr = common_fragments(&a, &a);
            assert_eq!(fr.len(), 1);
            assert_eq!(fr[0].lo, 0);
            assert_eq!(fr[0].hi, a.last_pos().unwrap());
        }
        assert_eq!(common_fragment_count(&0b1010u64, &0b0101u64), 0);
        assert_eq!(common_fragment_count(&0u64, &5u64), 0);
        // 1101 vs 0101: agree at 0..2 with shared 1s at 0 and 2.
        assert_eq!(common_fragment_count(&0b1101u64, &0b0101u64), 1);
        // 10110 vs 11111: agreement runs {1,2}, {4}; disagree at 0 and 3.
        assert_eq!(common_fragment_count(&0b10110u64, &0b11111u64), 2);
    }

    #[test]
    fn centre_examples() {
        // p = 11 (l 1), r = 1111100 (f 2), s = 1000000000 (f 9): r at 2..8.
        let c = centre(&0b1111100u64, &0b111u64, &0b1100000000u64);
        assert!(c.is_err(), "l_p >= f_r");
        let p = 0b1101u64; // f 0, l 3
        let r = 0b111110100u64; // f 2, l 8
        let s = 0b11001000000u64; // f 6, l 10
        let c = centre(&r, &p, &s).unwrap();
        assert_eq!((c.lo, c.hi, c.bits.as_str()), (4, 5, "11"));
        assert!(c.is_all_ones());

        // Triple whose upper neighbour starts above r's last digit.
        let err = centre(&0b11100u64, &0b11u64, &0b1000000u64).unwrap_err();
        assert_eq!(err, Error::Precondition("l_p >= f_r".into()));
        assert_eq!(super::readout(&0b11100u64, 2, 5), "0111");
    }
}
