//! Geometry of finite sequences of naturals: block subsequences, the
//! staircase classification, carry stops, middles and overlapping zones.

use serde::{Deserialize, Serialize};

use super::digits::{carry_region, digit_bounds, readout};
use crate::error::{Error, Result};
use crate::nat::Binary;

/// Sums consecutive runs of `zs`: `w_1 = z_1 + .. + z_{k_1}`,
/// `w_i = z_{k_{i-1}+1} + .. + z_{k_i}`. Cuts are 1-based and strictly
/// ascending; terms after the last cut are dropped.
pub fn block_subsequence<T: Binary>(zs: &[T], cuts: &[usize]) -> Result<Vec<T>> {
    check_cuts(cuts, zs.len())?;
    let mut out = Vec::with_capacity(cuts.len());
    let mut from = 0;
    for &k in cuts {
        let mut acc = zs[from].clone();
        for z in &zs[from + 1..k] {
            acc = acc.plus(z);
        }
        out.push(acc);
        from = k;
    }
    Ok(out)
}

pub(crate) fn check_cuts(cuts: &[usize], len: usize) -> Result<()> {
    let mut prev = 0;
    for &k in cuts {
        if k <= prev {
            return Err(Error::BadCuts(format!(
                "cuts must be strictly ascending and start at 1 or more (found {k} after {prev})"
            )));
        }
        prev = k;
    }
    if prev > len {
        return Err(Error::BadCuts(format!(
            "last cut {prev} exceeds length {len}"
        )));
    }
    Ok(())
}

fn bounds_all<T: Binary>(zs: &[T]) -> Result<Vec<(usize, usize)>> {
    zs.iter().map(digit_bounds).collect()
}

/// Staircase test: `n_i < n_{i+1}`, `m_i < m_{i+1}` and `m_i + 1 < n_{i+2}`
/// wherever the indices exist (`n` first digits, `m` last digits).
pub fn is_type_a_bounds(b: &[(usize, usize)]) -> bool {
    b.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
        && b.windows(3).all(|w| w[0].1 + 1 < w[2].0)
}

pub fn is_type_a<T: Binary>(zs: &[T]) -> Result<bool> {
    Ok(is_type_a_bounds(&bounds_all(zs)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqKind {
    TypeA,
    /// Structurally Type B, and no Type A blocking was found within the
    /// checked depth. Type B proper quantifies over all block subsequences of
    /// an infinite sequence and cannot be decided on a prefix.
    TypeBCandidate,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqClass {
    pub kind: SeqKind,
    /// Maximum block width explored when ruling out Type A blockings.
    pub checked_cut_depth: Option<usize>,
}

/// Classifies a finite prefix.
///
/// For the Type B test, blockings of prefixes are enumerated with every block
/// at most `cut_depth` terms wide; a blocking counts only when it has at
/// least three terms, the shortest length at which all three staircase
/// inequalities apply.
pub fn classify<T: Binary>(zs: &[T], cut_depth: usize) -> Result<SeqClass> {
    if zs.is_empty() {
        return Err(Error::Invalid("classify needs a nonempty sequence".into()));
    }
    let b = bounds_all(zs)?;
    if is_type_a_bounds(&b) {
        return Ok(SeqClass { kind: SeqKind::TypeA, checked_cut_depth: None });
    }
    let structural = b.len() >= 2
        && is_type_a_bounds(&b[1..])
        && b[0].0 == b[1].0
        && b[0].1 < b[1].1
        && b.get(2).map_or(true, |third| b[0].1 + 1 < third.0);
    if structural && !has_type_a_blocking(zs, cut_depth.max(1)) {
        return Ok(SeqClass {
            kind: SeqKind::TypeBCandidate,
            checked_cut_depth: Some(cut_depth.max(1)),
        });
    }
    Ok(SeqClass { kind: SeqKind::Neither, checked_cut_depth: None })
}

/// Depth-first search over blockings; the staircase conditions are local, so
/// a branch is cut as soon as its newest block breaks one.
fn has_type_a_blocking<T: Binary>(zs: &[T], width: usize) -> bool {
    fn go<T: Binary>(zs: &[T], from: usize, width: usize, built: &mut Vec<(usize, usize)>) -> bool {
        if built.len() >= 3 {
            return true;
        }
        let mut acc: Option<T> = None;
        for end in from..zs.len().min(from + width) {
            let sum = match acc.take() {
                None => zs[end].clone(),
                Some(a) => a.plus(&zs[end]),
            };
            let bounds = digit_bounds(&sum).expect("positive terms");
            built.push(bounds);
            let n = built.len();
            let ok = (n < 2 || (built[n - 2].0 < built[n - 1].0 && built[n - 2].1 < built[n - 1].1))
                && (n < 3 || built[n - 3].1 + 1 < built[n - 1].0);
            if ok && go(zs, end + 1, width, built) {
                built.pop();
                return true;
            }
            built.pop();
            acc = Some(sum);
        }
        false
    }
    go(zs, 0, width, &mut Vec::new())
}

fn check_staircase(b: &[(usize, usize)]) -> Result<()> {
    for (i, w) in b.windows(2).enumerate() {
        if w[0].0 >= w[1].0 {
            return Err(Error::Precondition(format!(
                "n_{} < n_{} (first digits {} and {})",
                i + 1,
                i + 2,
                w[0].0,
                w[1].0
            )));
        }
        if w[0].1 >= w[1].1 {
            return Err(Error::Precondition(format!(
                "m_{} < m_{} (last digits {} and {})",
                i + 1,
                i + 2,
                w[0].1,
                w[1].1
            )));
        }
    }
    Ok(())
}

/// `j_1 = f_{z_1} - 1`; for `n >= 2`, `j_n` is the larger of where the carry
/// of `z_n + z_{n-1}` stops and the last digit of `z_{n-1}`. Positions are
/// signed because `j_1` is `-1` when `z_1` is odd.
pub fn j_sequence<T: Binary>(zs: &[T]) -> Result<Vec<i64>> {
    let b = bounds_all(zs)?;
    check_staircase(&b)?;
    let mut js = Vec::with_capacity(zs.len());
    if let Some(first) = b.first() {
        js.push(first.0 as i64 - 1);
    }
    for n in 1..zs.len() {
        let carry = carry_region(&zs[n], &zs[n - 1]).map(|c| c.stop as i64);
        js.push(carry.unwrap_or(i64::MIN).max(b[n - 1].1 as i64));
    }
    Ok(js)
}

/// Inclusive range of positions; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionRange {
    pub lo: i64,
    pub hi: i64,
}

impl PositionRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, p: i64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Middle {
    pub bits: String,
    /// Nonempty and containing a 1.
    pub proper: bool,
    pub range: PositionRange,
}

fn check_index(n: usize, len: usize) -> Result<()> {
    if n == 0 || n >= len {
        return Err(Error::IndexOutOfRange { index: n, len });
    }
    Ok(())
}

/// Middle of `z_n` (1-based `n`, `1 <= n < len`): its digits strictly between
/// `j_n` and the first digit of `z_{n+1}`.
pub fn middle<T: Binary>(zs: &[T], n: usize) -> Result<Middle> {
    check_index(n, zs.len())?;
    let js = j_sequence(zs)?;
    let next_first = zs[n].first_pos().expect("checked by j_sequence") as i64;
    let range = PositionRange { lo: js[n - 1] + 1, hi: next_first - 1 };
    let bits = if range.is_empty() {
        String::new()
    } else {
        readout(&zs[n - 1], range.lo as usize, range.hi as usize)
    };
    let proper = bits.contains('1');
    Ok(Middle { bits, proper, range })
}

/// Overlapping zone of `z_n` and `z_{n+1}`: `[f_{z_{n+1}}, j_{n+1}]`.
pub fn overlapping_zone<T: Binary>(zs: &[T], n: usize) -> Result<PositionRange> {
    check_index(n, zs.len())?;
    let js = j_sequence(zs)?;
    let lo = zs[n].first_pos().expect("checked by j_sequence") as i64;
    Ok(PositionRange { lo, hi: js[n] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::Nat;

    #[test]
    fn block_subsequence_examples() {
        let zs = [1u64, 2, 4, 8];
        assert_eq!(block_subsequence(&zs, &[1, 2, 3, 4]).unwrap(), zs.to_vec());
        assert_eq!(block_subsequence(&zs, &[2, 4]).unwrap(), vec![3, 12]);
        assert_eq!(block_subsequence(&zs, &[3]).unwrap(), vec![7]);
        assert!(matches!(block_subsequence(&zs, &[3, 1]), Err(Error::BadCuts(_))));
        assert!(matches!(block_subsequence(&zs, &[0, 1]), Err(Error::BadCuts(_))));
        assert!(matches!(block_subsequence(&zs, &[2, 5]), Err(Error::BadCuts(_))));
    }

    #[test]
    fn classify_examples() {
        // n not increasing
        let c = classify(&[1u64, 6, 16, 40], 4).unwrap();
        assert_eq!(c.kind, SeqKind::Neither);
        let c = classify(&[1u64, 6, 16], 4).unwrap();
        assert_eq!(c.kind, SeqKind::TypeA);
        for depth in 1..5 {
            let c = classify(&[1u64, 3, 16], depth).unwrap();
            assert_eq!(c.kind, SeqKind::TypeBCandidate);
            assert_eq!(c.checked_cut_depth, Some(depth));
        }
        assert!(classify::<u64>(&[], 3).is_err());
    }

    #[test]
    fn type_b_structure_with_a_type_a_blocking_is_neither() {
        // (1, 3, 16, 64, 256): blocking (1+3, 16, 64, 256) = (4, 16, 64, 256)
        // is a staircase, so the prefix is not a Type B candidate once blocks
        // of width 2 are allowed.
        let zs = [1u64, 3, 16, 64, 256];
        assert_eq!(classify(&zs, 1).unwrap().kind, SeqKind::TypeBCandidate);
        assert_eq!(classify(&zs, 2).unwrap().kind, SeqKind::Neither);
    }

    #[test]
    fn j_sequence_examples() {
        assert_eq!(j_sequence(&[3u64, 6]).unwrap(), vec![-1, 3]);
        assert_eq!(j_sequence(&[8u64]).unwrap(), vec![2]);
        // disjoint staircase: j_n = last digit of previous term
        assert_eq!(j_sequence(&[0b11u64, 0b1100, 0b110000]).unwrap(), vec![-1, 1, 3]);
        assert!(matches!(j_sequence(&[6u64, 3]), Err(Error::Precondition(_))));
    }

    #[test]
    fn middle_examples() {
        let m = middle(&[3u64, 6, 64], 2).unwrap();
        assert_eq!(m.bits, "00");
        assert!(!m.proper);
        let m = middle(&[1u64, 2, 32], 2).unwrap();
        assert_eq!(m.bits, "0001");
        assert!(m.proper);
        // j_n + 1 = f_{z_{n+1}}: empty middle
        let m = middle(&[3u64, 6, 16], 2).unwrap();
        assert_eq!(m.range, PositionRange { lo: 4, hi: 3 });
        assert_eq!(m.bits, "");
        assert!(!m.proper);
        assert!(matches!(middle(&[1u64, 2], 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(middle(&[1u64, 2], 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn overlapping_zone_examples() {
        assert_eq!(overlapping_zone(&[3u64, 6], 1).unwrap(), PositionRange { lo: 1, hi: 3 });
        let z = overlapping_zone(&[1u64, 4], 1).unwrap();
        assert_eq!(z, PositionRange { lo: 2, hi: 0 });
        assert!(z.is_empty());
        assert_eq!(z.len(), 0);
        // disjoint consecutive terms: zone ends at the lower term's last digit
        let z = overlapping_zone(&[0b101u64, 0b11010], 1).unwrap();
        assert_eq!(z, PositionRange { lo: 1, hi: 2 });
    }

    #[test]
    fn works_on_nat() {
        let zs: Vec<Nat> = [3u64, 6].iter().map(|&v| Nat::from(v)).collect();
        assert_eq!(j_sequence(&zs).unwrap(), vec![-1, 3]);
    }
}
