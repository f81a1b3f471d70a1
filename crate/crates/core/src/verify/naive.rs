//! Direct string-scanning versions of the digit diagnostics. They follow the
//! definitions position by position and serve as oracles for `crate::binary`.

/// Binary digits, least significant first.
fn digits(n: u64) -> Vec<u8> {
    format!("{n:b}").bytes().rev().map(|c| c - b'0').collect()
}

fn digit(d: &[u8], i: usize) -> u8 {
    d.get(i).copied().unwrap_or(0)
}

/// '2 to 1' jumps: label every position by how many of `a`, `b` hold a 1,
/// drop the zeros and count "2" immediately followed by "1".
pub fn jumps(a: u64, b: u64) -> usize {
    let (da, db) = (digits(a), digits(b));
    let labels: String = (0..da.len().max(db.len()))
        .map(|i| digit(&da, i) + digit(&db, i))
        .filter(|&s| s > 0)
        .map(|s| char::from(b'0' + s))
        .collect();
    labels.as_bytes().windows(2).filter(|w| w == b"21").count()
}

/// Maximal runs of 1s.
pub fn intervals(c: u64) -> usize {
    format!("{c:b}").split('0').filter(|s| !s.is_empty()).count()
}

/// `(start, stop)` of the carry region, `None` for disjoint supports.
pub fn carry_region(m: u64, n: u64) -> Option<(usize, usize)> {
    let (dm, dn) = (digits(m), digits(n));
    let ds = digits(m + n);
    let start = (0..dm.len().min(dn.len())).find(|&i| dm[i] == 1 && dn[i] == 1)?;
    let stop = (0..ds.len())
        .rev()
        .find(|&i| ds[i] != digit(&dm, i) + digit(&dn, i))?;
    Some((start, stop))
}

/// `(lo, hi)` of each fragment of `owner` in the window `[f_upper, l_lower]`
/// of `lower + upper`: a string starting at `t` agrees with the owner on the
/// sum, its lower end is `f_upper` or sits just above a disagreement, its top
/// digit is 1 and no longer such string with top digit 1 fits below `l_lower`.
pub fn fragments(lower: u64, upper: u64, right: bool) -> Vec<(usize, usize)> {
    let owner = digits(if right { upper } else { lower });
    let sum = digits(lower + upper);
    let f_up = upper.trailing_zeros() as usize;
    let l_lo = 63 - lower.leading_zeros() as usize;
    let mut out = Vec::new();
    for t in f_up..=l_lo {
        if t > f_up && digit(&sum, t - 1) == digit(&owner, t - 1) {
            continue;
        }
        let mut top = None;
        let mut e = t;
        while e <= l_lo && digit(&sum, e) == digit(&owner, e) {
            if digit(&owner, e) == 1 {
                top = Some(e);
            }
            e += 1;
        }
        if let Some(hi) = top {
            out.push((t, hi));
        }
    }
    out
}

/// `(lo, hi)` of each common-fragment: same-position agreement, lower end at
/// position 0 or just above a disagreement, top digit a shared 1, maximal.
pub fn common_fragments(a: u64, b: u64) -> Vec<(usize, usize)> {
    let (da, db) = (digits(a), digits(b));
    let len = da.len().max(db.len());
    let mut out = Vec::new();
    for t in 0..len {
        if t > 0 && digit(&da, t - 1) == digit(&db, t - 1) {
            continue;
        }
        let mut top = None;
        let mut e = t;
        while e < len && digit(&da, e) == digit(&db, e) {
            if digit(&da, e) == 1 {
                top = Some(e);
            }
            e += 1;
        }
        if let Some(hi) = top {
            out.push((t, hi));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert_eq!(jumps(0b110101111, 0b10000100), 2);
        assert_eq!(intervals(0b11101110010101), 5);
        assert_eq!(carry_region(0b1010011011, 0b100111010), Some((1, 6)));
        assert_eq!(carry_region(0b101, 0b10), None);
        assert_eq!(common_fragments(0b1011, 0b1011), vec![(0, 3)]);
    }
}
