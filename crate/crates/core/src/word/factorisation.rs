use serde::{Deserialize, Serialize};

use super::occurrence::{all_starts, first_occurrence, FirstOccurrence};
use super::source::WordSource;
use crate::binary::check_cuts;
use crate::error::{Error, Result};

/// Consecutive factors `u_1 u_2 ... u_k` of `x`, the first starting at
/// `suffix_start` (so `u_0 = x_1 .. x_{suffix_start - 1}` is implicit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorisation {
    pub factors: Vec<String>,
    pub suffix_start: usize,
}

impl Factorisation {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = S>, suffix_start: usize) -> Result<Self> {
        let factors: Vec<String> = factors.into_iter().map(Into::into).collect();
        if suffix_start == 0 {
            return Err(Error::Precondition("positions start at 1".into()));
        }
        if factors.iter().any(String::is_empty) {
            return Err(Error::EmptyWord);
        }
        Ok(Factorisation { factors, suffix_start })
    }

    /// Cuts `x` at the given factor lengths from `suffix_start` on.
    pub fn from_lengths(x: &WordSource, suffix_start: usize, lengths: &[usize]) -> Result<Self> {
        let mut at = suffix_start;
        let mut factors = Vec::with_capacity(lengths.len());
        for &len in lengths {
            if len == 0 {
                return Err(Error::EmptyWord);
            }
            factors.push(x.factor(at, len)?);
            at += len;
        }
        Factorisation::new(factors, suffix_start)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_len(&self) -> usize {
        self.factors.iter().map(String::len).sum()
    }

    /// Where each factor sits inside the factorisation (1-based), followed by
    /// the position just past the last factor.
    pub fn standard_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.factors.len() + 1);
        let mut at = self.suffix_start;
        out.push(at);
        for f in &self.factors {
            at += f.len();
            out.push(at);
        }
        out
    }

    /// `u_{k_1} u_{k_2} ... u_{k_t}` for 1-based ascending indices.
    pub fn concat(&self, indices: &[usize]) -> Result<String> {
        let mut out = String::new();
        for &k in indices {
            let f = k
                .checked_sub(1)
                .and_then(|i| self.factors.get(i))
                .ok_or(Error::IndexOutOfRange { index: k, len: self.factors.len() })?;
            out.push_str(f);
        }
        Ok(out)
    }

    /// Checks the factors against `x` letter by letter.
    pub fn verify_against(&self, x: &WordSource) -> Result<()> {
        let mut at = self.suffix_start;
        for f in &self.factors {
            for &c in f.as_bytes() {
                if x.letter_at(at)? != c {
                    return Err(Error::NotAFactorisation { position: at });
                }
                at += 1;
            }
        }
        Ok(())
    }
}

/// `w_1 = u_1 .. u_{k_1}`, `w_i = u_{k_{i-1}+1} .. u_{k_i}`; factors after the
/// last cut are dropped.
pub fn block_subfactorisation(f: &Factorisation, cuts: &[usize]) -> Result<Factorisation> {
    check_cuts(cuts, f.factors.len())?;
    let mut factors = Vec::with_capacity(cuts.len());
    let mut from = 0;
    for &k in cuts {
        factors.push(f.factors[from..k].concat());
        from = k;
    }
    Ok(Factorisation { factors, suffix_start: f.suffix_start })
}

/// Whether every factor first occurs exactly at its standard position.
/// `Ok(None)` when some occurrence could not be resolved within the bound.
pub fn has_standard_positions(
    x: &WordSource,
    f: &Factorisation,
    scan_bound: usize,
) -> Result<Option<bool>> {
    let positions = f.standard_positions();
    for (u, &pos) in f.factors.iter().zip(&positions) {
        match first_occurrence(x, u.as_bytes(), scan_bound)? {
            FirstOccurrence::Found(o) if o.start == pos => {}
            FirstOccurrence::Found(_) | FirstOccurrence::NotAFactor => return Ok(Some(false)),
            FirstOccurrence::NotFoundWithinBound => return Ok(None),
        }
    }
    Ok(Some(true))
}

/// Evidence that `x_{i+k} = x_{j+k}` for `0 <= k < verified_depth`, hence
/// (if it held forever) that `x` is eventually periodic with period `j - i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityWitness {
    pub i: usize,
    pub j: usize,
    pub verified_depth: usize,
}

impl PeriodicityWitness {
    pub fn period(&self) -> usize {
        self.j - self.i
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Standardisation {
    /// Every returned factor first occurs at its standard position. The last
    /// `unresolved_tail` input factors could not be merged into a factor with
    /// that property and were dropped.
    Standardised { factorisation: Factorisation, unresolved_tail: usize },
    Periodic(PeriodicityWitness),
    /// Merging stopped at the `index`-th output factor.
    BoundExhausted { index: usize },
}

/// `x_{i+k} = x_{j+k}` for all `0 <= k < depth`.
pub fn check_periodicity_witness(x: &WordSource, i: usize, j: usize, depth: usize) -> Result<bool> {
    if i == 0 || i >= j {
        return Err(Error::Precondition(format!("1 <= i < j (got i = {i}, j = {j})")));
    }
    for k in 0..depth {
        if x.letter_at(i + k)? != x.letter_at(j + k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Looks for an earlier start `i < pos` of `merged` whose suffix agrees with
/// the suffix at `pos` as far as the bound allows.
fn periodicity_witness(
    x: &WordSource,
    merged: &[u8],
    pos: usize,
    scan_bound: usize,
) -> Result<Option<PeriodicityWitness>> {
    let mut depth = scan_bound.saturating_sub(pos) + 1;
    if let Some(len) = x.known_len() {
        depth = depth.min((len + 1).saturating_sub(pos));
    }
    if depth == 0 {
        return Ok(None);
    }
    let starts = x.with_prefix(pos + merged.len() - 1, |text| all_starts(text, merged));
    for i in starts.into_iter().filter(|&i| i < pos) {
        if check_periodicity_witness(x, i, pos, depth)? {
            return Ok(Some(PeriodicityWitness { i, j: pos, verified_depth: depth }));
        }
    }
    Ok(None)
}

/// Passes to a block subfactorisation in which every factor first occurs at
/// its standard position.
///
/// Factors are merged left to right: `u_i u_{i+1} ... u_k` grows until its
/// first occurrence is its standard position. When the input runs out (or
/// `merge_bound` merges have been spent) while the merged word still occurs
/// earlier, the earlier starts are tested as a periodicity witness: if some
/// start `i` has `x_{i+k} = x_{pos+k}` up to the scan bound, the word looks
/// eventually periodic.
pub fn standardise(
    x: &WordSource,
    f: &Factorisation,
    scan_bound: usize,
    merge_bound: usize,
) -> Result<Standardisation> {
    f.verify_against(x)?;
    let mut out = Vec::new();
    let mut pos = f.suffix_start;
    let mut merges = 0;
    let mut idx = 0;
    while idx < f.factors.len() {
        let mut merged = f.factors[idx].clone().into_bytes();
        let mut k = idx;
        loop {
            match first_occurrence(x, &merged, scan_bound)? {
                FirstOccurrence::Found(o) if o.start == pos => break,
                FirstOccurrence::Found(_) => {}
                FirstOccurrence::NotAFactor => {
                    unreachable!("a verified factor occurs at its standard position")
                }
                FirstOccurrence::NotFoundWithinBound => {
                    return Ok(Standardisation::BoundExhausted { index: out.len() + 1 });
                }
            }
            let out_of_input = k + 1 == f.factors.len();
            if out_of_input || merges == merge_bound {
                if let Some(w) = periodicity_witness(x, &merged, pos, scan_bound)? {
                    return Ok(Standardisation::Periodic(w));
                }
                if out_of_input {
                    let factorisation = Factorisation { factors: out, suffix_start: f.suffix_start };
                    return Ok(Standardisation::Standardised {
                        factorisation,
                        unresolved_tail: f.factors.len() - idx,
                    });
                }
                return Ok(Standardisation::BoundExhausted { index: out.len() + 1 });
            }
            k += 1;
            merges += 1;
            merged.extend_from_slice(f.factors[k].as_bytes());
        }
        pos += merged.len();
        out.push(String::from_utf8(merged).expect("letters are ASCII"));
        idx = k + 1;
    }
    Ok(Standardisation::Standardised {
        factorisation: Factorisation { factors: out, suffix_start: f.suffix_start },
        unresolved_tail: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_subfactorisation_examples() {
        let f = Factorisation::new(["a", "b", "aa"], 1).unwrap();
        assert_eq!(block_subfactorisation(&f, &[1, 2, 3]).unwrap(), f);
        assert_eq!(block_subfactorisation(&f, &[2, 3]).unwrap().factors, vec!["ab", "aa"]);
        assert!(matches!(block_subfactorisation(&f, &[3, 2]), Err(Error::BadCuts(_))));
        assert!(block_subfactorisation(&f, &[4]).is_err());
    }

    #[test]
    fn misaligned_factorisation_is_rejected() {
        let fib = WordSource::fibonacci();
        let f = Factorisation::new(["ab", "b"], 1).unwrap();
        assert_eq!(f.verify_against(&fib), Err(Error::NotAFactorisation { position: 3 }));
        assert_eq!(
            standardise(&fib, &f, 100, 10),
            Err(Error::NotAFactorisation { position: 3 })
        );
    }

    #[test]
    fn fibonacci_standardisation() {
        let fib = WordSource::fibonacci();
        let f = Factorisation::new(["a", "b", "a", "ab", "aba"], 1).unwrap();
        let s = standardise(&fib, &f, 200, 50).unwrap();
        let Standardisation::Standardised { factorisation, unresolved_tail } = s else {
            panic!("unexpected {s:?}");
        };
        assert_eq!(factorisation.factors, vec!["a", "b", "aab"]);
        assert_eq!(unresolved_tail, 1);
        assert_eq!(has_standard_positions(&fib, &factorisation, 200).unwrap(), Some(true));
    }

    #[test]
    fn periodic_suffix_gives_a_witness() {
        let ab = WordSource::periodic("ab").unwrap();
        let f = Factorisation::new(["ab", "ab", "ab"], 3).unwrap();
        let s = standardise(&ab, &f, 100, 10).unwrap();
        assert_eq!(s, Standardisation::Periodic(PeriodicityWitness { i: 1, j: 3, verified_depth: 98 }));
    }

    #[test]
    fn merge_bound_is_reported() {
        let fib = WordSource::fibonacci();
        // "a" at 4 occurs at 1; merging with "b" gives "ab" which also occurs at 1
        let f = Factorisation::from_lengths(&fib, 4, &[1, 1, 1, 1]).unwrap();
        assert_eq!(
            standardise(&fib, &f, 200, 0).unwrap(),
            Standardisation::BoundExhausted { index: 1 }
        );
    }

    #[test]
    fn witness_checks() {
        let ab = WordSource::periodic("ab").unwrap();
        assert!(check_periodicity_witness(&ab, 1, 3, 1000).unwrap());
        let fib = WordSource::fibonacci();
        assert!(!check_periodicity_witness(&fib, 1, 2, 5).unwrap());
        let e = WordSource::eventually_periodic("c", "ab").unwrap();
        assert!(check_periodicity_witness(&e, 2, 4, 100).unwrap());
        assert!(!check_periodicity_witness(&e, 1, 3, 100).unwrap());
        assert!(check_periodicity_witness(&e, 3, 3, 1).is_err());
    }
}
