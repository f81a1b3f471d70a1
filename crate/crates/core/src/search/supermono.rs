use std::collections::BTreeMap;

use super::colouring::{ColourId, WordColouring};
use super::engine::{run, Limits, Tree, Verdict};
use super::{check_len, check_limits, finish, subsets_with_last, SearchReport, Term};
use crate::error::{Error, Result};
use crate::word::{OccurrenceIndex, WordSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupermonoParams {
    /// Largest suffix start tried.
    pub suffix_bound: usize,
    pub n: usize,
    /// Largest total length of the `n` factors.
    pub len_bound: usize,
    /// Largest gap between consecutive factors (0: adjacent factors).
    pub gap: usize,
    pub scan_bound: usize,
}

impl SupermonoParams {
    /// A scan bound comfortably past every position the factors can reach.
    pub fn default_scan_bound(suffix_bound: usize, len_bound: usize, gap: usize, n: usize) -> usize {
        8 * (suffix_bound + len_bound + gap * n)
    }
}

/// Terms are the suffix start, then one code per factor:
/// `gap * (len_bound + 1) + len`.
struct Supermono {
    colouring: WordColouring,
    x: WordSource,
    text: Vec<u8>,
    p: SupermonoParams,
}

impl Supermono {
    fn decode(&self, code: u64) -> (usize, usize) {
        let code = code as usize;
        (code / (self.p.len_bound + 1), code % (self.p.len_bound + 1))
    }

    /// 0-based `(start, len)` of each factor.
    fn spans(&self, terms: &[u64]) -> Vec<(usize, usize)> {
        let mut at = terms[0] as usize - 1;
        terms[1..]
            .iter()
            .map(|&code| {
                let (gap, len) = self.decode(code);
                at += gap;
                let span = (at, len);
                at += len;
                span
            })
            .collect()
    }
}

impl Tree for Supermono {
    type Ctx = OccurrenceIndex;

    fn ctx(&self) -> Result<OccurrenceIndex> {
        Ok(OccurrenceIndex::new(&self.x, self.p.scan_bound, self.p.len_bound))
    }

    fn roots(&self) -> Vec<u64> {
        (1..=self.p.suffix_bound as u64).collect()
    }

    fn children(&self, terms: &[u64]) -> Vec<u64> {
        let used: usize = terms[1..].iter().map(|&c| self.decode(c).1).sum();
        let left_for_rest = self.p.n - terms.len();
        let room = self.p.len_bound.saturating_sub(used + left_for_rest);
        let gaps = if terms.len() == 1 { 0 } else { self.p.gap };
        let width = (self.p.len_bound + 1) as u64;
        (0..=gaps as u64)
            .flat_map(|g| (1..=room as u64).map(move |len| g * width + len))
            .collect()
    }

    fn check(&self, oracle: &mut OccurrenceIndex, terms: &[u64], colour: Option<ColourId>) -> Result<Verdict> {
        if terms.len() == 1 {
            return Ok(colour.map_or(Verdict::Free, Verdict::Consistent));
        }
        let spans = self.spans(terms);
        let m = spans.len();
        let mut fixed = colour;
        let mut word = Vec::with_capacity(self.p.len_bound);
        for mask in subsets_with_last(m) {
            word.clear();
            for (i, &(start, len)) in spans.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    word.extend_from_slice(&self.text[start..start + len]);
                }
            }
            let Some(got) = self.colouring.colour(&*oracle, &word)? else {
                return Ok(Verdict::Unknown);
            };
            match fixed {
                None => fixed = Some(got),
                Some(f) if f != got => return Ok(Verdict::Clash),
                Some(_) => {}
            }
        }
        Ok(fixed.map_or(Verdict::Free, Verdict::Consistent))
    }

    fn is_complete(&self, terms: &[u64]) -> bool {
        terms.len() == self.p.n + 1
    }
}

/// Factors `u_1, ..., u_n` of `x`, the first starting at a suffix start
/// `s <= suffix_bound`, each following the previous one after at most `gap`
/// letters, with total length at most `len_bound`, such that all `2^n - 1`
/// concatenations `u_{k_1} ... u_{k_t}` (`k_1 < ... < k_t`) share one colour.
///
/// A colour that cannot be decided within `scan_bound` abandons the branch
/// and is counted in `unknown`; the report is exhausted only if there were
/// none.
pub fn supermono_search(
    x: &WordSource,
    colouring: WordColouring,
    p: &SupermonoParams,
    limits: &Limits,
) -> Result<SearchReport> {
    check_len("n", p.n)?;
    check_limits(limits)?;
    if p.suffix_bound == 0 {
        return Err(Error::Precondition("suffix_bound >= 1".into()));
    }
    if p.len_bound < p.n {
        return Err(Error::Precondition(format!("len_bound >= n ({} < {})", p.len_bound, p.n)));
    }
    let reach = p.suffix_bound + p.len_bound + p.gap * p.n;
    if p.scan_bound < p.len_bound {
        return Err(Error::Precondition(format!("scan_bound >= len_bound ({} < {})", p.scan_bound, p.len_bound)));
    }
    let text = x.with_prefix(reach, |t| t.to_vec());
    if text.len() < reach {
        return Err(Error::OutOfPrefix(reach));
    }
    let tree = Supermono { colouring, x: x.clone(), text, p: *p };
    let outcome = run(&tree, limits)?;
    let params = BTreeMap::from([
        ("word".to_string(), x.to_string()),
        ("suffix_bound".to_string(), p.suffix_bound.to_string()),
        ("n".to_string(), p.n.to_string()),
        ("len_bound".to_string(), p.len_bound.to_string()),
        ("gap".to_string(), p.gap.to_string()),
        ("scan_bound".to_string(), p.scan_bound.to_string()),
    ]);
    let terms = |t: &[u64]| {
        if t.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Term::Number(t[0])];
        out.extend(tree.spans(t).into_iter().map(|(start, len)| {
            Term::Word(String::from_utf8_lossy(&tree.text[start..start + len]).into_owned())
        }));
        out
    };
    Ok(finish(
        "supermono",
        params,
        limits,
        colouring.to_string(),
        colouring.colour_count(),
        outcome,
        terms,
        |id| colouring.describe(id),
    ))
}
