use std::collections::BTreeMap;

use super::colouring::{ColourId, WordColouring};
use super::engine::{run, Limits, Tree, Verdict};
use super::{check_bound, check_len, check_limits, finish, numbers, subsets_with_last, SearchReport};
use crate::error::{Error, Result};
use crate::word::{Scan, WordSource};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HindmanParams {
    /// The word whose powers are coloured.
    pub word: String,
    pub n: usize,
    pub bound: u64,
}

struct Hindman {
    colouring: WordColouring,
    /// `u u u ...`, the reference word for occurrence-based colourings.
    x: WordSource,
    word: Vec<u8>,
    p: HindmanParams,
}

impl Tree for Hindman {
    type Ctx = ();

    fn ctx(&self) -> Result<()> {
        Ok(())
    }

    fn roots(&self) -> Vec<u64> {
        (1..=self.p.bound).collect()
    }

    fn children(&self, a: &[u64]) -> Vec<u64> {
        (a[a.len() - 1] + 1..=self.p.bound).collect()
    }

    fn check(&self, _: &mut (), a: &[u64], colour: Option<ColourId>) -> Result<Verdict> {
        let oracle = Scan { source: &self.x, scan_bound: 0 };
        let mut fixed = colour;
        for mask in subsets_with_last(a.len()) {
            let s: u64 = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).sum();
            let power = self.word.repeat(s as usize);
            let Some(got) = self.colouring.colour(&oracle, &power)? else {
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

    fn is_complete(&self, a: &[u64]) -> bool {
        a.len() == self.p.n
    }
}

/// `a_1 < ... < a_n <= bound` such that `u^s` has one colour for every sum
/// `s` of a nonempty subset of the `a_i`. Occurrence-based colourings are
/// taken in the periodic word `u u u ...`.
pub fn hindman_search(colouring: WordColouring, p: &HindmanParams, limits: &Limits) -> Result<SearchReport> {
    check_len("n", p.n)?;
    check_bound(p.bound)?;
    check_limits(limits)?;
    if p.n < 2 {
        return Err(Error::Precondition("n >= 2".into()));
    }
    let x = WordSource::periodic(&p.word)?;
    let tree = Hindman { colouring, x, word: p.word.as_bytes().to_vec(), p: p.clone() };
    let outcome = run(&tree, limits)?;
    let params = BTreeMap::from([
        ("word".to_string(), p.word.clone()),
        ("n".to_string(), p.n.to_string()),
        ("bound".to_string(), p.bound.to_string()),
    ]);
    Ok(finish(
        "hindman",
        params,
        limits,
        colouring.to_string(),
        colouring.colour_count(),
        outcome,
        numbers,
        |id| colouring.describe(id),
    ))
}
