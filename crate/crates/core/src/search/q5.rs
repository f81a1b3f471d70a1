use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::colouring::{ColourId, NumberColouring};
use super::engine::{run, Limits, Tree, Verdict};
use super::{check_bound, check_len, check_limits, finish, numbers, SearchReport};
use crate::error::{Error, Result};

/// Which coefficients `a_i` may multiply `y_i` in `a_1 y_1 + ... + a_k y_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Q5Variant {
    /// `a_1 = a_k = 1`, the others in `{1, 2}`.
    Ends,
    /// `a_1 in {1, 2}`, `a_k = 1`, the others in `{1, 2}`.
    A1Free,
    /// `a_1 = 1`, `a_k in {1, 2}`, the others in `{1, 2}`.
    AkFree,
    /// `a_1 = a_k = 1`, the others in `{0, 1, 2}`.
    Gaps,
}

impl Q5Variant {
    fn sets(self) -> (&'static [u64], &'static [u64], &'static [u64]) {
        match self {
            Q5Variant::Ends => (&[1], &[1, 2], &[1]),
            Q5Variant::A1Free => (&[1, 2], &[1, 2], &[1]),
            Q5Variant::AkFree => (&[1], &[1, 2], &[1, 2]),
            Q5Variant::Gaps => (&[1], &[0, 1, 2], &[1]),
        }
    }
}

impl fmt::Display for Q5Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Q5Variant::Ends => "q5",
            Q5Variant::A1Free => "a1free",
            Q5Variant::AkFree => "akfree",
            Q5Variant::Gaps => "gaps",
        })
    }
}

impl FromStr for Q5Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q5" | "ends" => Ok(Q5Variant::Ends),
            "a1free" => Ok(Q5Variant::A1Free),
            "akfree" => Ok(Q5Variant::AkFree),
            "gaps" | "with_gaps" => Ok(Q5Variant::Gaps),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown variant {s:?} (q5, a1free, akfree, gaps)"),
            }),
        }
    }
}

/// Coefficient vectors `(a_1, ..., a_k)` of the variant, lexicographically.
/// For `k = 1` the single coefficient is both `a_1` and `a_k`; relaxing
/// either end relaxes it, so it ranges over the union of the two end sets.
pub fn q5_coefficients(variant: Q5Variant, k: usize) -> Vec<Vec<u64>> {
    let (first, middle, last) = variant.sets();
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        let mut ends: Vec<u64> = first.iter().chain(last).copied().collect();
        ends.sort_unstable();
        ends.dedup();
        return ends.into_iter().map(|a| vec![a]).collect();
    }
    let mut out: Vec<Vec<u64>> = first.iter().map(|&a| vec![a]).collect();
    for _ in 1..k - 1 {
        out = out
            .into_iter()
            .flat_map(|v| middle.iter().map(move |&a| [v.as_slice(), &[a]].concat()))
            .collect();
    }
    out.into_iter()
        .flat_map(|v| last.iter().map(move |&a| [v.as_slice(), &[a]].concat()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Q5Params {
    pub variant: Q5Variant,
    pub len: usize,
    /// Every `y_i <= bound`; repeats are allowed.
    pub bound: u64,
}

struct Q5 {
    colouring: NumberColouring,
    p: Q5Params,
    /// Coefficient vectors by `k - 1`.
    coefficients: Vec<Vec<Vec<u64>>>,
}

impl Tree for Q5 {
    type Ctx = ();

    fn ctx(&self) -> Result<()> {
        Ok(())
    }

    fn roots(&self) -> Vec<u64> {
        (1..=self.p.bound).collect()
    }

    fn children(&self, _: &[u64]) -> Vec<u64> {
        (1..=self.p.bound).collect()
    }

    fn check(&self, _: &mut (), ys: &[u64], colour: Option<ColourId>) -> Result<Verdict> {
        let mut fixed = colour;
        for a in &self.coefficients[ys.len() - 1] {
            let s = a
                .iter()
                .zip(ys)
                .try_fold(0u64, |acc, (&a, &y)| acc.checked_add(a.checked_mul(y)?))
                .ok_or_else(|| Error::Overflow("coefficient sum exceeds u64".into()))?;
            let got = self.colouring.colour(s)?;
            match fixed {
                None => fixed = Some(got),
                Some(f) if f != got => return Ok(Verdict::Clash),
                Some(_) => {}
            }
        }
        Ok(fixed.map_or(Verdict::Free, Verdict::Consistent))
    }

    fn is_complete(&self, ys: &[u64]) -> bool {
        ys.len() == self.p.len
    }
}

/// `y_1, ..., y_L <= bound` on which every `a_1 y_1 + ... + a_k y_k`,
/// `k = 1..L`, with coefficients from the variant, has one colour.
pub fn q5_search(colouring: NumberColouring, p: &Q5Params, limits: &Limits) -> Result<SearchReport> {
    check_len("len", p.len)?;
    check_bound(p.bound)?;
    check_limits(limits)?;
    if p.len > 12 {
        return Err(Error::Precondition(format!("len <= 12 (got {})", p.len)));
    }
    let coefficients = (1..=p.len).map(|k| q5_coefficients(p.variant, k)).collect();
    let outcome = run(&Q5 { colouring, p: *p, coefficients }, limits)?;
    let params = BTreeMap::from([
        ("variant".to_string(), p.variant.to_string()),
        ("len".to_string(), p.len.to_string()),
        ("bound".to_string(), p.bound.to_string()),
    ]);
    Ok(finish(
        "q5",
        params,
        limits,
        colouring.to_string(),
        colouring.colour_count(),
        outcome,
        numbers,
        |id| colouring.describe(id),
    ))
}
