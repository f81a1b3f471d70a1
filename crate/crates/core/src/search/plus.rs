use std::collections::BTreeMap;

use super::colouring::{ColourId, PairColouring};
use super::engine::{run, Limits, Tree, Verdict};
use super::{check_bound, check_len, check_limits, finish, numbers, SearchReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlusParams {
    pub n: usize,
    pub bound: u64,
}

struct Plus {
    colouring: PairColouring,
    p: PlusParams,
}

impl Tree for Plus {
    type Ctx = ();

    fn ctx(&self) -> Result<()> {
        Ok(())
    }

    fn roots(&self) -> Vec<u64> {
        (1..=self.p.bound).collect()
    }

    fn children(&self, xs: &[u64]) -> Vec<u64> {
        (xs[xs.len() - 1] + 1..=self.p.bound).collect()
    }

    fn check(&self, _: &mut (), xs: &[u64], colour: Option<ColourId>) -> Result<Verdict> {
        let m = xs.len() - 1;
        let right = xs[m];
        let mut fixed = colour;
        for mask in 1u64..(1 << m) {
            let left: u64 = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).sum();
            if left >= right {
                return Ok(Verdict::Clash);
            }
            let got = self.colouring.colour(left, right)?;
            match fixed {
                None => fixed = Some(got),
                Some(f) if f != got => return Ok(Verdict::Clash),
                Some(_) => {}
            }
        }
        Ok(fixed.map_or(Verdict::Free, Verdict::Consistent))
    }

    fn is_complete(&self, xs: &[u64]) -> bool {
        xs.len() == self.p.n
    }
}

/// `x_1 < ... < x_n <= bound` with every pair
/// `(x_{k_1} + ... + x_{k_t}, x_{k_{t+1}})` one colour. Pair colourings are
/// defined on `a < b` only, so a subset sum reaching the next term rules the
/// sequence out.
pub fn plus_pair_search(colouring: PairColouring, p: &PlusParams, limits: &Limits) -> Result<SearchReport> {
    check_len("n", p.n)?;
    check_bound(p.bound)?;
    check_limits(limits)?;
    if p.n < 2 {
        return Err(Error::Precondition("n >= 2".into()));
    }
    let outcome = run(&Plus { colouring, p: *p }, limits)?;
    let params = BTreeMap::from([
        ("n".to_string(), p.n.to_string()),
        ("bound".to_string(), p.bound.to_string()),
    ]);
    Ok(finish(
        "plus",
        params,
        limits,
        colouring.to_string(),
        colouring.colour_count(),
        outcome,
        numbers,
        |id| colouring.describe(id),
    ))
}
