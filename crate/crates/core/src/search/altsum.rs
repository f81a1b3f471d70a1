use std::collections::BTreeMap;

use super::colouring::{ColourId, PairColouring};
use super::constraints::{constraints_ending_at, Form, FormOptions};
use super::engine::{run, Limits, Tree, Verdict};
use super::{check_bound, check_len, check_limits, finish, numbers, SearchReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AltsumParams {
    /// Every `x_i <= bound`.
    pub bound: u64,
    pub max_len: usize,
    pub form: Form,
    pub options: FormOptions,
}

struct Altsum {
    colouring: PairColouring,
    p: AltsumParams,
}

impl Tree for Altsum {
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
        let n = xs.len();
        let constraints = if self.p.form.on_differences() {
            let mut ys = Vec::with_capacity(n);
            ys.push(xs[0]);
            ys.extend(xs.windows(2).map(|w| w[1] - w[0]));
            constraints_ending_at(&ys, n, self.p.form, self.p.options)?
        } else {
            constraints_ending_at(xs, n, self.p.form, self.p.options)?
        };
        let mut fixed = colour;
        for c in constraints {
            let got = self.colouring.colour(c.left, c.right)?;
            match fixed {
                None => fixed = Some(got),
                Some(f) if f != got => return Ok(Verdict::Clash),
                Some(_) => {}
            }
        }
        Ok(fixed.map_or(Verdict::Free, Verdict::Consistent))
    }

    fn is_complete(&self, xs: &[u64]) -> bool {
        xs.len() == self.p.max_len
    }
}

/// Increasing `x_1 < ... < x_L <= bound` on which every constraint of the
/// form gets one colour. For the y forms the constraints are taken on the
/// differences `y = xy_transform(x)`; witnesses are reported as `x`.
pub fn altsum_search(colouring: PairColouring, p: &AltsumParams, limits: &Limits) -> Result<SearchReport> {
    check_len("max_len", p.max_len)?;
    check_bound(p.bound)?;
    check_limits(limits)?;
    if p.options.allow_k1_one && p.form != Form::YSubset {
        return Err(Error::Precondition("k_1 = 1 applies to y_subset only".into()));
    }
    let outcome = run(&Altsum { colouring, p: *p }, limits)?;
    let params = BTreeMap::from([
        ("bound".to_string(), p.bound.to_string()),
        ("max_len".to_string(), p.max_len.to_string()),
        ("form".to_string(), p.form.to_string()),
        ("allow_k1_one".to_string(), p.options.allow_k1_one.to_string()),
    ]);
    Ok(finish(
        "altsum",
        params,
        limits,
        colouring.to_string(),
        colouring.colour_count(),
        outcome,
        numbers,
        |id| colouring.describe(id),
    ))
}
