//! Bounded, exhaustive searches for monochromatic structures.
//!
//! Every search extends sequences depth first, smallest candidate first, so
//! witnesses come out in lexicographic order. Subtrees under distinct first
//! terms run in parallel and are merged in order of their first term, so a
//! report does not depend on the number of threads.

mod altsum;
mod colouring;
mod constraints;
mod engine;
mod hindman;
mod plus;
mod q5;
mod report;
mod supermono;

use std::collections::BTreeMap;

pub use altsum::{altsum_search, AltsumParams};
pub use colouring::{ColourId, ColouringSpec, NumberColouring, PairColouring, WordColouring};
pub use constraints::{
    constraints_ending_at, constraints_for, xy_inverse, xy_transform, Constraint, Form, FormOptions,
};
pub use engine::Limits;
pub use hindman::{hindman_search, HindmanParams};
pub use plus::{plus_pair_search, PlusParams};
pub use q5::{q5_coefficients, q5_search, Q5Params, Q5Variant};
pub use report::{Format, SearchReport, Term, Witness, SCHEMA_VERSION};
pub use supermono::{supermono_search, SupermonoParams};

use crate::error::{Error, Result};
use engine::Outcome;

/// Longest sequence any search will build; subsets of earlier terms are
/// enumerated as bitmasks.
pub const MAX_LEN: usize = 24;

fn check_len(what: &str, len: usize) -> Result<()> {
    if len == 0 || len > MAX_LEN {
        return Err(Error::Precondition(format!("{what} in 1..={MAX_LEN} (got {len})")));
    }
    Ok(())
}

/// Largest value bound; candidate terms are listed explicitly at each level.
pub const MAX_BOUND: u64 = 1 << 32;

fn check_bound(bound: u64) -> Result<()> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(Error::Precondition(format!("bound in 1..=2^32 (got {bound})")));
    }
    Ok(())
}

fn check_limits(limits: &Limits) -> Result<()> {
    if limits.witnesses == Some(0) {
        return Err(Error::Precondition("witness limit must be positive".into()));
    }
    if limits.threads == Some(0) {
        return Err(Error::Precondition("thread count must be positive".into()));
    }
    Ok(())
}

fn limit_params(params: &mut BTreeMap<String, String>, limits: &Limits) {
    let show = |o: Option<String>| o.unwrap_or_else(|| "none".into());
    params.insert("witness_limit".into(), show(limits.witnesses.map(|w| w.to_string())));
    params.insert("node_limit".into(), show(limits.nodes_per_branch.map(|w| w.to_string())));
}

fn finish(
    kind: &str,
    mut params: BTreeMap<String, String>,
    limits: &Limits,
    colouring: String,
    colour_count: u64,
    outcome: Outcome,
    terms: impl Fn(&[u64]) -> Vec<Term>,
    colour: impl Fn(ColourId) -> String,
) -> SearchReport {
    limit_params(&mut params, limits);
    SearchReport {
        schema_version: SCHEMA_VERSION,
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        kind: kind.to_string(),
        params,
        colouring,
        colour_count,
        witnesses: outcome
            .witnesses
            .iter()
            .map(|(t, c)| Witness { terms: terms(t), colour: c.map_or_else(|| "any".into(), &colour) })
            .collect(),
        exhausted: outcome.exhausted,
        nodes: outcome.nodes,
        max_depth: outcome.max_depth,
        unknown: outcome.unknown,
        deepest: terms(&outcome.deepest),
    }
}

fn numbers(t: &[u64]) -> Vec<Term> {
    t.iter().map(|&n| Term::Number(n)).collect()
}

/// Nonempty subsets of `0..m` containing `m - 1`, as masks: the singleton,
/// then the runs ending at `m - 1` (longest last), then the rest ascending.
fn subsets_with_last(m: usize) -> impl Iterator<Item = u64> {
    let top = 1u64 << (m - 1);
    let runs = (1..=m).map(move |len| ((1u64 << len) - 1) << (m - len));
    let rest = (1..top).map(move |lower| lower | top).filter(|mask| {
        let run = (mask >> mask.trailing_zeros()) + 1;
        !run.is_power_of_two()
    });
    runs.chain(rest)
}
