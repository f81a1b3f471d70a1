//! Depth-first extension of integer sequences, one subtree per first term,
//! subtrees explored in parallel and merged in order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::colouring::ColourId;
use crate::error::{Error, Result};

pub(crate) enum Verdict {
    Consistent(ColourId),
    /// Consistent, and nothing constrains the colour yet.
    Free,
    Clash,
    Unknown,
}

pub(crate) trait Tree: Sync {
    type Ctx;

    fn ctx(&self) -> Result<Self::Ctx>;
    fn roots(&self) -> Vec<u64>;
    /// Candidates for the next term, smallest first.
    fn children(&self, terms: &[u64]) -> Vec<u64>;
    /// Checks the constraints introduced by the last term.
    fn check(&self, ctx: &mut Self::Ctx, terms: &[u64], colour: Option<ColourId>) -> Result<Verdict>;
    fn is_complete(&self, terms: &[u64]) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Stop after this many witnesses; `None` collects all of them.
    pub witnesses: Option<usize>,
    /// Per first term.
    pub nodes_per_branch: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { witnesses: Some(1), nodes_per_branch: None, threads: None }
    }
}

pub(crate) struct Outcome {
    pub witnesses: Vec<(Vec<u64>, Option<ColourId>)>,
    pub exhausted: bool,
    pub nodes: u64,
    pub max_depth: usize,
    pub deepest: Vec<u64>,
    pub unknown: u64,
}

struct Branch {
    witnesses: Vec<(Vec<u64>, Option<ColourId>)>,
    truncated: bool,
    nodes: u64,
    max_depth: usize,
    deepest: Vec<u64>,
    unknown: u64,
}

fn explore<T: Tree>(tree: &T, root: u64, limits: &Limits) -> Result<Branch> {
    let mut ctx = tree.ctx()?;
    let mut b = Branch {
        witnesses: Vec::new(),
        truncated: false,
        nodes: 0,
        max_depth: 0,
        deepest: Vec::new(),
        unknown: 0,
    };
    let mut terms = vec![root];
    // each frame: candidates for the position after `terms[..depth]`, and
    // the colour fixed so far
    let mut stack: Vec<(std::vec::IntoIter<u64>, Option<ColourId>)> = Vec::new();
    let mut colour = None;
    loop {
        if limits.nodes_per_branch.is_some_and(|cap| b.nodes >= cap) {
            b.truncated = true;
            break;
        }
        b.nodes += 1;
        let extend = match tree.check(&mut ctx, &terms, colour)? {
            Verdict::Clash => None,
            Verdict::Unknown => {
                b.unknown += 1;
                None
            }
            Verdict::Free => Some(colour),
            Verdict::Consistent(c) => Some(Some(c)),
        };
        if let Some(c) = extend {
            if terms.len() > b.max_depth {
                b.max_depth = terms.len();
                b.deepest = terms.clone();
            }
            if tree.is_complete(&terms) {
                b.witnesses.push((terms.clone(), c));
                if limits.witnesses.is_some_and(|w| b.witnesses.len() >= w) {
                    b.truncated = true;
                    break;
                }
            } else {
                stack.push((tree.children(&terms).into_iter(), c));
                terms.push(0);
            }
        }
        // advance to the next candidate
        loop {
            match stack.last_mut() {
                None => return Ok(b),
                Some((it, c)) => match it.next() {
                    Some(next) => {
                        *terms.last_mut().expect("frame has a slot") = next;
                        colour = *c;
                        break;
                    }
                    None => {
                        stack.pop();
                        terms.pop();
                    }
                },
            }
        }
    }
    Ok(b)
}

pub(crate) fn run<T: Tree>(tree: &T, limits: &Limits) -> Result<Outcome> {
    let roots = tree.roots();
    let go = || -> Result<Vec<Branch>> { roots.par_iter().map(|&r| explore(tree, r, limits)).collect() };
    let branches = match limits.threads {
        None => go()?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(go)?,
    };
    let mut out = Outcome {
        witnesses: Vec::new(),
        exhausted: true,
        nodes: 0,
        max_depth: 0,
        deepest: Vec::new(),
        unknown: 0,
    };
    for b in branches {
        out.nodes += b.nodes;
        out.unknown += b.unknown;
        if b.max_depth > out.max_depth {
            out.max_depth = b.max_depth;
            out.deepest = b.deepest;
        }
        out.witnesses.extend(b.witnesses);
        if b.truncated {
            out.exhausted = false;
        }
        if let Some(cap) = limits.witnesses {
            if out.witnesses.len() >= cap {
                out.witnesses.truncate(cap);
                out.exhausted = false;
                break;
            }
        }
    }
    if out.unknown > 0 {
        out.exhausted = false;
    }
    Ok(out)
}
