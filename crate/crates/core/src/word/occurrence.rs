use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::source::{Letter, WordSource};
use crate::error::{Error, Result};

/// First occurrence of a factor: `start` is `A_x(u)`, `end` is
/// `B_x(u) = A_x(u) + |u|`. Both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FirstOccurrence {
    Found(Occurrence),
    /// Certified: `u` occurs nowhere in the word.
    NotAFactor,
    /// No occurrence inside the scanned prefix; the word may still contain it.
    NotFoundWithinBound,
}

impl FirstOccurrence {
    pub fn found(self) -> Option<Occurrence> {
        match self {
            FirstOccurrence::Found(o) => Some(o),
            _ => None,
        }
    }
}

fn find(text: &[Letter], u: &[Letter]) -> Option<usize> {
    if u.len() > text.len() {
        return None;
    }
    let (&head, rest) = u.split_first()?;
    let last_start = text.len() - u.len();
    let mut i = 0;
    while i <= last_start {
        match text[i..=last_start].iter().position(|&c| c == head) {
            None => return None,
            Some(off) => {
                i += off;
                if &text[i + 1..i + u.len()] == rest {
                    return Some(i);
                }
                i += 1;
            }
        }
    }
    None
}

/// Every 1-based start of `u` in `text`.
pub(crate) fn all_starts(text: &[Letter], u: &[Letter]) -> Vec<usize> {
    if u.is_empty() || u.len() > text.len() {
        return Vec::new();
    }
    text.windows(u.len())
        .enumerate()
        .filter(|(_, w)| *w == u)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Length of prefix that contains the first occurrence of every factor of an
/// eventually periodic word: any start beyond `|p| + |period|` can be moved
/// back by one period.
fn exact_window(source: &WordSource, u_len: usize) -> Option<usize> {
    match source {
        WordSource::Periodic { period } => Some(period.len() + u_len - 1),
        WordSource::EventuallyPeriodic { prefix, period } => {
            Some(prefix.len() + period.len() + u_len - 1)
        }
        _ => None,
    }
}

/// `A_x(u)` and `B_x(u)`.
///
/// For periodic and eventually periodic sources the answer is exact and
/// `scan_bound` is not consulted. Otherwise only starts with
/// `A + |u| - 1 <= scan_bound` are examined, and a miss is reported as
/// [`FirstOccurrence::NotFoundWithinBound`] unless the source can certify
/// that `u` is not a factor (see [`super::Morphic::is_factor`]).
pub fn first_occurrence(x: &WordSource, u: &[Letter], scan_bound: usize) -> Result<FirstOccurrence> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(window) = exact_window(x, u.len()) {
        return Ok(x.with_prefix(window, |text| match find(text, u) {
            Some(i) => FirstOccurrence::Found(Occurrence { start: i + 1, end: i + 1 + u.len() }),
            None => FirstOccurrence::NotAFactor,
        }));
    }
    if scan_bound < u.len() {
        return Err(Error::Precondition(format!(
            "scan_bound >= |u| ({scan_bound} < {})",
            u.len()
        )));
    }
    let hit = x.with_prefix(scan_bound, |text| find(text, u));
    Ok(match hit {
        Some(i) => FirstOccurrence::Found(Occurrence { start: i + 1, end: i + 1 + u.len() }),
        None if certified_absent(x, u) => FirstOccurrence::NotAFactor,
        None => FirstOccurrence::NotFoundWithinBound,
    })
}

fn certified_absent(x: &WordSource, u: &[Letter]) -> bool {
    match x {
        WordSource::Morphic(m) => m.is_factor(u) == Some(false),
        _ => false,
    }
}

/// Anything that can answer first-occurrence queries about one fixed word.
pub trait OccurrenceOracle {
    fn first_occurrence(&self, u: &[Letter]) -> Result<FirstOccurrence>;
}

/// Plain scanning with a fixed bound.
pub struct Scan<'a> {
    pub source: &'a WordSource,
    pub scan_bound: usize,
}

impl OccurrenceOracle for Scan<'_> {
    fn first_occurrence(&self, u: &[Letter]) -> Result<FirstOccurrence> {
        first_occurrence(self.source, u, self.scan_bound)
    }
}

/// Memoised first occurrences over a materialised prefix. The text is shared;
/// the memo is per instance, so give each worker thread its own
/// ([`OccurrenceIndex::fork`]).
pub struct OccurrenceIndex {
    text: Arc<[Letter]>,
    /// Eventually periodic sources: decided exactly, from the text up to
    /// `exact_upto` letters and by a direct query beyond that.
    exact: Option<Arc<WordSource>>,
    exact_upto: usize,
    /// Morphic sources, for certifying misses.
    morphic: Option<Arc<WordSource>>,
    alphabet: Vec<bool>,
    memo: RefCell<HashMap<Vec<Letter>, FirstOccurrence>>,
}

impl OccurrenceIndex {
    /// For eventually periodic sources the text is long enough to decide
    /// every factor of length at most `max_factor_len` exactly; otherwise it is
    /// the first `scan_bound` letters.
    pub fn new(x: &WordSource, scan_bound: usize, max_factor_len: usize) -> Self {
        let (len, exact) = match exact_window(x, max_factor_len.max(1)) {
            Some(w) => (w.max(scan_bound), Some(Arc::new(x.clone()))),
            None => (scan_bound, None),
        };
        // largest |u| whose exact window fits in the text
        let exact_upto = match exact_window(x, 1) {
            Some(w1) => len - w1 + 1,
            None => 0,
        };
        let text: Arc<[Letter]> = x.with_prefix(len, |t| t.into());
        let mut alphabet = vec![false; 256];
        let certain = matches!(x, WordSource::Morphic(_)) || exact.is_some();
        for c in x.alphabet() {
            alphabet[c as usize] = true;
        }
        if !certain {
            alphabet.iter_mut().for_each(|a| *a = true);
        }
        let morphic = matches!(x, WordSource::Morphic(_)).then(|| Arc::new(x.clone()));
        OccurrenceIndex {
            text,
            exact,
            exact_upto,
            morphic,
            alphabet,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// A fresh memo over the same text.
    pub fn fork(&self) -> Self {
        OccurrenceIndex {
            text: Arc::clone(&self.text),
            exact: self.exact.clone(),
            exact_upto: self.exact_upto,
            morphic: self.morphic.clone(),
            alphabet: self.alphabet.clone(),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn text(&self) -> &[Letter] {
        &self.text
    }
}

impl OccurrenceOracle for OccurrenceIndex {
    fn first_occurrence(&self, u: &[Letter]) -> Result<FirstOccurrence> {
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&hit) = self.memo.borrow().get(u) {
            return Ok(hit);
        }
        let result = if u.iter().any(|&c| !self.alphabet[c as usize]) {
            FirstOccurrence::NotAFactor
        } else {
            match (&self.exact, find(&self.text, u)) {
                (_, Some(i)) => {
                    FirstOccurrence::Found(Occurrence { start: i + 1, end: i + 1 + u.len() })
                }
                (Some(_), None) if u.len() <= self.exact_upto => FirstOccurrence::NotAFactor,
                (Some(x), None) => first_occurrence(x, u, 0)?,
                (None, None) => match &self.morphic {
                    Some(x) if certified_absent(x, u) => FirstOccurrence::NotAFactor,
                    _ => FirstOccurrence::NotFoundWithinBound,
                },
            }
        };
        self.memo.borrow_mut().insert(u.to_vec(), result);
        Ok(result)
    }
}
