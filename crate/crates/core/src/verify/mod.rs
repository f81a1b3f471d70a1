//! Exhaustive property suites over bounded ranges of naturals. Each suite
//! either passes or reports the first counterexample in enumeration order.

mod suites;
pub mod naive;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};


#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Equal first digit and equal three-digit window push the first digit
    /// of the sum up by exactly one. Bound: numbers below it.
    FirstDigit,
    /// The last digit of a consecutive sum of a staircase list sits at the
    /// last digit of its top term or one above. Bound: numbers below it.
    LastDigit,
    /// Dropping the second of four right-to-left disjoint terms removes
    /// exactly one '2 to 1' jump. Bound: number of positions.
    JumpDelta,
    /// Five disjoint terms with all-1 centres cannot have a monochromatic
    /// pair set under stage 2. Bound: number of positions.
    FiveTerm,
    /// Fragments, centres and end pieces partition the support of a sum of
    /// three disjoint staircase terms. Bound: number of positions.
    Fragments,
    /// Common-fragment parity over the four pairs that drop middle terms.
    /// Bound: number of positions.
    Stage3,
    /// Library diagnostics against the string scanners of [`naive`] on all
    /// pairs below the bound.
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::FirstDigit,
        Suite::LastDigit,
        Suite::JumpDelta,
        Suite::FiveTerm,
        Suite::Fragments,
        Suite::Stage3,
        Suite::Oracles,
    ];

    pub fn default_bound(self) -> u64 {
        match self {
            Suite::FirstDigit => 1 << 14,
            Suite::LastDigit => 64,
            Suite::JumpDelta => 16,
            Suite::FiveTerm => 18,
            Suite::Fragments => 12,
            Suite::Stage3 => 12,
            Suite::Oracles => 1 << 10,
        }
    }

    fn max_bound(self) -> u64 {
        match self {
            Suite::FirstDigit | Suite::Oracles => 1 << 20,
            Suite::LastDigit => 1 << 10,
            _ => 40,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::FirstDigit => "firstdigit",
            Suite::LastDigit => "lastdigit",
            Suite::JumpDelta => "jumpdelta",
            Suite::FiveTerm => "fiveterm",
            Suite::Fragments => "fragments",
            Suite::Stage3 => "stage3",
            Suite::Oracles => "oracles",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!(
                    "unknown suite {s:?} (firstdigit, lastdigit, jumpdelta, fiveterm, fragments, stage3, oracles)"
                ),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: u64,
    /// Instances satisfying the hypotheses that were checked.
    pub checked: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{} bound={} checked={} {}", self.suite, self.bound, self.checked, verdict)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\ncounterexample: {c}")?;
        }
        Ok(())
    }
}

/// Runs `suite` exhaustively up to `bound` (see [`Suite`] for its meaning).
pub fn run_suite(suite: Suite, bound: u64) -> Result<SuiteReport> {
    if bound == 0 || bound > suite.max_bound() {
        return Err(Error::Precondition(format!(
            "{suite} bound must lie in 1..={} (got {bound})",
            suite.max_bound()
        )));
    }
    let (checked, counterexample) = match suite {
        Suite::FirstDigit => suites::firstdigit(bound),
        Suite::LastDigit => suites::last_digits(bound),
        Suite::JumpDelta => suites::jumpdelta(bound as usize),
        Suite::FiveTerm => suites::fiveterm(bound as usize),
        Suite::Fragments => suites::fragments(bound as usize),
        Suite::Stage3 => suites::stage3(bound as usize),
        Suite::Oracles => suites::oracles(bound),
    }?;
    Ok(SuiteReport {
        suite,
        bound,
        checked,
        passed: counterexample.is_none(),
        counterexample,
    })
}
