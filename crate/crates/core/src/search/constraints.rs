//! The `x <-> y` difference transform and the pair families the searches
//! must keep monochromatic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nat::Binary;

/// `y_1 = x_1`, `y_n = x_n - x_{n-1}`.
pub fn xy_transform<T: Binary>(xs: &[T]) -> Result<Vec<T>> {
    if let Some(w) = xs.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "xs strictly increasing ({} >= {})",
            w[0], w[1]
        )));
    }
    if xs.first().is_some_and(Binary::is_zero) {
        return Err(Error::Zero);
    }
    let mut ys = Vec::with_capacity(xs.len());
    if let Some(first) = xs.first() {
        ys.push(first.clone());
    }
    ys.extend(xs.windows(2).map(|w| w[1].minus(&w[0])));
    Ok(ys)
}

/// Prefix sums.
pub fn xy_inverse<T: Binary>(ys: &[T]) -> Result<Vec<T>> {
    if ys.iter().any(Binary::is_zero) {
        return Err(Error::Zero);
    }
    let mut xs: Vec<T> = Vec::with_capacity(ys.len());
    for y in ys {
        let next = match xs.last() {
            None => y.clone(),
            Some(x) => x.plus(y),
        };
        xs.push(next);
    }
    Ok(xs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// `(x_{k_1} - x_{k_2} + ... + x_{k_t}, x_{k_{t+1}})`, `t` odd.
    XAlternating,
    /// `(y_1 + y_{k_1} + ... + y_{k_t}, y_1 + ... + y_{k_{t+1}})`,
    /// `2 <= k_1 < ... < k_{t+1}`.
    YSubset,
    /// The alternating sum of prefix sums, written as a union of blocks:
    /// `(y_1 + .. + y_{k_1} + y_{k_2+1} + .. + y_{k_3} + .., y_1 + .. + y_{k_{t+1}})`.
    YBlock,
}

impl Form {
    pub fn on_differences(self) -> bool {
        self != Form::XAlternating
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::XAlternating => "x_alternating",
            Form::YSubset => "y_subset",
            Form::YBlock => "y_block",
        })
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "x_alternating" | "x" => Ok(Form::XAlternating),
            "y_subset" => Ok(Form::YSubset),
            "y_block" => Ok(Form::YBlock),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown form {s:?} (x_alternating, y_subset, y_block)"),
            }),
        }
    }
}

/// A pair that must receive the common colour; `origin` is the index tuple
/// `k_1 < ... < k_{t+1}` (1-based) it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint<T> {
    pub left: T,
    pub right: T,
    pub origin: Vec<usize>,
}

/// Options beyond the form itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormOptions {
    /// `y_subset` only: allow `k_1 = 1`. Tuples whose left sum is not below
    /// the right one are skipped.
    pub allow_k1_one: bool,
}

fn sum<T: Binary>(terms: impl IntoIterator<Item = T>) -> Option<T> {
    terms.into_iter().reduce(|a, b| a.plus(&b))
}

/// Constraints whose largest index is `n` (1-based), in a fixed order: the
/// remaining indices as a bitmask over `1..n`, ascending.
pub fn constraints_ending_at<T: Binary>(
    vals: &[T],
    n: usize,
    form: Form,
    opts: FormOptions,
) -> Result<Vec<Constraint<T>>> {
    if n == 0 || n > vals.len() {
        return Err(Error::IndexOutOfRange { index: n, len: vals.len() });
    }
    let v = |k: usize| vals[k - 1].clone();
    let mut out = Vec::new();
    if n == 1 {
        return Ok(out);
    }
    let right = match form {
        Form::XAlternating => v(n),
        _ => sum((1..=n).map(v)).expect("n >= 1"),
    };
    let lowest = match form {
        Form::YSubset if !opts.allow_k1_one => 2,
        _ => 1,
    };
    if lowest >= n {
        return Ok(out);
    }
    let width = n - lowest;
    for mask in 1u64..(1u64 << width) {
        let ks: Vec<usize> = (0..width).filter(|b| mask >> b & 1 == 1).map(|b| b + lowest).collect();
        let left = match form {
            Form::XAlternating | Form::YBlock if ks.len() % 2 == 0 => continue,
            Form::XAlternating => {
                let plus = sum(ks.iter().step_by(2).map(|&k| v(k))).expect("t >= 1");
                match sum(ks.iter().skip(1).step_by(2).map(|&k| v(k))) {
                    None => plus,
                    Some(minus) => plus.minus(&minus),
                }
            }
            Form::YBlock => {
                // blocks (0, k_1], (k_2, k_3], ...
                let mut bounds = vec![0];
                bounds.extend(&ks);
                sum(bounds.chunks(2).flat_map(|c| (c[0] + 1..=c[1]).map(v))).expect("k_1 >= 1")
            }
            Form::YSubset => {
                let s = sum(std::iter::once(v(1)).chain(ks.iter().map(|&k| v(k)))).expect("y_1");
                if s >= right {
                    continue;
                }
                s
            }
        };
        debug_assert!(!left.is_zero() && left < right);
        let mut origin = ks;
        origin.push(n);
        out.push(Constraint { left, right: right.clone(), origin });
    }
    Ok(out)
}

/// Every constraint of the family on `vals` (`xs` for the x form, `ys` for
/// the y forms), ordered by largest index.
pub fn constraints_for<T: Binary>(vals: &[T], form: Form, opts: FormOptions) -> Result<Vec<Constraint<T>>> {
    match form {
        Form::XAlternating => {
            xy_transform(vals)?;
        }
        _ => {
            if vals.iter().any(Binary::is_zero) {
                return Err(Error::Zero);
            }
        }
    }
    let mut out = Vec::new();
    for n in 1..=vals.len() {
        out.extend(constraints_ending_at(vals, n, form, opts)?);
    }
    Ok(out)
}
