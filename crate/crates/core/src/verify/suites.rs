use std::collections::BTreeMap;

use rayon::prelude::*;

use super::naive;
use crate::binary::{
    carry_region, centre, check_fragment_pair, common_fragment_count, common_fragments,
    digit_bounds, first_digit, first_three_digits, fragments as fragments_of, intervals, jumps,
    last_digit, middle, readout, Side,
};
use crate::error::Result;
use crate::nat::Binary;
use crate::theta::{colour_pair, Stage};

type Outcome = Result<(u64, Option<String>)>;

/// Concatenates per-part outcomes in order, stopping at the first failure.
fn merge(parts: Vec<Outcome>) -> Outcome {
    let mut checked = 0;
    for part in parts {
        let (c, failure) = part?;
        checked += c;
        if failure.is_some() {
            return Ok((checked, failure));
        }
    }
    Ok((checked, None))
}

fn bits_of(n: u64) -> String {
    format!("{n:b}")
}

fn list(ys: &[u64]) -> String {
    let parts: Vec<String> = ys.iter().map(|&y| bits_of(y)).collect();
    format!("({})", parts.join(", "))
}

pub(super) fn firstdigit(bound: u64) -> Outcome {
    let mut groups: BTreeMap<(usize, u8), Vec<u64>> = BTreeMap::new();
    for a in 1..bound {
        groups
            .entry((first_digit(&a)?, first_three_digits(&a)?.index()))
            .or_default()
            .push(a);
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let parts = groups
        .par_iter()
        .map(|((f, _), members)| {
            let mut checked = 0;
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    checked += 1;
                    let got = first_digit(&(a + b))?;
                    if got != f + 1 {
                        return Ok((checked, Some(format!(
                            "a = {}, b = {}: first digit of a + b at {got}, expected {}",
                            bits_of(a),
                            bits_of(b),
                            f + 1
                        ))));
                    }
                }
            }
            Ok((checked, None))
        })
        .collect();
    merge(parts)
}

pub(super) fn last_digits(bound: u64) -> Outcome {
    let bounds: Vec<(usize, usize)> = (0..bound)
        .map(|v| if v == 0 { (0, 0) } else { digit_bounds(&v).expect("positive") })
        .collect();

    fn extend(zs: &mut Vec<u64>, bounds: &[(usize, usize)], checked: &mut u64) -> Result<Option<String>> {
        if zs.len() >= 3 {
            *checked += 1;
            for n in 0..zs.len() {
                let top = bounds[zs[n] as usize].1;
                for m in 0..=n {
                    let sum: u64 = zs[m..=n].iter().sum();
                    let l = last_digit(&sum)?;
                    if l != top && l != top + 1 {
                        return Ok(Some(format!(
                            "zs = {}, sum of terms {}..={} has last digit {l}, top term ends at {top}",
                            list(zs),
                            m + 1,
                            n + 1
                        )));
                    }
                }
            }
        }
        if zs.len() == 4 {
            return Ok(None);
        }
        let k = zs.len();
        let (f_prev, l_prev) = bounds[zs[k - 1] as usize];
        for v in 1..bounds.len() as u64 {
            let (f, l) = bounds[v as usize];
            let staircase = f > f_prev
                && l > l_prev
                && (k < 2 || f > bounds[zs[k - 2] as usize].1 + 1);
            if staircase {
                zs.push(v);
                let found = extend(zs, bounds, checked)?;
                zs.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    let parts = (1..bound)
        .into_par_iter()
        .map(|z1| {
            let mut checked = 0;
            let found = extend(&mut vec![z1], &bounds, &mut checked)?;
            Ok((checked, found))
        })
        .collect();
    merge(parts)
}

pub(super) fn jumpdelta(positions: usize) -> Outcome {
    /// Labels positions from `p` upward with 0 or the current term, or opens
    /// the next term; every term gets at least one 1.
    fn go(p: usize, positions: usize, cur: usize, ys: &mut [u64; 4], checked: &mut u64) -> Option<String> {
        if cur == 4 {
            *checked += 1;
            let [y1, y2, y3, y4] = *ys;
            let total = y1 + y2 + y3 + y4;
            let dropped = jumps(&(y1 + y3), &total);
            let kept = jumps(&(y1 + y2 + y3), &total);
            if dropped != kept + 1 {
                return Some(format!(
                    "ys = {}: J(y1 + y3, sum) = {dropped}, J(y1 + y2 + y3, sum) = {kept}",
                    list(ys)
                ));
            }
        }
        if p == positions {
            return None;
        }
        if cur >= 1 && cur <= 4 {
            if let Some(found) = go(p + 1, positions, cur, ys, checked) {
                return Some(found);
            }
            ys[cur - 1] |= 1 << p;
            let found = go(p + 1, positions, cur, ys, checked);
            ys[cur - 1] &= !(1 << p);
            if found.is_some() {
                return found;
            }
        }
        if cur < 4 {
            ys[cur] |= 1 << p;
            let found = go(p + 1, positions, cur + 1, ys, checked);
            ys[cur] &= !(1 << p);
            return found;
        }
        None
    }

    let parts = (0..positions)
        .into_par_iter()
        .map(|f1| {
            let mut checked = 0;
            let mut ys = [1u64 << f1, 0, 0, 0];
            let found = go(f1 + 1, positions, 1, &mut ys, &mut checked);
            Ok((checked, found))
        })
        .collect();
    merge(parts)
}

/// Digit bounds `(f_i, l_i)` of `n` staircase terms inside `0..positions`:
/// `f` and `l` strictly increasing, `l_i + 1 < f_{i+2}`, and consecutive
/// spans overlapping in at least two positions (`strict`) or one.
fn staircases(n: usize, positions: usize, strict: bool) -> Vec<Vec<(usize, usize)>> {
    fn go(n: usize, positions: usize, strict: bool, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let i = acc.len();
        if i == n {
            out.push(acc.clone());
            return;
        }
        let f_range = match i {
            0 => 0..positions,
            _ => {
                let (f_prev, l_prev) = acc[i - 1];
                let mut lo = f_prev + 1;
                if i >= 2 {
                    lo = lo.max(acc[i - 2].1 + 2);
                }
                let hi = if strict { l_prev } else { l_prev + 1 };
                lo..hi
            }
        };
        for f in f_range {
            let l_lo = if i == 0 { f } else { (acc[i - 1].1 + 1).max(f) };
            for l in l_lo..positions {
                acc.push((f, l));
                go(n, positions, strict, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, positions, strict, &mut Vec::new(), &mut out);
    out
}

/// Visits every assignment picking one mask per position; `lo` is the
/// position of the first entry. Bit `i` of a mask puts a 1 into term `i`.
fn for_each_fill(
    lo: usize,
    terms: usize,
    choices: &[Vec<u8>],
    mut visit: impl FnMut(&[u64]) -> Option<String>,
) -> Option<String> {
    let mut idx = vec![0usize; choices.len()];
    let mut ys = vec![0u64; terms];
    loop {
        ys.iter_mut().for_each(|y| *y = 0);
        for (k, &i) in idx.iter().enumerate() {
            let mask = choices[k][i];
            for (t, y) in ys.iter_mut().enumerate() {
                if mask >> t & 1 == 1 {
                    *y |= 1 << (lo + k);
                }
            }
        }
        if let Some(found) = visit(&ys) {
            return Some(found);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Per-position choices for disjoint terms on staircase `b`. `forced(i)`
/// says whether the part of term `i` outside both overlaps is all 1s, and
/// `complementary(i)` whether the overlap of terms `i`, `i + 1` has no 0.
fn disjoint_choices(
    b: &[(usize, usize)],
    forced: impl Fn(usize) -> bool,
    complementary: impl Fn(usize) -> bool,
) -> Vec<Vec<u8>> {
    let n = b.len();
    (b[0].0..=b[n - 1].1)
        .map(|p| {
            let spans: Vec<usize> = (0..n).filter(|&i| b[i].0 <= p && p <= b[i].1).collect();
            match spans[..] {
                [i] => {
                    if p == b[i].0 || p == b[i].1 || forced(i) {
                        vec![1 << i]
                    } else {
                        vec![0, 1 << i]
                    }
                }
                [i, j] => {
                    if p == b[j].0 {
                        vec![1 << j]
                    } else if p == b[i].1 {
                        vec![1 << i]
                    } else if complementary(i) {
                        vec![1 << i, 1 << j]
                    } else {
                        vec![0, 1 << i, 1 << j]
                    }
                }
                _ => unreachable!("staircase spans cover each position once or twice"),
            }
        })
        .collect()
}

/// Number of runs of 1s of `x` inside `[lo, hi]`.
fn runs_within(x: u64, lo: usize, hi: usize) -> usize {
    (lo..=hi)
        .filter(|&p| x >> p & 1 == 1 && (p == lo || x >> (p - 1) & 1 == 0))
        .count()
}

fn fiveterm_check(b: &[(usize, usize)], ys: &[u64]) -> Result<Option<String>> {
    let fail = |what: String| Ok(Some(format!("ys = {}: {what}", list(ys))));
    for i in 0..5 {
        for j in i + 1..5 {
            if ys[i].shares_one(&ys[j]) {
                return fail(format!("terms {} and {} share a digit", i + 1, j + 1));
            }
        }
    }
    let centres = [
        (ys[1], ys[0], ys[2], "y2"),
        (ys[2], ys[1], ys[3], "y3"),
        (ys[3], ys[2], ys[4], "y4"),
        (ys[1] + ys[2], ys[0], ys[3], "y2 + y3"),
        (ys[2] + ys[3], ys[1], ys[4], "y3 + y4"),
    ];
    for (r, p, s, name) in centres {
        if !centre(&r, &p, &s)?.is_all_ones() {
            return fail(format!("centre of {name} has a 0"));
        }
    }

    let k1 = runs_within(ys[1], b[1].0, b[0].1);
    let k2 = runs_within(ys[1], b[2].0, b[1].1);
    let k3 = runs_within(ys[2], b[3].0, b[2].1);
    let k4 = runs_within(ys[3], b[4].0, b[3].1);
    let expected = [
        (ys[1], 1 + k1 + k2, "y2"),
        (ys[2], 1 + k2 + k3, "y3"),
        (ys[3], 1 + k3 + k4, "y4"),
        (ys[1] + ys[2], 1 + k1 + k3, "y2 + y3"),
        (ys[1] + ys[3], 2 + k1 + k2 + k3 + k4, "y2 + y4"),
    ];
    for (c, want, name) in expected {
        let got = intervals(&c)?;
        if got != want {
            return fail(format!("I({name}) = {got}, expected {want} (k = {k1}, {k2}, {k3}, {k4})"));
        }
    }

    let x1 = ys[0];
    let x2 = x1 + ys[1];
    let x3 = x2 + ys[2];
    let x4 = x3 + ys[3];
    let pairs = [(x1, x2), (x2, x3), (x3, x4), (x1, x3), (x1 + ys[2], x4)];
    let colours = pairs
        .iter()
        .map(|(a, b)| colour_pair(a, b, Stage::Stage2))
        .collect::<Result<Vec<_>>>()?;
    if colours.iter().all(|c| *c == colours[0]) {
        return fail(format!("all five pairs have colour {}", colours[0]));
    }
    if colours.iter().all(|c| c.c5 == colours[0].c5) {
        return fail("interval parity agrees on all five pairs".into());
    }
    Ok(None)
}

pub(super) fn fiveterm(positions: usize) -> Outcome {
    let shapes = staircases(5, positions, true);
    let parts = shapes
        .par_iter()
        .map(|b| {
            let choices = disjoint_choices(b, |i| (1..=3).contains(&i), |i| i == 1 || i == 2);
            let mut checked = 0;
            let mut error = None;
            let found = for_each_fill(b[0].0, 5, &choices, |ys| {
                checked += 1;
                fiveterm_check(b, ys).unwrap_or_else(|e| {
                    error = Some(e);
                    Some(String::new())
                })
            });
            match error {
                Some(e) => Err(e),
                None => Ok((checked, found)),
            }
        })
        .collect();
    merge(parts)
}

fn fragments_check(ys: &[u64]) -> Result<Option<String>> {
    let (z1, z2, z3) = (ys[0], ys[1], ys[2]);
    let sum = z1 + z2 + z3;
    let (f1, _) = digit_bounds(&z1)?;
    let (f2, l2) = digit_bounds(&z2)?;
    let (_, l3) = digit_bounds(&z3)?;

    let mut segments: Vec<(usize, usize, u64)> = vec![(f1, f2 - 1, z1), (l2 + 1, l3, z3)];
    let c = centre(&z2, &z1, &z3)?;
    segments.push((c.lo, c.hi, z2));
    for (lower, upper) in [(z1, z2), (z2, z3)] {
        check_fragment_pair(&lower, &upper)?;
        for fr in fragments_of(&lower, &upper, Side::Left)? {
            segments.push((fr.lo, fr.hi, lower));
        }
        for fr in fragments_of(&lower, &upper, Side::Right)? {
            segments.push((fr.lo, fr.hi, upper));
        }
    }
    segments.sort_unstable();
    let fail = |what: String| Ok(Some(format!("zs = {}: {what}", list(ys))));
    for w in segments.windows(2) {
        if w[0].1 >= w[1].0 {
            return fail(format!("pieces [{}, {}] and [{}, {}] overlap", w[0].0, w[0].1, w[1].0, w[1].1));
        }
    }
    for &(lo, hi, owner) in &segments {
        if readout(&sum, lo, hi) != readout(&owner, lo, hi) {
            return fail(format!("piece [{lo}, {hi}] is not a string of its term in the sum"));
        }
    }
    for p in f1..=l3 {
        if sum >> p & 1 == 1 && !segments.iter().any(|&(lo, hi, _)| lo <= p && p <= hi) {
            return fail(format!("digit at {p} of the sum lies in no piece"));
        }
    }
    Ok(None)
}

pub(super) fn fragments(positions: usize) -> Outcome {
    let shapes = staircases(3, positions, true);
    let parts = shapes
        .par_iter()
        .map(|b| {
            let choices = disjoint_choices(b, |_| false, |_| false);
            let mut checked = 0;
            let mut error = None;
            let found = for_each_fill(b[0].0, 3, &choices, |ys| {
                checked += 1;
                fragments_check(ys).unwrap_or_else(|e| {
                    error = Some(e);
                    Some(String::new())
                })
            });
            match error {
                Some(e) => Err(e),
                None => Ok((checked, found)),
            }
        })
        .collect();
    merge(parts)
}

/// Per-position choices for staircase terms whose overlaps may share 1s.
fn overlapping_choices(b: &[(usize, usize)]) -> Vec<Vec<u8>> {
    let n = b.len();
    (b[0].0..=b[n - 1].1)
        .map(|p| {
            let spans: Vec<usize> = (0..n).filter(|&i| b[i].0 <= p && p <= b[i].1).collect();
            match spans[..] {
                [i] if p == b[i].0 || p == b[i].1 => vec![1 << i],
                [i] => vec![0, 1 << i],
                [i, j] => {
                    let both = (1 << i) | (1 << j);
                    match (p == b[i].1, p == b[j].0) {
                        (true, true) => vec![both],
                        (true, false) => vec![1 << i, both],
                        (false, true) => vec![1 << j, both],
                        (false, false) => vec![0, 1 << i, 1 << j, both],
                    }
                }
                _ => unreachable!("staircase spans cover each position once or twice"),
            }
        })
        .collect()
}

/// Consecutive terms share a 1, the carry of any sum whose largest term is
/// `y_n` stops below the first digit of `y_{n+1}`, and middles are proper.
fn stage3_hypotheses(ys: &[u64]) -> Result<bool> {
    let n = ys.len();
    if ys.windows(2).any(|w| !w[0].shares_one(&w[1])) {
        return Ok(false);
    }
    for top in 1..n - 1 {
        let next_first = first_digit(&ys[top + 1])?;
        for mask in 1u32..1 << top {
            let below: u64 = (0..top).filter(|&i| mask >> i & 1 == 1).map(|i| ys[i]).sum();
            if let Some(c) = carry_region(&below, &ys[top]) {
                if c.stop >= next_first {
                    return Ok(false);
                }
            }
        }
    }
    for k in 2..n {
        if !middle(ys, k)?.proper {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn stage3(positions: usize) -> Outcome {
    let shapes = staircases(5, positions, false);
    let parts = shapes
        .par_iter()
        .map(|b| {
            let choices = overlapping_choices(b);
            let mut checked = 0;
            let mut error = None;
            let found = for_each_fill(b[0].0, 5, &choices, |ys| {
                let mut run = || -> Result<Option<String>> {
                    if !stage3_hypotheses(ys)? {
                        return Ok(None);
                    }
                    checked += 1;
                    let total: u64 = ys.iter().sum();
                    let lefts = [
                        ys[0] + ys[2] + ys[3],
                        ys[0] + ys[1] + ys[3],
                        ys[0] + ys[3],
                        ys[0] + ys[1] + ys[2] + ys[3],
                    ];
                    let counts: Vec<usize> = lefts.iter().map(|l| common_fragment_count(l, &total)).collect();
                    if counts.iter().all(|c| c % 2 == counts[0] % 2) {
                        return Ok(Some(format!(
                            "ys = {}: common-fragment counts {counts:?} all have the same parity",
                            list(ys)
                        )));
                    }
                    Ok(None)
                };
                run().unwrap_or_else(|e| {
                    error = Some(e);
                    Some(String::new())
                })
            });
            match error {
                Some(e) => Err(e),
                None => Ok((checked, found)),
            }
        })
        .collect();
    merge(parts)
}

fn oracle_pair(a: u64, b: u64) -> Result<Option<String>> {
    let fail = |what: &str| Ok(Some(format!("a = {}, b = {}: {what} disagrees", bits_of(a), bits_of(b))));
    if jumps(&a, &b) != naive::jumps(a, b) {
        return fail("J");
    }
    if carry_region(&a, &b).map(|c| (c.start, c.stop)) != naive::carry_region(a, b) {
        return fail("carry region");
    }
    let common: Vec<(usize, usize)> = common_fragments(&a, &b).iter().map(|f| (f.lo, f.hi)).collect();
    if common != naive::common_fragments(a, b) || common_fragment_count(&a, &b) != common.len() {
        return fail("common-fragments");
    }
    for (lower, upper) in [(a, b), (b, a)] {
        if check_fragment_pair(&lower, &upper).is_err() {
            continue;
        }
        for (side, right) in [(Side::Right, true), (Side::Left, false)] {
            let got: Vec<(usize, usize)> =
                fragments_of(&lower, &upper, side)?.iter().map(|f| (f.lo, f.hi)).collect();
            if got != naive::fragments(lower, upper, right) {
                return fail("fragments");
            }
        }
    }
    Ok(None)
}

pub(super) fn oracles(bound: u64) -> Outcome {
    let parts = (1..bound)
        .into_par_iter()
        .map(|a| {
            if intervals(&a)? != naive::intervals(a) {
                return Ok((1, Some(format!("I({}) disagrees", bits_of(a)))));
            }
            let mut checked = 1;
            for b in a + 1..bound {
                checked += 1;
                if let Some(found) = oracle_pair(a, b)? {
                    return Ok((checked, Some(found)));
                }
            }
            Ok((checked, None))
        })
        .collect();
    merge(parts)
}
