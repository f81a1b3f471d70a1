//! Digit diagnostics against oracles written from the definitions, on every
//! pair below 2^10 and on random pairs below 2^32.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_words::binary::{
    carry_region, check_fragment_pair, common_fragment_count, common_fragments, fragments,
    intervals, jumps, support, Side,
};
use ramsey_words::Binary;

fn bit(n: u64, i: usize) -> bool {
    i < 64 && n >> i & 1 == 1
}

fn width(a: u64, b: u64) -> usize {
    64 - (a | b).leading_zeros() as usize
}

/// Walk the positions upward, remembering the label of the last occupied one.
fn oracle_jumps(a: u64, b: u64) -> usize {
    let mut prev = 0;
    let mut count = 0;
    for i in 0..width(a, b) {
        let label = bit(a, i) as u8 + bit(b, i) as u8;
        if label == 0 {
            continue;
        }
        if prev == 2 && label == 1 {
            count += 1;
        }
        prev = label;
    }
    count
}

/// A run starts at every 1 whose lower neighbour is 0.
fn oracle_intervals(c: u64) -> usize {
    (c & !(c << 1)).count_ones() as usize
}

/// Ripple-carry addition: a sum digit differs from the column sum exactly
/// where a carry comes in or the column overflows.
fn oracle_carry(m: u64, n: u64) -> Option<(usize, usize)> {
    let start = (0..64).find(|&i| bit(m, i) && bit(n, i))?;
    let mut carry = false;
    let mut stop = start;
    for i in 0..=width(m, n) {
        let column = bit(m, i) as u8 + bit(n, i) as u8;
        if carry || column == 2 {
            stop = i;
        }
        carry = column + carry as u8 >= 2;
    }
    Some((start, stop))
}

/// Mask of positions `from..=to`.
fn range(from: usize, to: usize) -> u64 {
    (u64::MAX >> (63 - to)) & (u64::MAX << from)
}

/// For each `t`, the first position at or above `t` where `x` and `y`
/// disagree (64 if none).
fn first_disagreement(x: u64, y: u64) -> Vec<usize> {
    (0..64)
        .map(|t| (t..64).find(|&p| bit(x, p) != bit(y, p)).unwrap_or(64))
        .collect()
}

/// Candidate strings `[t, top]` of the owner inside the window, checked
/// against each clause of the definition separately.
fn oracle_fragments(lower: u64, upper: u64, side: Side) -> Vec<(usize, usize)> {
    let owner = if side == Side::Right { upper } else { lower };
    let sum = lower + upper;
    let lo = upper.trailing_zeros() as usize;
    let hi = 63 - lower.leading_zeros() as usize;
    let stop = first_disagreement(sum, owner);
    let mut out = Vec::new();
    for t in lo..=hi {
        for top in t..=hi {
            let matches = top < stop[t];
            let leading_one = bit(owner, top);
            let lower_end = t == lo || bit(sum, t - 1) != bit(owner, t - 1);
            // a longer string with leading 1, still matching and inside the window
            let reach = hi.min(stop[t].saturating_sub(1));
            let extendable = top < reach && owner & range(top + 1, reach) != 0;
            if matches && leading_one && lower_end && !extendable {
                out.push((t, top));
            }
        }
    }
    out
}

fn oracle_common(a: u64, b: u64) -> Vec<(usize, usize)> {
    let w = width(a, b);
    let stop = first_disagreement(a, b);
    let mut out = Vec::new();
    for t in 0..w {
        for top in t..w {
            let shared_one = bit(a, top) && bit(b, top);
            let lower_end = t == 0 || bit(a, t - 1) != bit(b, t - 1);
            let reach = (w - 1).min(stop[t].saturating_sub(1));
            let extendable = top < reach && a & b & range(top + 1, reach) != 0;
            if top < stop[t] && shared_one && lower_end && !extendable {
                out.push((t, top));
            }
        }
    }
    out
}

fn spans(fs: &[ramsey_words::binary::Fragment]) -> Vec<(usize, usize)> {
    fs.iter().map(|f| (f.lo, f.hi)).collect()
}

/// Compares everything defined on `(a, b)`; returns how many fragment
/// hypotheses held.
fn compare(a: u64, b: u64) -> usize {
    assert_eq!(jumps(&a, &b), oracle_jumps(a, b), "J({a:b}, {b:b})");
    assert_eq!(
        carry_region(&a, &b).map(|c| (c.start, c.stop)),
        oracle_carry(a, b),
        "carry({a:b}, {b:b})"
    );
    let common = oracle_common(a, b);
    assert_eq!(spans(&common_fragments(&a, &b)), common, "common({a:b}, {b:b})");
    assert_eq!(common_fragment_count(&a, &b), common.len());
    let mut applicable = 0;
    for (lower, upper) in [(a, b), (b, a)] {
        if check_fragment_pair(&lower, &upper).is_err() {
            continue;
        }
        applicable += 1;
        for side in [Side::Right, Side::Left] {
            assert_eq!(
                spans(&fragments(&lower, &upper, side).unwrap()),
                oracle_fragments(lower, upper, side),
                "{side:?} fragments of ({lower:b}, {upper:b})"
            );
        }
    }
    applicable
}

#[test]
fn all_pairs_below_2_pow_10() {
    let mut applicable = 0;
    for a in 1u64..1 << 10 {
        assert_eq!(intervals(&a).unwrap(), oracle_intervals(a), "I({a:b})");
        for b in a + 1..1 << 10 {
            applicable += compare(a, b);
        }
    }
    assert!(applicable > 10_000, "fragment hypotheses held only {applicable} times");
}

#[test]
fn random_pairs_below_2_pow_32() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100_000 {
        let a = rng.gen_range(1..1u64 << 32);
        let b = rng.gen_range(1..1u64 << 32);
        assert_eq!(intervals(&a).unwrap(), oracle_intervals(a));
        if a != b {
            compare(a.min(b), a.max(b));
        }
    }
}

#[test]
fn random_disjoint_pairs_below_2_pow_32() {
    // random pairs almost never have disjoint supports, so build them
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut applicable = 0;
    for _ in 0..100_000 {
        let a = rng.gen_range(1..1u64 << 32);
        let b = rng.gen_range(1..1u64 << 32) & !a;
        if b == 0 {
            continue;
        }
        applicable += compare(a.min(b), a.max(b));
    }
    assert!(applicable > 20_000, "fragment hypotheses held only {applicable} times");
}

#[test]
fn disjoint_supports_add_without_carry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let a = rng.gen_range(1..1u64 << 40);
        let b = rng.gen_range(1..1u64 << 40) & !a;
        if b == 0 {
            continue;
        }
        let mut union: Vec<usize> = support(&a).unwrap().into_iter().chain(support(&b).unwrap()).collect();
        union.sort_unstable();
        assert_eq!(support(&a.plus(&b)).unwrap(), union);
        assert_eq!(carry_region(&a, &b), None);
    }
}
