//! Finite colourings of numbers, pairs and words, and the spec language
//! naming them.
//!
//! | spec           | domain          | colour                                      |
//! |----------------|-----------------|---------------------------------------------|
//! | `const`        | any             | 0                                           |
//! | `mod:k`        | numbers         | `n mod k`                                   |
//! | `base-lsnz:b`  | numbers         | least significant non-zero base-`b` digit   |
//! | `fpmod:k`      | numbers         | first binary digit position mod `k`         |
//! | `gaps:m,cap`   | numbers         | gaps between support positions, mod `m`, as a histogram with counts capped at `cap` |
//! | `double`       | numbers         | last digit position mod 2, with the two digits below it |
//! | `theta:<stage>`| pairs           | the seven-component pair colouring          |
//! | `both:<num>`   | pairs           | the number colouring on each element        |
//! | `lenmod:k`     | words           | length mod `k`                              |
//! | `phi:<stage>`  | words           | first-occurrence colouring                  |
//!
//! A number colouring used on pairs colours the left element; used on words
//! it colours the length.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nat::Binary;
use crate::phi::{phi_with, PhiColour};
use crate::theta::{colour_pair, PairColour, Stage};
use crate::word::{Letter, OccurrenceOracle};

pub type ColourId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumberColouring {
    Const,
    Mod { k: u64 },
    Lsnz { b: u64 },
    FirstPosMod { k: u64 },
    Gaps { m: u32, cap: u32 },
    Double,
}

impl NumberColouring {
    pub fn colour_count(&self) -> u64 {
        match *self {
            NumberColouring::Const => 1,
            NumberColouring::Mod { k } | NumberColouring::FirstPosMod { k } => k,
            NumberColouring::Lsnz { b } => b - 1,
            NumberColouring::Gaps { m, cap } => u64::from(cap + 1).pow(m),
            NumberColouring::Double => 8,
        }
    }

    /// Defined on positive numbers.
    pub fn colour(&self, n: u64) -> Result<ColourId> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let c = match *self {
            NumberColouring::Const => 0,
            NumberColouring::Mod { k } => n % k,
            NumberColouring::Lsnz { b } => {
                let mut n = n;
                while n % b == 0 {
                    n /= b;
                }
                n % b - 1
            }
            NumberColouring::FirstPosMod { k } => u64::from(n.trailing_zeros()) % k,
            NumberColouring::Gaps { m, cap } => {
                let mut counts = vec![0u32; m as usize];
                let mut prev: Option<u32> = None;
                let mut rest = n;
                while rest != 0 {
                    let p = rest.trailing_zeros();
                    if let Some(q) = prev {
                        let g = ((p - q) % m) as usize;
                        counts[g] = (counts[g] + 1).min(cap);
                    }
                    prev = Some(p);
                    rest &= rest - 1;
                }
                counts.iter().rev().fold(0u64, |acc, &c| acc * u64::from(cap + 1) + u64::from(c))
            }
            NumberColouring::Double => {
                let l = n.last_pos().expect("n > 0");
                let below = |d: usize| l.checked_sub(d).is_some_and(|p| n.bit(p));
                (l % 2) as u64 * 4 + u64::from(below(1)) * 2 + u64::from(below(2))
            }
        };
        Ok(c as ColourId)
    }

    pub fn describe(&self, id: ColourId) -> String {
        match *self {
            NumberColouring::Lsnz { .. } => format!("digit {}", id + 1),
            NumberColouring::Gaps { m, cap } => {
                let mut id = u64::from(id);
                let counts: Vec<String> = (0..m)
                    .map(|_| {
                        let c = id % u64::from(cap + 1);
                        id /= u64::from(cap + 1);
                        c.to_string()
                    })
                    .collect();
                format!("[{}]", counts.join(","))
            }
            NumberColouring::Double => format!("{}:{:02b}", id / 4, id % 4),
            _ => id.to_string(),
        }
    }
}

impl fmt::Display for NumberColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberColouring::Const => write!(f, "const"),
            NumberColouring::Mod { k } => write!(f, "mod:{k}"),
            NumberColouring::Lsnz { b } => write!(f, "base-lsnz:{b}"),
            NumberColouring::FirstPosMod { k } => write!(f, "fpmod:{k}"),
            NumberColouring::Gaps { m, cap } => write!(f, "gaps:{m},{cap}"),
            NumberColouring::Double => write!(f, "double"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairColouring {
    Theta(Stage),
    /// The number colouring of the left element.
    Left(NumberColouring),
    /// The number colouring of both elements.
    Both(NumberColouring),
}

impl PairColouring {
    pub fn colour_count(&self) -> u64 {
        match self {
            PairColouring::Theta(stage) => u64::from(stage.colour_count()),
            PairColouring::Left(c) => c.colour_count(),
            PairColouring::Both(c) => c.colour_count() * c.colour_count(),
        }
    }

    /// Defined on pairs `0 < a < b`.
    pub fn colour(&self, a: u64, b: u64) -> Result<ColourId> {
        if a == 0 {
            return Err(Error::Zero);
        }
        if a >= b {
            return Err(Error::Precondition(format!("a < b (got a = {a}, b = {b})")));
        }
        match self {
            PairColouring::Theta(stage) => Ok(ColourId::from(colour_pair(&a, &b, *stage)?.dense_index())),
            PairColouring::Left(c) => c.colour(a),
            PairColouring::Both(c) => {
                Ok(c.colour(a)? * c.colour_count() as ColourId + c.colour(b)?)
            }
        }
    }

    pub fn describe(&self, id: ColourId) -> String {
        match self {
            PairColouring::Theta(stage) => PairColour::from_dense_index(*stage, id as u16)
                .map_or_else(|| format!("#{id}"), |c| c.to_string()),
            PairColouring::Left(c) => c.describe(id),
            PairColouring::Both(c) => {
                let k = c.colour_count() as ColourId;
                format!("({},{})", c.describe(id / k), c.describe(id % k))
            }
        }
    }
}

impl fmt::Display for PairColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairColouring::Theta(stage) => write!(f, "theta:{stage}"),
            PairColouring::Left(c) => write!(f, "{c}"),
            PairColouring::Both(c) => write!(f, "both:{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordColouring {
    /// The number colouring of the length.
    Length(NumberColouring),
    Phi(Stage),
}

impl WordColouring {
    pub fn colour_count(&self) -> u64 {
        match self {
            WordColouring::Length(c) => c.colour_count(),
            WordColouring::Phi(stage) => 2 * u64::from(stage.colour_count()) + 1,
        }
    }

    pub fn needs_occurrences(&self) -> bool {
        matches!(self, WordColouring::Phi(_))
    }

    /// `Ok(None)` when the colour depends on an occurrence the oracle could
    /// not resolve.
    pub fn colour<O: OccurrenceOracle + ?Sized>(&self, oracle: &O, u: &[Letter]) -> Result<Option<ColourId>> {
        match self {
            WordColouring::Length(c) => {
                if u.is_empty() {
                    return Err(Error::EmptyWord);
                }
                c.colour(u.len() as u64).map(Some)
            }
            WordColouring::Phi(stage) => Ok(phi_with(oracle, u, *stage)?.map(|p| match p {
                PhiColour::NotFactor => 2 * ColourId::from(stage.colour_count()),
                PhiColour::Coloured { theta, tag } => 2 * ColourId::from(theta.dense_index()) + ColourId::from(tag),
            })),
        }
    }

    pub fn describe(&self, id: ColourId) -> String {
        match self {
            WordColouring::Length(c) => c.describe(id),
            WordColouring::Phi(stage) => {
                if id == 2 * ColourId::from(stage.colour_count()) {
                    return PhiColour::NotFactor.to_string();
                }
                PairColour::from_dense_index(*stage, (id / 2) as u16).map_or_else(
                    || format!("#{id}"),
                    |theta| PhiColour::Coloured { theta, tag: (id % 2) as u8 }.to_string(),
                )
            }
        }
    }
}

impl fmt::Display for WordColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordColouring::Length(NumberColouring::Const) => write!(f, "const"),
            WordColouring::Length(NumberColouring::Mod { k }) => write!(f, "lenmod:{k}"),
            WordColouring::Length(c) => write!(f, "len:{c}"),
            WordColouring::Phi(stage) => write!(f, "phi:{stage}"),
        }
    }
}

/// A parsed colouring spec, before it is assigned a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColouringSpec {
    Number(NumberColouring),
    Theta(Stage),
    Both(NumberColouring),
    LenMod(u64),
    Len(NumberColouring),
    Phi(Stage),
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn parse_u64(s: &str, at: usize, min: u64) -> Result<u64> {
    let v: u64 = s
        .parse()
        .map_err(|_| parse_err(at, format!("expected a number, found {s:?}")))?;
    if v < min {
        return Err(parse_err(at, format!("must be at least {min}")));
    }
    Ok(v)
}

fn parse_number(s: &str, offset: usize) -> Result<NumberColouring> {
    let (kind, arg, at) = match s.find(':') {
        Some(i) => (&s[..i], Some(&s[i + 1..]), offset + i + 1),
        None => (s, None, offset + s.len()),
    };
    let need = || arg.ok_or_else(|| parse_err(at, format!("{kind} needs ':<arg>'")));
    let c = match kind {
        "const" => NumberColouring::Const,
        "double" => NumberColouring::Double,
        "mod" => NumberColouring::Mod { k: parse_u64(need()?, at, 1)? },
        "fpmod" => NumberColouring::FirstPosMod { k: parse_u64(need()?, at, 1)? },
        "base-lsnz" => NumberColouring::Lsnz { b: parse_u64(need()?, at, 2)? },
        "gaps" => {
            let arg = need()?;
            let (m, cap) = arg
                .split_once(',')
                .ok_or_else(|| parse_err(at, "gaps needs 'm,cap'"))?;
            let m = parse_u64(m, at, 1)?;
            let cap = parse_u64(cap, at + arg.find(',').expect("split") + 1, 1)?;
            let count = (cap + 1).checked_pow(m as u32).filter(|&c| m <= 16 && c <= 1 << 24);
            if count.is_none() {
                return Err(parse_err(at, "too many colours (need (cap+1)^m <= 2^24)"));
            }
            NumberColouring::Gaps { m: m as u32, cap: cap as u32 }
        }
        _ => return Err(parse_err(offset, format!("unknown colouring {kind:?}"))),
    };
    if matches!(c, NumberColouring::Const | NumberColouring::Double) && arg.is_some() {
        return Err(parse_err(at, format!("{kind} takes no argument")));
    }
    Ok(c)
}

impl FromStr for ColouringSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let stage = |rest: &str, at: usize| {
            rest.parse::<Stage>().map_err(|_| parse_err(at, format!("unknown stage {rest:?}")))
        };
        if let Some(rest) = s.strip_prefix("theta:") {
            return Ok(ColouringSpec::Theta(stage(rest, 6)?));
        }
        if let Some(rest) = s.strip_prefix("phi:") {
            return Ok(ColouringSpec::Phi(stage(rest, 4)?));
        }
        if let Some(rest) = s.strip_prefix("both:") {
            return Ok(ColouringSpec::Both(parse_number(rest, 5)?));
        }
        if let Some(rest) = s.strip_prefix("lenmod:") {
            return Ok(ColouringSpec::LenMod(parse_u64(rest, 7, 1)?));
        }
        if let Some(rest) = s.strip_prefix("len:") {
            return Ok(ColouringSpec::Len(parse_number(rest, 4)?));
        }
        parse_number(s, 0).map(ColouringSpec::Number)
    }
}

impl ColouringSpec {
    fn wrong_domain(&self, domain: &str) -> Error {
        Error::Invalid(format!("colouring {self} is not defined on {domain}"))
    }

    pub fn on_numbers(&self) -> Result<NumberColouring> {
        match self {
            ColouringSpec::Number(c) => Ok(*c),
            _ => Err(self.wrong_domain("numbers")),
        }
    }

    pub fn on_pairs(&self) -> Result<PairColouring> {
        match self {
            ColouringSpec::Number(c) => Ok(PairColouring::Left(*c)),
            ColouringSpec::Theta(stage) => Ok(PairColouring::Theta(*stage)),
            ColouringSpec::Both(c) => Ok(PairColouring::Both(*c)),
            _ => Err(self.wrong_domain("pairs")),
        }
    }

    pub fn on_words(&self) -> Result<WordColouring> {
        match self {
            ColouringSpec::Number(NumberColouring::Const) => Ok(WordColouring::Length(NumberColouring::Const)),
            ColouringSpec::LenMod(k) => Ok(WordColouring::Length(NumberColouring::Mod { k: *k })),
            ColouringSpec::Len(c) => Ok(WordColouring::Length(*c)),
            ColouringSpec::Phi(stage) | ColouringSpec::Theta(stage) => Ok(WordColouring::Phi(*stage)),
            _ => Err(self.wrong_domain("words")),
        }
    }
}

impl fmt::Display for ColouringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColouringSpec::Number(c) => write!(f, "{c}"),
            ColouringSpec::Theta(stage) => write!(f, "theta:{stage}"),
            ColouringSpec::Both(c) => write!(f, "both:{c}"),
            ColouringSpec::LenMod(k) => write!(f, "lenmod:{k}"),
            ColouringSpec::Len(c) => write!(f, "len:{c}"),
            ColouringSpec::Phi(stage) => write!(f, "phi:{stage}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Scan, WordSource};

    fn spec(s: &str) -> ColouringSpec {
        s.parse().unwrap()
    }

    #[test]
    fn spec_round_trip() {
        for s in [
            "const", "mod:3", "base-lsnz:3", "fpmod:2", "gaps:3,2", "double", "theta:stage1",
            "theta:stage2", "theta:full", "both:mod:2", "lenmod:2", "len:fpmod:2", "phi:full",
        ] {
            assert_eq!(spec(s).to_string(), s);
        }
    }

    #[test]
    fn spec_errors() {
        let pos = |s: &str| match s.parse::<ColouringSpec>() {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("bogus"), 0);
        assert_eq!(pos("theta:stage9"), 6);
        assert_eq!(pos("mod:x"), 4);
        assert_eq!(pos("base-lsnz:1"), 10);
        assert_eq!(pos("gaps:3"), 5);
        assert_eq!(pos("gaps:3,x"), 7);
        assert_eq!(pos("const:1"), 6);
        assert_eq!(pos("both:zz"), 5);
    }

    #[test]
    fn domains() {
        assert!(spec("theta:full").on_numbers().is_err());
        assert!(spec("phi:full").on_pairs().is_err());
        assert!(spec("mod:3").on_words().is_err());
        assert_eq!(spec("theta:full").on_words().unwrap(), WordColouring::Phi(Stage::Full));
        assert_eq!(spec("const").on_words().unwrap(), WordColouring::Length(NumberColouring::Const));
        assert_eq!(spec("fpmod:2").on_pairs().unwrap(), PairColouring::Left(NumberColouring::FirstPosMod { k: 2 }));
    }

    #[test]
    fn number_colourings() {
        let lsnz = NumberColouring::Lsnz { b: 3 };
        // 18 = 200 in base 3, 5 = 12, 7 = 21
        assert_eq!([18, 5, 7].map(|n| lsnz.colour(n).unwrap()), [1, 1, 0]);
        let gaps = NumberColouring::Gaps { m: 3, cap: 2 };
        // support {0, 1, 4, 5}: gaps 1, 3, 1 -> residues 1, 0, 1
        assert_eq!(gaps.colour(0b110011).unwrap(), 1 + 2 * 3);
        assert_eq!(gaps.describe(7), "[1,2,0]");
        assert_eq!(gaps.colour(1).unwrap(), 0);
        let double = NumberColouring::Double;
        assert_eq!(double.colour(0b1011).unwrap(), 4 + 0 + 1);
        assert_eq!(double.colour(1).unwrap(), 0);
        assert_eq!(double.colour(0b11).unwrap(), 4 + 2);
        assert!(NumberColouring::Const.colour(0).is_err());
        for n in 1..2000u64 {
            for c in [lsnz, gaps, double, NumberColouring::FirstPosMod { k: 3 }] {
                assert!(u64::from(c.colour(n).unwrap()) < c.colour_count());
            }
        }
    }

    #[test]
    fn pair_and_word_colourings() {
        let theta = PairColouring::Theta(Stage::Full);
        let id = theta.colour(3, 5).unwrap();
        assert_eq!(theta.describe(id), colour_pair(&3u64, &5u64, Stage::Full).unwrap().to_string());
        assert!(theta.colour(5, 5).is_err());
        let both = PairColouring::Both(NumberColouring::Mod { k: 2 });
        assert_eq!(both.colour(2, 5).unwrap(), 1);
        assert_eq!(both.describe(1), "(0,1)");
        let ab = WordSource::periodic("ab").unwrap();
        let scan = Scan { source: &ab, scan_bound: 10 };
        let phi = WordColouring::Phi(Stage::Full);
        let id = phi.colour(&scan, b"ba").unwrap().unwrap();
        assert_eq!(phi.describe(id), crate::phi::phi(&ab, b"ba", 10).unwrap().unwrap().to_string());
        let nf = phi.colour(&scan, b"bb").unwrap().unwrap();
        assert_eq!(phi.describe(nf), "2");
        assert_eq!(WordColouring::Length(NumberColouring::Mod { k: 2 }).colour(&scan, b"abb").unwrap(), Some(1));
    }
}
