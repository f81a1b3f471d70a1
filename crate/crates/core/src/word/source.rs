use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Letters are ASCII alphanumerics; the spec language reserves everything else.
pub type Letter = u8;

pub fn is_letter(c: u8) -> bool {
    c.is_ascii_alphanumeric()
}

/// An infinite word (or a finite window onto one), 1-indexed.
#[derive(Debug)]
pub enum WordSource {
    /// `uuu...`
    Periodic { period: Vec<Letter> },
    /// `p uuu...`
    EventuallyPeriodic { prefix: Vec<Letter>, period: Vec<Letter> },
    /// Fixed point of a prolongable morphism.
    Morphic(Morphic),
    /// A finite prefix of an otherwise unknown word.
    Prefix(Vec<Letter>),
}

impl Clone for WordSource {
    fn clone(&self) -> Self {
        match self {
            WordSource::Periodic { period } => WordSource::Periodic { period: period.clone() },
            WordSource::EventuallyPeriodic { prefix, period } => WordSource::EventuallyPeriodic {
                prefix: prefix.clone(),
                period: period.clone(),
            },
            WordSource::Morphic(m) => WordSource::Morphic(m.clone()),
            WordSource::Prefix(p) => WordSource::Prefix(p.clone()),
        }
    }
}

fn check_word(w: &[u8], what: &str) -> Result<()> {
    if w.is_empty() {
        return Err(Error::Invalid(format!("{what} must be nonempty")));
    }
    if let Some(&c) = w.iter().find(|&&c| !is_letter(c)) {
        return Err(Error::Invalid(format!("{what} contains non-letter {:?}", c as char)));
    }
    Ok(())
}

impl WordSource {
    pub fn periodic(period: &str) -> Result<Self> {
        check_word(period.as_bytes(), "period")?;
        Ok(WordSource::Periodic { period: period.as_bytes().to_vec() })
    }

    /// A prefix followed by a repeated period; the prefix may be empty.
    pub fn eventually_periodic(prefix: &str, period: &str) -> Result<Self> {
        if !prefix.is_empty() {
            check_word(prefix.as_bytes(), "prefix")?;
        }
        check_word(period.as_bytes(), "period")?;
        Ok(WordSource::EventuallyPeriodic {
            prefix: prefix.as_bytes().to_vec(),
            period: period.as_bytes().to_vec(),
        })
    }

    pub fn prefix(s: &str) -> Result<Self> {
        check_word(s.as_bytes(), "prefix")?;
        Ok(WordSource::Prefix(s.as_bytes().to_vec()))
    }

    /// The Fibonacci word, fixed point of `a -> ab, b -> a`.
    pub fn fibonacci() -> Self {
        let rules = BTreeMap::from([(b'a', b"ab".to_vec()), (b'b', b"a".to_vec())]);
        WordSource::Morphic(Morphic::new(rules, b'a').expect("valid morphism"))
    }

    /// Number of letters available, `None` for infinite sources.
    pub fn known_len(&self) -> Option<usize> {
        match self {
            WordSource::Prefix(p) => Some(p.len()),
            _ => None,
        }
    }

    /// Whether non-occurrence of a factor can be decided exactly.
    pub fn is_eventually_periodic(&self) -> bool {
        matches!(self, WordSource::Periodic { .. } | WordSource::EventuallyPeriodic { .. })
    }

    /// Letters occurring in the word (for a prefix source, in the prefix).
    pub fn alphabet(&self) -> BTreeSet<Letter> {
        match self {
            WordSource::Periodic { period } => period.iter().copied().collect(),
            WordSource::EventuallyPeriodic { prefix, period } => {
                prefix.iter().chain(period).copied().collect()
            }
            WordSource::Morphic(m) => m.reachable(),
            WordSource::Prefix(p) => p.iter().copied().collect(),
        }
    }

    /// `x_n`, for `n >= 1`.
    pub fn letter_at(&self, n: usize) -> Result<Letter> {
        if n == 0 {
            return Err(Error::Precondition("positions start at 1".into()));
        }
        let i = n - 1;
        match self {
            WordSource::Periodic { period } => Ok(period[i % period.len()]),
            WordSource::EventuallyPeriodic { prefix, period } => Ok(if i < prefix.len() {
                prefix[i]
            } else {
                period[(i - prefix.len()) % period.len()]
            }),
            WordSource::Morphic(m) => Ok(m.letter(i)),
            WordSource::Prefix(p) => p.get(i).copied().ok_or(Error::OutOfPrefix(n)),
        }
    }

    /// Runs `f` on `x_1 .. x_len`, truncated to what a prefix source holds.
    pub fn with_prefix<R>(&self, len: usize, f: impl FnOnce(&[Letter]) -> R) -> R {
        match self {
            WordSource::Morphic(m) => m.with_prefix(len, f),
            WordSource::Prefix(p) => f(&p[..len.min(p.len())]),
            _ => {
                let v: Vec<Letter> =
                    (1..=len).map(|n| self.letter_at(n).expect("infinite source")).collect();
                f(&v)
            }
        }
    }

    /// `x_from .. x_{from+len-1}` as a string.
    pub fn factor(&self, from: usize, len: usize) -> Result<String> {
        let bytes: Result<Vec<u8>> = (from..from + len).map(|n| self.letter_at(n)).collect();
        Ok(String::from_utf8(bytes?).expect("letters are ASCII"))
    }
}

/// The fixed point of a morphism `h` with `h(seed) = seed v`, `v` nonempty,
/// expanded lazily. The cached prefix is `h(x_1 .. x_k)` for the first `k`
/// letters processed so far, which is itself a prefix of the fixed point.
#[derive(Debug)]
pub struct Morphic {
    rules: BTreeMap<Letter, Vec<Letter>>,
    seed: Letter,
    cache: RwLock<Expansion>,
    /// Two-letter factors, `None` if some reachable letter is erased.
    pairs: OnceLock<Option<Vec<(Letter, Letter)>>>,
    /// `h^k(c) h^k(d)` for every two-letter factor `cd`, by `k`.
    windows: RwLock<HashMap<usize, Arc<Vec<Vec<Letter>>>>>,
}

/// Longest image the factor certifier will build.
const MAX_CERTIFY_IMAGE: usize = 1 << 20;

#[derive(Debug, Clone)]
struct Expansion {
    word: Vec<Letter>,
    processed: usize,
}

impl Clone for Morphic {
    fn clone(&self) -> Self {
        Morphic {
            rules: self.rules.clone(),
            seed: self.seed,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
            pairs: OnceLock::new(),
            windows: RwLock::new(HashMap::new()),
        }
    }
}

impl Morphic {
    pub fn new(rules: BTreeMap<Letter, Vec<Letter>>, seed: Letter) -> Result<Self> {
        for (&from, image) in &rules {
            if let Some(&c) = std::iter::once(&from).chain(image).find(|&&c| !is_letter(c)) {
                return Err(Error::Morphism(format!("{:?} is not a letter", c as char)));
            }
            if let Some(&c) = image.iter().find(|c| !rules.contains_key(c)) {
                return Err(Error::Morphism(format!("letter {:?} has no rule", c as char)));
            }
        }
        let image = rules
            .get(&seed)
            .ok_or_else(|| Error::Morphism(format!("seed {:?} has no rule", seed as char)))?;
        if image.first() != Some(&seed) || image.len() < 2 {
            return Err(Error::Morphism(format!(
                "the image of {:?} must start with it and be longer (not prolongable)",
                seed as char
            )));
        }
        let mortal = mortal_letters(&rules);
        if image[1..].iter().all(|c| mortal.contains(c)) {
            return Err(Error::Morphism(
                "every letter after the seed is eventually erased, the fixed point is finite".into(),
            ));
        }
        let word = image.clone();
        Ok(Morphic {
            rules,
            seed,
            cache: RwLock::new(Expansion { word, processed: 1 }),
            pairs: OnceLock::new(),
            windows: RwLock::new(HashMap::new()),
        })
    }

    pub fn rules(&self) -> &BTreeMap<Letter, Vec<Letter>> {
        &self.rules
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    fn reachable(&self) -> BTreeSet<Letter> {
        let mut seen = BTreeSet::from([self.seed]);
        let mut stack = vec![self.seed];
        while let Some(c) = stack.pop() {
            for &d in &self.rules[&c] {
                if seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// Decides whether `u` occurs in the fixed point at all. `None` when the
    /// morphism erases a reachable letter or some reachable letter does not
    /// grow past `|u|`.
    ///
    /// With `|h^k(c)| >= |u|` for every reachable `c`, each occurrence of `u`
    /// lies inside `h^k(c) h^k(d)` for a two-letter factor `cd`, and every
    /// such window is itself a factor.
    pub fn is_factor(&self, u: &[Letter]) -> Option<bool> {
        if u.is_empty() {
            return Some(true);
        }
        let reachable = self.reachable();
        if u.iter().any(|c| !reachable.contains(c)) {
            return Some(false);
        }
        let pairs = self.pairs.get_or_init(|| self.two_letter_factors(&reachable)).as_ref()?;
        let mut lens: BTreeMap<Letter, usize> = reachable.iter().map(|&c| (c, 1)).collect();
        let mut k = 0;
        while lens.values().min().copied().unwrap_or(0) < u.len() {
            if k == 64 || lens.values().any(|&l| l > MAX_CERTIFY_IMAGE) {
                return None;
            }
            lens = reachable
                .iter()
                .map(|&c| (c, self.rules[&c].iter().map(|d| lens[d]).sum()))
                .collect();
            k += 1;
        }
        let windows = self.windows_at(k, pairs, &reachable);
        Some(windows.iter().any(|w| w.windows(u.len()).any(|f| f == u)))
    }

    fn two_letter_factors(&self, reachable: &BTreeSet<Letter>) -> Option<Vec<(Letter, Letter)>> {
        if reachable.iter().any(|c| self.rules[c].is_empty()) {
            return None;
        }
        let image = &self.rules[&self.seed];
        let mut seen = BTreeSet::from([(image[0], image[1])]);
        let mut stack: Vec<_> = seen.iter().copied().collect();
        while let Some((c, d)) = stack.pop() {
            let joined: Vec<Letter> = self.rules[&c].iter().chain(&self.rules[&d]).copied().collect();
            for w in joined.windows(2) {
                if seen.insert((w[0], w[1])) {
                    stack.push((w[0], w[1]));
                }
            }
        }
        Some(seen.into_iter().collect())
    }

    fn windows_at(
        &self,
        k: usize,
        pairs: &[(Letter, Letter)],
        reachable: &BTreeSet<Letter>,
    ) -> Arc<Vec<Vec<Letter>>> {
        if let Some(w) = self.windows.read().expect("certifier lock").get(&k) {
            return Arc::clone(w);
        }
        let mut images: BTreeMap<Letter, Vec<Letter>> =
            reachable.iter().map(|&c| (c, vec![c])).collect();
        for _ in 0..k {
            images = reachable
                .iter()
                .map(|&c| (c, self.rules[&c].iter().flat_map(|d| images[d].iter().copied()).collect()))
                .collect();
        }
        let windows: Vec<Vec<Letter>> = pairs
            .iter()
            .map(|(c, d)| images[c].iter().chain(&images[d]).copied().collect())
            .collect();
        let windows = Arc::new(windows);
        self.windows.write().expect("certifier lock").insert(k, Arc::clone(&windows));
        windows
    }

    fn ensure(&self, len: usize) {
        if self.cache.read().expect("cache lock").word.len() >= len {
            return;
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.word.len() < len {
            // Cannot stall: the seed's image has a non-mortal letter after the
            // seed, so h^k(seed) grows without bound.
            let c = cache.word[cache.processed];
            let image = &self.rules[&c];
            cache.word.extend_from_slice(image);
            cache.processed += 1;
        }
    }

    fn letter(&self, i: usize) -> Letter {
        self.ensure(i + 1);
        self.cache.read().expect("cache lock").word[i]
    }

    fn with_prefix<R>(&self, len: usize, f: impl FnOnce(&[Letter]) -> R) -> R {
        self.ensure(len);
        let cache = self.cache.read().expect("cache lock");
        f(&cache.word[..len])
    }
}

/// Letters whose iterated images become empty.
fn mortal_letters(rules: &BTreeMap<Letter, Vec<Letter>>) -> BTreeSet<Letter> {
    let mut mortal = BTreeSet::new();
    loop {
        let before = mortal.len();
        for (&c, image) in rules {
            if image.iter().all(|d| mortal.contains(d)) {
                mortal.insert(c);
            }
        }
        if mortal.len() == before {
            return mortal;
        }
    }
}

fn lossy(w: &[u8]) -> String {
    String::from_utf8_lossy(w).into_owned()
}

/// Canonical spec string, parseable by [`FromStr`].
impl fmt::Display for WordSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSource::Periodic { period } => write!(f, "periodic:{}", lossy(period)),
            WordSource::EventuallyPeriodic { prefix, period } => {
                write!(f, "evper:{}|{}", lossy(prefix), lossy(period))
            }
            WordSource::Morphic(m) => {
                let rules: Vec<String> = m
                    .rules
                    .iter()
                    .map(|(&c, image)| format!("{}->{}", c as char, lossy(image)))
                    .collect();
                write!(f, "morphic:{}|{}", rules.join(","), m.seed as char)
            }
            WordSource::Prefix(p) => write!(f, "prefix:{}", lossy(p)),
        }
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

/// Reads a run of letters starting at byte `at`; fails at the first
/// non-letter unless it is one of `stops`.
fn letters<'a>(s: &'a str, at: usize, stops: &[u8]) -> Result<(&'a str, usize)> {
    let b = s.as_bytes();
    let mut end = at;
    while end < b.len() && !stops.contains(&b[end]) {
        if !is_letter(b[end]) {
            return Err(parse_err(end, format!("unexpected {:?}", b[end] as char)));
        }
        end += 1;
    }
    Ok((&s[at..end], end))
}

/// Grammar: `periodic:<w>`, `evper:<w>|<w>`, `morphic:<l>-><w>,...|<l>`,
/// `prefix:<w>`. Positions in errors are byte offsets into the spec.
impl FromStr for WordSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let colon = s
            .find(':')
            .ok_or_else(|| parse_err(s.len(), "expected <kind>:<payload>"))?;
        let (kind, body) = (&s[..colon], colon + 1);
        let wrap = |pos: usize, e: Error| match e {
            Error::Parse { .. } => e,
            other => parse_err(pos, other.to_string()),
        };
        match kind {
            "periodic" => {
                let (w, _) = letters(s, body, &[])?;
                WordSource::periodic(w).map_err(|e| wrap(body, e))
            }
            "prefix" => {
                let (w, _) = letters(s, body, &[])?;
                WordSource::prefix(w).map_err(|e| wrap(body, e))
            }
            "evper" => {
                let (p, bar) = letters(s, body, b"|")?;
                if bar >= s.len() {
                    return Err(parse_err(bar, "expected '|' between prefix and period"));
                }
                let (u, _) = letters(s, bar + 1, &[])?;
                WordSource::eventually_periodic(p, u).map_err(|e| wrap(bar + 1, e))
            }
            "morphic" => parse_morphic(s, body),
            _ => Err(parse_err(
                0,
                format!("unknown word kind {kind:?} (expected periodic, evper, morphic or prefix)"),
            )),
        }
    }
}

fn parse_morphic(s: &str, body: usize) -> Result<WordSource> {
    let b = s.as_bytes();
    let mut rules = BTreeMap::new();
    let mut at = body;
    loop {
        if at >= b.len() || !is_letter(b[at]) {
            return Err(parse_err(at, "expected a rule <letter>-><image>"));
        }
        let from = b[at];
        if !s[at + 1..].starts_with("->") {
            return Err(parse_err(at + 1, "expected '->'"));
        }
        let (image, end) = letters(s, at + 3, b",|")?;
        if rules.insert(from, image.as_bytes().to_vec()).is_some() {
            return Err(parse_err(at, format!("duplicate rule for {:?}", from as char)));
        }
        if end >= b.len() {
            return Err(parse_err(end, "expected '|<seed>' after the rules"));
        }
        at = end + 1;
        if b[end] == b'|' {
            break;
        }
    }
    if at + 1 != b.len() || !is_letter(b[at]) {
        return Err(parse_err(at, "expected a single seed letter"));
    }
    Morphic::new(rules, b[at])
        .map(WordSource::Morphic)
        .map_err(|e| parse_err(at, e.to_string()))
}
