use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Number(u64),
    Word(String),
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Term::Number(n) => write!(f, "{n}"),
            Term::Word(w) => f.write_str(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub terms: Vec<Term>,
    pub colour: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub library_version: String,
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub colouring: String,
    pub colour_count: u64,
    /// In lexicographic order of terms.
    pub witnesses: Vec<Witness>,
    /// The whole tree within the bounds was explored: `witnesses` is complete.
    pub exhausted: bool,
    pub nodes: u64,
    /// Length of the longest consistent partial sequence.
    pub max_depth: usize,
    /// Branches abandoned because a colour could not be decided.
    pub unknown: u64,
    /// The lexicographically first partial sequence of length `max_depth`.
    pub deepest: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse { position: 0, message: format!("unknown format {s:?} (json, text, csv)") }),
        }
    }
}

fn join(terms: &[Term]) -> String {
    terms.iter().map(Term::to_string).collect::<Vec<_>>().join(" ")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl SearchReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serialises");
                s.push('\n');
                s
            }
            Format::Csv => {
                let width = self.witnesses.iter().map(|w| w.terms.len()).max().unwrap_or(0);
                let mut s = String::from("index,colour");
                for i in 1..=width {
                    let _ = write!(s, ",t{i}");
                }
                s.push('\n');
                for (i, w) in self.witnesses.iter().enumerate() {
                    let _ = write!(s, "{},{}", i + 1, csv_field(&w.colour));
                    for t in &w.terms {
                        let _ = write!(s, ",{}", csv_field(&t.to_string()));
                    }
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut rows: Vec<(String, String)> = vec![
                    ("kind".into(), self.kind.clone()),
                    ("colouring".into(), format!("{} ({} colours)", self.colouring, self.colour_count)),
                ];
                rows.extend(self.params.iter().map(|(k, v)| (k.clone(), v.clone())));
                rows.extend([
                    ("exhausted".into(), self.exhausted.to_string()),
                    ("nodes".into(), self.nodes.to_string()),
                    ("max_depth".into(), self.max_depth.to_string()),
                    ("unknown".into(), self.unknown.to_string()),
                    ("deepest".into(), join(&self.deepest)),
                    ("witnesses".into(), self.witnesses.len().to_string()),
                    ("version".into(), format!("{} (schema {})", self.library_version, self.schema_version)),
                ]);
                let key_w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, v) in rows {
                    let _ = writeln!(s, "{k:<key_w$}  {v}");
                }
                if !self.witnesses.is_empty() {
                    let colour_w = self.witnesses.iter().map(|w| w.colour.len()).max().unwrap_or(0).max(6);
                    let _ = writeln!(s, "\n{:>5}  {:<colour_w$}  terms", "#", "colour");
                    for (i, w) in self.witnesses.iter().enumerate() {
                        let _ = writeln!(s, "{:>5}  {:<colour_w$}  {}", i + 1, w.colour, join(&w.terms));
                    }
                }
                s
            }
        }
    }
}
