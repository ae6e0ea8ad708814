//! Word frequency tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::script::strip_joiners;
use crate::segment::{tokenize, Token, TokenKind};

pub const TSV_HEADER: &str = "rank\tword\tcount\trelative_freq";

#[derive(Debug, Error)]
pub enum FreqError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Tsv,
    RankReport,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tsv" => Ok(ExportFormat::Tsv),
            "rank_report" | "report" => Ok(ExportFormat::RankReport),
            _ => Err(format!("unknown export format {s:?} (expected tsv or rank_report)")),
        }
    }
}

/// Counts of surface word forms. Zero-width joiners are not part of a
/// word's identity; nothing else is folded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    entries: BTreeMap<String, u64>,
    total_tokens: u64,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts the Word tokens of a token stream.
    pub fn count<'a>(tokens: impl IntoIterator<Item = &'a Token<'a>>) -> Self {
        let mut table = Self::new();
        for t in tokens {
            if t.kind == TokenKind::Word {
                table.add(&strip_joiners(t.text), 1);
            }
        }
        table
    }

    pub fn count_text(text: &str) -> Self {
        Self::count(&tokenize(text))
    }

    pub fn add(&mut self, word: &str, n: u64) {
        if n == 0 {
            return;
        }
        *self.entries.entry(word.to_owned()).or_default() += n;
        self.total_tokens += n;
    }

    pub fn get(&self, word: &str) -> u64 {
        self.entries.get(word).copied().unwrap_or(0)
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn type_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in code-point order of the word.
    pub fn entries(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(w, &c)| (w.as_str(), c))
    }

    /// Highest counts first; equal counts in code-point order.
    pub fn top_n(&self, n: usize) -> Vec<(&str, u64)> {
        let mut all: Vec<(&str, u64)> = self.entries().collect();
        // entries() is already in code-point order, so a stable sort on
        // count alone gives the tie-break for free
        all.sort_by_key(|&(_, c)| std::cmp::Reverse(c));
        all.truncate(n);
        all
    }

    pub fn merge(&self, other: &FrequencyTable) -> FrequencyTable {
        let mut out = self.clone();
        out.merge_from(other);
        out
    }

    pub fn merge_from(&mut self, other: &FrequencyTable) {
        for (w, c) in other.entries() {
            self.add(w, c);
        }
    }

    /// `count / total` to six decimals, ties rounded to even.
    pub fn relative_freq(&self, count: u64) -> String {
        relative_freq(count, self.total_tokens)
    }

    /// TSV export; `top` limits the rows.
    pub fn to_tsv(&self, top: Option<usize>) -> String {
        let mut out = format!("{TSV_HEADER}\n");
        for (i, (word, count)) in self.ranked(top).into_iter().enumerate() {
            let _ = writeln!(out, "{}\t{word}\t{count}\t{}", i + 1, self.relative_freq(count));
        }
        out
    }

    /// Aligned plain-text report with a totals line.
    pub fn rank_report(&self, top: Option<usize>) -> String {
        let rows = self.ranked(top);
        let width = rows.iter().map(|(w, _)| w.chars().count()).max().unwrap_or(4).max(4);
        let mut out = format!(
            "tokens {}  types {}\n{:>4}  {:<width$}  {:>8}  {}\n",
            self.total_tokens,
            self.type_count(),
            "rank",
            "word",
            "count",
            "relative"
        );
        for (i, (word, count)) in rows.into_iter().enumerate() {
            let pad = width - word.chars().count();
            let _ = writeln!(
                out,
                "{:>4}  {word}{}  {count:>8}  {}",
                i + 1,
                " ".repeat(pad),
                self.relative_freq(count)
            );
        }
        out
    }

    pub fn render(&self, format: ExportFormat, top: Option<usize>) -> String {
        match format {
            ExportFormat::Tsv => self.to_tsv(top),
            ExportFormat::RankReport => self.rank_report(top),
        }
    }

    pub fn export(&self, path: &Path, format: ExportFormat, top: Option<usize>) -> Result<(), FreqError> {
        fs::write(path, self.render(format, top)).map_err(|source| FreqError::Io {
            path: path.to_owned(),
            source,
        })
    }

    /// Reads a TSV export back. Ranks and relative frequencies are checked
    /// for shape only; counts are authoritative.
    pub fn from_tsv(source: &str) -> Result<FrequencyTable, FreqError> {
        let mut lines = source.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h == TSV_HEADER => {}
            _ => {
                return Err(FreqError::Malformed {
                    line: 1,
                    reason: format!("expected header {TSV_HEADER:?}"),
                })
            }
        }
        let mut table = FrequencyTable::new();
        for (i, text) in lines {
            let line = i + 1;
            let bad = |reason: String| FreqError::Malformed { line, reason };
            let fields: Vec<&str> = text.split('\t').collect();
            let [rank, word, count, _rel] = fields[..] else {
                return Err(bad(format!("expected 4 fields, found {}", fields.len())));
            };
            rank.parse::<u64>().map_err(|e| bad(format!("rank: {e}")))?;
            let count: u64 = count.parse().map_err(|e| bad(format!("count: {e}")))?;
            if word.is_empty() || count == 0 {
                return Err(bad("empty word or zero count".into()));
            }
            if table.entries.contains_key(word) {
                return Err(bad(format!("duplicate word {word}")));
            }
            table.add(word, count);
        }
        Ok(table)
    }

    fn ranked(&self, top: Option<usize>) -> Vec<(&str, u64)> {
        self.top_n(top.unwrap_or(usize::MAX))
    }
}

/// Exact decimal rounding: no floating point, so output is identical on
/// every platform.
pub fn relative_freq(count: u64, total: u64) -> String {
    if total == 0 {
        return "0.000000".to_owned();
    }
    let scaled = count as u128 * 1_000_000;
    let (total, mut q) = (total as u128, scaled / total as u128);
    let rem = scaled % total;
    if rem * 2 > total || (rem * 2 == total && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:06}", q / 1_000_000, q % 1_000_000)
}
