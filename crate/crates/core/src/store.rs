//! Managed corpus directory.
//!
//! Layout: `corpus/<sha256>.txt` for each document (normalized UTF-8) and a
//! tab-separated `manifest.tsv`, one record per line in ingestion order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, SubsecRound, Utc};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::script::{normalize_bytes, strip_joiners, ScriptError};
use crate::segment::{count_text, tokenize, TextCounts, TokenKind};

pub const MANIFEST: &str = "manifest.tsv";
pub const CORPUS_DIR: &str = "corpus";
const HEADER: &str = "#ID\tSOURCE\tTITLE\tPATH\tTOKENS\tSENTENCES\tTYPES\tTIMESTAMP";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Encoding {
        path: PathBuf,
        #[source]
        source: ScriptError,
    },
    #[error("manifest line {line}: {reason}")]
    MalformedManifest { line: usize, reason: String },
    #[error("document {id}: {reason}")]
    ManifestMismatch { id: String, reason: String },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_owned(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Wikipedia,
    LegacyFont,
    Other,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Wikipedia => "wikipedia",
            Source::LegacyFont => "legacy_font",
            Source::Other => "other",
        }
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "wikipedia" => Ok(Source::Wikipedia),
            "legacy_font" => Ok(Source::LegacyFont),
            "other" => Ok(Source::Other),
            _ => Err(format!("unknown source {s:?} (expected wikipedia, legacy_font or other)")),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentRecord {
    /// SHA-256 of the normalized content, lowercase hex.
    pub id: String,
    pub source: Source,
    pub title: String,
    /// Relative to the store root.
    pub path: String,
    pub tokens: usize,
    pub sentences: usize,
    pub types: usize,
    pub ingested_at: DateTime<Utc>,
}

impl DocumentRecord {
    fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.id,
            self.source,
            self.title,
            self.path,
            self.tokens,
            self.sentences,
            self.types,
            self.ingested_at.to_rfc3339_opts(SecondsFormat::Secs, true)
        )
    }

    fn parse_line(line: usize, text: &str) -> Result<Self, StoreError> {
        let bad = |reason: String| StoreError::MalformedManifest { line, reason };
        let f: Vec<&str> = text.split('\t').collect();
        let [id, source, title, path, tokens, sentences, types, ts] = f[..] else {
            return Err(bad(format!("expected 8 fields, found {}", f.len())));
        };
        if id.len() != 64 || !id.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad(format!("bad document id {id:?}")));
        }
        let count = |name: &str, s: &str| s.parse::<usize>().map_err(|e| bad(format!("{name}: {e}")));
        Ok(DocumentRecord {
            id: id.to_owned(),
            source: source.parse().map_err(bad)?,
            title: title.to_owned(),
            path: path.to_owned(),
            tokens: count("tokens", tokens)?,
            sentences: count("sentences", sentences)?,
            types: count("types", types)?,
            ingested_at: DateTime::parse_from_rfc3339(ts)
                .map_err(|e| bad(format!("timestamp: {e}")))?
                .with_timezone(&Utc),
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Totals {
    pub documents: usize,
    pub tokens: usize,
    pub sentences: usize,
    /// Sum of per-document type counts.
    pub types: usize,
}

impl Totals {
    fn add(&mut self, r: &DocumentRecord) {
        self.documents += 1;
        self.tokens += r.tokens;
        self.sentences += r.sentences;
        self.types += r.types;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub records: Vec<DocumentRecord>,
}

impl Manifest {
    pub fn parse(source: &str) -> Result<Self, StoreError> {
        let mut records: Vec<DocumentRecord> = Vec::new();
        let mut seen = HashSet::new();
        for (i, text) in source.lines().enumerate() {
            if text.starts_with('#') || text.is_empty() {
                continue;
            }
            let record = DocumentRecord::parse_line(i + 1, text)?;
            if !seen.insert(record.id.clone()) {
                return Err(StoreError::MalformedManifest {
                    line: i + 1,
                    reason: format!("duplicate id {}", record.id),
                });
            }
            records.push(record);
        }
        Ok(Manifest { records })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("{HEADER}\n");
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }

    pub fn totals(&self) -> Totals {
        let mut t = Totals::default();
        for r in &self.records {
            t.add(r);
        }
        t
    }

    pub fn get(&self, id: &str) -> Option<&DocumentRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IngestOutcome {
    Added { record: DocumentRecord, empty: bool },
    DuplicateOf(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsReport {
    pub totals: Totals,
    pub by_source: BTreeMap<Source, Totals>,
    /// Distinct word types across the whole corpus; only known after a
    /// recount of the stored files.
    pub distinct_types: Option<usize>,
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scope\tdocuments\ttokens\tsentences\ttypes")?;
        let row = |f: &mut fmt::Formatter<'_>, name: &str, t: &Totals| {
            writeln!(f, "{name}\t{}\t{}\t{}\t{}", t.documents, t.tokens, t.sentences, t.types)
        };
        row(f, "total", &self.totals)?;
        for (source, t) in &self.by_source {
            row(f, source.name(), t)?;
        }
        if let Some(n) = self.distinct_types {
            writeln!(f, "distinct_types\t{n}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct CorpusStore {
    root: PathBuf,
    manifest: Manifest,
}

pub fn content_id(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn clean_title(title: &str) -> String {
    title
        .chars()
        .map(|c| if c.is_control() { ' ' } else { c })
        .collect::<String>()
        .trim()
        .to_owned()
}

impl CorpusStore {
    /// Opens a store, creating the directory layout if needed.
    pub fn open(root: &Path) -> Result<Self, StoreError> {
        let corpus = root.join(CORPUS_DIR);
        fs::create_dir_all(&corpus).map_err(io_err(&corpus))?;
        let path = root.join(MANIFEST);
        let manifest = match fs::read_to_string(&path) {
            Ok(src) => Manifest::parse(&src)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Manifest::default(),
            Err(e) => return Err(io_err(&path)(e)),
        };
        Ok(Self {
            root: root.to_owned(),
            manifest,
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn ingest(&mut self, file: &Path, source: Source, title: &str) -> Result<IngestOutcome, StoreError> {
        let bytes = fs::read(file).map_err(io_err(file))?;
        self.ingest_bytes(&bytes, source, title)
            .map_err(|e| match e {
                StoreError::Encoding { source, .. } => StoreError::Encoding {
                    path: file.to_owned(),
                    source,
                },
                other => other,
            })
    }

    /// Normalizes and stores `bytes` unless identical content is present.
    pub fn ingest_bytes(&mut self, bytes: &[u8], source: Source, title: &str) -> Result<IngestOutcome, StoreError> {
        let text = normalize_bytes(bytes).map_err(|source| StoreError::Encoding {
            path: PathBuf::from("-"),
            source,
        })?;
        let id = content_id(&text);
        if self.manifest.get(&id).is_some() {
            return Ok(IngestOutcome::DuplicateOf(id));
        }

        let rel = format!("{CORPUS_DIR}/{id}.txt");
        let dest = self.root.join(&rel);
        let dir = self.root.join(CORPUS_DIR);
        let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err(&dir))?;
        tmp.write_all(text.as_bytes()).map_err(io_err(&dest))?;
        tmp.persist(&dest).map_err(|e| io_err(&dest)(e.error))?;

        let TextCounts {
            tokens,
            sentences,
            types,
        } = count_text(&text);
        let record = DocumentRecord {
            id,
            source,
            title: clean_title(title),
            path: rel,
            tokens,
            sentences,
            types,
            ingested_at: Utc::now().trunc_subsecs(0),
        };
        self.append(&record)?;
        self.manifest.records.push(record.clone());
        Ok(IngestOutcome::Added {
            empty: tokens == 0,
            record,
        })
    }

    fn append(&self, record: &DocumentRecord) -> Result<(), StoreError> {
        let path = self.root.join(MANIFEST);
        let fresh = !path.exists();
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io_err(&path))?;
        let mut line = String::new();
        if fresh {
            line.push_str(HEADER);
            line.push('\n');
        }
        line.push_str(&record.to_line());
        line.push('\n');
        f.write_all(line.as_bytes()).map_err(io_err(&path))
    }

    /// Aggregates the manifest. With `verify`, every stored file is re-read,
    /// re-hashed and recounted against its record.
    pub fn stats(&self, verify: bool) -> Result<StatsReport, StoreError> {
        let mut by_source: BTreeMap<Source, Totals> = BTreeMap::new();
        for r in &self.manifest.records {
            by_source.entry(r.source).or_default().add(r);
        }
        let distinct_types = if verify { Some(self.verify()?) } else { None };
        Ok(StatsReport {
            totals: self.manifest.totals(),
            by_source,
            distinct_types,
        })
    }

    fn verify(&self) -> Result<usize, StoreError> {
        let mut types = HashSet::new();
        for r in &self.manifest.records {
            let mismatch = |reason: String| StoreError::ManifestMismatch {
                id: r.id.clone(),
                reason,
            };
            let path = self.root.join(&r.path);
            let bytes = fs::read(&path).map_err(io_err(&path))?;
            let text = String::from_utf8(bytes).map_err(|_| mismatch("stored file is not valid UTF-8".into()))?;
            let hash = content_id(&text);
            if hash != r.id {
                return Err(mismatch(format!("content hash is now {hash}")));
            }
            let counts = count_text(&text);
            let recorded = (r.tokens, r.sentences, r.types);
            let found = (counts.tokens, counts.sentences, counts.types);
            if recorded != found {
                return Err(mismatch(format!(
                    "recorded tokens/sentences/types {recorded:?}, recounted {found:?}"
                )));
            }
            for t in tokenize(&text) {
                if t.kind == TokenKind::Word {
                    types.insert(strip_joiners(t.text).into_owned());
                }
            }
        }
        Ok(types.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_dedup_and_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = CorpusStore::open(dir.path()).unwrap();
        let first = store.ingest_bytes("মানু আহান।".as_bytes(), Source::Wikipedia, "a\tb").unwrap();
        let IngestOutcome::Added { record, empty } = first else { panic!() };
        assert!(!empty);
        assert_eq!((record.tokens, record.sentences, record.types), (2, 1, 2));
        assert_eq!(record.title, "a b");
        let again = store.ingest_bytes("মানু আহান।".as_bytes(), Source::Other, "x").unwrap();
        assert_eq!(again, IngestOutcome::DuplicateOf(record.id.clone()));

        let reopened = CorpusStore::open(dir.path()).unwrap();
        assert_eq!(reopened.manifest(), store.manifest());
        assert_eq!(reopened.stats(true).unwrap().distinct_types, Some(2));
    }

    #[test]
    fn empty_document_is_flagged() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = CorpusStore::open(dir.path()).unwrap();
        let out = store.ingest_bytes(b"", Source::Other, "empty").unwrap();
        assert!(matches!(out, IngestOutcome::Added { empty: true, .. }));
    }

    #[test]
    fn rejects_invalid_utf8() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = CorpusStore::open(dir.path()).unwrap();
        let err = store.ingest_bytes(b"ab\xFF", Source::Other, "bad").unwrap_err();
        assert!(matches!(err, StoreError::Encoding { .. }));
        assert!(store.manifest().records.is_empty());
    }

    #[test]
    fn empty_store_stats() {
        let dir = tempfile::tempdir().unwrap();
        let store = CorpusStore::open(dir.path()).unwrap();
        let s = store.stats(true).unwrap();
        assert_eq!(s.totals, Totals::default());
        assert_eq!(s.distinct_types, Some(0));
    }

    #[test]
    fn manifest_round_trip_and_errors() {
        let rec = DocumentRecord {
            id: "ab".repeat(32),
            source: Source::LegacyFont,
            title: "t".into(),
            path: format!("corpus/{}.txt", "ab".repeat(32)),
            tokens: 3,
            sentences: 1,
            types: 2,
            ingested_at: DateTime::parse_from_rfc3339("2024-01-02T03:04:05Z").unwrap().with_timezone(&Utc),
        };
        let m = Manifest { records: vec![rec] };
        assert_eq!(Manifest::parse(&m.to_tsv()).unwrap(), m);
        assert!(matches!(
            Manifest::parse("x\ty\n"),
            Err(StoreError::MalformedManifest { line: 1, .. })
        ));
        let dup = format!("{}{}", m.to_tsv(), m.records[0].to_line());
        assert!(Manifest::parse(&dup).is_err());
    }
}
