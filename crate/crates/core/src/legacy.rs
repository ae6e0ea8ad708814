//! Table-driven conversion of legacy ASCII-font text to Unicode.
//!
//! Legacy Bengali fonts store text in visual order: a vowel sign such as `ি`
//! that renders to the left of its consonant is typed (and stored) before it.
//! Conversion is a longest-match rewrite over the input bytes followed by a
//! reordering pass that moves every pre-base vowel behind its consonant
//! cluster.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::script::{classify, normalize, CharClass, VIRAMA, ZWJ};

/// The table shipped with the crate.
pub const SAMPLE_TABLE: &str = include_str!("../data/smriti_sample.tsv");

const DELETE_MARKER: &str = "<del>";
const MAX_PATTERN: usize = 4;

#[derive(Debug, Error)]
pub enum LegacyError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: duplicate pattern {pattern}")]
    DuplicatePattern { line: usize, pattern: String },
    #[error("line {line}: malformed rule: {reason}")]
    MalformedRule { line: usize, reason: String },
    #[error("unmapped byte 0x{byte:02X} at offset {offset}")]
    UnmappedByte { offset: usize, byte: u8 },
    #[error("pre-base vowel at offset {offset} has no following consonant")]
    DanglingPreBase { offset: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Plain,
    PreBaseVowel,
    Conjunct,
}

impl RuleKind {
    fn as_str(self) -> &'static str {
        match self {
            RuleKind::Plain => "plain",
            RuleKind::PreBaseVowel => "prevowel",
            RuleKind::Conjunct => "conjunct",
        }
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(RuleKind::Plain),
            "prevowel" => Ok(RuleKind::PreBaseVowel),
            "conjunct" => Ok(RuleKind::Conjunct),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingRule {
    pub pattern: Vec<u8>,
    /// Normalized output; empty means the matched bytes are deleted.
    pub output: String,
    pub kind: RuleKind,
}

impl MappingRule {
    pub fn priority(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_deletion(&self) -> bool {
        self.output.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    Lenient,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Mode::Strict),
            "lenient" => Ok(Mode::Lenient),
            other => Err(format!("unknown mode {other:?} (expected strict|lenient)")),
        }
    }
}

/// Result of converting one buffer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Conversion {
    pub text: String,
    pub rules_fired: usize,
    /// Offsets of bytes replaced by U+FFFD (lenient mode only).
    pub unmapped: Vec<usize>,
    /// Offsets of pre-base vowels left in place (lenient mode only).
    pub dangling: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionReport {
    pub output: Option<PathBuf>,
    pub bytes: usize,
    pub rules_fired: usize,
    pub unmapped: Vec<usize>,
    pub dangling: Vec<usize>,
}

impl fmt::Display for ConversionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(path) = &self.output {
            writeln!(f, "output\t{}", path.display())?;
        }
        writeln!(f, "bytes\t{}", self.bytes)?;
        writeln!(f, "rules_fired\t{}", self.rules_fired)?;
        writeln!(f, "unmapped\t{}", self.unmapped.len())?;
        if !self.unmapped.is_empty() {
            let offsets: Vec<String> = self.unmapped.iter().map(|o| o.to_string()).collect();
            writeln!(f, "unmapped_offsets\t{}", offsets.join(","))?;
        }
        write!(f, "dangling_prevowels\t{}", self.dangling.len())
    }
}

#[derive(Debug, Clone)]
pub struct MappingTable {
    pub name: String,
    pub version: String,
    rules: Vec<MappingRule>,
    index: HashMap<Vec<u8>, usize>,
    max_len: usize,
}

fn unescape(field: &str, line: usize) -> Result<String, LegacyError> {
    if field == DELETE_MARKER {
        return Ok(String::new());
    }
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('s') => out.push(' '),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('\\') => out.push('\\'),
            other => {
                return Err(LegacyError::MalformedRule {
                    line,
                    reason: format!("bad escape \\{}", other.map(String::from).unwrap_or_default()),
                })
            }
        }
    }
    if out.is_empty() {
        return Err(LegacyError::MalformedRule {
            line,
            reason: format!("empty output (use {DELETE_MARKER} to delete)"),
        });
    }
    Ok(out)
}

fn escape(output: &str) -> String {
    if output.is_empty() {
        return DELETE_MARKER.to_owned();
    }
    let mut out = String::with_capacity(output.len());
    for c in output.chars() {
        match c {
            ' ' => out.push_str("\\s"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out
}

fn parse_hex(field: &str, line: usize) -> Result<Vec<u8>, LegacyError> {
    let malformed = |reason: String| LegacyError::MalformedRule { line, reason };
    if field.is_empty() || !field.len().is_multiple_of(2) {
        return Err(malformed(format!("pattern {field:?} is not whole hex pairs")));
    }
    if !field
        .bytes()
        .all(|b| b.is_ascii_digit() || (b'A'..=b'F').contains(&b))
    {
        return Err(malformed(format!("pattern {field:?} must be uppercase hex")));
    }
    let bytes: Vec<u8> = (0..field.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&field[i..i + 2], 16).expect("validated hex"))
        .collect();
    if bytes.len() > MAX_PATTERN {
        return Err(malformed(format!(
            "pattern longer than {MAX_PATTERN} bytes"
        )));
    }
    Ok(bytes)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02X}")).collect()
}

/// Length of the consonant cluster starting at `chars[i]`: a consonant,
/// optional nukta, then any number of virama(+ZWJ)+consonant(+nukta) links.
fn cluster_run(chars: &[char], i: usize) -> usize {
    let is_cons = |k: usize| k < chars.len() && classify(chars[k]) == CharClass::Consonant;
    if !is_cons(i) {
        return 0;
    }
    let mut j = i + 1;
    loop {
        if j < chars.len() && classify(chars[j]) == CharClass::Nukta {
            j += 1;
        }
        if j < chars.len() && chars[j] == VIRAMA {
            let mut k = j + 1;
            if k < chars.len() && chars[k] == ZWJ {
                k += 1;
            }
            if is_cons(k) {
                j = k + 1;
                continue;
            }
        }
        return j - i;
    }
}

impl MappingTable {
    pub fn new(
        name: impl Into<String>,
        version: impl Into<String>,
        rules: Vec<MappingRule>,
    ) -> Result<Self, LegacyError> {
        let mut index = HashMap::with_capacity(rules.len());
        let mut max_len = 0;
        for (i, rule) in rules.iter().enumerate() {
            if rule.pattern.is_empty() || rule.pattern.len() > MAX_PATTERN {
                return Err(LegacyError::MalformedRule {
                    line: i + 1,
                    reason: "pattern must be 1..4 bytes".into(),
                });
            }
            if index.insert(rule.pattern.clone(), i).is_some() {
                return Err(LegacyError::DuplicatePattern {
                    line: i + 1,
                    pattern: hex(&rule.pattern),
                });
            }
            max_len = max_len.max(rule.pattern.len());
        }
        Ok(Self {
            name: name.into(),
            version: version.into(),
            rules,
            index,
            max_len,
        })
    }

    /// Parses the tab-separated mapping format. `# name:` and `# version:`
    /// comment lines set the table metadata.
    pub fn parse(source: &str, default_name: &str) -> Result<Self, LegacyError> {
        let mut name = default_name.to_owned();
        let mut version = String::from("0");
        let mut rules = Vec::new();
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();

        for (i, raw) in source.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("name:") {
                    name = v.trim().to_owned();
                } else if let Some(v) = comment.strip_prefix("version:") {
                    version = v.trim().to_owned();
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(LegacyError::MalformedRule {
                    line: line_no,
                    reason: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            let pattern = parse_hex(fields[0], line_no)?;
            let output = normalize(&unescape(fields[1], line_no)?);
            let kind: RuleKind = fields[2]
                .parse()
                .map_err(|reason| LegacyError::MalformedRule {
                    line: line_no,
                    reason,
                })?;
            if kind == RuleKind::Conjunct && !output.contains(VIRAMA) {
                return Err(LegacyError::MalformedRule {
                    line: line_no,
                    reason: "conjunct output must contain a virama".into(),
                });
            }
            if let Some(first) = seen.insert(pattern.clone(), line_no) {
                return Err(LegacyError::DuplicatePattern {
                    line: line_no,
                    pattern: format!("{} (first on line {first})", hex(&pattern)),
                });
            }
            rules.push(MappingRule {
                pattern,
                output,
                kind,
            });
        }
        Self::new(name, version, rules)
    }

    pub fn load(path: &Path) -> Result<Self, LegacyError> {
        let source = fs::read_to_string(path).map_err(|source| LegacyError::Io {
            path: path.to_owned(),
            source,
        })?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse(&source, &stem)
    }

    pub fn sample() -> Self {
        Self::parse(SAMPLE_TABLE, "smriti-sample").expect("shipped table is valid")
    }

    pub fn rules(&self) -> &[MappingRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Serializes back to the mapping file format.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# name: {}\n# version: {}\n", self.name, self.version);
        for rule in &self.rules {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                hex(&rule.pattern),
                escape(&rule.output),
                rule.kind.as_str()
            ));
        }
        out
    }

    fn longest_match(&self, input: &[u8]) -> Option<&MappingRule> {
        let limit = self.max_len.min(input.len());
        (1..=limit)
            .rev()
            .find_map(|len| self.index.get(&input[..len]))
            .map(|&i| &self.rules[i])
    }

    pub fn convert(&self, legacy: &[u8], mode: Mode) -> Result<Conversion, LegacyError> {
        // (char, is_prebase, source offset)
        let mut stream: Vec<(char, bool, usize)> = Vec::with_capacity(legacy.len());
        let mut conv = Conversion::default();
        let mut pos = 0;
        while pos < legacy.len() {
            match self.longest_match(&legacy[pos..]) {
                Some(rule) => {
                    let prebase = rule.kind == RuleKind::PreBaseVowel;
                    stream.extend(rule.output.chars().map(|c| (c, prebase, pos)));
                    conv.rules_fired += 1;
                    pos += rule.pattern.len();
                }
                None if mode == Mode::Strict => {
                    return Err(LegacyError::UnmappedByte {
                        offset: pos,
                        byte: legacy[pos],
                    })
                }
                None => {
                    stream.push((char::REPLACEMENT_CHARACTER, false, pos));
                    conv.unmapped.push(pos);
                    pos += 1;
                }
            }
        }

        let chars: Vec<char> = stream.iter().map(|&(c, _, _)| c).collect();
        let mut out = String::with_capacity(legacy.len() * 3);
        let mut i = 0;
        while i < stream.len() {
            if !stream[i].1 {
                out.push(chars[i]);
                i += 1;
                continue;
            }
            let group_end = (i..stream.len())
                .find(|&k| !stream[k].1)
                .unwrap_or(stream.len());
            let run = cluster_run(&chars, group_end);
            if run == 0 {
                let offset = stream[i].2;
                if mode == Mode::Strict {
                    return Err(LegacyError::DanglingPreBase { offset });
                }
                conv.dangling.push(offset);
                out.extend(&chars[i..group_end]);
            } else {
                out.extend(&chars[group_end..group_end + run]);
                out.extend(&chars[i..group_end]);
            }
            i = group_end + run;
        }
        conv.text = normalize(&out);
        Ok(conv)
    }

    /// Maps Unicode text back to legacy bytes using the rules whose output is
    /// unique in the table. Returns `None` when some part of the text is not
    /// covered by that invertible subset.
    pub fn encode(&self, text: &str) -> Option<Vec<u8>> {
        let mut counts: HashMap<String, usize> = HashMap::new();
        for rule in &self.rules {
            if !rule.is_deletion() {
                *counts.entry(rule.output.nfd().collect()).or_default() += 1;
            }
        }
        let mut reverse: HashMap<Vec<char>, &MappingRule> = HashMap::new();
        for rule in &self.rules {
            let key: String = rule.output.nfd().collect();
            if counts.get(&key) == Some(&1) {
                reverse.insert(key.chars().collect(), rule);
            }
        }
        let prebase: Vec<char> = self
            .rules
            .iter()
            .filter(|r| r.kind == RuleKind::PreBaseVowel)
            .flat_map(|r| r.output.nfd().collect::<Vec<_>>())
            .collect();
        let max_len = reverse.keys().map(Vec::len).max().unwrap_or(0);

        // Move pre-base vowel signs in front of their cluster (visual order).
        let mut chars: Vec<char> = text.nfd().collect();
        let mut i = 0;
        while i < chars.len() {
            if prebase.contains(&chars[i]) {
                let mut start = None;
                let mut k = i;
                let floor = i.saturating_sub(16);
                while k > floor {
                    let run = cluster_run(&chars, k - 1);
                    if run > 0 && k - 1 + run == i {
                        start = Some(k - 1);
                    }
                    k -= 1;
                }
                if let Some(s) = start {
                    let sign = chars.remove(i);
                    chars.insert(s, sign);
                }
            }
            i += 1;
        }

        let mut out = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            let limit = max_len.min(chars.len() - pos);
            let rule = (1..=limit)
                .rev()
                .find_map(|len| reverse.get(&chars[pos..pos + len]).map(|r| (len, r)))?;
            out.extend_from_slice(&rule.1.pattern);
            pos += rule.0;
        }
        Some(out)
    }
}

/// Converts a file and writes the result to `output` atomically: the target
/// only appears once conversion has fully succeeded.
pub fn convert_file(
    input: &Path,
    output: &Path,
    table: &MappingTable,
    mode: Mode,
) -> Result<ConversionReport, LegacyError> {
    let io = |path: &Path| {
        let path = path.to_owned();
        move |source| LegacyError::Io { path, source }
    };
    let legacy = fs::read(input).map_err(io(input))?;
    let conv = table.convert(&legacy, mode)?;

    let dir = match output.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
    tmp.write_all(conv.text.as_bytes()).map_err(io(output))?;
    tmp.persist(output).map_err(|e| LegacyError::Io {
        path: output.to_owned(),
        source: e.error,
    })?;

    Ok(ConversionReport {
        output: Some(output.to_owned()),
        bytes: legacy.len(),
        rules_fired: conv.rules_fired,
        unmapped: conv.unmapped,
        dangling: conv.dangling,
    })
}
