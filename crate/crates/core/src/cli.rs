//! The `bpy` command line.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 2 for usage errors and 1 for everything else.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::freq::{ExportFormat, FreqError, FrequencyTable};
use crate::legacy::{convert_file, ConversionReport, LegacyError, MappingTable, Mode};
use crate::morph::{AnalyzeOptions, Analysis, Engine, FeatureBundle, Gender, Lexicon, MorphError, PronounNumber, RuleSet};
use crate::script::{normalize_bytes, ScriptError};
use crate::segment::{split_sentences, tokenize, TokenKind};
use crate::store::{CorpusStore, IngestOutcome, Source, StoreError};

#[derive(Debug, Parser)]
#[command(name = "bpy", version, about = "Bishnupriya Manipuri corpus and morphology toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert legacy-font bytes to Unicode text
    Convert {
        /// Mapping table; the bundled sample table if omitted
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        /// Input file, or - for stdin
        input: String,
        /// Output file (written atomically); stdout if omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add documents to a corpus store
    Ingest {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value = "other")]
        source: Source,
        /// Title; defaults to the file name
        #[arg(long)]
        title: Option<String>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Corpus totals and per-source breakdown
    Stats {
        #[arg(long)]
        store: PathBuf,
        /// Re-read, re-hash and recount every stored file
        #[arg(long)]
        verify: bool,
    },
    /// One token per line: text, kind, start, end
    Tokenize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// One sentence per line: index, start, end, tokens, words, text
    Sentences {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Analyze a word, a two-word form, or every word of a file
    Analyze {
        #[command(flatten)]
        data: MorphData,
        /// Accept stems missing from the lexicon as hypotheses
        #[arg(long)]
        no_lexicon: bool,
        /// A word, a quoted two-word form, a file, or - for stdin
        input: String,
    },
    /// Generate a surface form
    Generate {
        #[command(flatten)]
        data: MorphData,
        #[arg(long)]
        root: String,
        /// e.g. verb,imperative,slot=1 or noun,fem,gv=3,loc,cv=2
        #[arg(long)]
        features: FeatureBundle,
        /// Also print the rule ids used
        #[arg(long)]
        trace: bool,
    },
    /// Print a pronoun paradigm, or every form of a root
    Paradigm {
        #[command(flatten)]
        data: MorphData,
        /// Pronoun person: 1, 2 or 3
        #[arg(long, conflicts_with = "root", required_unless_present = "root")]
        person: Option<u8>,
        /// sg or pl
        #[arg(long, requires = "person", default_value = "sg")]
        number: PronounNumber,
        /// Required for third person singular
        #[arg(long, requires = "person")]
        gender: Option<Gender>,
        /// Enumerate every form of this lemma instead
        #[arg(long)]
        root: Option<String>,
        /// Part of speech of --root when the lemma is ambiguous
        #[arg(long, requires = "root")]
        pos: Option<crate::morph::Pos>,
    },
    /// Word frequencies over files, directories or stdin
    Freq {
        /// Print only the N most frequent words
        #[arg(long)]
        top: Option<usize>,
        /// tsv or rank_report
        #[arg(long, default_value = "tsv")]
        export: ExportFormat,
        /// Inputs are `tokenize` output rather than text
        #[arg(long)]
        tokens: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(default_value = "-")]
        inputs: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct MorphData {
    /// Rule file; the bundled rules if omitted
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Lexicon file; the bundled lexicon if omitted
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

impl MorphData {
    fn engine(&self) -> Result<Engine, CliError> {
        let rules = match &self.rules {
            Some(p) => RuleSet::load(p)?,
            None => RuleSet::shipped(),
        };
        let lexicon = match &self.lexicon {
            Some(p) => Lexicon::load(p)?,
            None => Lexicon::shipped(),
        };
        Ok(Engine::new(rules, lexicon))
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Legacy(#[from] LegacyError),
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Freq(#[from] FreqError),
    #[error("{input}: {source}")]
    Script { input: String, source: ScriptError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

/// Reads an input argument; `-` is stdin.
fn read_input(input: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    let io = |source| CliError::Io {
        path: input.to_owned(),
        source,
    };
    if input == "-" {
        let mut buf = Vec::new();
        stdin.read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        fs::read(input).map_err(io)
    }
}

fn read_text(input: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let bytes = read_input(input, stdin)?;
    normalize_bytes(&bytes).map_err(|source| CliError::Script {
        input: input.to_owned(),
        source,
    })
}

/// Files under `dir`, recursively, in path order.
fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    entries.sort();
    for path in entries {
        if path.is_dir() {
            walk(&path, out)?;
        } else {
            out.push(path);
        }
    }
    Ok(())
}

fn analysis_row(a: &Analysis) -> String {
    let trace = trace_column(&a.suffix_trace, &a.sandhi_trace);
    format!("{}\t{}\t{}\t{trace}", a.surface, a.root.lemma, a.features)
}

/// Suffix rule ids joined by `+`, then `;` and the sandhi ids if any fired.
fn trace_column(suffixes: &[String], sandhi: &[String]) -> String {
    let mut trace = if suffixes.is_empty() {
        "-".to_owned()
    } else {
        suffixes.join("+")
    };
    if !sandhi.is_empty() {
        trace.push(';');
        trace.push_str(&sandhi.join(","));
    }
    trace
}

fn write_out(out: &mut dyn Write, data: &str) -> Result<(), CliError> {
    out.write_all(data.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut buf = String::new();
    match cmd {
        Command::Convert {
            table,
            mode,
            input,
            output,
        } => {
            let table = match table {
                Some(p) => MappingTable::load(&p)?,
                None => MappingTable::sample(),
            };
            let report = match output {
                Some(dest) if input != "-" => convert_file(Path::new(&input), &dest, &table, mode)?,
                dest => {
                    let bytes = read_input(&input, stdin)?;
                    let conv = table.convert(&bytes, mode)?;
                    match &dest {
                        Some(path) => fs::write(path, &conv.text).map_err(|source| CliError::Io {
                            path: path.display().to_string(),
                            source,
                        })?,
                        None => write_out(out, &conv.text)?,
                    }
                    ConversionReport {
                        output: dest,
                        bytes: bytes.len(),
                        rules_fired: conv.rules_fired,
                        unmapped: conv.unmapped,
                        dangling: conv.dangling,
                    }
                }
            };
            let _ = writeln!(err, "{report}");
        }
        Command::Ingest {
            store,
            source,
            title,
            files,
        } => {
            let mut store = CorpusStore::open(&store)?;
            for file in files {
                let name = title.clone().unwrap_or_else(|| {
                    file.file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_default()
                });
                match store.ingest(&file, source, &name)? {
                    IngestOutcome::Added { record, empty } => {
                        buf += &format!(
                            "{}\t{}\t{}\t{}\t{}\t{}\n",
                            if empty { "added-empty" } else { "added" },
                            record.id,
                            file.display(),
                            record.tokens,
                            record.sentences,
                            record.types
                        );
                        if empty {
                            let _ = writeln!(err, "warning: {} has no words", file.display());
                        }
                    }
                    IngestOutcome::DuplicateOf(id) => {
                        buf += &format!("duplicate\t{id}\t{}\n", file.display());
                    }
                }
            }
        }
        Command::Stats { store, verify } => {
            let store = CorpusStore::open(&store)?;
            buf = store.stats(verify)?.to_string();
        }
        Command::Tokenize { input } => {
            let text = read_text(&input, stdin)?;
            for t in tokenize(&text) {
                buf += &format!("{}\t{}\t{}\t{}\n", t.text, t.kind, t.start, t.end);
            }
        }
        Command::Sentences { input } => {
            let text = read_text(&input, stdin)?;
            for (i, s) in split_sentences(&text).iter().enumerate() {
                let flat: Vec<&str> = text[s.start..s.end].split_whitespace().collect();
                buf += &format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    i + 1,
                    s.start,
                    s.end,
                    s.tokens.len(),
                    s.word_count(),
                    flat.join(" ")
                );
            }
        }
        Command::Analyze {
            data,
            no_lexicon,
            input,
        } => {
            let engine = data.engine()?;
            let opts = AnalyzeOptions {
                use_lexicon: !no_lexicon,
            };
            let words: Vec<String> = if input == "-" || Path::new(&input).is_file() {
                let text = read_text(&input, stdin)?;
                tokenize(&text)
                    .into_iter()
                    .filter(|t| t.kind == TokenKind::Word)
                    .map(|t| t.text.to_owned())
                    .collect()
            } else {
                vec![input]
            };
            for word in words {
                let found = engine.analyze_phrase(&word, opts);
                if found.is_empty() {
                    buf += &format!("{}\t-\t-\t-\n", crate::script::normalize(&word));
                }
                for a in found {
                    buf += &analysis_row(&a);
                    buf.push('\n');
                }
            }
        }
        Command::Generate {
            data,
            root,
            features,
            trace,
        } => {
            let g = data.engine()?.generate_lemma(&root, &features)?;
            buf = format!("{}\n", g.surface);
            if trace {
                buf += &format!("{}\t{}\n", g.features, trace_column(&g.suffix_trace, &g.sandhi_trace));
            }
        }
        Command::Paradigm {
            data,
            person,
            number,
            gender,
            root,
            pos,
        } => {
            let engine = data.engine()?;
            if let Some(person) = person {
                let p = engine.pronoun_paradigm(person, number, gender)?;
                for lex in &p.lexemes {
                    let obl = lex.root.oblique.as_deref().unwrap_or(&lex.root.lemma);
                    buf += &format!("{}\tdirect\t{}\n{}\toblique\t{obl}\n", lex.root.lemma, lex.root.lemma, lex.root.lemma);
                    for (f, surface) in &lex.forms {
                        buf += &format!("{}\t{f}\t{surface}\n", lex.root.lemma);
                    }
                }
            } else if let Some(lemma) = root {
                let lemma = crate::script::normalize(&lemma);
                let roots: Vec<_> = engine
                    .lexicon()
                    .with_lemma(&lemma)
                    .filter(|r| pos.is_none_or(|p| r.pos == p))
                    .cloned()
                    .collect();
                if roots.is_empty() {
                    return Err(MorphError::UnknownRoot { lemma }.into());
                }
                for r in roots {
                    for g in engine.enumerate(&r) {
                        buf += &format!("{}\t{}\t{}\n", r.lemma, g.features, g.surface);
                    }
                }
            }
        }
        Command::Freq {
            top,
            export,
            tokens,
            output,
            inputs,
        } => {
            let mut table = FrequencyTable::new();
            let mut sources: Vec<String> = Vec::new();
            for input in inputs {
                if input != "-" && Path::new(&input).is_dir() {
                    let mut files = Vec::new();
                    walk(Path::new(&input), &mut files)?;
                    sources.extend(files.into_iter().map(|p| p.display().to_string()));
                } else {
                    sources.push(input);
                }
            }
            for src in sources {
                let text = read_text(&src, stdin)?;
                if tokens {
                    for (i, line) in text.lines().enumerate() {
                        let mut fields = line.split('\t');
                        match (fields.next(), fields.next()) {
                            (Some(word), Some("word")) => table.add(&crate::script::strip_joiners(word), 1),
                            (Some(_), Some(kind)) if TokenKind::parse(kind).is_some() => {}
                            _ => return Err(CliError::Input(format!("{src}: line {}: not tokenize output", i + 1))),
                        }
                    }
                } else {
                    table.merge_from(&FrequencyTable::count_text(&text));
                }
            }
            match output {
                Some(path) => table.export(&path, export, top)?,
                None => buf = table.render(export, top),
            }
        }
    }
    write_out(out, &buf)
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, stdin, out, err) {
        Ok(()) => 0,
        // reader went away, e.g. `bpy freq | head`
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "bpy: {e}");
            1
        }
    }
}
