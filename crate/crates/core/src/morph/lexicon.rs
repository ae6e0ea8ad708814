use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::features::{FinalClass, Pos};
use super::MorphError;
use crate::script::normalize;

pub const DEFAULT_LEXICON: &str = include_str!("../../data/lexicon.tsv");

/// A lexical stem.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub lemma: String,
    pub pos: Pos,
    pub final_class: FinalClass,
    pub gloss: String,
    /// Pronoun stem that case endings attach to (`মি` → `মো`).
    pub oblique: Option<String>,
}

impl Root {
    pub fn new(lemma: &str, pos: Pos, final_class: FinalClass) -> Self {
        Self {
            lemma: normalize(lemma),
            pos,
            final_class,
            gloss: String::new(),
            oblique: None,
        }
    }
}

/// Declared class must match the spelling, except that a consonant-final
/// spelling may be declared `vowel_a` (pronounced inherent vowel).
fn class_is_consistent(lemma: &str, declared: FinalClass) -> bool {
    let spelled = FinalClass::of_spelling(lemma);
    spelled == declared || (spelled == FinalClass::Consonant && declared == FinalClass::VowelA)
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    roots: Vec<Root>,
    by_lemma: HashMap<String, Vec<usize>>,
    by_oblique: HashMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn from_roots(roots: impl IntoIterator<Item = Root>) -> Self {
        let mut lex = Lexicon::default();
        for root in roots {
            lex.insert(root);
        }
        lex
    }

    fn insert(&mut self, root: Root) {
        let i = self.roots.len();
        self.by_lemma.entry(root.lemma.clone()).or_default().push(i);
        if let Some(obl) = &root.oblique {
            self.by_oblique.entry(obl.clone()).or_default().push(i);
        }
        self.roots.push(root);
    }

    pub fn parse(source: &str) -> Result<Self, MorphError> {
        let mut lex = Lexicon::default();
        for (i, raw) in source.lines().enumerate() {
            let line = i + 1;
            let text = raw.strip_suffix('\r').unwrap_or(raw);
            if text.starts_with('#') || text.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| MorphError::MalformedEntry { line, reason };
            let fields: Vec<&str> = text.split('\t').collect();
            if !(4..=5).contains(&fields.len()) {
                return Err(bad(format!(
                    "expected 4 or 5 tab-separated fields, found {}",
                    fields.len()
                )));
            }
            let lemma = normalize(fields[0].trim());
            if lemma.is_empty() {
                return Err(bad("empty lemma".into()));
            }
            let pos: Pos = fields[1].parse().map_err(bad)?;
            let final_class: FinalClass = fields[2].parse().map_err(bad)?;
            if !class_is_consistent(&lemma, final_class) {
                return Err(bad(format!(
                    "{lemma} is spelled {} but declared {final_class}",
                    FinalClass::of_spelling(&lemma)
                )));
            }
            let oblique = fields.get(4).map(|s| normalize(s.trim())).filter(|s| !s.is_empty());
            if oblique.is_some() && pos != Pos::Pronoun {
                return Err(bad("only pronouns have oblique stems".into()));
            }
            if lex.get(&lemma, pos).is_some() {
                return Err(bad(format!("duplicate entry {lemma} ({pos})")));
            }
            lex.insert(Root {
                lemma,
                pos,
                final_class,
                gloss: fields[3].trim().to_owned(),
                oblique,
            });
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, MorphError> {
        let source = fs::read_to_string(path).map_err(|source| MorphError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&source)
    }

    pub fn shipped() -> Self {
        Self::parse(DEFAULT_LEXICON).expect("shipped lexicon is valid")
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn get(&self, lemma: &str, pos: Pos) -> Option<&Root> {
        self.with_lemma(lemma).find(|r| r.pos == pos)
    }

    pub fn with_lemma<'a>(&'a self, lemma: &str) -> impl Iterator<Item = &'a Root> + 'a {
        self.by_lemma
            .get(lemma)
            .into_iter()
            .flatten()
            .map(|&i| &self.roots[i])
    }

    pub fn with_oblique<'a>(&'a self, oblique: &str) -> impl Iterator<Item = &'a Root> + 'a {
        self.by_oblique
            .get(oblique)
            .into_iter()
            .flatten()
            .map(|&i| &self.roots[i])
    }

    pub fn contains(&self, root: &Root) -> bool {
        self.with_lemma(&root.lemma).any(|r| r == root)
    }
}
