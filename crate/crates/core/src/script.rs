//! Code-point classification, canonical normalization and grapheme clustering
//! for Bengali-script text.
//!
//! Every other module works on text that has passed through [`normalize`], so
//! suffix matching and hashing are byte-stable.

use std::borrow::Cow;

use thiserror::Error;
use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::{is_nfc, UnicodeNormalization};

pub const DANDA: char = '\u{0964}';
pub const DOUBLE_DANDA: char = '\u{0965}';
pub const VIRAMA: char = '\u{09CD}';
pub const NUKTA: char = '\u{09BC}';
pub const ZWNJ: char = '\u{200C}';
pub const ZWJ: char = '\u{200D}';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },
    #[error("combining mark {mark:?} at byte offset {offset} has no base character")]
    DanglingCombiner { offset: usize, mark: char },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharClass {
    Consonant,
    IndependentVowel,
    VowelSign,
    Virama,
    Nukta,
    /// Candrabindu, anusvara and visarga.
    Modifier,
    Digit,
    Danda,
    Punctuation,
    Whitespace,
    Other,
}

impl CharClass {
    /// Marks that must follow a base character.
    pub fn is_combining(self) -> bool {
        matches!(
            self,
            CharClass::VowelSign | CharClass::Virama | CharClass::Nukta | CharClass::Modifier
        )
    }

    /// Classes that end a word token.
    pub fn is_separator(self) -> bool {
        matches!(
            self,
            CharClass::Whitespace | CharClass::Danda | CharClass::Punctuation
        )
    }
}

/// Total classification of a Unicode scalar value.
pub fn classify(cp: char) -> CharClass {
    use CharClass::*;
    match cp {
        DANDA | DOUBLE_DANDA => Danda,
        '\u{0981}'..='\u{0983}' => Modifier,
        '\u{0985}'..='\u{098C}'
        | '\u{098F}'..='\u{0990}'
        | '\u{0993}'..='\u{0994}'
        | '\u{09E0}'..='\u{09E1}' => IndependentVowel,
        '\u{0995}'..='\u{09A8}'
        | '\u{09AA}'..='\u{09B0}'
        | '\u{09B2}'
        | '\u{09B6}'..='\u{09B9}'
        | '\u{09CE}'
        | '\u{09DC}'..='\u{09DD}'
        | '\u{09DF}'
        | '\u{09F0}'..='\u{09F1}' => Consonant,
        NUKTA => Nukta,
        '\u{09BE}'..='\u{09C4}'
        | '\u{09C7}'..='\u{09C8}'
        | '\u{09CB}'..='\u{09CC}'
        | '\u{09D7}'
        | '\u{09E2}'..='\u{09E3}' => VowelSign,
        VIRAMA => Virama,
        '\u{09E6}'..='\u{09EF}' => Digit,
        '\u{09FD}' => Punctuation,
        // anji, avagraha, currency and fraction signs, sandhi mark, unassigned
        '\u{0980}'..='\u{09FF}' => Other,
        c if c.is_whitespace() => Whitespace,
        c => match get_general_category(c) {
            GeneralCategory::ConnectorPunctuation
            | GeneralCategory::DashPunctuation
            | GeneralCategory::OpenPunctuation
            | GeneralCategory::ClosePunctuation
            | GeneralCategory::InitialPunctuation
            | GeneralCategory::FinalPunctuation
            | GeneralCategory::OtherPunctuation => Punctuation,
            _ => Other,
        },
    }
}

/// Canonical composed form.
pub fn normalize(text: &str) -> String {
    if is_nfc(text) {
        text.to_owned()
    } else {
        text.nfc().collect()
    }
}

/// Decodes UTF-8 and normalizes in one step.
pub fn normalize_bytes(bytes: &[u8]) -> Result<String, ScriptError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ScriptError::Encoding {
        offset: e.valid_up_to(),
    })?;
    Ok(normalize(text))
}

/// Removes ZWJ/ZWNJ, which only control presentation.
pub fn strip_joiners(text: &str) -> Cow<'_, str> {
    if text.contains([ZWJ, ZWNJ]) {
        Cow::Owned(text.chars().filter(|&c| c != ZWJ && c != ZWNJ).collect())
    } else {
        Cow::Borrowed(text)
    }
}

/// The dependent vowel sign written for an independent vowel when it follows a
/// consonant. `অ` maps to the empty string: it is the inherent vowel.
pub fn vowel_sign_for(independent: char) -> Option<&'static str> {
    Some(match independent {
        'অ' => "",
        'আ' => "\u{09BE}",
        'ই' => "\u{09BF}",
        'ঈ' => "\u{09C0}",
        'উ' => "\u{09C1}",
        'ঊ' => "\u{09C2}",
        'ঋ' => "\u{09C3}",
        'এ' => "\u{09C7}",
        'ঐ' => "\u{09C8}",
        'ও' => "\u{09CB}",
        'ঔ' => "\u{09CC}",
        _ => return None,
    })
}

/// A user-perceived Bengali-script unit: a base with its conjunct members and
/// marks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphemeCluster<'a> {
    pub text: &'a str,
    pub start: usize,
    pub base_class: CharClass,
}

impl GraphemeCluster<'_> {
    pub fn end(&self) -> usize {
        self.start + self.text.len()
    }
}

fn takes_marks(base: CharClass) -> bool {
    matches!(
        base,
        CharClass::Consonant | CharClass::IndependentVowel | CharClass::Other
    )
}

/// Splits normalized text into grapheme clusters.
///
/// A consonant following a virama (optionally through ZWJ) joins the cluster
/// as a conjunct member; ZWNJ after a virama forces an explicit halant and
/// breaks the cluster.
pub fn clusters(text: &str) -> Result<Vec<GraphemeCluster<'_>>, ScriptError> {
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut base: Option<CharClass> = None;
    let mut after_virama = false;

    for (offset, c) in text.char_indices() {
        let class = classify(c);
        let foreign_mark =
            class == CharClass::Other && unicode_normalization::char::is_combining_mark(c);
        let joiner = c == ZWJ || c == ZWNJ;

        let extend = match base {
            None => false,
            Some(b) => {
                if class.is_combining() || foreign_mark {
                    takes_marks(b)
                } else if joiner {
                    true
                } else {
                    class == CharClass::Consonant && after_virama
                }
            }
        };

        if !extend {
            if class.is_combining() || foreign_mark {
                return Err(ScriptError::DanglingCombiner { offset, mark: c });
            }
            if let Some(b) = base {
                out.push(GraphemeCluster {
                    text: &text[start..offset],
                    start,
                    base_class: b,
                });
            }
            start = offset;
            base = Some(class);
            after_virama = false;
            continue;
        }

        after_virama = match c {
            VIRAMA => true,
            ZWJ => after_virama,
            _ => false,
        };
    }
    if let Some(b) = base {
        out.push(GraphemeCluster {
            text: &text[start..],
            start,
            base_class: b,
        });
    }
    Ok(out)
}
