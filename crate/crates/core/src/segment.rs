//! Sentence and word segmentation.
//!
//! A word is a maximal run of characters that are not whitespace, danda or
//! punctuation. Hyphens and apostrophes are punctuation, so they split words.
//! Every danda, `?` and `!` ends a sentence.

use std::collections::HashSet;
use std::fmt;

use crate::script::{classify, strip_joiners, CharClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    Punct,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Word => "word",
            TokenKind::Number => "number",
            TokenKind::Punct => "punct",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "word" => Some(TokenKind::Word),
            "number" => Some(TokenKind::Number),
            "punct" => Some(TokenKind::Punct),
            _ => None,
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A token borrowed from its source text; `&source[start..end] == text`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSpan<'a> {
    pub start: usize,
    pub end: usize,
    pub tokens: Vec<Token<'a>>,
}

impl SentenceSpan<'_> {
    pub fn word_count(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| t.kind == TokenKind::Word)
            .count()
    }
}

fn is_digit(c: char) -> bool {
    c.is_ascii_digit() || classify(c) == CharClass::Digit
}

fn is_terminator(token: &Token<'_>) -> bool {
    token.kind == TokenKind::Punct && matches!(token.text, "।" | "॥" | "?" | "!")
}

fn word_token(text: &str, start: usize, end: usize) -> Token<'_> {
    let word = &text[start..end];
    let kind = if word.chars().all(is_digit) {
        TokenKind::Number
    } else {
        TokenKind::Word
    };
    Token {
        text: word,
        start,
        end,
        kind,
    }
}

pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut word_start: Option<usize> = None;

    for (i, c) in text.char_indices() {
        let class = classify(c);
        if !class.is_separator() {
            word_start.get_or_insert(i);
            continue;
        }
        if let Some(start) = word_start.take() {
            tokens.push(word_token(text, start, i));
        }
        if class != CharClass::Whitespace {
            let end = i + c.len_utf8();
            tokens.push(Token {
                text: &text[i..end],
                start: i,
                end,
                kind: TokenKind::Punct,
            });
        }
    }
    if let Some(start) = word_start {
        tokens.push(word_token(text, start, text.len()));
    }
    tokens
}

/// Groups tokens into sentences. Terminators that follow a closed sentence
/// (`ক।।`) are absorbed into it rather than opening an empty sentence.
pub fn split_sentences(text: &str) -> Vec<SentenceSpan<'_>> {
    let mut out: Vec<SentenceSpan<'_>> = Vec::new();
    let mut current: Option<SentenceSpan<'_>> = None;

    for token in tokenize(text) {
        let terminal = is_terminator(&token);
        if terminal && current.is_none() {
            if let Some(last) = out.last_mut() {
                last.end = token.end;
                last.tokens.push(token);
                continue;
            }
        }
        let sentence = current.get_or_insert_with(|| SentenceSpan {
            start: token.start,
            end: token.end,
            tokens: Vec::new(),
        });
        sentence.end = token.end;
        sentence.tokens.push(token);
        if terminal {
            out.extend(current.take());
        }
    }
    out.extend(current);
    out
}

/// Token, sentence and type counts for one document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TextCounts {
    pub tokens: usize,
    pub sentences: usize,
    pub types: usize,
}

/// Counts Word tokens, sentences and distinct word types (joiners stripped).
pub fn count_text(text: &str) -> TextCounts {
    let sentences = split_sentences(text);
    let mut types = HashSet::new();
    let mut tokens = 0;
    for token in sentences.iter().flat_map(|s| &s.tokens) {
        if token.kind == TokenKind::Word {
            tokens += 1;
            types.insert(strip_joiners(token.text));
        }
    }
    TextCounts {
        tokens,
        sentences: sentences.len(),
        types: types.len(),
    }
}
