//! Rule-driven morphological generator and analyzer.
//!
//! Paradigms live in data: a [`RuleSet`] of suffix and sandhi rules and a
//! [`Lexicon`] of roots. Nouns inflect gender → number → case, with the
//! instrumental built on the accusative form; pronouns take case endings on
//! their oblique stem; verbs take one ending per synthetic tense or a
//! non-finite form plus an auxiliary word for periphrastic tenses.

mod analyze;
pub mod features;
pub mod lexicon;
mod paradigm;
pub mod rules;

use std::path::PathBuf;

use thiserror::Error;

pub use analyze::AnalyzeOptions;
pub use features::{AdjPlural, Case, FeatureBundle, FinalClass, Gender, Number, Pos, TenseMood};
pub use lexicon::{Lexicon, Root};
pub use paradigm::{Paradigm, PronounForms, PronounNumber};
pub use rules::{Placement, RuleKey, RuleSet, SandhiRule, SuffixRule};

use crate::script::{normalize, vowel_sign_for};

#[derive(Debug, Error)]
pub enum MorphError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("rule {rule} refers to undefined sandhi rule {sandhi}")]
    DanglingSandhiRef { rule: String, sandhi: String },
    #[error("line {line}: duplicate rule id {id}")]
    DuplicateRuleId { line: usize, id: String },
    #[error("line {line}: {reason}")]
    MalformedEntry { line: usize, reason: String },
    #[error("unknown root {lemma}")]
    UnknownRoot { lemma: String },
    #[error("incompatible features: {0}")]
    IncompatibleFeatures(String),
    #[error("{0} needs an agreement slot")]
    MissingSlot(TenseMood),
    #[error("invalid combination: {0}")]
    InvalidCombination(String),
}

fn incompatible(reason: impl Into<String>) -> MorphError {
    MorphError::IncompatibleFeatures(reason.into())
}

/// One decomposition of a surface form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub root: Root,
    /// Fully resolved: every variant index is explicit.
    pub features: FeatureBundle,
    pub suffix_trace: Vec<String>,
    pub sandhi_trace: Vec<String>,
    pub surface: String,
}

/// Output of a generation step with its derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub surface: String,
    pub features: FeatureBundle,
    pub suffix_trace: Vec<String>,
    pub sandhi_trace: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Engine {
    rules: RuleSet,
    lexicon: Lexicon,
    /// Per suffix rule: surface tails with the root edit they undo.
    inverse: Vec<Vec<analyze::Tail>>,
}

/// Stem under construction.
struct Stem {
    text: String,
    class: FinalClass,
}

impl Engine {
    pub fn new(rules: RuleSet, lexicon: Lexicon) -> Self {
        let inverse = analyze::inverse_tails(&rules);
        Self {
            rules,
            lexicon,
            inverse,
        }
    }

    /// The shipped rule file and lexicon.
    pub fn shipped() -> Self {
        Self::new(RuleSet::shipped(), Lexicon::shipped())
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Generates the surface form of a lexicon root.
    pub fn generate(&self, root: &Root, features: &FeatureBundle) -> Result<String, MorphError> {
        if !self.lexicon.contains(root) {
            return Err(MorphError::UnknownRoot {
                lemma: root.lemma.clone(),
            });
        }
        self.realize(root, features).map(|g| g.surface)
    }

    /// Looks the lemma up by the bundle's part of speech and generates.
    pub fn generate_lemma(&self, lemma: &str, features: &FeatureBundle) -> Result<Generated, MorphError> {
        let lemma = normalize(lemma);
        let root = self
            .lexicon
            .get(&lemma, features.pos)
            .ok_or(MorphError::UnknownRoot { lemma })?;
        self.realize(root, features)
    }

    /// Generates without checking lexicon membership.
    pub fn realize(&self, root: &Root, features: &FeatureBundle) -> Result<Generated, MorphError> {
        if features.pos != root.pos {
            return Err(incompatible(format!(
                "{} is a {}, features are for a {}",
                root.lemma, root.pos, features.pos
            )));
        }
        match root.pos {
            Pos::Verb => self.realize_verb(root, features),
            Pos::Noun | Pos::Pronoun => self.realize_nominal(root, features),
        }
    }

    /// Attaches `rule`'s suffix to `stem`: the first applicable listed sandhi
    /// rule rewrites the junction, then an ending-initial independent vowel is
    /// written as a vowel sign after a consonant-final stem.
    fn join(&self, stem: &Stem, rule: &SuffixRule, sandhi_log: &mut Vec<String>) -> Stem {
        if rule.suffix.is_empty() {
            return Stem {
                text: stem.text.clone(),
                class: stem.class,
            };
        }
        let (mut left, mut right) = (stem.text.clone(), rule.suffix.clone());
        if let Some(s) = self
            .rules
            .sandhi_for(rule)
            .find(|s| s.applies(stem.class, &stem.text, &rule.suffix))
        {
            (left, right) = s.rewrite(&stem.text, &rule.suffix);
            sandhi_log.push(s.id.clone());
        }
        if stem.class == FinalClass::Consonant {
            right = as_vowel_sign(&right);
        }
        let text = normalize(&(left + &right));
        let class = FinalClass::of_spelling(&text);
        Stem { text, class }
    }

    /// Picks the rule for a category: the requested variant, or the first
    /// variant usable on this stem.
    fn select(
        &self,
        what: &str,
        key: impl Fn(u8) -> RuleKey,
        variants: Vec<u8>,
        requested: Option<u8>,
        usable: impl Fn(&SuffixRule) -> bool,
    ) -> Result<(&SuffixRule, u8), MorphError> {
        match requested {
            Some(v) => {
                let rule = self
                    .rules
                    .get(key(v))
                    .ok_or_else(|| incompatible(format!("{what} has no variant {v}")))?;
                if usable(rule) {
                    Ok((rule, v))
                } else {
                    Err(incompatible(format!("{} does not apply to this stem", rule.id)))
                }
            }
            None => variants
                .into_iter()
                .filter_map(|v| self.rules.get(key(v)).map(|r| (r, v)))
                .find(|(r, _)| usable(r))
                .ok_or_else(|| incompatible(format!("no {what} rule applies to this stem"))),
        }
    }

    fn usable(rule: &SuffixRule, pos: Pos, class: FinalClass) -> bool {
        rule.scope.includes(pos) && rule.stem_condition.is_none_or(|c| c.holds(class))
    }

    fn realize_nominal(&self, root: &Root, f: &FeatureBundle) -> Result<Generated, MorphError> {
        if f.tense_mood.is_some() || f.slot.is_some() || f.verb_variant.is_some() {
            return Err(incompatible("tense, slot and verb variants apply to verbs only"));
        }
        if (f.gender_variant.is_some() && f.gender.is_none())
            || (f.number_variant.is_some() && f.number.is_none())
            || (f.case_variant.is_some() && f.case.is_none())
        {
            return Err(incompatible("variant given without its category"));
        }
        let pos = root.pos;
        if pos == Pos::Pronoun && (f.gender.is_some() || f.number.is_some()) {
            return Err(incompatible("pronouns inflect for case only"));
        }

        let mut resolved = *f;
        let mut trace = Vec::new();
        let mut sandhi = Vec::new();
        let mut stem = Stem {
            text: root.lemma.clone(),
            class: root.final_class,
        };
        let mut gender_prefix = "";
        let mut number_prefix = "";
        let mut free_word: Option<&str> = None;

        if pos == Pos::Pronoun {
            match (f.case, &root.oblique) {
                (Some(Case::Nom), _) => {
                    if f.case_variant.is_some_and(|v| v != 1) {
                        return Err(incompatible("a pronoun's nominative is its direct form"));
                    }
                }
                (Some(_), Some(obl)) => {
                    stem = Stem {
                        text: obl.clone(),
                        class: FinalClass::of_spelling(obl),
                    }
                }
                _ => {}
            }
        }

        if let Some(g) = f.gender {
            let (rule, v) = self.select(
                "gender",
                |v| RuleKey::Gender(g, v),
                self.rules.gender_variants(g),
                f.gender_variant,
                |r| Self::usable(r, pos, stem.class),
            )?;
            resolved.gender_variant = Some(v);
            trace.push(rule.id.clone());
            match rule.placement {
                Placement::After => stem = self.join(&stem, rule, &mut sandhi),
                Placement::Before => gender_prefix = &rule.suffix,
                other => return Err(incompatible(format!("{} has unsupported placement {other:?}", rule.id))),
            }
        }

        if let Some(n) = f.number {
            let (rule, v) = self.select(
                "number",
                |v| RuleKey::Number(n, v),
                self.rules.number_variants(n),
                f.number_variant,
                |r| Self::usable(r, pos, stem.class),
            )?;
            resolved.number_variant = Some(v);
            trace.push(rule.id.clone());
            match rule.placement {
                Placement::After => stem = self.join(&stem, rule, &mut sandhi),
                Placement::Before => number_prefix = &rule.suffix,
                Placement::FreeAfter => free_word = Some(&rule.suffix),
                other => return Err(incompatible(format!("{} has unsupported placement {other:?}", rule.id))),
            }
        }

        if let Some(c) = f.case {
            if free_word.is_some() {
                return Err(incompatible("a free-standing plural word takes no case ending"));
            }
            let class = stem.class;
            let acc_for = |r: &SuffixRule| r.acc_variant.and_then(|a| self.rules.get(RuleKey::Case(Case::Acc, a)));
            let (rule, v) = self.select(
                "case",
                |v| RuleKey::Case(c, v),
                self.rules.case_variants(c),
                f.case_variant,
                |r| {
                    Self::usable(r, pos, class)
                        && match r.placement {
                            Placement::AfterAccusativeForm => {
                                acc_for(r).is_some_and(|acc| Self::usable(acc, pos, class))
                            }
                            _ => true,
                        }
                },
            )?;
            resolved.case_variant = Some(v);
            if rule.placement == Placement::AfterAccusativeForm {
                let acc = acc_for(rule).expect("checked by select");
                trace.push(acc.id.clone());
                stem = self.join(&stem, acc, &mut sandhi);
            }
            trace.push(rule.id.clone());
            stem = self.join(&stem, rule, &mut sandhi);
        }

        let mut surface = normalize(&format!("{number_prefix}{gender_prefix}{}", stem.text));
        if let Some(word) = free_word {
            surface.push(' ');
            surface.push_str(word);
        }
        Ok(Generated {
            surface,
            features: resolved,
            suffix_trace: trace,
            sandhi_trace: sandhi,
        })
    }

    fn realize_verb(&self, root: &Root, f: &FeatureBundle) -> Result<Generated, MorphError> {
        if f.gender.is_some() || f.number.is_some() || f.case.is_some() {
            return Err(incompatible("gender, number and case never apply to verbs"));
        }
        if f.gender_variant.is_some() || f.number_variant.is_some() || f.case_variant.is_some() {
            return Err(incompatible("nominal variants never apply to verbs"));
        }
        let tense = f
            .tense_mood
            .ok_or_else(|| incompatible("a verb form needs a tense or mood"))?;
        let mut resolved = *f;
        let mut sandhi = Vec::new();
        let stem = Stem {
            text: root.lemma.clone(),
            class: root.final_class,
        };

        if tense.is_synthetic() {
            if f.verb_variant.is_some() {
                return Err(incompatible(format!("{tense} takes a slot, not a form variant")));
            }
            let slot = f.slot.ok_or(MorphError::MissingSlot(tense))?;
            let rule = self
                .rules
                .get(RuleKey::Tense(tense, slot))
                .ok_or_else(|| incompatible(format!("{tense} has no slot {slot}")))?;
            let out = self.join(&stem, rule, &mut sandhi);
            return Ok(Generated {
                surface: out.text,
                features: resolved,
                suffix_trace: vec![rule.id.clone()],
                sandhi_trace: sandhi,
            });
        }

        if f.slot.is_some() {
            return Err(incompatible(format!("{tense} has no agreement slots")));
        }
        let (rule, v) = self.select(
            tense.name(),
            |v| RuleKey::Tense(tense, v),
            self.rules.tense_variants(tense),
            f.verb_variant,
            |r| Self::usable(r, Pos::Verb, stem.class),
        )?;
        resolved.verb_variant = Some(v);

        if rule.placement == Placement::FreeBefore {
            return Ok(Generated {
                surface: format!("{} {}", rule.suffix, stem.text),
                features: resolved,
                suffix_trace: vec![rule.id.clone()],
                sandhi_trace: sandhi,
            });
        }
        let aux = self
            .rules
            .get(RuleKey::Auxiliary(tense))
            .ok_or_else(|| incompatible(format!("{tense} has no auxiliary rule")))?;
        let nonfinite = self.join(&stem, rule, &mut sandhi);
        Ok(Generated {
            surface: format!("{} {}", nonfinite.text, aux.suffix),
            features: resolved,
            suffix_trace: vec![rule.id.clone(), aux.id.clone()],
            sandhi_trace: sandhi,
        })
    }
}

/// Rewrites an initial independent vowel as its dependent sign.
fn as_vowel_sign(suffix: &str) -> String {
    let mut chars = suffix.chars();
    match chars.next().and_then(vowel_sign_for) {
        Some(sign) => format!("{sign}{}", chars.as_str()),
        None => suffix.to_owned(),
    }
}
