//! Suffix and sandhi rules, loaded from the line-oriented rule file:
//!
//! ```text
//! RULEID<TAB>POS<TAB>FEATURES<TAB>SUFFIX<TAB>PLACEMENT<TAB>SANDHI_IDS
//! ```
//!
//! Sandhi rules share the file with `POS = sandhi`; their FEATURES column
//! holds the stem-class context and the SUFFIX column the junction rewrite
//! `ROOTEDGE+SUFFIXEDGE>ROOTREPL+SUFFIXREPL`.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::features::{Case, FinalClass, Gender, Number, Pos, TenseMood};
use super::MorphError;
use crate::script::normalize;

pub const DEFAULT_RULES: &str = include_str!("../../data/rules.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandhiRule {
    pub id: String,
    /// Stem classes the rule applies to; empty means any.
    pub classes: Vec<FinalClass>,
    pub root_edge: String,
    pub suffix_edge: String,
    pub root_replace: String,
    pub suffix_replace: String,
}

impl SandhiRule {
    pub fn applies(&self, class: FinalClass, stem: &str, suffix: &str) -> bool {
        (self.classes.is_empty() || self.classes.contains(&class))
            && stem.ends_with(&self.root_edge)
            && suffix.starts_with(&self.suffix_edge)
    }

    /// Rewrites the junction; caller checks [`applies`](Self::applies) first.
    pub fn rewrite(&self, stem: &str, suffix: &str) -> (String, String) {
        let stem_base = &stem[..stem.len() - self.root_edge.len()];
        let suffix_rest = &suffix[self.suffix_edge.len()..];
        (
            format!("{stem_base}{}", self.root_replace),
            format!("{}{suffix_rest}", self.suffix_replace),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    After,
    /// Prefixed compound member (`মুনিমানু`, `হাবিমানু`).
    Before,
    /// Attaches to the accusative form selected by the rule's `acc=` key.
    AfterAccusativeForm,
    /// Separate word following the inflected form (`মানু এতা`, `করিয়া আছ`).
    FreeAfter,
    /// Separate word preceding the form.
    FreeBefore,
}

impl FromStr for Placement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "after" => Placement::After,
            "before" => Placement::Before,
            "after_acc" => Placement::AfterAccusativeForm,
            "free_after" => Placement::FreeAfter,
            "free_before" => Placement::FreeBefore,
            other => return Err(format!("unknown placement {other:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StemCondition {
    Consonant,
    Vowel,
}

impl StemCondition {
    pub fn holds(self, class: FinalClass) -> bool {
        match self {
            StemCondition::Consonant => class == FinalClass::Consonant,
            StemCondition::Vowel => class != FinalClass::Consonant,
        }
    }
}

/// What a suffix rule realizes. The `u8` is the 1-based variant or slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKey {
    Gender(Gender, u8),
    Number(Number, u8),
    Case(Case, u8),
    Tense(TenseMood, u8),
    Auxiliary(TenseMood),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosScope {
    Noun,
    Pronoun,
    Nominal,
    Verb,
}

impl PosScope {
    pub fn includes(self, pos: Pos) -> bool {
        matches!(
            (self, pos),
            (PosScope::Noun, Pos::Noun)
                | (PosScope::Pronoun, Pos::Pronoun)
                | (PosScope::Nominal, Pos::Noun | Pos::Pronoun)
                | (PosScope::Verb, Pos::Verb)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub id: String,
    pub scope: PosScope,
    pub key: RuleKey,
    /// Empty for zero-marking rules.
    pub suffix: String,
    pub placement: Placement,
    pub sandhi: Vec<String>,
    pub stem_condition: Option<StemCondition>,
    /// Accusative variant an instrumental rule attaches to.
    pub acc_variant: Option<u8>,
}

#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    suffixes: Vec<SuffixRule>,
    sandhi: Vec<SandhiRule>,
    by_key: HashMap<RuleKey, usize>,
    sandhi_by_id: HashMap<String, usize>,
}

fn malformed(line: usize, reason: impl Into<String>) -> MorphError {
    MorphError::MalformedEntry {
        line,
        reason: reason.into(),
    }
}

fn parse_variant(line: usize, key: &str, value: &str) -> Result<u8, MorphError> {
    value
        .parse::<u8>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| malformed(line, format!("{key} must be a positive integer")))
}

fn parse_sandhi(line: usize, id: &str, context: &str, rewrite: &str) -> Result<SandhiRule, MorphError> {
    let mut classes = Vec::new();
    if context != "-" {
        let list = context
            .strip_prefix("class=")
            .ok_or_else(|| malformed(line, "sandhi context must be class=...|..."))?;
        for c in list.split('|') {
            classes.push(c.parse::<FinalClass>().map_err(|e| malformed(line, e))?);
        }
    }
    let (lhs, rhs) = rewrite
        .split_once('>')
        .ok_or_else(|| malformed(line, "sandhi rewrite must be A+B>C+D"))?;
    let (root_edge, suffix_edge) = lhs
        .split_once('+')
        .ok_or_else(|| malformed(line, "sandhi pattern must be ROOT+SUFFIX"))?;
    let (root_replace, suffix_replace) = rhs
        .split_once('+')
        .ok_or_else(|| malformed(line, "sandhi replacement must be ROOT+SUFFIX"))?;
    if suffix_edge.is_empty() {
        return Err(malformed(line, "sandhi needs a suffix edge"));
    }
    Ok(SandhiRule {
        id: id.to_owned(),
        classes,
        root_edge: normalize(root_edge),
        suffix_edge: normalize(suffix_edge),
        root_replace: normalize(root_replace),
        suffix_replace: normalize(suffix_replace),
    })
}

struct ParsedFeatures {
    key: RuleKey,
    stem_condition: Option<StemCondition>,
    acc_variant: Option<u8>,
}

fn parse_features(line: usize, spec: &str) -> Result<ParsedFeatures, MorphError> {
    let mut gender = None;
    let mut number = None;
    let mut case = None;
    let mut tense = None;
    let mut index: Option<(&str, u8)> = None;
    let mut aux = false;
    let mut stem_condition = None;
    let mut acc_variant = None;

    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| malformed(line, format!("expected key=value, got {item:?}")))?;
        let bad = |e: String| malformed(line, e);
        match k {
            "gender" => gender = Some(v.parse::<Gender>().map_err(bad)?),
            "number" => number = Some(v.parse::<Number>().map_err(bad)?),
            "case" => case = Some(v.parse::<Case>().map_err(bad)?),
            "tense" => tense = Some(v.parse::<TenseMood>().map_err(bad)?),
            "gv" | "nv" | "cv" | "slot" | "vv" => {
                if index.is_some() {
                    return Err(malformed(line, "more than one variant key"));
                }
                index = Some((k, parse_variant(line, k, v)?));
            }
            "acc" => acc_variant = Some(parse_variant(line, k, v)?),
            "stem" => {
                stem_condition = Some(match v {
                    "consonant" => StemCondition::Consonant,
                    "vowel" => StemCondition::Vowel,
                    other => return Err(malformed(line, format!("unknown stem condition {other:?}"))),
                })
            }
            "role" if v == "aux" => aux = true,
            other => return Err(malformed(line, format!("unknown feature key {other:?}"))),
        }
    }

    let need = |expected: &str| -> Result<u8, MorphError> {
        match index {
            Some((k, n)) if k == expected => Ok(n),
            _ => Err(malformed(line, format!("rule needs {expected}=N"))),
        }
    };
    let key = match (gender, number, case, tense) {
        (Some(g), None, None, None) => RuleKey::Gender(g, need("gv")?),
        (None, Some(n), None, None) => RuleKey::Number(n, need("nv")?),
        (None, None, Some(c), None) => RuleKey::Case(c, need("cv")?),
        (None, None, None, Some(t)) if aux => {
            if !t.is_periphrastic() {
                return Err(malformed(line, "auxiliary rules belong to periphrastic tenses"));
            }
            if index.is_some() {
                return Err(malformed(line, "auxiliary rules take no variant"));
            }
            RuleKey::Auxiliary(t)
        }
        (None, None, None, Some(t)) => {
            RuleKey::Tense(t, need(if t.is_synthetic() { "slot" } else { "vv" })?)
        }
        _ => return Err(malformed(line, "exactly one of gender/number/case/tense required")),
    };
    if matches!(key, RuleKey::Case(Case::Instr, _)) != acc_variant.is_some() {
        return Err(malformed(line, "acc=N is required on (and only on) instrumental rules"));
    }
    Ok(ParsedFeatures {
        key,
        stem_condition,
        acc_variant,
    })
}

impl RuleSet {
    pub fn parse(source: &str) -> Result<Self, MorphError> {
        let mut set = RuleSet::default();
        let mut ids: HashSet<String> = HashSet::new();

        for (i, raw) in source.lines().enumerate() {
            let line = i + 1;
            let text = raw.strip_suffix('\r').unwrap_or(raw);
            if text.starts_with('#') || text.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = text.split('\t').collect();
            if fields.len() != 6 {
                return Err(malformed(
                    line,
                    format!("expected 6 tab-separated fields, found {}", fields.len()),
                ));
            }
            let id = fields[0].trim();
            if id.is_empty() {
                return Err(malformed(line, "empty rule id"));
            }
            if !ids.insert(id.to_owned()) {
                return Err(MorphError::DuplicateRuleId {
                    line,
                    id: id.to_owned(),
                });
            }

            if fields[1] == "sandhi" {
                let rule = parse_sandhi(line, id, fields[2], fields[3])?;
                set.sandhi_by_id.insert(rule.id.clone(), set.sandhi.len());
                set.sandhi.push(rule);
                continue;
            }

            let scope = match fields[1] {
                "noun" => PosScope::Noun,
                "pronoun" => PosScope::Pronoun,
                "nominal" => PosScope::Nominal,
                "verb" => PosScope::Verb,
                other => return Err(malformed(line, format!("unknown POS {other:?}"))),
            };
            let parsed = parse_features(line, fields[2])?;
            let suffix = match fields[3] {
                "-" => String::new(),
                s => normalize(s),
            };
            let placement: Placement = fields[4].parse().map_err(|e| malformed(line, e))?;
            let sandhi: Vec<String> = match fields[5] {
                "-" => Vec::new(),
                s => s.split(',').map(|x| x.trim().to_owned()).collect(),
            };

            let verb_key = matches!(parsed.key, RuleKey::Tense(..) | RuleKey::Auxiliary(_));
            if verb_key != (scope == PosScope::Verb) {
                return Err(malformed(line, "tense rules must be verb rules and vice versa"));
            }
            if suffix.is_empty() && placement != Placement::After {
                return Err(malformed(line, "zero-marking rules must use placement after"));
            }
            if (placement == Placement::AfterAccusativeForm) != parsed.acc_variant.is_some() {
                return Err(malformed(line, "after_acc placement goes with acc=N"));
            }
            if set.by_key.insert(parsed.key, set.suffixes.len()).is_some() {
                return Err(malformed(line, "another rule already realizes these features"));
            }
            set.suffixes.push(SuffixRule {
                id: id.to_owned(),
                scope,
                key: parsed.key,
                suffix,
                placement,
                sandhi,
                stem_condition: parsed.stem_condition,
                acc_variant: parsed.acc_variant,
            });
        }

        for rule in &set.suffixes {
            if let Some(missing) = rule
                .sandhi
                .iter()
                .find(|s| !set.sandhi_by_id.contains_key(s.as_str()))
            {
                return Err(MorphError::DanglingSandhiRef {
                    rule: rule.id.clone(),
                    sandhi: missing.clone(),
                });
            }
            if let Some(acc) = rule.acc_variant {
                if !set.by_key.contains_key(&RuleKey::Case(Case::Acc, acc)) {
                    return Err(malformed(
                        0,
                        format!("{} attaches to missing accusative variant {acc}", rule.id),
                    ));
                }
            }
        }
        Ok(set)
    }

    pub fn load(path: &Path) -> Result<Self, MorphError> {
        let source = fs::read_to_string(path).map_err(|source| MorphError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&source)
    }

    pub fn shipped() -> Self {
        Self::parse(DEFAULT_RULES).expect("shipped rule file is valid")
    }

    pub fn suffix_rules(&self) -> &[SuffixRule] {
        &self.suffixes
    }

    pub fn sandhi_rules(&self) -> &[SandhiRule] {
        &self.sandhi
    }

    pub fn get(&self, key: RuleKey) -> Option<&SuffixRule> {
        self.by_key.get(&key).map(|&i| &self.suffixes[i])
    }

    pub fn sandhi(&self, id: &str) -> Option<&SandhiRule> {
        self.sandhi_by_id.get(id).map(|&i| &self.sandhi[i])
    }

    /// Sandhi rules referenced by `rule`, in listed order.
    pub fn sandhi_for<'a>(&'a self, rule: &'a SuffixRule) -> impl Iterator<Item = &'a SandhiRule> + 'a {
        rule.sandhi.iter().filter_map(move |id| self.sandhi(id))
    }

    /// Defined variant indices for a category, ascending.
    pub fn variants(&self, matches: impl Fn(&RuleKey) -> Option<u8>) -> Vec<u8> {
        let mut out: Vec<u8> = self.by_key.keys().filter_map(matches).collect();
        out.sort_unstable();
        out
    }

    pub fn gender_variants(&self, gender: Gender) -> Vec<u8> {
        self.variants(|k| match *k {
            RuleKey::Gender(g, v) if g == gender => Some(v),
            _ => None,
        })
    }

    pub fn number_variants(&self, number: Number) -> Vec<u8> {
        self.variants(|k| match *k {
            RuleKey::Number(n, v) if n == number => Some(v),
            _ => None,
        })
    }

    pub fn case_variants(&self, case: Case) -> Vec<u8> {
        self.variants(|k| match *k {
            RuleKey::Case(c, v) if c == case => Some(v),
            _ => None,
        })
    }

    pub fn tense_variants(&self, tense: TenseMood) -> Vec<u8> {
        self.variants(|k| match *k {
            RuleKey::Tense(t, v) if t == tense => Some(v),
            _ => None,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.suffixes.is_empty() && self.sandhi.is_empty()
    }
}
