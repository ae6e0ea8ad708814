//! Morphosyntactic feature vocabulary and the compact feature string syntax
//! used on the command line and in analyzer output, e.g.
//! `noun,fem,gv=3,gen,cv=1` or `verb,imperative,slot=1`.

use std::fmt;
use std::str::FromStr;

use crate::script::{classify, CharClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Pronoun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinalClass {
    /// Final `া`, or a pronounced inherent `অ`.
    VowelA,
    VowelI,
    VowelOther,
    Consonant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gender {
    Masc,
    Fem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdjPlural {
    Guli,
    Habi,
    Eta,
    Outa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Number {
    Sg,
    PluralGachhi,
    /// The `-ি` plural of classifier forms in `-গ` / `-হান`.
    PluralI,
    PluralMahei,
    AdjPlural(AdjPlural),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    Nom,
    Acc,
    Instr,
    Dat,
    Abl,
    Gen,
    Loc,
    Voc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TenseMood {
    SimplePresent,
    PrecativePresent,
    SimplePast,
    SimpleFuture,
    ProbableFuture,
    PresentProgressive,
    PresentPerfect,
    PastProgressive,
    PastPerfect,
    ProbablePast,
    FutureProgressive,
    Imperative,
    Subjunctive,
}

impl TenseMood {
    pub const ALL: [TenseMood; 13] = [
        TenseMood::SimplePresent,
        TenseMood::PrecativePresent,
        TenseMood::SimplePast,
        TenseMood::SimpleFuture,
        TenseMood::ProbableFuture,
        TenseMood::PresentProgressive,
        TenseMood::PresentPerfect,
        TenseMood::PastProgressive,
        TenseMood::PastPerfect,
        TenseMood::ProbablePast,
        TenseMood::FutureProgressive,
        TenseMood::Imperative,
        TenseMood::Subjunctive,
    ];

    /// Tenses realized by a single ending chosen by agreement slot.
    pub fn is_synthetic(self) -> bool {
        !self.is_periphrastic() && self != TenseMood::Subjunctive
    }

    /// Non-finite form followed by an auxiliary word.
    pub fn is_periphrastic(self) -> bool {
        matches!(
            self,
            TenseMood::PresentProgressive
                | TenseMood::PastProgressive
                | TenseMood::ProbablePast
                | TenseMood::FutureProgressive
        )
    }
}

impl Case {
    pub const ALL: [Case; 8] = [
        Case::Nom,
        Case::Acc,
        Case::Instr,
        Case::Dat,
        Case::Abl,
        Case::Gen,
        Case::Loc,
        Case::Voc,
    ];
}

macro_rules! names {
    ($ty:ty, $what:literal, { $($variant:expr => $name:literal),+ $(,)? }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                $(if self == $variant { return $name; })+
                unreachable!()
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $(if s == $name { return Ok($variant); })+
                Err(format!(concat!("unknown ", $what, " {:?}"), s))
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

names!(Pos, "part of speech", {
    Pos::Noun => "noun",
    Pos::Verb => "verb",
    Pos::Pronoun => "pronoun",
});

names!(FinalClass, "final class", {
    FinalClass::VowelA => "vowel_a",
    FinalClass::VowelI => "vowel_i",
    FinalClass::VowelOther => "vowel_other",
    FinalClass::Consonant => "consonant",
});

names!(Gender, "gender", {
    Gender::Masc => "masc",
    Gender::Fem => "fem",
});

names!(Number, "number", {
    Number::Sg => "sg",
    Number::PluralGachhi => "gachhi",
    Number::PluralI => "pl-i",
    Number::PluralMahei => "mahei",
    Number::AdjPlural(AdjPlural::Guli) => "guli",
    Number::AdjPlural(AdjPlural::Habi) => "habi",
    Number::AdjPlural(AdjPlural::Eta) => "eta",
    Number::AdjPlural(AdjPlural::Outa) => "outa",
});

names!(Case, "case", {
    Case::Nom => "nom",
    Case::Acc => "acc",
    Case::Instr => "instr",
    Case::Dat => "dat",
    Case::Abl => "abl",
    Case::Gen => "gen",
    Case::Loc => "loc",
    Case::Voc => "voc",
});

names!(TenseMood, "tense/mood", {
    TenseMood::SimplePresent => "simple_present",
    TenseMood::PrecativePresent => "precative_present",
    TenseMood::SimplePast => "simple_past",
    TenseMood::SimpleFuture => "simple_future",
    TenseMood::ProbableFuture => "probable_future",
    TenseMood::PresentProgressive => "present_progressive",
    TenseMood::PresentPerfect => "present_perfect",
    TenseMood::PastProgressive => "past_progressive",
    TenseMood::PastPerfect => "past_perfect",
    TenseMood::ProbablePast => "probable_past",
    TenseMood::FutureProgressive => "future_progressive",
    TenseMood::Imperative => "imperative",
    TenseMood::Subjunctive => "subjunctive",
});

impl FinalClass {
    /// Class read off the spelling alone. A final consonant letter is taken
    /// to have its inherent vowel unpronounced; lexicon entries override this.
    pub fn of_spelling(stem: &str) -> FinalClass {
        let mut chars = stem.chars().rev();
        let mut last = match chars.next() {
            Some(c) => c,
            None => return FinalClass::Consonant,
        };
        if last == '\u{0981}' {
            // candrabindu nasalizes the preceding vowel
            match chars.next() {
                Some(c) => last = c,
                None => return FinalClass::VowelOther,
            }
        }
        match last {
            '\u{09BE}' | 'আ' => FinalClass::VowelA,
            '\u{09BF}' | '\u{09C0}' | 'ই' | 'ঈ' => FinalClass::VowelI,
            c => match classify(c) {
                CharClass::VowelSign | CharClass::IndependentVowel => FinalClass::VowelOther,
                _ => FinalClass::Consonant,
            },
        }
    }
}

/// One fully or partially specified feature combination.
///
/// Variant indices are 1-based positions in the ending lists of the rule
/// file. `None` means "first applicable".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureBundle {
    pub pos: Pos,
    pub gender: Option<Gender>,
    pub gender_variant: Option<u8>,
    pub number: Option<Number>,
    pub number_variant: Option<u8>,
    pub case: Option<Case>,
    pub case_variant: Option<u8>,
    pub tense_mood: Option<TenseMood>,
    /// Agreement-ending position in a synthetic tense's list.
    pub slot: Option<u8>,
    /// Non-finite form choice (periphrastic tenses) or particle choice
    /// (subjunctive).
    pub verb_variant: Option<u8>,
}

impl FeatureBundle {
    pub fn new(pos: Pos) -> Self {
        Self {
            pos,
            gender: None,
            gender_variant: None,
            number: None,
            number_variant: None,
            case: None,
            case_variant: None,
            tense_mood: None,
            slot: None,
            verb_variant: None,
        }
    }

    pub fn noun() -> Self {
        Self::new(Pos::Noun)
    }

    pub fn verb(tense: TenseMood) -> Self {
        Self {
            tense_mood: Some(tense),
            ..Self::new(Pos::Verb)
        }
    }

    pub fn pronoun() -> Self {
        Self::new(Pos::Pronoun)
    }

    pub fn with_gender(mut self, gender: Gender, variant: u8) -> Self {
        self.gender = Some(gender);
        self.gender_variant = Some(variant);
        self
    }

    pub fn with_number(mut self, number: Number, variant: u8) -> Self {
        self.number = Some(number);
        self.number_variant = Some(variant);
        self
    }

    pub fn with_case(mut self, case: Case, variant: u8) -> Self {
        self.case = Some(case);
        self.case_variant = Some(variant);
        self
    }

    pub fn with_slot(mut self, slot: u8) -> Self {
        self.slot = Some(slot);
        self
    }

    pub fn with_verb_variant(mut self, variant: u8) -> Self {
        self.verb_variant = Some(variant);
        self
    }
}

impl fmt::Display for FeatureBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.pos.name().to_owned()];
        let mut push = |name: Option<&str>, key: &str, variant: Option<u8>| {
            if let Some(name) = name {
                parts.push(name.to_owned());
            }
            if let Some(v) = variant {
                parts.push(format!("{key}={v}"));
            }
        };
        push(self.gender.map(Gender::name), "gv", self.gender_variant);
        push(self.number.map(Number::name), "nv", self.number_variant);
        push(self.case.map(Case::name), "cv", self.case_variant);
        push(self.tense_mood.map(TenseMood::name), "slot", self.slot);
        push(None, "vv", self.verb_variant);
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FeatureBundle {
    type Err = String;

    /// Parses a comma-separated feature string. The part of speech may be omitted when
    /// another feature implies it.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pos = None;
        let mut b = FeatureBundle::noun();
        for raw in s.split(',') {
            let item = raw.trim();
            if item.is_empty() {
                continue;
            }
            if let Some((key, value)) = item.split_once('=') {
                let n: u8 = value
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| format!("{key} must be a positive integer, got {value:?}"))?;
                let target = match key {
                    "gv" => &mut b.gender_variant,
                    "nv" => &mut b.number_variant,
                    "cv" => &mut b.case_variant,
                    "slot" => &mut b.slot,
                    "vv" => &mut b.verb_variant,
                    other => return Err(format!("unknown feature key {other:?}")),
                };
                *target = Some(n);
            } else if let Ok(p) = item.parse::<Pos>() {
                pos = Some(p);
            } else if let Ok(g) = item.parse::<Gender>() {
                b.gender = Some(g);
            } else if let Ok(n) = item.parse::<Number>() {
                b.number = Some(n);
            } else if let Ok(c) = item.parse::<Case>() {
                b.case = Some(c);
            } else if let Ok(t) = item.parse::<TenseMood>() {
                b.tense_mood = Some(t);
            } else {
                return Err(format!("unknown feature {item:?}"));
            }
        }
        b.pos = match pos {
            Some(p) => p,
            None if b.tense_mood.is_some() || b.slot.is_some() || b.verb_variant.is_some() => {
                Pos::Verb
            }
            None if b.gender.is_some() || b.number.is_some() => Pos::Noun,
            None => return Err(format!("cannot infer part of speech from {s:?}")),
        };
        Ok(b)
    }
}
