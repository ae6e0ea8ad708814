//! Paradigm tables: personal pronouns and full enumeration of a root.

use std::fmt;
use std::str::FromStr;

use super::{Case, Engine, FeatureBundle, Gender, Generated, MorphError, Pos, Root, RuleKey, TenseMood};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PronounNumber {
    Singular,
    Plural,
}

impl FromStr for PronounNumber {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sg" | "singular" => Ok(PronounNumber::Singular),
            "pl" | "plural" => Ok(PronounNumber::Plural),
            _ => Err(format!("unknown pronoun number {s:?} (expected sg or pl)")),
        }
    }
}

impl fmt::Display for PronounNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PronounNumber::Singular => "sg",
            PronounNumber::Plural => "pl",
        })
    }
}

/// Personal pronouns by person, number and (third singular only) gender.
const PERSONAL: &[(u8, PronounNumber, Option<Gender>, &str)] = &[
    (1, PronounNumber::Singular, None, "মি"),
    (1, PronounNumber::Plural, None, "আমি"),
    (2, PronounNumber::Singular, None, "তি"),
    (2, PronounNumber::Plural, None, "তুমি"),
    (3, PronounNumber::Singular, Some(Gender::Masc), "তা"),
    (3, PronounNumber::Singular, Some(Gender::Fem), "তেই"),
    (3, PronounNumber::Plural, None, "তানো"),
    (3, PronounNumber::Plural, None, "তানু"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PronounForms {
    pub root: Root,
    /// Case forms in case order, then variant order.
    pub forms: Vec<(FeatureBundle, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paradigm {
    pub person: u8,
    pub number: PronounNumber,
    pub gender: Option<Gender>,
    pub lexemes: Vec<PronounForms>,
}

impl Engine {
    pub fn pronoun_paradigm(
        &self,
        person: u8,
        number: PronounNumber,
        gender: Option<Gender>,
    ) -> Result<Paradigm, MorphError> {
        let invalid = |reason: &str| Err(MorphError::InvalidCombination(reason.to_owned()));
        if !(1..=3).contains(&person) {
            return invalid("person must be 1, 2 or 3");
        }
        if person < 3 && gender.is_some() {
            return invalid("gender is marked only in the third person");
        }
        if person == 3 && number == PronounNumber::Singular && gender.is_none() {
            return invalid("the third person singular needs a gender");
        }
        let mut lexemes = Vec::new();
        for &(_, _, _, lemma) in PERSONAL
            .iter()
            .filter(|(p, n, g, _)| *p == person && *n == number && (g.is_none() || *g == gender))
        {
            let root = self
                .lexicon
                .get(lemma, Pos::Pronoun)
                .ok_or_else(|| MorphError::UnknownRoot { lemma: lemma.to_owned() })?;
            let mut forms = Vec::new();
            for case in Case::ALL {
                for v in self.rules.case_variants(case) {
                    if let Ok(g) = self.realize(root, &FeatureBundle::pronoun().with_case(case, v)) {
                        forms.push((g.features, g.surface));
                    }
                }
            }
            lexemes.push(PronounForms {
                root: root.clone(),
                forms,
            });
        }
        Ok(Paradigm {
            person,
            number,
            gender,
            lexemes,
        })
    }

    /// Every fully specified feature bundle the rules realize on `root`.
    pub fn enumerate(&self, root: &Root) -> Vec<Generated> {
        let mut bundles = Vec::new();
        if root.pos == Pos::Verb {
            for t in TenseMood::ALL {
                for v in self.rules.tense_variants(t) {
                    let b = FeatureBundle::verb(t);
                    bundles.push(if t.is_synthetic() { b.with_slot(v) } else { b.with_verb_variant(v) });
                }
            }
        } else {
            let keys: Vec<RuleKey> = self.rules.suffix_rules().iter().map(|r| r.key).collect();
            let genders = std::iter::once(None).chain(keys.iter().filter_map(|k| match *k {
                RuleKey::Gender(g, v) => Some(Some((g, v))),
                _ => None,
            }));
            let genders: Vec<_> = genders.collect();
            let numbers: Vec<_> = std::iter::once(None)
                .chain(keys.iter().filter_map(|k| match *k {
                    RuleKey::Number(n, v) => Some(Some((n, v))),
                    _ => None,
                }))
                .collect();
            let cases: Vec<_> = std::iter::once(None)
                .chain(keys.iter().filter_map(|k| match *k {
                    RuleKey::Case(c, v) => Some(Some((c, v))),
                    _ => None,
                }))
                .collect();
            for g in &genders {
                for n in &numbers {
                    for c in &cases {
                        let mut b = FeatureBundle::new(root.pos);
                        if let Some((g, v)) = *g {
                            b = b.with_gender(g, v);
                        }
                        if let Some((n, v)) = *n {
                            b = b.with_number(n, v);
                        }
                        if let Some((c, v)) = *c {
                            b = b.with_case(c, v);
                        }
                        bundles.push(b);
                    }
                }
            }
        }
        bundles
            .into_iter()
            .filter_map(|b| self.realize(root, &b).ok())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_person_singular() {
        let p = Engine::shipped()
            .pronoun_paradigm(1, PronounNumber::Singular, None)
            .unwrap();
        assert_eq!(p.lexemes.len(), 1);
        let forms: Vec<&str> = p.lexemes[0].forms.iter().map(|(_, s)| s.as_str()).collect();
        assert!(forms.contains(&"মি"));
        assert!(forms.contains(&"মোর"));
        assert!(forms.contains(&"মোরেল"));
    }

    #[test]
    fn third_plural_has_two_lexemes() {
        let p = Engine::shipped()
            .pronoun_paradigm(3, PronounNumber::Plural, None)
            .unwrap();
        assert_eq!(p.lexemes.len(), 2);
    }

    #[test]
    fn invalid_combinations() {
        let e = Engine::shipped();
        for (person, number, gender) in [
            (1, PronounNumber::Singular, Some(Gender::Fem)),
            (3, PronounNumber::Singular, None),
            (4, PronounNumber::Plural, None),
        ] {
            assert!(matches!(
                e.pronoun_paradigm(person, number, gender),
                Err(MorphError::InvalidCombination(_))
            ));
        }
    }
}
