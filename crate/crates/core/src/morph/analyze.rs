//! Analysis by layered suffix stripping.
//!
//! Layers are peeled outermost first: compound prefixes, case, number,
//! gender (nouns) or one tense ending (verbs). Each strip also tries the
//! inverse of the rule's sandhi and vowel-sign realization. Every candidate
//! is regenerated and kept only if it reproduces the input exactly.

use super::{as_vowel_sign, Analysis, Engine, FeatureBundle, FinalClass, Placement, Pos, Root, RuleKey, RuleSet, SuffixRule};
use crate::script::{classify, normalize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// When false, unknown stems are accepted as hypothesized roots.
    pub use_lexicon: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { use_lexicon: true }
    }
}

type Candidate = (Root, FeatureBundle);

/// One way a suffix can surface: `tail` follows a stem whose last
/// `edge` was rewritten to `replaced`.
#[derive(Debug, Clone)]
pub(super) struct Tail {
    tail: String,
    replaced: String,
    edge: String,
}

pub(super) fn inverse_tails(rules: &RuleSet) -> Vec<Vec<Tail>> {
    rules
        .suffix_rules()
        .iter()
        .map(|rule| {
            let mut tails: Vec<Tail> = surface_tails(&rule.suffix)
                .into_iter()
                .map(|tail| Tail {
                    tail,
                    replaced: String::new(),
                    edge: String::new(),
                })
                .collect();
            for s in rules.sandhi_for(rule) {
                if let Some(rest) = rule.suffix.strip_prefix(s.suffix_edge.as_str()) {
                    for tail in surface_tails(&format!("{}{rest}", s.suffix_replace)) {
                        tails.push(Tail {
                            tail,
                            replaced: s.root_replace.clone(),
                            edge: s.root_edge.clone(),
                        });
                    }
                }
            }
            tails
        })
        .collect()
}

fn plausible_stem(stem: &str) -> bool {
    stem.chars().next().is_some_and(|c| !classify(c).is_combining())
}

/// Spellings a suffix can take on the surface.
fn surface_tails(suffix: &str) -> Vec<String> {
    let signed = as_vowel_sign(suffix);
    if signed == suffix {
        vec![signed]
    } else {
        vec![suffix.to_owned(), signed]
    }
}

impl Engine {
    pub fn analyze(&self, word: &str) -> Vec<Analysis> {
        self.analyze_with(word, AnalyzeOptions::default())
    }

    /// Analyzes a single word. Multi-word forms go through
    /// [`analyze_pair`](Self::analyze_pair).
    pub fn analyze_with(&self, word: &str, opts: AnalyzeOptions) -> Vec<Analysis> {
        let word = normalize(word.trim());
        if word.is_empty() || word.contains(char::is_whitespace) {
            return Vec::new();
        }
        let mut cands = Vec::new();
        self.nominal_candidates(&word, opts, &mut cands);
        self.verb_candidates(&word, opts, &mut cands);
        self.verify(&word, cands)
    }

    /// Analyzes a two-word form: periphrastic tense, particle + root, or a
    /// noun followed by a free-standing plural word.
    pub fn analyze_pair(&self, first: &str, second: &str, opts: AnalyzeOptions) -> Vec<Analysis> {
        let (first, second) = (normalize(first.trim()), normalize(second.trim()));
        let mut cands = Vec::new();
        for rule in self.rules.suffix_rules() {
            match (rule.key, rule.placement) {
                (RuleKey::Tense(t, v), Placement::FreeBefore) if rule.suffix == first => {
                    for root in self.roots_for(&second, Pos::Verb, opts) {
                        cands.push((root, FeatureBundle::verb(t).with_verb_variant(v)));
                    }
                }
                (RuleKey::Auxiliary(t), _) if rule.suffix == second => {
                    for nf in self.rules.suffix_rules() {
                        let RuleKey::Tense(nt, v) = nf.key else { continue };
                        if nt != t || nf.placement != Placement::After {
                            continue;
                        }
                        for stem in self.unjoin(&first, nf) {
                            for root in self.roots_for(&stem, Pos::Verb, opts) {
                                cands.push((root, FeatureBundle::verb(t).with_verb_variant(v)));
                            }
                        }
                    }
                }
                (RuleKey::Number(n, v), Placement::FreeAfter) if rule.suffix == second => {
                    let mut inner = Vec::new();
                    self.nominal_candidates(&first, opts, &mut inner);
                    for (root, b) in inner {
                        if root.pos == Pos::Noun && b.number.is_none() && b.case.is_none() {
                            cands.push((root, b.with_number(n, v)));
                        }
                    }
                }
                _ => {}
            }
        }
        self.verify(&format!("{first} {second}"), cands)
    }

    /// Dispatches on word count: one word or a two-word window.
    pub fn analyze_phrase(&self, phrase: &str, opts: AnalyzeOptions) -> Vec<Analysis> {
        let words: Vec<&str> = phrase.split_whitespace().collect();
        match words.as_slice() {
            [w] => self.analyze_with(w, opts),
            [a, b] => self.analyze_pair(a, b, opts),
            _ => Vec::new(),
        }
    }

    /// Stems that `rule` could have produced `word` from.
    fn unjoin(&self, word: &str, rule: &SuffixRule) -> Vec<String> {
        if rule.suffix.is_empty() {
            return vec![word.to_owned()];
        }
        let index = self
            .rules
            .suffix_rules()
            .iter()
            .position(|r| std::ptr::eq(r, rule))
            .expect("rule belongs to this engine");
        let mut out: Vec<String> = Vec::new();
        for t in &self.inverse[index] {
            if let Some(rest) = word.strip_suffix(t.tail.as_str()).and_then(|r| r.strip_suffix(t.replaced.as_str())) {
                let stem = format!("{rest}{}", t.edge);
                if plausible_stem(&stem) && !out.contains(&stem) {
                    out.push(stem);
                }
            }
        }
        out
    }

    fn roots_for(&self, stem: &str, pos: Pos, opts: AnalyzeOptions) -> Vec<Root> {
        let mut roots: Vec<Root> = self
            .lexicon
            .with_lemma(stem)
            .filter(|r| r.pos == pos)
            .cloned()
            .collect();
        if !opts.use_lexicon && pos != Pos::Pronoun && plausible_stem(stem) {
            let spelled = FinalClass::of_spelling(stem);
            let mut classes = vec![spelled];
            if spelled == FinalClass::Consonant {
                classes.push(FinalClass::VowelA);
            }
            for class in classes {
                if !roots.iter().any(|r| r.final_class == class) {
                    roots.push(Root::new(stem, pos, class));
                }
            }
        }
        roots
    }

    fn nominal_candidates(&self, word: &str, opts: AnalyzeOptions, out: &mut Vec<Candidate>) {
        let rules = self.rules.suffix_rules();
        let prefixes = |text: &str, b: FeatureBundle, layer: &mut Vec<(String, FeatureBundle)>, gender: bool| {
            for r in rules.iter().filter(|r| r.placement == Placement::Before) {
                let bundle = match r.key {
                    RuleKey::Number(n, v) if !gender => b.with_number(n, v),
                    RuleKey::Gender(g, v) if gender => b.with_gender(g, v),
                    _ => continue,
                };
                if let Some(rest) = text.strip_prefix(r.suffix.as_str()) {
                    if plausible_stem(rest) {
                        layer.push((rest.to_owned(), bundle));
                    }
                }
            }
        };

        let mut cores = vec![(word.to_owned(), FeatureBundle::noun())];
        prefixes(word, FeatureBundle::noun(), &mut cores, false);
        for (text, b) in cores.clone() {
            prefixes(&text, b, &mut cores, true);
        }

        for (core, b) in cores {
            let prefixed = b.gender.is_some() || b.number.is_some();
            let mut cased = vec![(core.clone(), b)];
            for r in rules {
                let RuleKey::Case(c, v) = r.key else { continue };
                let stems = if r.placement == Placement::AfterAccusativeForm {
                    let Some(acc) = r.acc_variant.and_then(|a| self.rules.get(RuleKey::Case(super::Case::Acc, a))) else {
                        continue;
                    };
                    self.unjoin(&core, r)
                        .iter()
                        .flat_map(|s| self.unjoin(s, acc))
                        .collect()
                } else {
                    self.unjoin(&core, r)
                };
                cased.extend(stems.into_iter().map(|s| (s, b.with_case(c, v))));
            }

            for (stem, cb) in cased {
                if !prefixed {
                    let pronouns = self.lexicon.with_lemma(&stem).chain(self.lexicon.with_oblique(&stem));
                    for root in pronouns.filter(|r| r.pos == Pos::Pronoun) {
                        out.push((root.clone(), FeatureBundle { pos: Pos::Pronoun, ..cb }));
                    }
                }
                let mut numbered = vec![(stem.clone(), cb)];
                if cb.number.is_none() {
                    for r in rules.iter().filter(|r| r.placement == Placement::After) {
                        let RuleKey::Number(n, v) = r.key else { continue };
                        numbered.extend(self.unjoin(&stem, r).into_iter().map(|s| (s, cb.with_number(n, v))));
                    }
                }
                for (s2, nb) in numbered {
                    let mut gendered = vec![(s2.clone(), nb)];
                    if nb.gender.is_none() {
                        for r in rules.iter().filter(|r| r.placement == Placement::After) {
                            let RuleKey::Gender(g, v) = r.key else { continue };
                            gendered.extend(self.unjoin(&s2, r).into_iter().map(|s| (s, nb.with_gender(g, v))));
                        }
                    }
                    for (s3, gb) in gendered {
                        for root in self.roots_for(&s3, Pos::Noun, opts) {
                            out.push((root, gb));
                        }
                    }
                }
            }
        }
    }

    fn verb_candidates(&self, word: &str, opts: AnalyzeOptions, out: &mut Vec<Candidate>) {
        for r in self.rules.suffix_rules() {
            let RuleKey::Tense(t, v) = r.key else { continue };
            if !t.is_synthetic() || r.placement != Placement::After {
                continue;
            }
            for stem in self.unjoin(word, r) {
                for root in self.roots_for(&stem, Pos::Verb, opts) {
                    out.push((root, FeatureBundle::verb(t).with_slot(v)));
                }
            }
        }
    }

    /// Keeps candidates that regenerate `surface`, deduplicated and ranked:
    /// longer root, then fewer suffixes, then rule ids.
    fn verify(&self, surface: &str, cands: Vec<Candidate>) -> Vec<Analysis> {
        let mut out: Vec<Analysis> = Vec::new();
        for (root, features) in cands {
            let Ok(g) = self.realize(&root, &features) else { continue };
            if g.surface != surface || out.iter().any(|a| a.root == root && a.features == g.features) {
                continue;
            }
            out.push(Analysis {
                root,
                features: g.features,
                suffix_trace: g.suffix_trace,
                sandhi_trace: g.sandhi_trace,
                surface: g.surface,
            });
        }
        out.sort_by(|a, b| {
            let len = |x: &Analysis| x.root.lemma.chars().count();
            len(b)
                .cmp(&len(a))
                .then(a.suffix_trace.len().cmp(&b.suffix_trace.len()))
                .then_with(|| a.suffix_trace.cmp(&b.suffix_trace))
                .then_with(|| a.features.to_string().cmp(&b.features.to_string()))
                .then_with(|| a.root.cmp(&b.root))
        });
        out
    }
}
