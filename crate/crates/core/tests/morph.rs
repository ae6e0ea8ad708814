use std::time::Instant;

use bpy_core::morph::{AnalyzeOptions, Case, Engine, FeatureBundle, Gender, Number, Pos, PronounNumber, TenseMood};

fn noun_case(c: Case, v: u8) -> FeatureBundle {
    FeatureBundle::noun().with_case(c, v)
}

#[test]
fn golden_paradigm_forms() {
    use TenseMood::*;
    let e = Engine::shipped();
    let cases: Vec<(&str, FeatureBundle, &str)> = vec![
        ("খুড়া", FeatureBundle::noun().with_gender(Gender::Fem, 3), "খুড়ী"),
        ("চাকর", FeatureBundle::noun().with_gender(Gender::Fem, 4), "চাকরানী"),
        ("দাদা", FeatureBundle::noun().with_number(Number::PluralGachhi, 1), "দাদাগাছি"),
        ("গুরু", FeatureBundle::noun().with_number(Number::PluralMahei, 1), "গুরুমাহেই"),
        ("মি", FeatureBundle::pronoun().with_case(Case::Gen, 1), "মোর"),
        ("মি", FeatureBundle::pronoun().with_case(Case::Instr, 2), "মোরেল"),
        ("ঘর", noun_case(Case::Loc, 2), "ঘরে"),
        ("দাদা", noun_case(Case::Voc, 2), "দাদারৌ"),
        ("কর", FeatureBundle::verb(SimplePresent).with_slot(1), "করর"),
        ("কর", FeatureBundle::verb(PrecativePresent).with_slot(1), "করতু"),
        ("পা", FeatureBundle::verb(SimplePast).with_slot(1), "পেইলু"),
        ("খা", FeatureBundle::verb(SimpleFuture).with_slot(1), "খেইতৌ"),
        ("থ", FeatureBundle::verb(ProbableFuture).with_slot(1), "থইম"),
        ("থ", FeatureBundle::verb(PresentPerfect).with_slot(1), "থছ"),
        ("কর", FeatureBundle::verb(PresentProgressive), "করিয়া আছ"),
        ("পি", FeatureBundle::verb(PastProgressive), "পিয়া আছিল"),
        ("পা", FeatureBundle::verb(PastPerfect).with_slot(2), "পাছিলে"),
        ("কর", FeatureBundle::verb(ProbablePast).with_verb_variant(2), "করে থাইম"),
        ("কর", FeatureBundle::verb(FutureProgressive), "করিয়া থাইতৌ"),
        ("কর", FeatureBundle::verb(Imperative).with_slot(1), "করিং"),
    ];
    for (lemma, f, want) in cases {
        let got = e.generate_lemma(lemma, &f).map(|g| g.surface);
        assert_eq!(got.as_deref().ok(), Some(want), "{lemma} {f}");
    }
}

#[test]
fn round_trip_over_shipped_lexicon() {
    let e = Engine::shipped();
    let opts = AnalyzeOptions::default();
    let start = Instant::now();
    let mut checked = 0;
    for root in e.lexicon().roots() {
        for g in e.enumerate(root) {
            let analyses = e.analyze_phrase(&g.surface, opts);
            assert!(
                analyses.iter().any(|a| &a.root == root && a.features == g.features),
                "{} {} -> {} not recovered",
                root.lemma,
                g.features,
                g.surface
            );
            for a in &analyses {
                assert_eq!(e.realize(&a.root, &a.features).unwrap().surface, g.surface);
            }
            checked += 1;
        }
    }
    eprintln!("{checked} forms in {:?}", start.elapsed());
    assert!(checked > 1000);
}

#[test]
fn analyzer_examples() {
    let e = Engine::shipped();
    let mor = e.analyze("মোর");
    assert_eq!(mor.len(), 1);
    assert_eq!(mor[0].root.lemma, "মি");
    assert_eq!(mor[0].root.pos, Pos::Pronoun);
    assert_eq!(mor[0].features.case, Some(Case::Gen));
    let peilu = e.analyze("পেইলু");
    assert_eq!(peilu.len(), 1);
    assert_eq!(peilu[0].features, FeatureBundle::verb(TenseMood::SimplePast).with_slot(1));
    assert!(e.analyze("ঙৃঢ়ঞ্ঝ").is_empty());
}

#[test]
fn pronoun_tables() {
    let e = Engine::shipped();
    let forms = |p, n, g| -> Vec<String> {
        e.pronoun_paradigm(p, n, g).unwrap().lexemes[0]
            .forms
            .iter()
            .map(|(_, s)| s.clone())
            .collect()
    };
    let first = forms(1, PronounNumber::Singular, None);
    for w in ["মি", "মোরে", "মোরেল", "মোরাং"] {
        assert!(first.iter().any(|f| f == w), "{w}");
    }
    let second = forms(2, PronounNumber::Singular, None);
    for w in ["তি", "তোরে", "তোরাং"] {
        assert!(second.iter().any(|f| f == w), "{w}");
    }
    let p = e.pronoun_paradigm(3, PronounNumber::Singular, Some(Gender::Fem)).unwrap();
    assert_eq!(p.lexemes[0].root.lemma, "তেই");
    assert_eq!(e.pronoun_paradigm(1, PronounNumber::Singular, None).unwrap().lexemes[0].root.oblique.as_deref(), Some("মো"));
}
