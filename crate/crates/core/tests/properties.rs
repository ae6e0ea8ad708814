use proptest::prelude::*;

use bpy_core::freq::FrequencyTable;
use bpy_core::legacy::{MappingTable, Mode};
use bpy_core::script::{clusters, normalize};
use bpy_core::segment::{split_sentences, tokenize, TokenKind};

/// Text drawn mostly from the Bengali block plus separators and joiners.
fn bengali_text() -> impl Strategy<Value = String> {
    let ch = prop_oneof![
        8 => (0x0980u32..0x09FF).prop_filter_map("assigned", char::from_u32),
        2 => prop::sample::select(vec![' ', '\n', '।', '॥', '?', '!', ',', '-', '\u{200C}', '\u{200D}', 'a', '7']),
    ];
    prop::collection::vec(ch, 0..60).prop_map(|v| v.into_iter().collect())
}

fn words() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::sample::select(vec!["মানু", "বারো", "ঘরে", "ক্\u{200C}ষ", "ক্ষ", "তেই"]), 0..40)
        .prop_map(|v| v.into_iter().map(String::from).collect())
}

proptest! {
    #[test]
    fn normalize_is_idempotent(s in bengali_text()) {
        let once = normalize(&s);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn clusters_partition_their_input(s in bengali_text()) {
        if let Ok(cs) = clusters(&s) {
            let joined: String = cs.iter().map(|c| c.text).collect();
            prop_assert_eq!(joined, s.clone());
            let mut at = 0;
            for c in &cs {
                prop_assert_eq!(c.start, at);
                at = c.end();
            }
        }
    }

    #[test]
    fn tokens_are_ordered_slices(s in bengali_text()) {
        let toks = tokenize(&s);
        let mut last = 0;
        for t in &toks {
            prop_assert!(t.start >= last && t.end > t.start);
            prop_assert_eq!(&s[t.start..t.end], t.text);
            prop_assert!(!t.text.chars().any(char::is_whitespace));
            last = t.end;
        }
        // every non-whitespace character lands in some token
        let covered: usize = toks.iter().map(|t| t.text.chars().count()).sum();
        prop_assert_eq!(covered, s.chars().filter(|c| !c.is_whitespace()).count());
    }

    #[test]
    fn sentences_cover_all_tokens(s in bengali_text()) {
        let flat: Vec<_> = split_sentences(&s).into_iter().flat_map(|x| x.tokens).collect();
        prop_assert_eq!(flat, tokenize(&s));
    }

    #[test]
    fn counting_is_additive(a in words(), b in words()) {
        let whole = FrequencyTable::count_text(&[a.join(" "), b.join(" ")].join(" "));
        let parts = FrequencyTable::count_text(&a.join(" ")).merge(&FrequencyTable::count_text(&b.join(" ")));
        prop_assert_eq!(&whole, &parts);
        prop_assert_eq!(whole.total_tokens() as usize, a.len() + b.len());
        let words_only = tokenize(&a.join(" ")).iter().filter(|t| t.kind == TokenKind::Word).count();
        prop_assert_eq!(words_only, a.len());
    }

    #[test]
    fn merge_laws(a in words(), b in words(), c in words()) {
        let (a, b, c) = (
            FrequencyTable::count_text(&a.join(" ")),
            FrequencyTable::count_text(&b.join(" ")),
            FrequencyTable::count_text(&c.join(" ")),
        );
        prop_assert_eq!(a.merge(&b), b.merge(&a));
        prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
        prop_assert_eq!(a.merge(&FrequencyTable::new()), a.clone());
    }

    #[test]
    fn tsv_export_round_trips(a in words()) {
        let t = FrequencyTable::count_text(&a.join(" "));
        prop_assert_eq!(FrequencyTable::from_tsv(&t.to_tsv(None)).unwrap(), t);
    }

    /// Legacy input assembled from table patterns converts, re-encodes and
    /// converts back to the same text.
    #[test]
    fn converter_round_trip(picks in prop::collection::vec(any::<prop::sample::Index>(), 0..40)) {
        use bpy_core::legacy::RuleKind;
        let table = MappingTable::sample();
        let rules: Vec<_> = table.rules().iter().filter(|r| !r.is_deletion()).collect();
        let mut bytes = Vec::new();
        for pick in picks {
            let rule = pick.get(&rules);
            bytes.extend_from_slice(&rule.pattern);
            if rule.kind == RuleKind::PreBaseVowel {
                bytes.push(b'k');
            }
        }
        let conv = table.convert(&bytes, Mode::Strict).unwrap();
        if let Some(encoded) = table.encode(&conv.text) {
            let again = table.convert(&encoded, Mode::Strict).unwrap();
            prop_assert_eq!(again.text, conv.text);
        }
    }

    #[test]
    fn converter_ignores_rule_order(bytes in prop::collection::vec(any::<u8>(), 0..80), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let table = MappingTable::sample();
        let mut rules = table.rules().to_vec();
        rules.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = MappingTable::new("shuffled", "1", rules).unwrap();
        let a = table.convert(&bytes, Mode::Lenient).unwrap();
        let b = shuffled.convert(&bytes, Mode::Lenient).unwrap();
        prop_assert_eq!(a, b);
    }
}
