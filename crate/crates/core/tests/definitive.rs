mod common;

use common::{dfa_strategy, word_strategy};
use proptest::prelude::*;
use realizability_core::alphabet::words_up_to;
use realizability_core::definitive::{
    definitive_language, definitive_language_by_product, find_definitive_word, is_definitive,
};

proptest! {
    #[test]
    fn constructed_word_is_definitive(a in dfa_strategy(6, 3)) {
        let w = find_definitive_word(&a);
        prop_assert!(is_definitive(&a, &w).unwrap().is_certified());
        prop_assert!(definitive_language(&a).accepts(&w).unwrap());
    }

    #[test]
    fn definitive_language_matches_check(a in dfa_strategy(4, 2), w in word_strategy(7, 2)) {
        let lang = definitive_language(&a);
        prop_assert_eq!(lang.accepts(&w).unwrap(), is_definitive(&a, &w).unwrap().is_certified());
    }

    #[test]
    fn definitive_constructions_agree(a in dfa_strategy(4, 2)) {
        prop_assert!(definitive_language(&a).equivalent(&definitive_language_by_product(&a).unwrap()).unwrap());
    }

    #[test]
    fn definitive_words_are_closed_under_extension(a in dfa_strategy(4, 2), w in word_strategy(4, 2)) {
        let d = find_definitive_word(&a);
        for pre in words_up_to(a.alphabet(), 2) {
            let mut x = pre.clone();
            x.extend_from(&d);
            x.extend_from(&w);
            prop_assert!(is_definitive(&a, &x).unwrap().is_certified());
        }
    }
}
