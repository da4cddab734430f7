mod common;

use common::bits;
use realizability_core::alphabet::words_up_to;
use realizability_core::words::{
    apply_morphism, champernowne, factor_search, ultimately_periodic, universal_indexed_word, IndexedWord,
    InfiniteWord, PeriodicMorphism, UniversalIndexedWord,
};
use realizability_core::{Alphabet, Word};

#[test]
fn champernowne_lists_words_in_shortlex_order() {
    let w = champernowne(Alphabet::binary());
    let mut expected = Word::empty();
    for x in words_up_to(&Alphabet::binary(), 9).skip(1) {
        expected.extend_from(&x);
    }
    assert_eq!(w.prefix(expected.len()).unwrap(), expected);
    for i in [1usize, 7, 100, 4097, 8000] {
        assert_eq!(w.symbol_at(i).unwrap(), expected[i - 1]);
    }
}

#[test]
fn champernowne_occurrence_bound_holds() {
    let w = champernowne(Alphabet::from_chars("abc").unwrap());
    for x in words_up_to(w.alphabet(), 4).skip(1) {
        let bound = w.occurrence_bound(&x).unwrap();
        let hit = factor_search(&w, &x, bound).unwrap();
        assert!(hit.is_some_and(|p| p <= bound), "{x:?}");
    }
}

#[test]
fn universal_word_rounds() {
    let u = universal_indexed_word();
    // round 2: "2", then every word of length 2
    assert_eq!(u.prefix(10).unwrap(), [1, 2, 1, 1, 1, 2, 2, 1, 2, 2]);
    let ends: Vec<usize> = (1..=5).map(UniversalIndexedWord::round_end).collect();
    assert_eq!(ends, [1, 10, 102, 1252, 18555]);
    for k in 1..=5 {
        let first = if k == 1 {
            1
        } else {
            UniversalIndexedWord::round_end(k - 1) + 1
        };
        assert_eq!(u.letter_at(first).unwrap(), k);
        assert!(u.prefix(first - 1).unwrap().iter().all(|&l| l < k));
    }
}

#[test]
fn streams_match_random_access() {
    let u = universal_indexed_word();
    let streamed: Vec<usize> = u.letters_from(90).take(2000).collect::<Result<_, _>>().unwrap();
    for (i, l) in streamed.iter().enumerate().step_by(37) {
        assert_eq!(u.letter_at(90 + i).unwrap(), *l);
    }
    let p = ultimately_periodic(Alphabet::binary(), bits("10"), bits("011")).unwrap();
    assert_eq!(p.prefix(8).unwrap(), bits("10011011"));
}

#[test]
fn morphic_image_is_concatenation_of_images() {
    let m = PeriodicMorphism::runs_of_zeros_and_ones();
    let w = apply_morphism(&m, universal_indexed_word());
    let mut expected = Word::empty();
    for l in universal_indexed_word().prefix(40).unwrap() {
        use realizability_core::words::EffectiveMorphism;
        expected.extend_from(&m.image(l).unwrap());
    }
    assert_eq!(w.prefix(expected.len()).unwrap(), expected);
    assert_eq!(w.image_len(40).unwrap(), expected.len());
}
