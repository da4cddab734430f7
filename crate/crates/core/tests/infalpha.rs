mod common;

use common::dfa_strategy;
use proptest::prelude::*;
use realizability_core::decide::{brute_force_prefix_check, Answer, Fuel};
use realizability_core::infalpha::{
    decide_prefix_infinite, decide_prefix_universal, passage_language, passage_language_by_concatenation,
    reduce_morphism_automaton, AugmentedState, EffectiveAutomaton, IndexSetAutomaton,
};
use realizability_core::words::{
    apply_morphism, universal_indexed_word, BalancedBlockMorphism, EffectiveMorphism, IndexedWord, PeriodicMorphism,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn passage_languages_agree(a in dfa_strategy(4, 2), from in 0usize..4, to in 0usize..4, passes in any::<bool>()) {
        let (from, to) = (from % a.state_count(), to % a.state_count());
        let flag = passage_language(&a, from, to, passes).unwrap();
        let literal = passage_language_by_concatenation(&a, from, to, passes).unwrap();
        prop_assert!(flag.equivalent(&literal).unwrap());
    }

    /// The bit of a reduced state says whether the image just read passed an
    /// accepting state, and realized transitions are reported as existing.
    #[test]
    fn reduced_steps_are_sound(a in dfa_strategy(4, 2), letters in proptest::collection::vec(1usize..40, 1..12)) {
        let m = PeriodicMorphism::runs_of_zeros_and_ones();
        let r = reduce_morphism_automaton(&a, &m).unwrap();
        let mut state = r.augmented_initial();
        for l in letters {
            let image = m.image(l).unwrap();
            let visited = a.visited_states(state.base, &image).unwrap();
            let next = r.step(l, state).unwrap();
            prop_assert_eq!(next.base, *visited.last().unwrap());
            prop_assert_eq!(next.bit, visited.iter().any(|&q| a.is_accepting(q)));
            prop_assert!(r.exists_transition(state.index(), next.index()).unwrap());
            state = next;
        }
    }

    #[test]
    fn reduced_decision_matches_symbol_level(a in dfa_strategy(4, 2)) {
        let m = BalancedBlockMorphism::default();
        let r = reduce_morphism_automaton(&a, &m).unwrap();
        let out = decide_prefix_universal(&r, Fuel::new(5_000).unwrap()).unwrap();
        prop_assert_eq!(out, decide_prefix_infinite(&r, &universal_indexed_word(), Fuel::new(5_000).unwrap()).unwrap());
        let w = apply_morphism(&m, universal_indexed_word());
        if let Some(v) = out.verdict() {
            match v.answer {
                Answer::Yes if v.evidence == 0 => prop_assert!(a.is_accepting(a.initial())),
                Answer::Yes => {
                    let hi = w.image_len(v.evidence).unwrap();
                    let lo = w.image_len(v.evidence - 1).unwrap();
                    let first = brute_force_prefix_check(&a, &w, hi).unwrap().unwrap();
                    prop_assert!(first > lo || (first == lo && lo == hi));
                }
                Answer::No => prop_assert_eq!(brute_force_prefix_check(&a, &w, 20_000).unwrap(), None),
            }
        }
    }
}

#[test]
fn augmented_indices_round_trip() {
    for q in 0..20 {
        assert_eq!(AugmentedState::from_index(q).index(), q);
    }
}

#[test]
fn parity_automaton_first_letters() {
    let even = IndexSetAutomaton::parity_example([1]);
    let u = universal_indexed_word();
    let out = decide_prefix_infinite(&even, &u, Fuel::new(100).unwrap()).unwrap();
    let v = out.verdict().unwrap();
    assert_eq!(v.answer, Answer::Yes);
    // odd letters lead to the accepting state; α₁ comes first
    assert_eq!((v.evidence, u.letter_at(1).unwrap()), (1, 1));
    let stay = IndexSetAutomaton::parity_example([0]);
    let at_start = decide_prefix_infinite(&stay, &u, Fuel::new(100).unwrap()).unwrap();
    assert_eq!(at_start.verdict().unwrap().evidence, 0);
    assert_eq!(out, decide_prefix_universal(&even, Fuel::new(100).unwrap()).unwrap());
}
