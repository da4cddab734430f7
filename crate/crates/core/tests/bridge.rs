mod common;

use common::{bits, dfa_strategy};
use proptest::prelude::*;
use realizability_core::bridge::theorem1::{allowed_blocks, allowed_blocks_by_difference, parse_blocks};
use realizability_core::bridge::{
    decide_prefix_theorem1, decode, encode, filter_to_word, prefix_via_morphism, prefix_via_rr, rr_to_prefix,
    rr_via_prefix, theorem1_word, FilterMorphism, MachineList, RegularFilter, TuringMachine,
};
use realizability_core::decide::{brute_force_prefix_check, decide_prefix, Answer, Fuel};
use realizability_core::words::InfiniteWord;
use realizability_core::{Alphabet, Dfa};
use std::collections::BTreeSet;

fn filters() -> Vec<Dfa> {
    let bin = Alphabet::binary();
    vec![
        // 0⁺
        Dfa::from_fn(bin.clone(), 3, |q, s| if s.0 == 0 && q < 2 { 1 } else { 2 }, 0, [1]).unwrap(),
        // words with an even number of 1s
        Dfa::from_fn(bin.clone(), 2, |q, s| q ^ usize::from(s.0), 0, [0]).unwrap(),
        // Σ*11Σ*
        Dfa::from_fn(
            bin,
            3,
            |q, s| {
                if q == 2 {
                    2
                } else if s.0 == 1 {
                    q + 1
                } else {
                    0
                }
            },
            0,
            [2],
        )
        .unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filter_round_trip(which in 0usize..3, r in dfa_strategy(3, 2)) {
        let l = filters()[which].clone();
        let expected = if l.intersect(&r).unwrap().is_empty() { Answer::No } else { Answer::Yes };
        let filter = RegularFilter::new(l.clone()).unwrap();
        let via_quotient = rr_via_prefix(&r, |a| prefix_via_rr(a, &filter)).unwrap();
        let direct = FilterMorphism::new(&filter).unwrap().with_regular_image(&l).unwrap();
        let via_image = rr_via_prefix(&r, |a| prefix_via_morphism(a, direct)).unwrap();
        prop_assert_eq!(via_quotient, Some(expected));
        prop_assert_eq!(via_image, Some(expected));
    }
}

#[test]
fn yes_answers_have_symbol_witnesses() {
    let filter = RegularFilter::new(filters()[0].clone()).unwrap();
    let w = filter_to_word(&filter).unwrap();
    let r = Dfa::single_word(Alphabet::binary(), &bits("0000")).unwrap();
    let rt = rr_to_prefix(&r).unwrap();
    let v = *prefix_via_rr(&rt, &filter).unwrap().verdict().unwrap();
    assert_eq!(v.answer, Answer::Yes);
    let n = w.image_len(v.evidence).unwrap();
    let direct = decide_prefix(&rt, &w, Fuel::at_least(n)).unwrap();
    assert_eq!(direct.verdict().unwrap().evidence, n);
    assert_eq!(
        w.prefix(n).unwrap()[n - 5..],
        w.alphabet().parse_word("0000#").unwrap()[..]
    );
}

#[test]
fn bijection_covers_small_automata() {
    for i in 1..=10_000u128 {
        assert_eq!(encode(&decode(i).unwrap()).unwrap(), i);
    }
    let d1 = decode(1).unwrap();
    assert_eq!(d1.state_count(), 1);
    assert!(d1.accepting_states().is_empty());
    assert_eq!(decode(66).unwrap().state_count(), 2);
    assert_eq!(decode(67).unwrap().state_count(), 3);
}

#[test]
fn allowed_blocks_match_difference_construction() {
    for n in [3usize, 6] {
        let forbidden: BTreeSet<usize> = [0, 1, n].into_iter().collect();
        assert!(allowed_blocks(n, &forbidden)
            .unwrap()
            .equivalent(&allowed_blocks_by_difference(&forbidden).unwrap())
            .unwrap());
    }
}

fn fixture() -> MachineList {
    MachineList::new(vec![
        TuringMachine::halting_after(3),
        TuringMachine::looping(),
        TuringMachine::halting_after(7),
    ])
}

#[test]
fn theorem1_word_is_deterministic_and_block_structured() {
    let a = theorem1_word(fixture()).prefix(10_000).unwrap();
    let b = theorem1_word(fixture()).prefix(10_000).unwrap();
    assert_eq!(a, b);
    let w = theorem1_word(fixture());
    let mut n = 1;
    while w.stage(n + 1).unwrap().end <= 10_000 {
        n += 1;
    }
    let end = w.stage(n).unwrap().end;
    assert!(parse_blocks(&a[..end]).is_some());
    for n in 1..40 {
        let s = w.stage(n).unwrap();
        for (k, t) in [(1usize, 3usize), (3, 7)] {
            let halted = n >= k.max(t);
            assert_eq!(s.forbidden.contains(&k), halted);
            if halted {
                assert!(!s.w.contains(&k) && !s.u.contains(&k));
            }
        }
        assert!(s.w.contains(&2) || n < 2);
    }
}

#[test]
fn theorem1_decider_agrees_with_generic_runs() {
    let w = theorem1_word(fixture());
    for i in 1..=150u128 {
        let a = decode(i).unwrap();
        let v = decide_prefix_theorem1(&w, &a).unwrap();
        let end = w.stage(i as usize).unwrap().end.max(1);
        let brute = brute_force_prefix_check(&a, &w, 10 * end).unwrap();
        assert_eq!(brute, (v.answer == Answer::Yes).then_some(v.evidence), "automaton {i}");
        if let Some(g) = decide_prefix(&a, &w, Fuel::at_least(10 * end)).unwrap().verdict() {
            assert_eq!(g.answer, v.answer, "automaton {i}");
        }
    }
}
