#![allow(dead_code)]

use proptest::prelude::*;
use realizability_core::{Alphabet, Dfa, Symbol, Word};

pub fn dfa_strategy(max_states: usize, symbols: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..n, n * symbols),
            proptest::collection::vec(any::<bool>(), n),
            0..n,
        )
            .prop_map(move |(flat, acc, init)| {
                let alphabet = Alphabet::new((0..symbols).map(|i| i.to_string())).unwrap();
                let table = flat.chunks(symbols).map(|c| c.to_vec()).collect();
                let names = (0..n).map(|i| format!("s{i}")).collect();
                let accepting: Vec<usize> = (0..n).filter(|&q| acc[q]).collect();
                Dfa::new(alphabet, names, table, init, accepting).unwrap()
            })
    })
}

pub fn word_strategy(max_len: usize, symbols: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..symbols as u16, 0..=max_len).prop_map(|v| v.into_iter().map(Symbol).collect())
}

pub fn bits(s: &str) -> Word {
    Alphabet::binary().parse_word(s).unwrap()
}
