//! A computable bijection between positive integers and complete binary
//! DFAs whose initial state is the first state.
//!
//! DFAs with `s` states come in a block of `s^(2s) · 2^s` indices, blocks in
//! increasing `s`. Inside a block the index is
//! `transitions · 2^s + accepting`, where `transitions` reads `δ(q, a)` in
//! state-then-symbol order as a base-`s` numeral and `accepting` is a bit
//! mask whose most significant bit is the first state.

use alloc::format;
use alloc::vec::Vec;

use crate::alphabet::Alphabet;
use crate::dfa::{generated_names_from, Dfa};
use crate::error::{Error, Result};

/// Number of binary DFAs with `s` states, if it fits.
pub fn machines_with_states(s: usize) -> Option<u128> {
    if s == 0 {
        return Some(0);
    }
    let s32 = u32::try_from(s).ok()?;
    (s as u128)
        .checked_pow(s32.checked_mul(2)?)?
        .checked_mul(1u128.checked_shl(s32)?)
}

/// First index of the block of `s`-state DFAs.
fn block_start(s: usize) -> Result<u128> {
    (1..s)
        .try_fold(1u128, |acc, t| machines_with_states(t).and_then(|c| acc.checked_add(c)))
        .ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::InvalidArgument("DFA index exceeds the supported range".into())
}

/// The DFA with index `i ≥ 1`.
pub fn decode(i: u128) -> Result<Dfa> {
    if i == 0 {
        return Err(Error::InvalidArgument("DFA indices start at 1".into()));
    }
    let mut s = 1usize;
    let mut start = 1u128;
    loop {
        let c = machines_with_states(s).ok_or_else(overflow)?;
        if i - start < c {
            break;
        }
        start += c;
        s += 1;
    }
    let r = i - start;
    let mask = r & ((1u128 << s) - 1);
    let mut code = r >> s;
    let mut digits = alloc::vec![0usize; 2 * s];
    for d in digits.iter_mut().rev() {
        *d = (code % s as u128) as usize;
        code /= s as u128;
    }
    let table: Vec<Vec<usize>> = digits.chunks(2).map(|c| c.to_vec()).collect();
    let accepting = (0..s).filter(|&q| mask >> (s - 1 - q) & 1 == 1);
    Dfa::new(Alphabet::binary(), generated_names_from(1, s), table, 0, accepting)
}

/// The index of a binary DFA. The automaton is first renumbered by
/// breadth-first search when its initial state is not the first one.
pub fn encode(a: &Dfa) -> Result<u128> {
    if a.alphabet().len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected a binary alphabet, got {} symbols",
            a.alphabet().len()
        )));
    }
    let trimmed;
    let a = if a.initial() == 0 {
        a
    } else {
        trimmed = a.trim();
        &trimmed
    };
    let s = a.state_count();
    let mut code = 0u128;
    for q in a.states() {
        for sym in a.alphabet().symbols() {
            code = code
                .checked_mul(s as u128)
                .and_then(|c| c.checked_add(a.step(q, sym) as u128))
                .ok_or_else(overflow)?;
        }
    }
    let mask = a.states().fold(0u128, |m, q| (m << 1) | u128::from(a.is_accepting(q)));
    let shifted = code.checked_mul(
        1u128
            .checked_shl(u32::try_from(s).map_err(|_| overflow())?)
            .ok_or_else(overflow)?,
    );
    block_start(s)?
        .checked_add(shifted.ok_or_else(overflow)? + mask)
        .ok_or_else(overflow)
}
