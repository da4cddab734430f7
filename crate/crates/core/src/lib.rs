//! Definitive words, prefix and Büchi realizability deciders, and automata
//! over countable alphabets.
//!
//! The crate is `no_std` and only needs `alloc`. Input/output, text formats
//! and the command-line front end live in the companion `realize` crate.
#![no_std]

extern crate alloc;

pub mod alphabet;
pub mod bridge;
pub mod decide;
pub mod definitive;
pub mod dfa;
pub mod error;
pub mod infalpha;
pub mod nfa;
pub mod omega;
pub mod words;

pub use alphabet::{Alphabet, Symbol, Word};
pub use dfa::{Dfa, Emptiness, StateId, StateSet};
pub use error::{Error, Result};
pub use nfa::Nfa;
