use alloc::string::String;
use core::fmt;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An alphabet was declared without symbols.
    EmptyAlphabet,
    /// An alphabet declared the same symbol twice.
    DuplicateSymbol(String),
    /// A symbol name that is not part of the alphabet.
    UnknownSymbol(String),
    /// A symbol index outside the alphabet.
    SymbolOutOfRange { symbol: usize, size: usize },
    /// A state index outside the automaton.
    StateOutOfRange { state: usize, count: usize },
    /// Two automata (or an automaton and a word) disagree on the alphabet.
    AlphabetMismatch,
    /// A transition table with the wrong shape.
    MalformedTransitions(String),
    /// A repeating part of an ultimately periodic word must be non-empty.
    EmptyPeriod,
    /// An infinite word could not produce the requested position within its budget.
    Stalled { index: usize },
    /// An effective automaton answered inconsistently.
    InconsistentEffective(String),
    /// An external oracle failed.
    Oracle(String),
    /// A construction received an argument outside its domain.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyAlphabet => write!(f, "alphabet must contain at least one symbol"),
            Error::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}` in alphabet"),
            Error::UnknownSymbol(s) => write!(f, "symbol `{s}` is not in the alphabet"),
            Error::SymbolOutOfRange { symbol, size } => {
                write!(f, "symbol index {symbol} outside alphabet of size {size}")
            }
            Error::StateOutOfRange { state, count } => {
                write!(f, "state index {state} outside automaton with {count} states")
            }
            Error::AlphabetMismatch => write!(f, "alphabets do not match"),
            Error::MalformedTransitions(msg) => write!(f, "malformed transitions: {msg}"),
            Error::EmptyPeriod => write!(f, "the periodic part of an ultimately periodic word must be non-empty"),
            Error::Stalled { index } => {
                write!(f, "word stalled before producing position {index}")
            }
            Error::InconsistentEffective(msg) => write!(f, "inconsistent effective automaton: {msg}"),
            Error::Oracle(msg) => write!(f, "oracle failure: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
