//! File formats and the `realize` command line for `realizability-core`.

pub mod cli;
pub mod effective;
pub mod error;
pub mod format;
pub mod generator;
pub mod machines;
pub mod regex;

pub use cli::{execute, parse_invocation, run, Command, Invocation};
pub use error::{CliError, FormatError};
pub use format::{parse_automaton, parse_dfa, render_dfa, AutomatonText};
