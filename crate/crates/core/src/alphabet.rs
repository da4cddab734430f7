//! Finite alphabets, symbols and finite words.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// A symbol, identified by its position in the declaring [`Alphabet`].
///
/// The position doubles as the symbol order used for shortlex comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered, non-empty, duplicate-free set of symbol names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidArgument("alphabet too large".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(alloc::format!("bad symbol name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateSymbol(n.clone()));
            }
        }
        Ok(Alphabet { names: names.into() })
    }

    /// The binary alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).expect("static alphabet")
    }

    /// An alphabet of single-character symbols, one per `char` of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(|c| c.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.names.len() as u16).map(Symbol)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Symbol(i as u16))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }

    pub fn check(&self, s: Symbol) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: s.index(),
                size: self.len(),
            })
        }
    }

    /// True when every symbol name is a single character.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated tokens are symbol names; a single
    /// token over a compact alphabet is read one character per symbol.
    /// `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() == 1 && self.is_compact() && self.symbol(tokens[0]).is_err() {
            let mut buf = [0u8; 4];
            return text
                .chars()
                .map(|c| self.symbol(c.encode_utf8(&mut buf)))
                .collect::<Result<Vec<_>>>()
                .map(Word::from);
        }
        tokens
            .iter()
            .map(|t| self.symbol(t))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Renders a word; compact alphabets concatenate, others separate by spaces.
    pub fn render(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.is_compact() { "" } else { " " };
        let mut out = String::new();
        for (i, s) in word.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(self.name(*s));
        }
        out
    }

    /// This alphabet with one extra symbol appended (e.g. a separator).
    pub fn extended(&self, extra: &str) -> Result<Alphabet> {
        Alphabet::new(self.names.iter().cloned().chain(core::iter::once(extra.to_string())))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names.iter()).finish()
    }
}

/// A finite word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &[Symbol]) {
        self.0.extend_from_slice(other);
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// Shortlex comparison: length first, then symbol order.
    pub fn shortlex_cmp(&self, other: &Word) -> core::cmp::Ordering {
        shortlex_cmp(self, other)
    }
}

pub fn shortlex_cmp(a: &[Symbol], b: &[Symbol]) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// All words over `alphabet` with length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> impl Iterator<Item = Word> {
    let k = alphabet.len();
    (0..=max_len).flat_map(move |len| {
        let total = k.checked_pow(len as u32).expect("enumeration too large");
        (0..total).map(move |mut rank| {
            let mut digits = alloc::vec![Symbol(0); len];
            for d in digits.iter_mut().rev() {
                *d = Symbol((rank % k) as u16);
                rank /= k;
            }
            Word(digits)
        })
    })
}
