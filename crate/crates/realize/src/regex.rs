//! Rational expressions over a compact alphabet.
//!
//! `|` union, juxtaposition concatenation, postfix `*` `+` `?`, parentheses,
//! `.` any symbol, `ε` the empty word and `∅` the empty language.

use realizability_core::{Alphabet, Dfa, Nfa, Word};

use crate::error::FormatError;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

fn err(pos: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line: 1,
        message: format!("column {}: {}", pos + 1, message.into()),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Nfa, FormatError> {
        let mut acc = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            acc = acc.union(&self.concat()?)?;
        }
        Ok(acc)
    }

    fn concat(&mut self) -> Result<Nfa, FormatError> {
        let mut acc = Dfa::single_word(self.alphabet.clone(), &[])?.to_nfa();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            acc = acc.concatenate(&self.postfix()?)?;
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Nfa, FormatError> {
        let mut base = self.atom()?;
        while let Some(c) = self.peek() {
            base = match c {
                '*' => base.star(),
                '+' => base.concatenate(&base.star())?,
                '?' => base.union(&Dfa::single_word(self.alphabet.clone(), &[])?.to_nfa())?,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Nfa, FormatError> {
        let start = self.pos;
        let c = self.peek().ok_or_else(|| err(start, "unexpected end of expression"))?;
        self.pos += 1;
        let a = self.alphabet;
        Ok(match c {
            '(' => {
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(err(self.pos, "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            '.' => Dfa::from_fn(a.clone(), 3, |q, _| if q == 0 { 1 } else { 2 }, 0, [1])?.to_nfa(),
            'ε' => Dfa::single_word(a.clone(), &[])?.to_nfa(),
            '∅' => Dfa::universal(a.clone(), false).to_nfa(),
            '*' | '+' | '?' | ')' | '|' => return Err(err(start, format!("unexpected `{c}`"))),
            c => {
                let s = a
                    .symbol(c.encode_utf8(&mut [0u8; 4]))
                    .map_err(|_| err(start, format!("`{c}` is not in the alphabet")))?;
                Dfa::single_word(a.clone(), &Word::from(vec![s]))?.to_nfa()
            }
        })
    }
}

pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Nfa, FormatError> {
    if !alphabet.is_compact() {
        return Err(err(0, "expressions need single-character symbols"));
    }
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        alphabet,
    };
    let n = p.union()?;
    if p.pos != p.chars.len() {
        return Err(err(p.pos, format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(n)
}

pub fn compile_regex(text: &str, alphabet: &Alphabet) -> Result<Dfa, FormatError> {
    Ok(parse_regex(text, alphabet)?.determinize().trim())
}
