//! Line-oriented text format for finite automata.
//!
//! ```text
//! # comment
//! alphabet: 0 1
//! states: q0 q1
//! initial: q0
//! accepting: q1
//! trans: q0 1 q1
//! ```
//!
//! NFAs list `initials:` instead of `initial:`. Muller automata add one
//! `macro:` line per member of the acceptance family. DFAs may leave
//! transitions out; they go to a fresh sink state.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use realizability_core::dfa::fresh_name;
use realizability_core::omega::MullerAutomaton;
use realizability_core::{Alphabet, Dfa, Nfa, StateId, StateSet, Symbol};

use crate::error::FormatError;

/// One `key: values` line with its 1-based line number.
#[derive(Debug, Clone)]
pub(crate) struct Directive<'a> {
    pub line: usize,
    pub key: &'a str,
    pub values: Vec<&'a str>,
}

pub(crate) fn directives(text: &str) -> Result<Vec<Directive<'_>>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(FormatError::syntax(
                i + 1,
                format!("expected `key: values`, found `{line}`"),
            ));
        };
        out.push(Directive {
            line: i + 1,
            key: key.trim(),
            values: rest.split_whitespace().collect(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonText {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initials: Vec<StateId>,
    pub accepting: Vec<StateId>,
    pub transitions: Vec<(StateId, Symbol, StateId)>,
    pub macros: Vec<StateSet>,
    /// Declared with `initials:`.
    pub nondeterministic: bool,
    lines: Vec<usize>,
}

pub fn parse_automaton(text: &str) -> Result<AutomatonText, FormatError> {
    let ds = directives(text)?;
    let single = |key: &str| -> Result<Option<&Directive<'_>>, FormatError> {
        let mut found = ds.iter().filter(|d| d.key == key);
        let first = found.next();
        if let Some(d) = found.next() {
            return Err(FormatError::syntax(d.line, format!("`{key}:` given twice")));
        }
        Ok(first)
    };
    for d in &ds {
        if ![
            "alphabet",
            "states",
            "initial",
            "initials",
            "accepting",
            "trans",
            "macro",
        ]
        .contains(&d.key)
        {
            return Err(FormatError::syntax(d.line, format!("unknown key `{}`", d.key)));
        }
    }
    let alpha = single("alphabet")?.ok_or_else(|| FormatError::syntax(0, "missing `alphabet:`"))?;
    let alphabet =
        Alphabet::new(alpha.values.iter().copied()).map_err(|e| FormatError::syntax(alpha.line, e.to_string()))?;
    let st = single("states")?.ok_or_else(|| FormatError::syntax(0, "missing `states:`"))?;
    let states: Vec<String> = st.values.iter().map(|s| s.to_string()).collect();
    if states.is_empty() {
        return Err(FormatError::syntax(st.line, "no states declared"));
    }
    let mut index = BTreeMap::new();
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(FormatError::syntax(st.line, format!("state `{s}` declared twice")));
        }
    }
    let state = |line: usize, name: &str| -> Result<StateId, FormatError> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| FormatError::syntax(line, format!("unknown state `{name}`")))
    };
    let (initial, nondeterministic) = match (single("initial")?, single("initials")?) {
        (Some(d), None) => (d, false),
        (None, Some(d)) => (d, true),
        (Some(_), Some(d)) => return Err(FormatError::syntax(d.line, "both `initial:` and `initials:` given")),
        (None, None) => return Err(FormatError::syntax(0, "missing `initial:`")),
    };
    if !nondeterministic && initial.values.len() != 1 {
        return Err(FormatError::syntax(initial.line, "`initial:` takes exactly one state"));
    }
    let initials = initial
        .values
        .iter()
        .map(|n| state(initial.line, n))
        .collect::<Result<Vec<_>, _>>()?;
    let accepting = match single("accepting")? {
        Some(d) => d
            .values
            .iter()
            .map(|n| state(d.line, n))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let mut transitions = Vec::new();
    let mut lines = Vec::new();
    let mut macros = Vec::new();
    for d in &ds {
        match d.key {
            "trans" => {
                let [p, s, q] = d.values[..] else {
                    return Err(FormatError::syntax(d.line, "`trans:` takes `<state> <symbol> <state>`"));
                };
                let sym = alphabet
                    .symbol(s)
                    .map_err(|e| FormatError::syntax(d.line, e.to_string()))?;
                transitions.push((state(d.line, p)?, sym, state(d.line, q)?));
                lines.push(d.line);
            }
            "macro" => {
                macros.push(
                    d.values
                        .iter()
                        .map(|n| state(d.line, n))
                        .collect::<Result<StateSet, _>>()?,
                );
            }
            _ => {}
        }
    }
    Ok(AutomatonText {
        alphabet,
        states,
        initials,
        accepting,
        transitions,
        macros,
        nondeterministic,
        lines,
    })
}

impl AutomatonText {
    pub fn to_dfa(&self) -> Result<Dfa, FormatError> {
        if self.nondeterministic && self.initials.len() != 1 {
            return Err(FormatError::syntax(0, "a DFA needs exactly one initial state"));
        }
        let k = self.alphabet.len();
        let mut table: Vec<Vec<Option<StateId>>> = vec![vec![None; k]; self.states.len()];
        for (&(p, s, q), &line) in self.transitions.iter().zip(&self.lines) {
            match table[p][s.index()] {
                Some(t) if t != q => {
                    return Err(FormatError::syntax(
                        line,
                        format!(
                            "second transition from `{}` on `{}`",
                            self.states[p],
                            self.alphabet.name(s)
                        ),
                    ))
                }
                _ => table[p][s.index()] = Some(q),
            }
        }
        let mut names = self.states.clone();
        let needs_sink = table.iter().flatten().any(Option::is_none);
        let sink = names.len();
        if needs_sink {
            names.push(fresh_name(&names, "sink"));
            table.push(vec![Some(sink); k]);
        }
        let full = table
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        Ok(Dfa::new(
            self.alphabet.clone(),
            names,
            full,
            self.initials[0],
            self.accepting.iter().copied(),
        )?)
    }

    pub fn to_nfa(&self) -> Result<Nfa, FormatError> {
        Ok(Nfa::from_parts(
            self.alphabet.clone(),
            self.states.clone(),
            self.transitions.iter().copied(),
            self.initials.iter().copied(),
            self.accepting.iter().copied(),
        )?)
    }

    /// Determinizes when the file describes an NFA.
    pub fn to_automaton(&self) -> Result<Dfa, FormatError> {
        if self.nondeterministic {
            Ok(self.to_nfa()?.determinize())
        } else {
            self.to_dfa()
        }
    }

    pub fn to_muller(&self) -> Result<MullerAutomaton, FormatError> {
        Ok(MullerAutomaton::new(self.to_dfa()?, self.macros.clone())?)
    }
}

pub fn parse_dfa(text: &str) -> Result<Dfa, FormatError> {
    parse_automaton(text)?.to_automaton()
}

pub fn render_dfa(a: &Dfa) -> String {
    let mut out = String::new();
    let names = |qs: &mut dyn Iterator<Item = StateId>| qs.map(|q| a.state_name(q)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "alphabet: {}", a.alphabet().names().join(" "));
    let _ = writeln!(out, "states: {}", names(&mut a.states()));
    let _ = writeln!(out, "initial: {}", a.state_name(a.initial()));
    let _ = writeln!(out, "accepting: {}", names(&mut a.accepting_states().into_iter()));
    for q in a.states() {
        for s in a.alphabet().symbols() {
            let _ = writeln!(
                out,
                "trans: {} {} {}",
                a.state_name(q),
                a.alphabet().name(s),
                a.state_name(a.step(q, s))
            );
        }
    }
    out
}

pub fn render_muller(m: &MullerAutomaton) -> String {
    let d = m.structure();
    let mut out = render_dfa(d);
    for f in m.family() {
        let _ = writeln!(
            out,
            "macro: {}",
            f.iter().map(|&q| d.state_name(q)).collect::<Vec<_>>().join(" ")
        );
    }
    out
}
