//! Text format for automata over the countable alphabet `{α₁, α₂, …}`.
//!
//! ```text
//! states: even odd
//! initial: even
//! accepting: odd
//! edge: even even 0 mod 2
//! edge: even odd 1 mod 2
//! edge: odd odd all
//! ```
//!
//! An index set is a comma-separated list of `all`, `r mod m` and single
//! indices, optionally followed by `except k …`.

use std::collections::BTreeMap;

use realizability_core::infalpha::{IndexSet, IndexSetAutomaton};

use crate::error::FormatError;
use crate::format::directives;

pub fn parse_index_set(text: &str, line: usize) -> Result<IndexSet, FormatError> {
    let (include, except) = match text.split_once("except") {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| FormatError::syntax(line, format!("expected a number, found `{}`", s.trim())))
    };
    let mut set = IndexSet::new();
    for item in include.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let words: Vec<&str> = item.split_whitespace().collect();
        set = match words[..] {
            ["all"] => set.with_residue(0, 1)?,
            [r, "mod", m] => set
                .with_residue(num(r)?, num(m)?)
                .map_err(|e| FormatError::syntax(line, e.to_string()))?,
            [k] => set
                .with_index(num(k)?)
                .map_err(|e| FormatError::syntax(line, e.to_string()))?,
            _ => {
                return Err(FormatError::syntax(
                    line,
                    format!("cannot read index set item `{item}`"),
                ))
            }
        };
    }
    for k in except.into_iter().flat_map(str::split_whitespace) {
        set = set.without(num(k)?);
    }
    Ok(set)
}

pub fn parse_effective(text: &str) -> Result<IndexSetAutomaton, FormatError> {
    let mut names: Option<Vec<String>> = None;
    let mut initial = None;
    let mut accepting = Vec::new();
    let mut edges = Vec::new();
    for d in directives(text)? {
        match d.key {
            "states" => names = Some(d.values.iter().map(|s| s.to_string()).collect()),
            "initial" => initial = Some((d.line, d.values.join(" "))),
            "accepting" => accepting.push((d.line, d.values.iter().map(|s| s.to_string()).collect::<Vec<_>>())),
            "edge" => {
                if d.values.len() < 3 {
                    return Err(FormatError::syntax(d.line, "`edge:` takes `<from> <to> <index set>`"));
                }
                let set = parse_index_set(&d.values[2..].join(" "), d.line)?;
                edges.push((d.line, d.values[0].to_string(), d.values[1].to_string(), set));
            }
            other => return Err(FormatError::syntax(d.line, format!("unknown key `{other}`"))),
        }
    }
    let names = names.ok_or_else(|| FormatError::syntax(0, "missing `states:`"))?;
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let lookup = |line: usize, n: &str| {
        index
            .get(n)
            .copied()
            .ok_or_else(|| FormatError::syntax(line, format!("unknown state `{n}`")))
    };
    let (line, init) = initial.ok_or_else(|| FormatError::syntax(0, "missing `initial:`"))?;
    let initial = lookup(line, &init)?;
    let mut acc = Vec::new();
    for (line, qs) in accepting {
        for q in qs {
            acc.push(lookup(line, &q)?);
        }
    }
    let mut resolved = Vec::new();
    for (line, p, q, set) in edges {
        resolved.push((lookup(line, &p)?, lookup(line, &q)?, set));
    }
    Ok(IndexSetAutomaton::new(names, initial, acc, resolved)?)
}
