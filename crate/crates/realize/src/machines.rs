//! Text format for lists of Turing machines.
//!
//! ```text
//! machine: busy
//! states: 2
//! symbols: 2
//! rule: 0 0 -> 1 R 1
//! rule: 1 0 -> 1 L 0
//! halting-after: 3
//! looping
//! ```
//!
//! A `machine:` line starts a new machine described by the `states:`,
//! `symbols:` and `rule:` lines after it. `halting-after: t` and `looping`
//! add ready-made machines. Order in the file is the enumeration order.

use realizability_core::bridge::{MachineList, Move, Rule, TuringMachine};

use crate::error::FormatError;

fn in_machine<'a>(current: &'a mut Option<Pending>, line: usize, key: &str) -> Result<&'a mut Pending, FormatError> {
    current
        .as_mut()
        .ok_or_else(|| FormatError::syntax(line, format!("`{key}:` outside a `machine:` block")))
}

struct Pending {
    line: usize,
    name: String,
    states: Option<usize>,
    symbols: u8,
    rules: Vec<((usize, u8), Rule)>,
}

impl Pending {
    fn finish(self) -> Result<TuringMachine, FormatError> {
        let states = self
            .states
            .ok_or_else(|| FormatError::syntax(self.line, format!("machine `{}` has no `states:`", self.name)))?;
        TuringMachine::new(self.name, states, self.symbols, self.rules)
            .map_err(|e| FormatError::syntax(self.line, e.to_string()))
    }
}

pub fn parse_machines(text: &str) -> Result<MachineList, FormatError> {
    let mut machines = Vec::new();
    let mut current: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, rest) = trimmed.split_once(':').unwrap_or((trimmed, ""));
        let rest = rest.trim();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| FormatError::syntax(line, format!("expected a number, found `{s}`")))
        };
        match key.trim() {
            "machine" => {
                if let Some(p) = current.take() {
                    machines.push(p.finish()?);
                }
                current = Some(Pending {
                    line,
                    name: rest.to_string(),
                    states: None,
                    symbols: 2,
                    rules: Vec::new(),
                });
            }
            "states" => in_machine(&mut current, line, key)?.states = Some(num(rest)?),
            "symbols" => {
                let k = num(rest)?;
                in_machine(&mut current, line, key)?.symbols =
                    u8::try_from(k).map_err(|_| FormatError::syntax(line, "too many symbols"))?;
            }
            "rule" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [q, s, "->", w, m, next] = parts[..] else {
                    return Err(FormatError::syntax(
                        line,
                        "`rule:` takes `<state> <read> -> <write> <L|R|S> <next>`",
                    ));
                };
                let head = match m {
                    "L" => Move::Left,
                    "R" => Move::Right,
                    "S" => Move::Stay,
                    _ => return Err(FormatError::syntax(line, format!("unknown move `{m}`"))),
                };
                let sym = |x: &str| {
                    num(x).and_then(|v| u8::try_from(v).map_err(|_| FormatError::syntax(line, "symbol too large")))
                };
                let rule = Rule {
                    write: sym(w)?,
                    head,
                    next: num(next)?,
                };
                let at = (num(q)?, sym(s)?);
                in_machine(&mut current, line, key)?.rules.push((at, rule));
            }
            "halting-after" | "looping" => {
                if let Some(p) = current.take() {
                    machines.push(p.finish()?);
                }
                machines.push(if key == "looping" {
                    TuringMachine::looping()
                } else {
                    TuringMachine::halting_after(num(rest)?)
                });
            }
            other => return Err(FormatError::syntax(line, format!("unknown key `{other}`"))),
        }
    }
    if let Some(p) = current.take() {
        machines.push(p.finish()?);
    }
    Ok(MachineList::new(machines))
}
