//! Deterministic single-tape Turing machines, enough to drive a halting
//! enumeration.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub write: u8,
    pub head: Move,
    pub next: usize,
}

/// A machine halts when no rule matches its current state and symbol.
/// Execution starts in state 0 on a blank (`0`) tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    name: String,
    states: usize,
    symbols: u8,
    rules: BTreeMap<(usize, u8), Rule>,
}

impl TuringMachine {
    pub fn new(
        name: impl Into<String>,
        states: usize,
        symbols: u8,
        rules: impl IntoIterator<Item = ((usize, u8), Rule)>,
    ) -> Result<Self> {
        if states == 0 || symbols == 0 {
            return Err(Error::InvalidArgument(
                "a machine needs at least one state and one symbol".into(),
            ));
        }
        let mut table = BTreeMap::new();
        for ((q, s), r) in rules {
            if q >= states || r.next >= states {
                return Err(Error::StateOutOfRange {
                    state: q.max(r.next),
                    count: states,
                });
            }
            if s >= symbols || r.write >= symbols {
                return Err(Error::SymbolOutOfRange {
                    symbol: usize::from(s.max(r.write)),
                    size: usize::from(symbols),
                });
            }
            if table.insert((q, s), r).is_some() {
                return Err(Error::InvalidArgument(format!("two rules for state {q} reading {s}")));
            }
        }
        Ok(TuringMachine {
            name: name.into(),
            states,
            symbols,
            rules: table,
        })
    }

    /// A machine whose `t`-th step finds no rule.
    pub fn halting_after(t: usize) -> Self {
        let t = t.max(1);
        let rules = (0..t - 1).map(|i| {
            (
                (i, 0),
                Rule {
                    write: 1,
                    head: Move::Right,
                    next: i + 1,
                },
            )
        });
        TuringMachine::new(format!("halt{t}"), t, 2, rules).expect("well-formed machine")
    }

    /// A machine that never halts.
    pub fn looping() -> Self {
        let rules = [0u8, 1].map(|s| {
            (
                (0, s),
                Rule {
                    write: 1,
                    head: Move::Right,
                    next: 0,
                },
            )
        });
        TuringMachine::new("loop", 1, 2, rules).expect("well-formed machine")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn symbol_count(&self) -> u8 {
        self.symbols
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(usize, u8), &Rule)> {
        self.rules.iter()
    }

    pub fn rule(&self, state: usize, read: u8) -> Option<Rule> {
        self.rules.get(&(state, read)).copied()
    }

    pub fn start(&self) -> Configuration {
        Configuration {
            state: 0,
            head: 0,
            tape: VecDeque::from([0]),
            steps: 0,
        }
    }

    /// The index `t` of the first step that finds no rule, if `t ≤ limit`.
    pub fn halting_time(&self, limit: usize) -> Option<usize> {
        let mut c = self.start();
        while c.steps < limit {
            if !c.step(self) {
                return Some(c.steps + 1);
            }
        }
        None
    }
}

/// A running configuration. The tape grows on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: usize,
    head: usize,
    tape: VecDeque<u8>,
    /// Steps applied so far.
    pub steps: usize,
}

impl Configuration {
    /// Applies one step. Returns `false` (and changes nothing) when halted.
    pub fn step(&mut self, m: &TuringMachine) -> bool {
        let Some(r) = m.rule(self.state, self.tape[self.head]) else {
            return false;
        };
        self.tape[self.head] = r.write;
        match r.head {
            Move::Left if self.head == 0 => self.tape.push_front(0),
            Move::Left => self.head -= 1,
            Move::Right => {
                self.head += 1;
                if self.head == self.tape.len() {
                    self.tape.push_back(0);
                }
            }
            Move::Stay => {}
        }
        self.state = r.next;
        self.steps += 1;
        true
    }

    pub fn tape(&self) -> Vec<u8> {
        self.tape.iter().copied().collect()
    }
}

/// An enumeration `M₁, M₂, …`. Indices past the end name machines that
/// never halt.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MachineList {
    machines: Vec<TuringMachine>,
}

impl MachineList {
    pub fn new(machines: Vec<TuringMachine>) -> Self {
        MachineList { machines }
    }

    pub fn len(&self) -> usize {
        self.machines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.machines.is_empty()
    }

    /// `M_k` for `k ≥ 1`.
    pub fn get(&self, k: usize) -> Option<&TuringMachine> {
        k.checked_sub(1).and_then(|i| self.machines.get(i))
    }

    /// Halting time of `M_k` if at most `limit`.
    pub fn halting_time(&self, k: usize, limit: usize) -> Option<usize> {
        self.get(k).and_then(|m| m.halting_time(limit))
    }
}
