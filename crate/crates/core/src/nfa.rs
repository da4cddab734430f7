//! Nondeterministic automata (no ε-moves) and the rational operations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::{generated_names, Dfa, Emptiness, StateId, StateSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    // succ[q][σ], sorted and deduplicated
    succ: Vec<Vec<Vec<StateId>>>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
}

impl Nfa {
    /// An automaton with `states` states, no transitions and nothing initial or accepting.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        Nfa {
            names: generated_names(states),
            succ: vec![vec![Vec::new(); alphabet.len()]; states],
            initial: vec![false; states],
            accepting: vec![false; states],
            alphabet,
        }
    }

    pub fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        transitions: impl IntoIterator<Item = (StateId, Symbol, StateId)>,
        initials: impl IntoIterator<Item = StateId>,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let n = names.len();
        let mut nfa = Nfa::new(alphabet, n);
        nfa.names = names;
        let check = |q: StateId| {
            if q < n {
                Ok(q)
            } else {
                Err(Error::StateOutOfRange { state: q, count: n })
            }
        };
        for (p, s, q) in transitions {
            nfa.alphabet.check(s)?;
            nfa.add_transition(check(p)?, s, check(q)?);
        }
        for q in initials {
            nfa.set_initial(check(q)?);
        }
        for q in accepting {
            nfa.set_accepting(check(q)?);
        }
        Ok(nfa)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.succ.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn add_state(&mut self) -> StateId {
        let q = self.succ.len();
        self.succ.push(vec![Vec::new(); self.alphabet.len()]);
        self.initial.push(false);
        self.accepting.push(false);
        self.names.push(alloc::format!("q{q}"));
        q
    }

    pub fn add_transition(&mut self, from: StateId, s: Symbol, to: StateId) {
        let targets = &mut self.succ[from][s.index()];
        if let Err(pos) = targets.binary_search(&to) {
            targets.insert(pos, to);
        }
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial[q] = true;
    }

    pub fn set_accepting(&mut self, q: StateId) {
        self.accepting[q] = true;
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initial[q]
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn initials(&self) -> StateSet {
        (0..self.state_count()).filter(|&q| self.initial[q]).collect()
    }

    pub fn accepting_states(&self) -> StateSet {
        (0..self.state_count()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn successors(&self, q: StateId, s: Symbol) -> &[StateId] {
        &self.succ[q][s.index()]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.succ.iter().enumerate().flat_map(move |(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(s, ts)| ts.iter().map(move |&q| (p, Symbol(s as u16), q)))
        })
    }

    /// Image of a state set under one symbol.
    pub fn post(&self, set: &StateSet, s: Symbol) -> StateSet {
        set.iter()
            .flat_map(|&q| self.succ[q][s.index()].iter().copied())
            .collect()
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        let mut cur = self.initials();
        for &s in word {
            self.alphabet.check(s)?;
            cur = self.post(&cur, s);
        }
        Ok(cur.iter().any(|&q| self.accepting[q]))
    }

    fn same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Disjoint copy of `other` appended to `self`; returns the offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let offset = self.state_count();
        for _ in 0..other.state_count() {
            self.add_state();
        }
        for (p, s, q) in other.transitions() {
            self.add_transition(p + offset, s, q + offset);
        }
        offset
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let off = out.absorb(other);
        for q in other.initials() {
            out.set_initial(q + off);
        }
        for q in other.accepting_states() {
            out.set_accepting(q + off);
        }
        Ok(out)
    }

    /// `L(self)·L(other)` without ε-moves.
    pub fn concatenate(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        out.accepting = vec![false; out.state_count()];
        out.initial = vec![false; out.state_count()];
        let off = out.absorb(other);
        let other_initials: Vec<StateId> = other.initials().iter().map(|q| q + off).collect();
        let other_nullable = other.initials().iter().any(|&q| other.accepting[q]);
        let self_nullable = self.initials().iter().any(|&q| self.accepting[q]);
        // Entering an accepting state of the left part may instead enter the right part.
        for (p, s, q) in self.transitions() {
            if self.accepting[q] {
                for &i in &other_initials {
                    out.add_transition(p, s, i);
                }
            }
        }
        for q in self.initials() {
            out.set_initial(q);
        }
        if self_nullable {
            for &i in &other_initials {
                out.set_initial(i);
            }
        }
        for q in other.accepting_states() {
            out.set_accepting(q + off);
        }
        if other_nullable {
            for q in self.accepting_states() {
                out.set_accepting(q);
            }
        }
        Ok(out)
    }

    /// Kleene star without ε-moves: a fresh initial accepting state plus
    /// loop-back edges from accepting targets to the original initials.
    pub fn star(&self) -> Nfa {
        let mut out = Nfa::new(self.alphabet.clone(), 0);
        let fresh = out.add_state();
        let off = out.absorb(self);
        let initials: Vec<StateId> = self.initials().iter().map(|q| q + off).collect();
        for (p, s, q) in self.transitions() {
            if self.accepting[q] {
                for &i in &initials {
                    out.add_transition(p + off, s, i);
                }
            }
        }
        for &i in &initials {
            for s in self.alphabet.symbols() {
                let targets: Vec<StateId> = out.successors(i, s).to_vec();
                for t in targets {
                    out.add_transition(fresh, s, t);
                }
            }
        }
        out.set_initial(fresh);
        out.set_accepting(fresh);
        for q in self.accepting_states() {
            out.set_accepting(q + off);
        }
        out
    }

    /// `Σ*·L(self)`.
    pub fn sigma_star_prefix(&self) -> Nfa {
        let all = Dfa::universal(self.alphabet.clone(), true).to_nfa();
        all.concatenate(self).expect("same alphabet")
    }

    /// `L(self)·Σ*`.
    pub fn sigma_star_suffix(&self) -> Nfa {
        let all = Dfa::universal(self.alphabet.clone(), true).to_nfa();
        self.concatenate(&all).expect("same alphabet")
    }

    /// Subset construction restricted to reachable subsets.
    pub fn determinize(&self) -> Dfa {
        let start = self.initials();
        let mut index: BTreeMap<StateSet, StateId> = BTreeMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut table: Vec<Vec<StateId>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let cur = sets[i].clone();
            let row = self
                .alphabet
                .symbols()
                .map(|s| {
                    let next = self.post(&cur, s);
                    *index.entry(next.clone()).or_insert_with(|| {
                        sets.push(next);
                        sets.len() - 1
                    })
                })
                .collect();
            table.push(row);
            i += 1;
        }
        let accepting: Vec<StateId> = sets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|&q| self.accepting[q]))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), generated_names(sets.len()), table, 0, accepting).expect("subset construction")
    }

    /// Shortlex-least accepted word, by BFS over reachable subsets.
    pub fn shortlex_smallest(&self) -> Option<Word> {
        let start = self.initials();
        let mut parent: BTreeMap<StateSet, Option<(StateSet, Symbol)>> = BTreeMap::new();
        parent.insert(start.clone(), None);
        let mut queue = alloc::collections::VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            if cur.iter().any(|&q| self.accepting[q]) {
                let mut word = Vec::new();
                let mut node = cur;
                while let Some(Some((p, s))) = parent.get(&node).cloned() {
                    word.push(s);
                    node = p;
                }
                word.reverse();
                return Some(Word::from(word));
            }
            for s in self.alphabet.symbols() {
                let next = self.post(&cur, s);
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cur.clone(), s)));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Emptiness by plain reachability, with the shortlex witness when non-empty.
    pub fn emptiness(&self) -> Emptiness {
        if self.is_empty() {
            Emptiness::Empty
        } else {
            Emptiness::NonEmpty(self.shortlex_smallest().expect("reachable accepting state"))
        }
    }

    pub fn is_empty(&self) -> bool {
        let mut seen: BTreeSet<StateId> = self.initials();
        let mut stack: Vec<StateId> = seen.iter().copied().collect();
        while let Some(q) = stack.pop() {
            if self.accepting[q] {
                return false;
            }
            for row in &self.succ[q] {
                for &t in row {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        true
    }
}

impl From<&Dfa> for Nfa {
    fn from(d: &Dfa) -> Self {
        d.to_nfa()
    }
}
