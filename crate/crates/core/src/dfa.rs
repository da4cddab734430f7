//! Deterministic finite automata with a total transition function.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;

pub type StateId = usize;
pub type StateSet = BTreeSet<StateId>;

/// A complete DFA `(Σ, Q, δ, q₀, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    // row-major: delta[q * |Σ| + σ]
    delta: Vec<StateId>,
    initial: StateId,
    accepting: Vec<bool>,
}

pub(crate) fn generated_names(n: usize) -> Vec<String> {
    generated_names_from(0, n)
}

pub(crate) fn generated_names_from(first: usize, n: usize) -> Vec<String> {
    (first..first + n).map(|i| format!("q{i}")).collect()
}

impl Dfa {
    /// Builds a DFA from a full transition table `table[q][σ]`.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        table: Vec<Vec<StateId>>,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTransitions("automaton has no states".into()));
        }
        if names.len() != n {
            return Err(Error::MalformedTransitions(format!(
                "{} state names for {} states",
                names.len(),
                n
            )));
        }
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(n * k);
        for (q, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedTransitions(format!(
                    "state {q} has {} transitions, expected {k}",
                    row.len()
                )));
            }
            for &t in row {
                if t >= n {
                    return Err(Error::StateOutOfRange { state: t, count: n });
                }
                delta.push(t);
            }
        }
        if initial >= n {
            return Err(Error::StateOutOfRange {
                state: initial,
                count: n,
            });
        }
        let mut acc = vec![false; n];
        for f in accepting {
            if f >= n {
                return Err(Error::StateOutOfRange { state: f, count: n });
            }
            acc[f] = true;
        }
        Ok(Dfa {
            alphabet,
            names,
            delta,
            initial,
            accepting: acc,
        })
    }

    /// Builds a DFA with generated state names from a transition function.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        mut step: impl FnMut(StateId, Symbol) -> StateId,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let table = (0..states)
            .map(|q| alphabet.symbols().map(|s| step(q, s)).collect())
            .collect();
        Dfa::new(alphabet, generated_names(states), table, initial, accepting)
    }

    /// The one-state automaton accepting `Σ*` (or `∅` when `accept` is false).
    pub fn universal(alphabet: Alphabet, accept: bool) -> Self {
        let acc = if accept { vec![0] } else { vec![] };
        Dfa::from_fn(alphabet, 1, |_, _| 0, 0, acc).expect("one-state automaton")
    }

    /// The automaton accepting exactly `word`.
    pub fn single_word(alphabet: Alphabet, word: &[Symbol]) -> Result<Self> {
        for &s in word {
            alphabet.check(s)?;
        }
        let n = word.len();
        let sink = n + 1;
        Dfa::from_fn(
            alphabet,
            n + 2,
            |q, s| if q < n && word[q] == s { q + 1 } else { sink },
            0,
            [n],
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn states(&self) -> core::ops::Range<StateId> {
        0..self.state_count()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> StateSet {
        self.states().filter(|&q| self.accepting[q]).collect()
    }

    /// One transition. Both arguments must be in range.
    #[inline]
    pub fn step(&self, q: StateId, s: Symbol) -> StateId {
        self.delta[q * self.alphabet.len() + s.index()]
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q < self.state_count() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state: q,
                count: self.state_count(),
            })
        }
    }

    /// `δ(w, start)`, the extended transition function.
    pub fn run(&self, start: StateId, word: &[Symbol]) -> Result<StateId> {
        self.check_state(start)?;
        word.iter().try_fold(start, |q, &s| {
            self.alphabet.check(s)?;
            Ok(self.step(q, s))
        })
    }

    /// The `|w| + 1` states visited while reading `word`, both endpoints included.
    pub fn visited_states(&self, start: StateId, word: &[Symbol]) -> Result<Vec<StateId>> {
        self.check_state(start)?;
        let mut out = Vec::with_capacity(word.len() + 1);
        let mut q = start;
        out.push(q);
        for &s in word {
            self.alphabet.check(s)?;
            q = self.step(q, s);
            out.push(q);
        }
        Ok(out)
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        Ok(self.accepting[self.run(self.initial, word)?])
    }

    /// States from which no accepting state is reachable.
    pub fn dead_lock_states(&self) -> StateSet {
        let n = self.state_count();
        let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in self.states() {
            for s in self.alphabet.symbols() {
                reverse[self.step(q, s)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<StateId> = self.states().filter(|&q| live[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &reverse[q] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        self.states().filter(|&q| !live[q]).collect()
    }

    /// Same automaton with a different initial state.
    pub fn with_initial(&self, q: StateId) -> Result<Dfa> {
        self.check_state(q)?;
        Ok(Dfa {
            initial: q,
            ..self.clone()
        })
    }

    /// Same transition structure with a different accepting set.
    pub fn with_accepting(&self, accepting: &StateSet) -> Result<Dfa> {
        let mut acc = vec![false; self.state_count()];
        for &q in accepting {
            self.check_state(q)?;
            acc[q] = true;
        }
        Ok(Dfa {
            accepting: acc,
            ..self.clone()
        })
    }

    /// Copy with the transition of `q` on `s` redirected.
    pub(crate) fn with_transition(&self, q: StateId, s: Symbol, target: StateId) -> Dfa {
        let mut d = self.clone();
        let k = d.alphabet.len();
        d.delta[q * k + s.index()] = target;
        d
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    /// Reachable part of the synchronous product, accepting per `combine`.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let start = (self.initial, other.initial);
        let mut index: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
        let mut pairs = vec![start];
        index.insert(start, 0);
        let mut table: Vec<Vec<StateId>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(self.alphabet.len());
            for s in self.alphabet.symbols() {
                let next = (self.step(p, s), other.step(q, s));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            table.push(row);
            i += 1;
        }
        let accepting: Vec<StateId> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| combine(self.accepting[p], other.accepting[q]))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), generated_names(pairs.len()), table, 0, accepting)
    }

    /// States reachable from the initial state, in BFS order.
    pub fn reachable_states(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for s in self.alphabet.symbols() {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Renumbers reachable states in BFS order (initial becomes state 0) and
    /// drops the rest. Names are preserved.
    pub fn trim(&self) -> Dfa {
        let order = self.reachable_states();
        let mut renumber = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            renumber[q] = i;
        }
        let table = order
            .iter()
            .map(|&q| self.alphabet.symbols().map(|s| renumber[self.step(q, s)]).collect())
            .collect();
        let names = order.iter().map(|&q| self.names[q].clone()).collect();
        let accepting: Vec<StateId> = order
            .iter()
            .enumerate()
            .filter(|(_, &q)| self.accepting[q])
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), names, table, 0, accepting).expect("trimmed automaton")
    }

    /// For every state reachable from `from`, the shortlex-least word leading to it.
    pub fn shortlex_paths(&self, from: StateId) -> Vec<Option<Word>> {
        let mut paths: Vec<Option<Word>> = vec![None; self.state_count()];
        paths[from] = Some(Word::empty());
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for s in self.alphabet.symbols() {
                let t = self.step(q, s);
                if paths[t].is_none() {
                    let mut w = paths[q].clone().expect("visited");
                    w.push(s);
                    paths[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        paths
    }

    /// Shortlex-least word leading from `from` into a state satisfying `target`.
    pub fn shortlex_path_to(&self, from: StateId, target: impl Fn(StateId) -> bool) -> Option<Word> {
        // BFS discovery order is shortlex order of the discovering words, so
        // the first target popped carries the least word.
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if target(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(Word::from(word));
            }
            for s in self.alphabet.symbols() {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// The length-lexicographically least accepted word, if any.
    pub fn shortlex_smallest(&self) -> Option<Word> {
        self.shortlex_path_to(self.initial, |q| self.accepting[q])
    }

    /// Emptiness, with the shortlex-least accepted word as witness when non-empty.
    pub fn emptiness(&self) -> Emptiness {
        match self.shortlex_smallest() {
            None => Emptiness::Empty,
            Some(w) => Emptiness::NonEmpty(w),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.shortlex_smallest().is_none()
    }

    /// Language equality.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |a, b| a != b)?.is_empty())
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.state_count());
        for q in self.states() {
            for s in self.alphabet.symbols() {
                nfa.add_transition(q, s, self.step(q, s));
            }
        }
        nfa.set_initial(self.initial);
        for q in self.states().filter(|&q| self.accepting[q]) {
            nfa.set_accepting(q);
        }
        nfa
    }

    /// Same language over a larger alphabet that extends this one: the extra
    /// symbols lead to a fresh rejecting sink.
    pub fn embed(&self, target: &Alphabet) -> Result<Dfa> {
        let k = self.alphabet.len();
        if target.len() < k || target.names()[..k] != self.alphabet.names()[..] {
            return Err(Error::AlphabetMismatch);
        }
        let sink = self.state_count();
        let mut table: Vec<Vec<StateId>> = self
            .states()
            .map(|q| {
                target
                    .symbols()
                    .map(|s| if s.index() < k { self.step(q, s) } else { sink })
                    .collect()
            })
            .collect();
        table.push(vec![sink; target.len()]);
        let mut names = self.names.clone();
        names.push(fresh_name(&names, "sink"));
        Dfa::new(target.clone(), names, table, self.initial, self.accepting_states())
    }
}

/// A state name not already in `names`, derived from `base`.
pub fn fresh_name(names: &[String], base: &str) -> String {
    let mut candidate = String::from(base);
    let mut i = 0;
    while names.contains(&candidate) {
        i += 1;
        candidate = format!("{base}{i}");
    }
    candidate
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    NonEmpty(Word),
}
