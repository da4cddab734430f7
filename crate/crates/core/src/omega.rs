//! ω-acceptance (Büchi and Muller) and the reductions between the
//! prefix, factor and Büchi realizability problems.
//!
//! Exact acceptance is only decided on ultimately periodic words `u·v^ω`,
//! where every run is a lasso.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Symbol, Word};
use crate::dfa::{Dfa, StateId, StateSet};
use crate::error::{Error, Result};
use crate::nfa::Nfa;

/// A deterministic Muller automaton: transition structure plus a family of
/// accepting macrostates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MullerAutomaton {
    structure: Dfa,
    family: Vec<StateSet>,
}

impl MullerAutomaton {
    /// The accepting set of `structure` is ignored.
    pub fn new(structure: Dfa, family: Vec<StateSet>) -> Result<Self> {
        let n = structure.state_count();
        for set in &family {
            if let Some(&q) = set.iter().find(|&&q| q >= n) {
                return Err(Error::StateOutOfRange { state: q, count: n });
            }
        }
        Ok(MullerAutomaton { structure, family })
    }

    pub fn structure(&self) -> &Dfa {
        &self.structure
    }

    pub fn family(&self) -> &[StateSet] {
        &self.family
    }

    pub fn state_count(&self) -> usize {
        self.structure.state_count()
    }
}

/// A nondeterministic automaton read with the Büchi condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiAutomaton {
    nfa: Nfa,
}

impl BuchiAutomaton {
    pub fn new(nfa: Nfa) -> Self {
        BuchiAutomaton { nfa }
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        BuchiAutomaton { nfa: dfa.to_nfa() }
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }
}

/// The unique run of a deterministic automaton on `u·v^ω`, split into the
/// states before the cycle and the states repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    /// `q₀ … q_{t−1}`, the run before the cycle starts.
    pub stem: Vec<StateId>,
    /// `q_t … q_{t+c−1}`; the run continues with this block forever.
    pub cycle: Vec<StateId>,
}

impl Lasso {
    /// States occurring infinitely often.
    pub fn limit_set(&self) -> StateSet {
        self.cycle.iter().copied().collect()
    }
}

fn check_word(dfa_alphabet: &crate::Alphabet, w: &[Symbol]) -> Result<()> {
    w.iter().try_for_each(|&s| dfa_alphabet.check(s))
}

/// Cycle detection keyed on the state at the start of each copy of `v`.
pub fn deterministic_lasso(a: &Dfa, u: &[Symbol], v: &[Symbol]) -> Result<Lasso> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    check_word(a.alphabet(), v)?;
    let mut stem = a.visited_states(a.initial(), u)?;
    let mut q = stem.pop().expect("non-empty visited sequence");
    let mut block_start: BTreeMap<StateId, usize> = BTreeMap::new();
    let mut run: Vec<StateId> = Vec::new();
    loop {
        if let Some(&at) = block_start.get(&q) {
            stem.extend_from_slice(&run[..at]);
            return Ok(Lasso {
                stem,
                cycle: run[at..].to_vec(),
            });
        }
        block_start.insert(q, run.len());
        for &s in v {
            run.push(q);
            q = a.step(q, s);
        }
    }
}

pub fn muller_accepts_ultper(m: &MullerAutomaton, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
    let limit = deterministic_lasso(&m.structure, u, v)?.limit_set();
    Ok(m.family.contains(&limit))
}

/// Nested reachability on the product of `B` with the phase inside `v`.
pub fn buchi_accepts_ultper(b: &BuchiAutomaton, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let nfa = &b.nfa;
    check_word(nfa.alphabet(), u)?;
    check_word(nfa.alphabet(), v)?;
    let mut cur = nfa.initials();
    for &s in u {
        cur = nfa.post(&cur, s);
    }
    let p = v.len();
    let succ = |(q, i): (StateId, usize)| nfa.successors(q, v[i]).iter().map(move |&t| (t, (i + 1) % p));
    let mut reachable: BTreeSet<(StateId, usize)> = cur.iter().map(|&q| (q, 0)).collect();
    let mut queue: VecDeque<(StateId, usize)> = reachable.iter().copied().collect();
    while let Some(node) = queue.pop_front() {
        for next in succ(node) {
            if reachable.insert(next) {
                queue.push_back(next);
            }
        }
    }
    for &node in reachable.iter().filter(|(q, _)| nfa.is_accepting(*q)) {
        let mut seen: BTreeSet<(StateId, usize)> = BTreeSet::new();
        let mut queue: VecDeque<(StateId, usize)> = succ(node).collect();
        while let Some(n) = queue.pop_front() {
            if n == node {
                return Ok(true);
            }
            if seen.insert(n) {
                queue.extend(succ(n));
            }
        }
    }
    Ok(false)
}

/// Every accepting state becomes a self-loop on all symbols. Maps an instance
/// of prefix realizability to an equivalent instance of Büchi realizability.
pub fn absorbing_accepting(a: &Dfa) -> Dfa {
    let mut out = a.clone();
    for q in a.accepting_states() {
        for s in a.alphabet().symbols() {
            out = out.with_transition(q, s, q);
        }
    }
    out
}

/// A DFA for `Σ*·L(a)`. Maps factor problems to prefix problems.
pub fn prepend_sigma_star(a: &Dfa) -> Dfa {
    a.to_nfa().sigma_star_prefix().determinize()
}

/// Decides, for a fixed infinite word `W` and any DFA `A` over its
/// alphabet, whether `|L(A) ∩ Pref(W)| = ∞`.
pub trait BuchiOracle {
    fn infinitely_many_prefixes(&self, a: &Dfa) -> Result<bool>;
}

impl<F: Fn(&Dfa) -> Result<bool>> BuchiOracle for F {
    fn infinitely_many_prefixes(&self, a: &Dfa) -> Result<bool> {
        self(a)
    }
}

/// Exact oracle for `W = u·v^ω`: a DFA accepts infinitely many prefixes iff
/// its run visits accepting states infinitely often.
#[derive(Debug, Clone)]
pub struct UltimatelyPeriodicOracle {
    pub stem: Word,
    pub period: Word,
}

impl BuchiOracle for UltimatelyPeriodicOracle {
    fn infinitely_many_prefixes(&self, a: &Dfa) -> Result<bool> {
        buchi_accepts_ultper(&BuchiAutomaton::from_dfa(a), &self.stem, &self.period)
    }
}

/// Muller acceptance of the oracle's word, by one Büchi-realizability query
/// per state: `q` is in the limit set iff the structure with accepting set
/// `{q}` accepts infinitely many prefixes.
pub fn muller_acceptance_via_buchi_queries<O: BuchiOracle + ?Sized>(m: &MullerAutomaton, oracle: &O) -> Result<bool> {
    if m.family.is_empty() {
        return Ok(false);
    }
    let mut limit = StateSet::new();
    for q in m.structure.states() {
        let probe = m.structure.with_accepting(&StateSet::from([q]))?;
        if oracle.infinitely_many_prefixes(&probe)? {
            limit.insert(q);
        }
    }
    Ok(m.family.contains(&limit))
}

/// The macrostate automaton `D_F`: states are reachable subsets of `M`'s
/// states, `δ(a, S) = {δ_M(a, q') : q' ∈ S}`, initial `{q₀}`, and the only
/// accepting state is `F` (when reachable).
pub fn macrostate_automaton(m: &MullerAutomaton, f: &StateSet) -> Result<Dfa> {
    let d = &m.structure;
    if let Some(&q) = f.iter().find(|&&q| q >= d.state_count()) {
        return Err(Error::StateOutOfRange {
            state: q,
            count: d.state_count(),
        });
    }
    let start = StateSet::from([d.initial()]);
    let mut index: BTreeMap<StateSet, StateId> = BTreeMap::new();
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut table: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let cur = sets[i].clone();
        let row = d
            .alphabet()
            .symbols()
            .map(|s| {
                let next: StateSet = cur.iter().map(|&q| d.step(q, s)).collect();
                *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                })
            })
            .collect();
        table.push(row);
        i += 1;
    }
    let names: Vec<String> = sets
        .iter()
        .map(|s| {
            let inner: Vec<&str> = s.iter().map(|&q| d.state_name(q)).collect();
            alloc::format!("{{{}}}", inner.join(","))
        })
        .collect();
    let accepting = index.get(f).copied();
    Dfa::new(d.alphabet().clone(), names, table, 0, accepting)
}

/// Subsets reached by a macrostate automaton built with [`macrostate_automaton`].
pub fn macrostates(m: &MullerAutomaton) -> BTreeSet<StateSet> {
    let d = &m.structure;
    let mut seen = BTreeSet::from([StateSet::from([d.initial()])]);
    let mut queue: VecDeque<StateSet> = seen.iter().cloned().collect();
    while let Some(cur) = queue.pop_front() {
        for s in d.alphabet().symbols() {
            let next: StateSet = cur.iter().map(|&q| d.step(q, s)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}
