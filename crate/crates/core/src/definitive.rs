//! Definitive words and the definitive language of a DFA.
//!
//! A word is *definitive* for an automaton when, read from any start state,
//! the run either passes through an accepting state or ends in a dead-lock
//! (a state from which no accepting state is reachable). The visited-state
//! sequence includes both the start state and the final state.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::alphabet::{Symbol, Word};
use crate::dfa::{generated_names, Dfa, StateId, StateSet};
use crate::error::Result;

/// How the run from one start state is settled by a definitive word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateOutcome {
    /// First accepting state seen at this index of the visited sequence
    /// (0 is the start state itself).
    Accepting { position: usize },
    /// The run ends in this dead-lock state without visiting an accepting one.
    DeadLock { state: StateId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinitiveCertificate {
    pub word: Word,
    /// Indexed by start state.
    pub outcomes: Vec<StateOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefinitiveCheck {
    Certified(DefinitiveCertificate),
    /// A start state whose run neither accepts nor ends in a dead-lock.
    Refuted(StateId),
}

impl DefinitiveCheck {
    pub fn is_certified(&self) -> bool {
        matches!(self, DefinitiveCheck::Certified(_))
    }
}

/// Checks every start state by direct simulation.
pub fn is_definitive(a: &Dfa, word: &[Symbol]) -> Result<DefinitiveCheck> {
    let dead = a.dead_lock_states();
    let mut outcomes = Vec::with_capacity(a.state_count());
    for q in a.states() {
        let visited = a.visited_states(q, word)?;
        if let Some(position) = visited.iter().position(|&p| a.is_accepting(p)) {
            outcomes.push(StateOutcome::Accepting { position });
        } else {
            let last = *visited.last().expect("visited sequence is non-empty");
            if dead.contains(&last) {
                outcomes.push(StateOutcome::DeadLock { state: last });
            } else {
                return Ok(DefinitiveCheck::Refuted(q));
            }
        }
    }
    Ok(DefinitiveCheck::Certified(DefinitiveCertificate {
        word: Word::from(word),
        outcomes,
    }))
}

/// Folds per-state witnesses into one definitive word:
/// `w₁ = u₁`, `wᵢ = wᵢ₋₁·u_j` with `j = δ(wᵢ₋₁, qᵢ)`.
///
/// `witnesses[q]` must lead from `q` to an accepting state, or be empty when
/// `q` is a dead-lock or already accepting. The letter type is generic so the
/// same fold serves finite and countable alphabets.
pub fn fold_witnesses<T: Clone, E>(
    witnesses: &[Vec<T>],
    mut run: impl FnMut(StateId, &[T]) -> Result<StateId, E>,
) -> Result<Vec<T>, E> {
    let mut word: Vec<T> = Vec::new();
    for q in 0..witnesses.len() {
        let j = if q == 0 { 0 } else { run(q, &word)? };
        word.extend_from_slice(&witnesses[j]);
    }
    Ok(word)
}

/// Shortlex-least word from `q` to an accepting state, empty for dead-locks.
pub fn canonical_witnesses(a: &Dfa) -> Vec<Word> {
    a.states()
        .map(|q| a.shortlex_path_to(q, |p| a.is_accepting(p)).unwrap_or_default())
        .collect()
}

/// Builds a definitive word by the per-state witness fold.
pub fn find_definitive_word(a: &Dfa) -> Word {
    let witnesses: Vec<Vec<Symbol>> = canonical_witnesses(a).into_iter().map(Word::into_vec).collect();
    let word = fold_witnesses(&witnesses, |q, w| a.run(q, w)).expect("in-alphabet word");
    Word::from(word)
}

/// `L_q Σ*` where `L_q` is accepted by `(Σ, Q, δ, q, F ∪ T)`: the states of
/// `F ∪ T` are made absorbing and accepting.
pub fn suffix_closed_component(a: &Dfa, q: StateId) -> Result<Dfa> {
    let settled: StateSet = a.accepting_states().union(&a.dead_lock_states()).copied().collect();
    let mut d = a.with_initial(q)?.with_accepting(&settled)?;
    for &p in &settled {
        for s in a.alphabet().symbols() {
            d = d.with_transition(p, s, p);
        }
    }
    Ok(d)
}

/// The definitive language `⋂_q L_q Σ*`.
///
/// The components share one transition structure, so the product is built
/// over the set of states occupied by still-unsettled components; components
/// sitting in the same state are merged. Accepting iff every component has
/// settled.
pub fn definitive_language(a: &Dfa) -> Dfa {
    let settled: StateSet = a.accepting_states().union(&a.dead_lock_states()).copied().collect();
    let start: BTreeSet<StateId> = a.states().filter(|q| !settled.contains(q)).collect();
    let mut index: BTreeMap<BTreeSet<StateId>, StateId> = BTreeMap::new();
    let mut sets = alloc::vec![start.clone()];
    index.insert(start, 0);
    let mut table: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let cur = sets[i].clone();
        let row = a
            .alphabet()
            .symbols()
            .map(|s| {
                let next: BTreeSet<StateId> = cur
                    .iter()
                    .map(|&q| a.step(q, s))
                    .filter(|q| !settled.contains(q))
                    .collect();
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
        .filter(|(_, s)| s.is_empty())
        .map(|(i, _)| i)
        .collect();
    Dfa::new(a.alphabet().clone(), generated_names(sets.len()), table, 0, accepting)
        .expect("definitive-language automaton")
}

/// The same language as [`definitive_language`], built as a plain iterated
/// product of the components `L_q Σ*`. Exponential in the state count.
pub fn definitive_language_by_product(a: &Dfa) -> Result<Dfa> {
    let mut acc = suffix_closed_component(a, 0)?;
    for q in 1..a.state_count() {
        acc = acc.intersect(&suffix_closed_component(a, q)?)?.trim();
    }
    Ok(acc)
}
