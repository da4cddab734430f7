//! Effective automata over the countable alphabet `{α₁, α₂, …}`.
//!
//! Letters are identified by their subscript (see [`Letter`]). An effective
//! automaton has finitely many states, a computable transition map and a
//! decidable predicate telling whether any letter moves one state to another.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use spin::Mutex;

use crate::decide::{simulate, Answer, Fuel, Outcome, Verdict};
use crate::definitive::fold_witnesses;
use crate::dfa::{Dfa, StateId, StateSet};
use crate::error::{Error, Result};
use crate::words::{EffectiveMorphism, IndexedWord, Letter};

pub trait EffectiveAutomaton {
    fn state_count(&self) -> usize;

    fn initial(&self) -> StateId;

    fn is_accepting(&self, q: StateId) -> bool;

    /// `δ(α_letter, q)`; total for every `letter ≥ 1`.
    fn delta(&self, letter: Letter, q: StateId) -> Result<StateId>;

    /// Whether `δ(α, from) = to` for some letter `α`.
    fn exists_transition(&self, from: StateId, to: StateId) -> Result<bool>;

    fn state_name(&self, q: StateId) -> String {
        format!("q{q}")
    }

    fn accepting_states(&self) -> StateSet {
        (0..self.state_count()).filter(|&q| self.is_accepting(q)).collect()
    }
}

impl<T: EffectiveAutomaton + ?Sized> EffectiveAutomaton for &T {
    fn state_count(&self) -> usize {
        (**self).state_count()
    }
    fn initial(&self) -> StateId {
        (**self).initial()
    }
    fn is_accepting(&self, q: StateId) -> bool {
        (**self).is_accepting(q)
    }
    fn delta(&self, letter: Letter, q: StateId) -> Result<StateId> {
        (**self).delta(letter, q)
    }
    fn exists_transition(&self, from: StateId, to: StateId) -> Result<bool> {
        (**self).exists_transition(from, to)
    }
    fn state_name(&self, q: StateId) -> String {
        (**self).state_name(q)
    }
}

/// An eventually periodic set of letter indices: a union of residue classes
/// `r mod m` and single indices, minus finitely many exceptions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexSet {
    residues: Vec<(usize, usize)>,
    singles: Vec<usize>,
    exceptions: Vec<usize>,
}

impl IndexSet {
    pub fn new() -> Self {
        IndexSet::default()
    }

    /// Every index.
    pub fn all() -> Self {
        IndexSet::new().with_residue(0, 1).expect("1 is a modulus")
    }

    pub fn with_residue(mut self, residue: usize, modulus: usize) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidArgument(format!(
                "bad residue class {residue} mod {modulus}"
            )));
        }
        self.residues.push((residue, modulus));
        Ok(self)
    }

    pub fn with_index(mut self, k: Letter) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("letters are numbered from 1".into()));
        }
        self.singles.push(k);
        Ok(self)
    }

    pub fn without(mut self, k: Letter) -> Self {
        self.exceptions.push(k);
        self
    }

    pub fn residues(&self) -> &[(usize, usize)] {
        &self.residues
    }

    pub fn singles(&self) -> &[usize] {
        &self.singles
    }

    pub fn exceptions(&self) -> &[usize] {
        &self.exceptions
    }

    pub fn contains(&self, k: Letter) -> bool {
        k >= 1
            && !self.exceptions.contains(&k)
            && (self.singles.contains(&k) || self.residues.iter().any(|&(r, m)| k % m == r))
    }

    /// Residue classes are infinite, so only the singles can all be excepted.
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.singles.iter().all(|k| self.exceptions.contains(k))
    }

    /// Least member, if any.
    pub fn least(&self) -> Option<Letter> {
        if self.is_empty() {
            return None;
        }
        (1..).find(|&k| self.contains(k))
    }

    /// Membership is periodic with this period beyond [`IndexSet::threshold`].
    fn period(&self) -> usize {
        self.residues.iter().fold(1, |acc, &(_, m)| lcm(acc, m))
    }

    fn threshold(&self) -> usize {
        self.singles.iter().chain(&self.exceptions).copied().max().unwrap_or(0)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Largest period checked exhaustively when validating a partition.
const MAX_CHECKED_PERIOD: usize = 1 << 20;

/// An effective automaton whose edges carry [`IndexSet`]s; condition (4) is
/// decided by inspecting the sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSetAutomaton {
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    /// `edges[from]` lists `(to, letters)`.
    edges: Vec<Vec<(StateId, IndexSet)>>,
}

impl IndexSetAutomaton {
    /// The letter sets leaving each state must partition the positive integers.
    pub fn new(
        names: Vec<String>,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        edges: impl IntoIterator<Item = (StateId, StateId, IndexSet)>,
    ) -> Result<Self> {
        let n = names.len();
        let check = |q: StateId| {
            if q < n {
                Ok(q)
            } else {
                Err(Error::StateOutOfRange { state: q, count: n })
            }
        };
        check(initial)?;
        let mut acc = vec![false; n];
        for q in accepting {
            acc[check(q)?] = true;
        }
        let mut out: Vec<Vec<(StateId, IndexSet)>> = vec![Vec::new(); n];
        for (p, q, set) in edges {
            out[check(p)?].push((check(q)?, set));
        }
        for (p, row) in out.iter().enumerate() {
            let period = row.iter().try_fold(1usize, |acc, (_, s)| {
                let l = lcm(acc, s.period());
                (l <= MAX_CHECKED_PERIOD).then_some(l)
            });
            let period = period
                .ok_or_else(|| Error::InvalidArgument(format!("letter sets of {} are too irregular", names[p])))?;
            let threshold = row.iter().map(|(_, s)| s.threshold()).max().unwrap_or(0);
            for k in 1..=threshold + period {
                let hits = row.iter().filter(|(_, s)| s.contains(k)).count();
                if hits != 1 {
                    return Err(Error::InconsistentEffective(format!(
                        "letter {k} has {hits} transitions from {}",
                        names[p]
                    )));
                }
            }
        }
        Ok(IndexSetAutomaton {
            names,
            initial,
            accepting: acc,
            edges: out,
        })
    }

    pub fn edges(&self, from: StateId) -> &[(StateId, IndexSet)] {
        &self.edges[from]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    /// `δ(α_{2k}, q₀) = q₀`, `δ(α_{2k+1}, q₀) = q₁`, `δ(α_k, q₁) = q₁`.
    pub fn parity_example(accepting: impl IntoIterator<Item = StateId>) -> Self {
        let even = IndexSet::new().with_residue(0, 2).expect("static");
        let odd = IndexSet::new().with_residue(1, 2).expect("static");
        IndexSetAutomaton::new(
            vec!["q0".into(), "q1".into()],
            0,
            accepting,
            [(0, 0, even), (0, 1, odd), (1, 1, IndexSet::all())],
        )
        .expect("static automaton")
    }
}

impl EffectiveAutomaton for IndexSetAutomaton {
    fn state_count(&self) -> usize {
        self.names.len()
    }

    fn initial(&self) -> StateId {
        self.initial
    }

    fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    fn delta(&self, letter: Letter, q: StateId) -> Result<StateId> {
        if letter == 0 {
            return Err(Error::InvalidArgument("letters are numbered from 1".into()));
        }
        self.edges
            .get(q)
            .ok_or(Error::StateOutOfRange {
                state: q,
                count: self.names.len(),
            })?
            .iter()
            .find(|(_, s)| s.contains(letter))
            .map(|&(t, _)| t)
            .ok_or_else(|| Error::InconsistentEffective(format!("no transition on α{letter}")))
    }

    fn exists_transition(&self, from: StateId, to: StateId) -> Result<bool> {
        let row = self.edges.get(from).ok_or(Error::StateOutOfRange {
            state: from,
            count: self.names.len(),
        })?;
        Ok(row.iter().any(|(t, s)| *t == to && !s.is_empty()))
    }

    fn state_name(&self, q: StateId) -> String {
        self.names[q].clone()
    }
}

fn check_states<A: EffectiveAutomaton + ?Sized>(a: &A, s: &StateSet) -> Result<()> {
    let n = a.state_count();
    match s.iter().find(|&&q| q >= n) {
        Some(&q) => Err(Error::StateOutOfRange { state: q, count: n }),
        None => Ok(()),
    }
}

/// `Δ(S)`: states reachable from `S` by one letter.
pub fn delta_relation<A: EffectiveAutomaton + ?Sized>(a: &A, s: &StateSet) -> Result<StateSet> {
    check_states(a, s)?;
    let mut out = StateSet::new();
    for &p in s {
        for q in 0..a.state_count() {
            if !out.contains(&q) && a.exists_transition(p, q)? {
                out.insert(q);
            }
        }
    }
    Ok(out)
}

/// Least fixpoint of `R ↦ R ∪ Δ(R)` above `S`.
pub fn reachable_closure<A: EffectiveAutomaton + ?Sized>(a: &A, s: &StateSet) -> Result<StateSet> {
    check_states(a, s)?;
    let mut out = s.clone();
    let mut frontier = s.clone();
    while !frontier.is_empty() {
        let next: StateSet = delta_relation(a, &frontier)?.difference(&out).copied().collect();
        out.extend(next.iter().copied());
        frontier = next;
    }
    Ok(out)
}

/// States whose reachable closure contains no accepting state.
pub fn effective_dead_locks<A: EffectiveAutomaton + ?Sized>(a: &A) -> Result<StateSet> {
    let mut dead = StateSet::new();
    for q in 0..a.state_count() {
        if !reachable_closure(a, &StateSet::from([q]))?
            .iter()
            .any(|&p| a.is_accepting(p))
        {
            dead.insert(q);
        }
    }
    Ok(dead)
}

/// Reads `W∞` through `a` until an accepting or a dead-lock state.
pub fn decide_prefix_infinite<A, W>(a: &A, w: &W, fuel: Fuel) -> Result<Outcome>
where
    A: EffectiveAutomaton + ?Sized,
    W: IndexedWord + ?Sized,
{
    decide_prefix_infinite_traced(a, w, fuel, |_, _| {})
}

pub fn decide_prefix_infinite_traced<A, W>(
    a: &A,
    w: &W,
    fuel: Fuel,
    mut trace: impl FnMut(usize, StateId),
) -> Result<Outcome>
where
    A: EffectiveAutomaton + ?Sized,
    W: IndexedWord + ?Sized,
{
    let dead = effective_dead_locks(a)?;
    let mut letters = w.letters_from(1);
    simulate(
        a.initial(),
        |&q| a.is_accepting(q),
        |q| dead.contains(q),
        |&q, i| {
            let l = letters.next().unwrap_or(Err(Error::Stalled { index: i }))?;
            a.delta(l, q)
        },
        fuel,
        |i, &q| trace(i, q),
    )
}

/// The same automaton with its dead-locks as accepting states.
pub struct DeadlockAccepting<A> {
    inner: A,
    accepting: StateSet,
}

impl<A: EffectiveAutomaton> DeadlockAccepting<A> {
    pub fn new(inner: A) -> Result<Self> {
        let accepting = effective_dead_locks(&inner)?;
        Ok(DeadlockAccepting { inner, accepting })
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }
}

impl<A: EffectiveAutomaton> EffectiveAutomaton for DeadlockAccepting<A> {
    fn state_count(&self) -> usize {
        self.inner.state_count()
    }
    fn initial(&self) -> StateId {
        self.inner.initial()
    }
    fn is_accepting(&self, q: StateId) -> bool {
        self.accepting.contains(&q)
    }
    fn delta(&self, letter: Letter, q: StateId) -> Result<StateId> {
        self.inner.delta(letter, q)
    }
    fn exists_transition(&self, from: StateId, to: StateId) -> Result<bool> {
        self.inner.exists_transition(from, to)
    }
    fn state_name(&self, q: StateId) -> String {
        self.inner.state_name(q)
    }
}

/// `|L(a) ∩ Pref(W∞)| = ∞` via the dead-lock-accepting variant.
pub fn decide_buchi_infinite<A, W>(a: A, w: &W, fuel: Fuel) -> Result<Outcome>
where
    A: EffectiveAutomaton,
    W: IndexedWord + ?Sized,
{
    let variant = DeadlockAccepting::new(a)?;
    Ok(decide_prefix_infinite(&variant, w, fuel)?.negated())
}

/// A state of the reduced automaton: a state of the source DFA plus a flag
/// recording whether the last image passed an accepting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AugmentedState {
    pub base: StateId,
    pub bit: bool,
}

impl AugmentedState {
    pub fn index(self) -> StateId {
        self.base * 2 + usize::from(self.bit)
    }

    pub fn from_index(q: StateId) -> Self {
        AugmentedState {
            base: q / 2,
            bit: q % 2 == 1,
        }
    }
}

/// Words leading from `from` to `to` in `a` whose visited-state sequence
/// (endpoints included) meets the accepting set (`passes = true`), or avoids
/// it (`passes = false`).
///
/// Equal to `⋃_{k ∈ F} R_{from,k} · R_{k,to}` for `passes` and to its
/// complement inside `R_{from,to}` otherwise; built as a product of `a` with
/// a passage flag.
pub fn passage_language(a: &Dfa, from: StateId, to: StateId, passes: bool) -> Result<Dfa> {
    let n = a.state_count();
    if let Some(&q) = [from, to].iter().find(|&&q| q >= n) {
        return Err(Error::StateOutOfRange { state: q, count: n });
    }
    let flag = |q: StateId, f: bool| q * 2 + usize::from(f);
    let start = flag(from, a.is_accepting(from));
    Dfa::from_fn(
        a.alphabet().clone(),
        2 * n,
        |p, s| {
            let t = a.step(p / 2, s);
            flag(t, p % 2 == 1 || a.is_accepting(t))
        },
        start,
        [flag(to, passes)],
    )
}

/// [`passage_language`] built literally from unions of concatenations.
pub fn passage_language_by_concatenation(a: &Dfa, from: StateId, to: StateId, passes: bool) -> Result<Dfa> {
    let segment = |i: StateId, j: StateId| -> Result<Dfa> { a.with_initial(i)?.with_accepting(&StateSet::from([j])) };
    let direct = segment(from, to)?;
    let mut through = Dfa::universal(a.alphabet().clone(), false).to_nfa();
    for k in a.accepting_states() {
        let part = segment(from, k)?.to_nfa().concatenate(&segment(k, to)?.to_nfa())?;
        through = through.union(&part)?;
    }
    let through = through.determinize();
    if passes {
        Ok(through)
    } else {
        direct.difference(&through)
    }
}

/// The effective automaton `A∞` over `Q × {0, 1}` simulating `a` on the
/// images of `φ`.
///
/// The initial state is `(q₀, [q₀ ∈ F])`; accepting states are those with
/// bit 1. Transition existence is decided by the morphism's realizability
/// oracle on [`passage_language`]s.
pub struct MorphismAutomaton<M> {
    dfa: Dfa,
    morphism: M,
    edges: Mutex<BTreeMap<(StateId, StateId, bool), bool>>,
}

pub fn reduce_morphism_automaton<M: EffectiveMorphism>(a: &Dfa, morphism: M) -> Result<MorphismAutomaton<M>> {
    if a.alphabet() != morphism.target() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(MorphismAutomaton {
        dfa: a.clone(),
        morphism,
        edges: Mutex::new(BTreeMap::new()),
    })
}

impl<M: EffectiveMorphism> MorphismAutomaton<M> {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn morphism(&self) -> &M {
        &self.morphism
    }

    pub fn augmented_initial(&self) -> AugmentedState {
        let q0 = self.dfa.initial();
        AugmentedState {
            base: q0,
            bit: self.dfa.is_accepting(q0),
        }
    }

    pub fn step(&self, letter: Letter, from: AugmentedState) -> Result<AugmentedState> {
        let image = self.morphism.image(letter)?;
        let visited = self.dfa.visited_states(from.base, &image)?;
        let bit = visited.iter().any(|&q| self.dfa.is_accepting(q));
        Ok(AugmentedState {
            base: *visited.last().expect("non-empty"),
            bit,
        })
    }
}

impl<M: EffectiveMorphism> EffectiveAutomaton for MorphismAutomaton<M> {
    fn state_count(&self) -> usize {
        self.dfa.state_count() * 2
    }

    fn initial(&self) -> StateId {
        self.augmented_initial().index()
    }

    fn is_accepting(&self, q: StateId) -> bool {
        AugmentedState::from_index(q).bit
    }

    fn delta(&self, letter: Letter, q: StateId) -> Result<StateId> {
        if q >= self.state_count() {
            return Err(Error::StateOutOfRange {
                state: q,
                count: self.state_count(),
            });
        }
        Ok(self.step(letter, AugmentedState::from_index(q))?.index())
    }

    fn exists_transition(&self, from: StateId, to: StateId) -> Result<bool> {
        let n = self.state_count();
        if let Some(&q) = [from, to].iter().find(|&&q| q >= n) {
            return Err(Error::StateOutOfRange { state: q, count: n });
        }
        let (p, q) = (AugmentedState::from_index(from), AugmentedState::from_index(to));
        let key = (p.base, q.base, q.bit);
        if let Some(&known) = self.edges.lock().get(&key) {
            return Ok(known);
        }
        let lang = passage_language(&self.dfa, p.base, q.base, q.bit)?;
        let answer = !lang.is_empty() && self.morphism.image_meets(&lang)?;
        self.edges.lock().insert(key, answer);
        Ok(answer)
    }

    fn state_name(&self, q: StateId) -> String {
        let s = AugmentedState::from_index(q);
        format!("({},{})", self.dfa.state_name(s.base), u8::from(s.bit))
    }
}

/// Some prefix of `φ(W∞)` is accepted by `a`.
pub fn decide_prefix_morphism<M, W>(a: &Dfa, morphism: M, w: &W, fuel: Fuel) -> Result<Outcome>
where
    M: EffectiveMorphism,
    W: IndexedWord + ?Sized,
{
    decide_prefix_infinite(&reduce_morphism_automaton(a, morphism)?, w, fuel)
}

/// Infinitely many prefixes of `φ(W∞)` are accepted by `a`.
pub fn decide_buchi_morphism<M, W>(a: &Dfa, morphism: M, w: &W, fuel: Fuel) -> Result<Outcome>
where
    M: EffectiveMorphism,
    W: IndexedWord + ?Sized,
{
    decide_buchi_infinite(reduce_morphism_automaton(a, morphism)?, w, fuel)
}

const SETTLED: u32 = u32::MAX;

/// Runs of an effective automaton through whole segments of one round of
/// the universal indexed word. A segment is the list of all words of one
/// length that share a prefix; the run through it depends only on the entry
/// state and on the prefix's action on states.
struct SegmentRunner<'a, A: ?Sized> {
    automaton: &'a A,
    settled: Vec<bool>,
    /// `letters[d − 1][q] = δ(α_d, q)`.
    letters: Vec<Vec<StateId>>,
    round: usize,
    memo: BTreeMap<(StateId, Vec<u32>, usize, bool), Option<StateId>>,
}

impl<A: EffectiveAutomaton + ?Sized> SegmentRunner<'_, A> {
    fn start_round(&mut self, round: usize) -> Result<()> {
        while self.letters.len() < round {
            let d = self.letters.len() + 1;
            let row = (0..self.automaton.state_count())
                .map(|q| self.automaton.delta(d, q))
                .collect::<Result<Vec<_>>>()?;
            self.letters.push(row);
        }
        self.round = round;
        self.memo.clear();
        Ok(())
    }

    fn then(&self, action: &[u32], d: Letter) -> Vec<u32> {
        action
            .iter()
            .map(|&p| {
                if p == SETTLED {
                    return SETTLED;
                }
                let t = self.letters[d - 1][p as usize];
                if self.settled[t] {
                    SETTLED
                } else {
                    t as u32
                }
            })
            .collect()
    }

    /// Words in a segment with `rest` letters left to choose; `top` when the
    /// word must still use the round's largest letter.
    fn count(&self, rest: usize, top: bool) -> u128 {
        let n = self.round as u128;
        let all = n.saturating_pow(rest as u32);
        if top {
            all - (n - 1).saturating_pow(rest as u32)
        } else {
            all
        }
    }

    /// End state of the run through the segment, `None` if it settles.
    fn run(&mut self, q: StateId, action: &[u32], rest: usize, top: bool) -> Option<StateId> {
        if rest == 0 {
            return match (top, action[q]) {
                (true, _) => Some(q),
                (false, SETTLED) => None,
                (false, t) => Some(t as usize),
            };
        }
        let key = (q, action.to_vec(), rest, top);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let mut cur = Some(q);
        for d in 1..=self.round {
            let next = self.then(action, d);
            cur = self.run(cur.expect("unsettled"), &next, rest - 1, top && d != self.round);
            if cur.is_none() {
                break;
            }
        }
        self.memo.insert(key, cur);
        cur
    }

    /// Offset (in letters) of the settling step inside a segment known to
    /// settle, with the settled state.
    fn locate(
        &mut self,
        q: StateId,
        prefix: &mut Vec<Letter>,
        action: &[u32],
        rest: usize,
        top: bool,
        word_len: usize,
    ) -> Result<(u128, StateId)> {
        if rest == 0 {
            let mut p = q;
            for (i, &d) in prefix.iter().enumerate() {
                p = self.letters[d - 1][p];
                if self.settled[p] {
                    return Ok((i as u128 + 1, p));
                }
            }
            return Err(Error::InconsistentEffective(
                "segment summary disagrees with its word".into(),
            ));
        }
        let mut offset: u128 = 0;
        let mut cur = q;
        for d in 1..=self.round {
            let next = self.then(action, d);
            let child_top = top && d != self.round;
            match self.run(cur, &next, rest - 1, child_top) {
                Some(t) => {
                    offset = offset.saturating_add(self.count(rest - 1, child_top).saturating_mul(word_len as u128));
                    cur = t;
                }
                None => {
                    prefix.push(d);
                    let (o, t) = self.locate(cur, prefix, &next, rest - 1, child_top, word_len)?;
                    return Ok((offset.saturating_add(o), t));
                }
            }
        }
        Err(Error::InconsistentEffective(
            "segment summary disagrees with its parts".into(),
        ))
    }
}

/// [`decide_prefix_infinite`] on the universal indexed word, computed by
/// skipping segments whose run provably does not settle. Returns the same
/// outcome as letter-by-letter simulation, including the evidence position.
pub fn decide_prefix_universal<A: EffectiveAutomaton + ?Sized>(a: &A, fuel: Fuel) -> Result<Outcome> {
    let dead = effective_dead_locks(a)?;
    let settled: Vec<bool> = (0..a.state_count())
        .map(|q| a.is_accepting(q) || dead.contains(&q))
        .collect();
    let verdict = |q: StateId, at: u128| -> Result<Outcome> {
        let at =
            usize::try_from(at).map_err(|_| Error::InvalidArgument("position exceeds the address range".into()))?;
        let answer = if a.is_accepting(q) { Answer::Yes } else { Answer::No };
        Ok(Outcome::Decided(Verdict {
            answer,
            evidence: at,
            steps_used: at,
        }))
    };
    let q0 = a.initial();
    if settled[q0] {
        return verdict(q0, 0);
    }
    let limit = fuel.get() as u128;
    let exhausted = Outcome::FuelExhausted { steps_used: fuel.get() };
    let identity: Vec<u32> = (0..a.state_count() as u32).collect();
    let mut runner = SegmentRunner {
        automaton: a,
        settled,
        letters: Vec::new(),
        round: 0,
        memo: BTreeMap::new(),
    };
    let mut q = q0;
    let mut pos: u128 = 0;
    for round in 1.. {
        if pos >= limit {
            return Ok(exhausted);
        }
        runner.start_round(round)?;
        for len in 1..=round {
            let top = len < round;
            match runner.run(q, &identity, len, top) {
                Some(t) => {
                    pos = pos.saturating_add(runner.count(len, top).saturating_mul(len as u128));
                    q = t;
                }
                None => {
                    let (offset, t) = runner.locate(q, &mut Vec::new(), &identity, len, top, len)?;
                    let at = pos.saturating_add(offset);
                    return if at > limit { Ok(exhausted) } else { verdict(t, at) };
                }
            }
        }
    }
    unreachable!("rounds are unbounded")
}

/// Definitive word of an effective automaton: for every state a shortest
/// `Δ`-path to an accepting state, realized by the least letters found by
/// scanning indices up to `scan_limit`, folded as for finite alphabets.
pub fn effective_definitive_word<A: EffectiveAutomaton + ?Sized>(a: &A, scan_limit: usize) -> Result<Vec<Letter>> {
    let n = a.state_count();
    let dead = effective_dead_locks(a)?;
    let mut witnesses: Vec<Vec<Letter>> = Vec::with_capacity(n);
    for q in 0..n {
        if a.is_accepting(q) || dead.contains(&q) {
            witnesses.push(Vec::new());
            continue;
        }
        let path = delta_path_to_accepting(a, q)?;
        let mut letters = Vec::with_capacity(path.len());
        for pair in path.windows(2) {
            let k = (1..=scan_limit)
                .map(|k| a.delta(k, pair[0]).map(|t| (k, t)))
                .find(|r| !matches!(r, Ok((_, t)) if *t != pair[1]))
                .transpose()?
                .map(|(k, _)| k)
                .ok_or_else(|| {
                    Error::InconsistentEffective(format!(
                        "no letter up to α{scan_limit} moves {} to {}",
                        a.state_name(pair[0]),
                        a.state_name(pair[1])
                    ))
                })?;
            letters.push(k);
        }
        witnesses.push(letters);
    }
    fold_witnesses(&witnesses, |q, w| w.iter().try_fold(q, |p, &k| a.delta(k, p)))
}

fn delta_path_to_accepting<A: EffectiveAutomaton + ?Sized>(a: &A, from: StateId) -> Result<Vec<StateId>> {
    let n = a.state_count();
    let mut parent: Vec<Option<StateId>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(p) = queue.pop_front() {
        if a.is_accepting(p) {
            let mut path = vec![p];
            let mut cur = p;
            while let Some(prev) = parent[cur] {
                path.push(prev);
                cur = prev;
            }
            path.reverse();
            return Ok(path);
        }
        for q in 0..n {
            if !seen[q] && a.exists_transition(p, q)? {
                seen[q] = true;
                parent[q] = Some(p);
                queue.push_back(q);
            }
        }
    }
    Err(Error::InvalidArgument(format!("{} is a dead-lock", a.state_name(from))))
}

/// Fuel certified by a factor-universal word: the position by which a
/// definitive word of `a` has occurred.
pub fn certified_fuel_infinite<A, W>(a: &A, w: &W, scan_limit: usize) -> Result<Option<Fuel>>
where
    A: EffectiveAutomaton + ?Sized,
    W: IndexedWord + ?Sized,
{
    let word = effective_definitive_word(a, scan_limit)?;
    Ok(w.occurrence_bound(&word).map(Fuel::at_least))
}
