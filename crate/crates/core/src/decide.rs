//! Prefix and Büchi realizability deciders against factor-universal words.
//!
//! The empty prefix counts: an accepting initial state is an immediate `Yes`
//! at position 0, and a dead-lock initial state an immediate `No`.

use core::num::NonZeroUsize;

use crate::alphabet::Symbol;
use crate::definitive::find_definitive_word;
use crate::dfa::{Dfa, StateId, StateSet};
use crate::error::{Error, Result};
use crate::words::InfiniteWord;

/// Upper bound on the number of symbols a decider may read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fuel(NonZeroUsize);

impl Fuel {
    pub fn new(max_steps: usize) -> Result<Self> {
        NonZeroUsize::new(max_steps)
            .map(Fuel)
            .ok_or_else(|| Error::InvalidArgument("fuel must be positive".into()))
    }

    /// `max(n, 1)`.
    pub fn at_least(n: usize) -> Self {
        Fuel(NonZeroUsize::new(n.max(1)).expect("positive"))
    }

    pub fn get(self) -> usize {
        self.0.get()
    }

    pub fn scaled(self, factor: usize) -> Self {
        Fuel::at_least(self.get().saturating_mul(factor))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn negate(self) -> Answer {
        match self {
            Answer::Yes => Answer::No,
            Answer::No => Answer::Yes,
        }
    }
}

impl core::fmt::Display for Answer {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
        })
    }
}

/// A terminal answer with the position that settled it.
///
/// For a prefix decision, `evidence` is the length of the first accepted
/// prefix (`Yes`) or the position at which the run entered a dead-lock
/// (`No`). For a Büchi decision it is the position reported by the
/// dead-lock-accepting variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub evidence: usize,
    pub steps_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Decided(Verdict),
    FuelExhausted { steps_used: usize },
}

impl Outcome {
    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            Outcome::Decided(v) => Some(v),
            Outcome::FuelExhausted { .. } => None,
        }
    }

    pub fn answer(&self) -> Option<Answer> {
        self.verdict().map(|v| v.answer)
    }

    pub fn steps_used(&self) -> usize {
        match self {
            Outcome::Decided(v) => v.steps_used,
            Outcome::FuelExhausted { steps_used } => *steps_used,
        }
    }

    pub(crate) fn negated(self) -> Outcome {
        match self {
            Outcome::Decided(v) => Outcome::Decided(Verdict {
                answer: v.answer.negate(),
                ..v
            }),
            other => other,
        }
    }
}

/// Shared simulation loop: position 0 is the start state, position `i` the
/// state after `i` steps.
pub(crate) fn simulate<S>(
    start: S,
    accepting: impl Fn(&S) -> bool,
    dead: impl Fn(&S) -> bool,
    mut step: impl FnMut(&S, usize) -> Result<S>,
    fuel: Fuel,
    mut trace: impl FnMut(usize, &S),
) -> Result<Outcome> {
    let mut cur = start;
    trace(0, &cur);
    let settle = |s: &S, i: usize| {
        if accepting(s) {
            Some(Verdict {
                answer: Answer::Yes,
                evidence: i,
                steps_used: i,
            })
        } else if dead(s) {
            Some(Verdict {
                answer: Answer::No,
                evidence: i,
                steps_used: i,
            })
        } else {
            None
        }
    };
    if let Some(v) = settle(&cur, 0) {
        return Ok(Outcome::Decided(v));
    }
    for i in 1..=fuel.get() {
        cur = step(&cur, i)?;
        trace(i, &cur);
        if let Some(v) = settle(&cur, i) {
            return Ok(Outcome::Decided(v));
        }
    }
    Ok(Outcome::FuelExhausted { steps_used: fuel.get() })
}

fn same_alphabet<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W) -> Result<()> {
    if a.alphabet() == w.alphabet() {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

/// Reads `W` through `a` until an accepting or a dead-lock state.
pub fn decide_prefix<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W, fuel: Fuel) -> Result<Outcome> {
    decide_prefix_traced(a, w, fuel, |_, _| {})
}

/// [`decide_prefix`] reporting every `(position, state)` pair to `trace`.
pub fn decide_prefix_traced<W: InfiniteWord + ?Sized>(
    a: &Dfa,
    w: &W,
    fuel: Fuel,
    mut trace: impl FnMut(usize, StateId),
) -> Result<Outcome> {
    same_alphabet(a, w)?;
    let dead = a.dead_lock_states();
    let mut symbols = w.symbols_from(1);
    simulate(
        a.initial(),
        |&q| a.is_accepting(q),
        |q| dead.contains(q),
        |&q, i| {
            let s: Symbol = symbols.next().unwrap_or(Err(Error::Stalled { index: i }))?;
            Ok(a.step(q, s))
        },
        fuel,
        |i, &q| trace(i, q),
    )
}

/// The same transition structure with the dead-locks as accepting states.
pub fn deadlock_accepting_variant(a: &Dfa) -> Dfa {
    a.with_accepting(&a.dead_lock_states()).expect("states of a")
}

/// `|L(a) ∩ Pref(W)| = ∞` iff the dead-lock-accepting variant accepts no
/// prefix of `W`.
pub fn decide_buchi<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W, fuel: Fuel) -> Result<Outcome> {
    decide_buchi_traced(a, w, fuel, |_, _| {})
}

pub fn decide_buchi_traced<W: InfiniteWord + ?Sized>(
    a: &Dfa,
    w: &W,
    fuel: Fuel,
    trace: impl FnMut(usize, StateId),
) -> Result<Outcome> {
    Ok(decide_prefix_traced(&deadlock_accepting_variant(a), w, fuel, trace)?.negated())
}

/// Least `n ≤ limit` with `W[1, n] ∈ L(a)`.
pub fn brute_force_prefix_check<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W, limit: usize) -> Result<Option<usize>> {
    same_alphabet(a, w)?;
    let mut q = a.initial();
    if a.is_accepting(q) {
        return Ok(Some(0));
    }
    for (i, s) in w.symbols_from(1).take(limit).enumerate() {
        q = a.step(q, s?);
        if a.is_accepting(q) {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// `|{n ∈ [0, limit] : W[1, n] ∈ L(a)}|`.
pub fn count_accepted_prefixes<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W, limit: usize) -> Result<usize> {
    same_alphabet(a, w)?;
    let mut q = a.initial();
    let mut count = usize::from(a.is_accepting(q));
    for s in w.symbols_from(1).take(limit) {
        q = a.step(q, s?);
        count += usize::from(a.is_accepting(q));
    }
    Ok(count)
}

/// Fuel certified by the word: the position by which a definitive word of
/// `a` has occurred. `None` when the word gives no occurrence bound.
pub fn certified_fuel<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W) -> Option<Fuel> {
    w.occurrence_bound(&find_definitive_word(a)).map(Fuel::at_least)
}

/// Fuel certified for [`decide_buchi`], which runs the dead-lock-accepting
/// variant of `a` rather than `a` itself.
pub fn certified_buchi_fuel<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W) -> Option<Fuel> {
    certified_fuel(&deadlock_accepting_variant(a), w)
}

/// All `n ≤ limit` with `W[1, n] ∈ L(a)`.
pub fn accepting_positions<W: InfiniteWord + ?Sized>(a: &Dfa, w: &W, limit: usize) -> Result<alloc::vec::Vec<usize>> {
    same_alphabet(a, w)?;
    let acc: StateSet = a.accepting_states();
    let mut q = a.initial();
    let mut out = alloc::vec::Vec::new();
    if acc.contains(&q) {
        out.push(0);
    }
    for (i, s) in w.symbols_from(1).take(limit).enumerate() {
        q = a.step(q, s?);
        if acc.contains(&q) {
            out.push(i + 1);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::dfa::fixtures::*;
    use crate::omega::absorbing_accepting;
    use crate::words::{champernowne, ultimately_periodic};
    use alloc::vec::Vec;

    fn ends_in_0() -> Dfa {
        Dfa::from_fn(Alphabet::binary(), 2, |_, s| if s.0 == 0 { 1 } else { 0 }, 0, [1]).unwrap()
    }

    fn fuel(n: usize) -> Fuel {
        Fuel::new(n).unwrap()
    }

    #[test]
    fn fuel_is_positive() {
        assert!(Fuel::new(0).is_err());
        assert_eq!(Fuel::at_least(0).get(), 1);
    }

    #[test]
    fn prefix_examples() {
        let w = champernowne(Alphabet::binary());
        let all = Dfa::universal(Alphabet::binary(), true);
        let none = Dfa::universal(Alphabet::binary(), false);
        let v = |o: Outcome| *o.verdict().unwrap();
        let yes0 = v(decide_prefix(&all, &w, fuel(5)).unwrap());
        assert_eq!((yes0.answer, yes0.evidence), (Answer::Yes, 0));
        let no0 = v(decide_prefix(&none, &w, fuel(5)).unwrap());
        assert_eq!((no0.answer, no0.evidence), (Answer::No, 0));
        let c = v(decide_prefix(&contains1(), &w, fuel(100)).unwrap());
        assert_eq!((c.answer, c.evidence, c.steps_used), (Answer::Yes, 2, 2));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let w = champernowne(Alphabet::from_chars("ab").unwrap());
        assert_eq!(decide_prefix(&contains1(), &w, fuel(5)), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn exhausted_fuel_is_not_no() {
        let w = ultimately_periodic(Alphabet::binary(), word(""), word("0")).unwrap();
        assert_eq!(
            decide_prefix(&contains1(), &w, fuel(50)).unwrap(),
            Outcome::FuelExhausted { steps_used: 50 }
        );
    }

    #[test]
    fn variant_examples() {
        let v = deadlock_accepting_variant(&only0());
        assert_eq!(v.accepting_states(), StateSet::from([2]));
        assert!(deadlock_accepting_variant(&contains1()).accepting_states().is_empty());
        for q in v.states() {
            for s in v.alphabet().symbols() {
                assert_eq!(v.step(q, s), only0().step(q, s));
            }
        }
    }

    #[test]
    fn buchi_examples() {
        let w = champernowne(Alphabet::binary());
        assert_eq!(
            decide_buchi(&ends_in_0(), &w, fuel(10)).unwrap().answer(),
            Some(Answer::Yes)
        );
        let o = decide_buchi(&only0(), &w, fuel(10)).unwrap();
        let v = o.verdict().unwrap();
        assert_eq!((v.answer, v.evidence), (Answer::No, 2));
        let all = Dfa::universal(Alphabet::binary(), true);
        assert_eq!(decide_buchi(&all, &w, fuel(10)).unwrap().answer(), Some(Answer::Yes));
    }

    #[test]
    fn oracle_examples() {
        let w = champernowne(Alphabet::binary());
        let all = Dfa::universal(Alphabet::binary(), true);
        assert_eq!(brute_force_prefix_check(&all, &w, 0).unwrap(), Some(0));
        assert_eq!(brute_force_prefix_check(&contains1(), &w, 10).unwrap(), Some(2));
        let long = Dfa::from_fn(Alphabet::binary(), 3, |q, _| (q + 1).min(2), 0, [2]).unwrap();
        let empty = only0().intersect(&long).unwrap();
        assert_eq!(brute_force_prefix_check(&empty, &w, 1000).unwrap(), None);
        let none = Dfa::universal(Alphabet::binary(), false);
        assert_eq!(count_accepted_prefixes(&none, &w, 10).unwrap(), 0);
        assert_eq!(count_accepted_prefixes(&all, &w, 10).unwrap(), 11);
        assert_eq!(count_accepted_prefixes(&ends_in_0(), &w, 10).unwrap(), 5);
        assert_eq!(accepting_positions(&ends_in_0(), &w, 10).unwrap(), [1, 3, 4, 5, 8]);
    }

    #[test]
    fn prefix_yes_implies_buchi_yes_for_absorbing() {
        let w = champernowne(Alphabet::binary());
        for a in [contains1(), only0(), ends_in_0()] {
            let f = certified_fuel(&a, &w).unwrap();
            if decide_prefix(&a, &w, f).unwrap().answer() == Some(Answer::Yes) {
                let b = absorbing_accepting(&a);
                let f = certified_buchi_fuel(&b, &w).unwrap();
                assert_eq!(decide_buchi(&b, &w, f).unwrap().answer(), Some(Answer::Yes));
            }
        }
    }

    #[test]
    fn trace_reports_every_position() {
        let w = champernowne(Alphabet::binary());
        let mut seen: Vec<(usize, StateId)> = Vec::new();
        decide_prefix_traced(&contains1(), &w, fuel(10), |i, q| seen.push((i, q))).unwrap();
        assert_eq!(seen, [(0, 0), (1, 0), (2, 1)]);
    }
}
