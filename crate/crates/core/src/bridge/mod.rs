//! Regular realizability with a filter versus prefix realizability of the
//! word that lists the filter, and a binary word whose prefix problem is
//! decidable by construction.
//!
//! For a filter `L = {w₁, w₂, …}` the word `W = φ(W∞)` with
//! `φ(αᵢ) = wᵢ#` has a prefix in `R̃ = (Σ*#)*R#` exactly when `L ∩ R ≠ ∅`.

pub mod bijection;
pub mod machine;
pub mod theorem1;

use alloc::format;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::decide::{Answer, Fuel, Outcome};
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::infalpha::{certified_fuel_infinite, decide_prefix_universal, reduce_morphism_automaton};
use crate::nfa::Nfa;
use crate::words::{
    apply_morphism, universal_indexed_word, EffectiveMorphism, Letter, MorphicImage, UniversalIndexedWord,
};

pub use bijection::{decode, encode, machines_with_states};
pub use machine::{MachineList, Move, Rule, TuringMachine};
pub use theorem1::{decide_prefix_theorem1, theorem1_word, Block, StageRecord, Theorem1Word};

/// Name of the separator symbol appended to the filter alphabet.
pub const SEPARATOR: &str = "#";

/// Largest letter scanned when realizing a transition of the reduced automaton.
pub const LETTER_SCAN_LIMIT: usize = 1 << 16;

/// A language `L` with decidable membership, a fixed enumeration
/// `w₁, w₂, …` and a decision procedure for `RR(L)`.
pub trait FilterLanguage {
    fn alphabet(&self) -> &Alphabet;

    fn contains(&self, w: &[Symbol]) -> Result<bool>;

    /// `wᵢ`, for `i ≥ 1`. Distinct indices give distinct words.
    fn word(&self, i: usize) -> Result<Word>;

    /// `L ∩ L(r) ≠ ∅`.
    fn realizes(&self, r: &Dfa) -> Result<bool>;
}

impl<T: FilterLanguage + ?Sized> FilterLanguage for &T {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn contains(&self, w: &[Symbol]) -> Result<bool> {
        (**self).contains(w)
    }
    fn word(&self, i: usize) -> Result<Word> {
        (**self).word(i)
    }
    fn realizes(&self, r: &Dfa) -> Result<bool> {
        (**self).realizes(r)
    }
}

/// A regular filter enumerated in shortlex order.
#[derive(Debug, Clone)]
pub struct RegularFilter {
    dfa: Dfa,
    infinite: bool,
}

impl RegularFilter {
    pub fn new(dfa: Dfa) -> Result<Self> {
        let dfa = dfa.trim();
        if dfa.is_empty() {
            return Err(Error::InvalidArgument("filter language is empty".into()));
        }
        let n = dfa.state_count();
        let counts = Self::counts(&dfa, 2 * n);
        let infinite = (n..2 * n).any(|l| counts[l][dfa.initial()] > 0);
        Ok(RegularFilter { dfa, infinite })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// `counts[l][q]`: accepted words of length `l` read from `q`.
    fn counts(dfa: &Dfa, max_len: usize) -> alloc::vec::Vec<alloc::vec::Vec<u128>> {
        let mut out = alloc::vec![dfa
            .states()
            .map(|q| u128::from(dfa.is_accepting(q)))
            .collect::<alloc::vec::Vec<_>>()];
        for l in 1..=max_len {
            let prev = &out[l - 1];
            let row = dfa
                .states()
                .map(|q| {
                    dfa.alphabet()
                        .symbols()
                        .fold(0u128, |acc, s| acc.saturating_add(prev[dfa.step(q, s)]))
                })
                .collect();
            out.push(row);
        }
        out
    }

    /// Position of `w` in the enumeration, if `w ∈ L`.
    pub fn rank(&self, w: &[Symbol]) -> Result<Option<u128>> {
        if !self.dfa.accepts(w)? {
            return Ok(None);
        }
        let counts = Self::counts(&self.dfa, w.len());
        let shorter = (0..w.len()).fold(0u128, |acc, l| acc.saturating_add(counts[l][self.dfa.initial()]));
        let mut q = self.dfa.initial();
        let mut before = 0u128;
        for (p, &s) in w.iter().enumerate() {
            let rest = w.len() - p - 1;
            for t in self.dfa.alphabet().symbols().take_while(|&t| t < s) {
                before = before.saturating_add(counts[rest][self.dfa.step(q, t)]);
            }
            q = self.dfa.step(q, s);
        }
        Ok(Some(shorter + before + 1))
    }
}

impl FilterLanguage for RegularFilter {
    fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    fn contains(&self, w: &[Symbol]) -> Result<bool> {
        self.dfa.accepts(w)
    }

    fn word(&self, i: usize) -> Result<Word> {
        if i == 0 {
            return Err(Error::InvalidArgument("filter words are numbered from 1".into()));
        }
        let n = self.dfa.state_count();
        let q0 = self.dfa.initial();
        let mut rest = (i - 1) as u128;
        let mut counts = Self::counts(&self.dfa, 0);
        let mut len = 0;
        loop {
            let here = counts[len][q0];
            if rest < here {
                break;
            }
            rest -= here;
            len += 1;
            if !self.infinite && len > n {
                return Err(Error::InvalidArgument(format!("filter has fewer than {i} words")));
            }
            if counts.len() <= len {
                counts = Self::counts(&self.dfa, 2 * len);
            }
        }
        let mut q = q0;
        let mut out = Word::empty();
        for p in 0..len {
            let remaining = len - p - 1;
            for s in self.dfa.alphabet().symbols() {
                let t = self.dfa.step(q, s);
                let c = counts[remaining][t];
                if rest < c {
                    out.push(s);
                    q = t;
                    break;
                }
                rest -= c;
            }
        }
        Ok(out)
    }

    fn realizes(&self, r: &Dfa) -> Result<bool> {
        Ok(!self.dfa.intersect(r)?.is_empty())
    }
}

/// `φ(αᵢ) = wᵢ#`. By default `RR(L#)` queries are answered by the filter's
/// own `RR(L)` procedure on the `#`-quotient of the query.
#[derive(Debug, Clone)]
pub struct FilterMorphism<L> {
    filter: L,
    target: Alphabet,
    separator: Symbol,
    image_language: Option<Dfa>,
}

impl<L: FilterLanguage> FilterMorphism<L> {
    pub fn new(filter: L) -> Result<Self> {
        let target = filter.alphabet().extended(SEPARATOR)?;
        let separator = target.symbol(SEPARATOR)?;
        Ok(FilterMorphism {
            filter,
            target,
            separator,
            image_language: None,
        })
    }

    /// Answers oracle queries by intersecting with `L(image)·#` instead.
    pub fn with_regular_image(mut self, image: &Dfa) -> Result<Self> {
        if image.alphabet() != self.filter.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let sep = Dfa::single_word(self.target.clone(), &[self.separator])?.to_nfa();
        let lang = image.embed(&self.target)?.to_nfa().concatenate(&sep)?.determinize();
        self.image_language = Some(lang);
        Ok(self)
    }

    pub fn filter(&self) -> &L {
        &self.filter
    }

    pub fn separator(&self) -> Symbol {
        self.separator
    }
}

/// `{x ∈ Σ* : x# ∈ L(r)}` for `r` over `Σ ∪ {#}`.
pub fn separator_quotient(r: &Dfa, sigma: &Alphabet, separator: Symbol) -> Result<Dfa> {
    let k = sigma.len();
    if r.alphabet().len() != k + 1 || r.alphabet().names()[..k] != sigma.names()[..] {
        return Err(Error::AlphabetMismatch);
    }
    let accepting: alloc::vec::Vec<StateId> = r.states().filter(|&q| r.is_accepting(r.step(q, separator))).collect();
    Dfa::from_fn(
        sigma.clone(),
        r.state_count(),
        |q, s| r.step(q, s),
        r.initial(),
        accepting,
    )
}

impl<L: FilterLanguage> EffectiveMorphism for FilterMorphism<L> {
    fn target(&self) -> &Alphabet {
        &self.target
    }

    fn image(&self, letter: Letter) -> Result<Word> {
        let mut w = self.filter.word(letter)?;
        w.push(self.separator);
        Ok(w)
    }

    fn image_meets(&self, r: &Dfa) -> Result<bool> {
        if r.alphabet() != &self.target {
            return Err(Error::AlphabetMismatch);
        }
        match &self.image_language {
            Some(lang) => Ok(!lang.intersect(r)?.is_empty()),
            None => self
                .filter
                .realizes(&separator_quotient(r, self.filter.alphabet(), self.separator)?),
        }
    }
}

pub type FilterWord<L> = MorphicImage<FilterMorphism<L>, UniversalIndexedWord>;

/// `W = φ(W∞)` with `φ(αᵢ) = wᵢ#`.
pub fn filter_to_word<L: FilterLanguage>(filter: L) -> Result<FilterWord<L>> {
    Ok(apply_morphism(FilterMorphism::new(filter)?, universal_indexed_word()))
}

/// `R̃ = (Σ*#)*·R·#` over `Σ ∪ {#}`.
pub fn rr_to_prefix(r: &Dfa) -> Result<Dfa> {
    if r.alphabet().symbol(SEPARATOR).is_ok() {
        return Err(Error::InvalidArgument(format!(
            "'{SEPARATOR}' is reserved as the separator"
        )));
    }
    let target = r.alphabet().extended(SEPARATOR)?;
    let sep = Dfa::single_word(target.clone(), &[target.symbol(SEPARATOR)?])?.to_nfa();
    let sigma_star = Dfa::universal(r.alphabet().clone(), true).embed(&target)?.to_nfa();
    let chunks: Nfa = sigma_star.concatenate(&sep)?.star();
    Ok(chunks
        .concatenate(&r.embed(&target)?.to_nfa())?
        .concatenate(&sep)?
        .determinize())
}

/// Prefix realizability of `φ(W∞)` decided through the reduced effective
/// automaton, whose transition queries go to the filter's `RR(L)` procedure.
pub fn prefix_via_rr<L: FilterLanguage>(a: &Dfa, filter: L) -> Result<Outcome> {
    prefix_via_morphism(a, FilterMorphism::new(filter)?)
}

/// As [`prefix_via_rr`] for an explicitly configured filter morphism.
pub fn prefix_via_morphism<L: FilterLanguage>(a: &Dfa, morphism: FilterMorphism<L>) -> Result<Outcome> {
    let reduced = reduce_morphism_automaton(a, morphism)?;
    let fuel = certified_fuel_infinite(&reduced, &universal_indexed_word(), LETTER_SCAN_LIMIT)?
        .unwrap_or_else(|| Fuel::at_least(usize::MAX));
    decide_prefix_universal(&reduced, fuel)
}

/// `RR(L)` answered by a prefix-realizability decider for `W` on `R̃`.
pub fn rr_via_prefix(r: &Dfa, decide: impl FnOnce(&Dfa) -> Result<Outcome>) -> Result<Option<Answer>> {
    Ok(decide(&rr_to_prefix(r)?)?.answer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{brute_force_prefix_check, decide_prefix};
    use crate::dfa::fixtures::word;
    use crate::words::{IndexedWord, InfiniteWord};
    use alloc::string::String;
    use alloc::vec::Vec;

    fn zeros_plus() -> RegularFilter {
        let d = Dfa::from_fn(
            Alphabet::binary(),
            3,
            |q, s| if s.0 == 0 && q < 2 { 1 } else { 2 },
            0,
            [1],
        )
        .unwrap();
        RegularFilter::new(d).unwrap()
    }

    fn render(a: &Alphabet, w: &[Symbol]) -> String {
        a.render(w)
    }

    #[test]
    fn regular_filter_enumeration() {
        let f = zeros_plus();
        assert_eq!(f.word(1).unwrap(), word("0"));
        assert_eq!(f.word(4).unwrap(), word("0000"));
        assert_eq!(f.rank(&word("000")).unwrap(), Some(3));
        assert_eq!(f.rank(&word("01")).unwrap(), None);
        let all = RegularFilter::new(Dfa::universal(Alphabet::binary(), true)).unwrap();
        let firsts: Vec<Word> = (1..=7).map(|i| all.word(i).unwrap()).collect();
        let expected: Vec<Word> = ["", "0", "1", "00", "01", "10", "11"].iter().map(|s| word(s)).collect();
        assert_eq!(firsts, expected);
        for i in 1..200 {
            assert_eq!(all.rank(&all.word(i).unwrap()).unwrap(), Some(i as u128));
        }
        let finite = RegularFilter::new(Dfa::single_word(Alphabet::binary(), &word("1")).unwrap()).unwrap();
        assert!(!finite.is_infinite());
        assert!(finite.word(2).is_err());
    }

    #[test]
    fn filter_word_examples() {
        let w = filter_to_word(zeros_plus()).unwrap();
        let sigma = w.morphism().target().clone();
        assert_eq!(render(&sigma, &w.morphism().image(2).unwrap()), "00#");
        assert_eq!(render(&sigma, &w.prefix(2).unwrap()), "0#");
        let prefix = w
            .prefix(w.image_len(UniversalIndexedWord::round_end(5)).unwrap())
            .unwrap();
        for i in 1..=5 {
            let img = w.morphism().image(i).unwrap();
            assert!(prefix.windows(img.len()).any(|win| win == &img[..]));
        }
    }

    #[test]
    fn separator_is_reserved() {
        let ab = Alphabet::new(["0", "#"]).unwrap();
        assert!(rr_to_prefix(&Dfa::universal(ab, true)).is_err());
    }

    #[test]
    fn rr_examples() {
        let sigma = Alphabet::binary();
        let w = filter_to_word(zeros_plus()).unwrap();
        let empty = Dfa::universal(sigma.clone(), false);
        assert!(rr_to_prefix(&empty).unwrap().is_empty());
        assert_eq!(
            rr_via_prefix(&empty, |a| prefix_via_rr(a, zeros_plus())).unwrap(),
            Some(Answer::No)
        );

        let double = Dfa::single_word(sigma.clone(), &word("00")).unwrap();
        let rt = rr_to_prefix(&double).unwrap();
        let fuel = Fuel::at_least(w.image_len(UniversalIndexedWord::round_end(2)).unwrap());
        assert_eq!(decide_prefix(&rt, &w, fuel).unwrap().answer(), Some(Answer::Yes));
        assert_eq!(
            rr_via_prefix(&double, |a| prefix_via_rr(a, zeros_plus())).unwrap(),
            Some(Answer::Yes)
        );

        let one = Dfa::single_word(sigma, &word("1")).unwrap();
        let rt = rr_to_prefix(&one).unwrap();
        assert_eq!(prefix_via_rr(&rt, zeros_plus()).unwrap().answer(), Some(Answer::No));
        assert_eq!(brute_force_prefix_check(&rt, &w, 5000).unwrap(), None);
    }

    #[test]
    fn epsilon_automaton_is_immediate() {
        let target = Alphabet::binary().extended(SEPARATOR).unwrap();
        let all = Dfa::universal(target, true);
        let o = prefix_via_rr(&all, zeros_plus()).unwrap();
        assert_eq!((o.answer(), o.verdict().unwrap().evidence), (Some(Answer::Yes), 0));
    }

    #[test]
    fn oracle_routes_agree() {
        let f = zeros_plus();
        let direct = FilterMorphism::new(zeros_plus())
            .unwrap()
            .with_regular_image(f.dfa())
            .unwrap();
        let quotient = FilterMorphism::new(zeros_plus()).unwrap();
        let sigma = Alphabet::binary();
        for text in ["00", "1", "0", "000"] {
            let rt = rr_to_prefix(&Dfa::single_word(sigma.clone(), &word(text)).unwrap()).unwrap();
            let a = prefix_via_morphism(&rt, direct.clone()).unwrap();
            let b = prefix_via_morphism(&rt, quotient.clone()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn yes_evidence_is_a_letter_position() {
        let sigma = Alphabet::binary();
        let w = filter_to_word(zeros_plus()).unwrap();
        let rt = rr_to_prefix(&Dfa::single_word(sigma, &word("000")).unwrap()).unwrap();
        let v = *prefix_via_rr(&rt, zeros_plus()).unwrap().verdict().unwrap();
        assert_eq!(v.answer, Answer::Yes);
        let source = universal_indexed_word();
        assert_eq!(source.letter_at(v.evidence).unwrap(), 3);
        let symbols = w.image_len(v.evidence).unwrap();
        assert_eq!(brute_force_prefix_check(&rt, &w, symbols).unwrap(), Some(symbols));
    }
}
