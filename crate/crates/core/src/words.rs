//! Computable infinite words.
//!
//! Positions are 1-based throughout: `symbol_at(1)` is the first symbol and
//! `W[1, n]` is the prefix of length `n`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use spin::Mutex;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::Nfa;

/// Whether a word is certified to contain every finite word as a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Universality {
    FactorUniversal,
    Unknown,
}

/// Subscript `i` of a letter `αᵢ` of the countable alphabet; always `≥ 1`.
pub type Letter = usize;

pub type SymbolStream<'a> = Box<dyn Iterator<Item = Result<Symbol>> + 'a>;
pub type LetterStream<'a> = Box<dyn Iterator<Item = Result<Letter>> + 'a>;

/// An infinite word over a finite alphabet with computable symbols.
pub trait InfiniteWord {
    fn alphabet(&self) -> &Alphabet;

    /// The symbol at 1-based position `index`.
    fn symbol_at(&self, index: usize) -> Result<Symbol>;

    fn universality(&self) -> Universality {
        Universality::Unknown
    }

    /// A position by which `w` is guaranteed to have occurred (as the end of
    /// an occurrence). Only certified factor-universal words provide one.
    fn occurrence_bound(&self, _w: &[Symbol]) -> Option<usize> {
        None
    }

    /// Sequential reading from position `start` onward.
    fn symbols_from(&self, start: usize) -> SymbolStream<'_> {
        Box::new((start.max(1)..).map(move |i| self.symbol_at(i)))
    }

    /// `W[1, n]`.
    fn prefix(&self, n: usize) -> Result<Word> {
        self.symbols_from(1).take(n).collect()
    }
}

impl<T: InfiniteWord + ?Sized> InfiniteWord for &T {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn symbol_at(&self, index: usize) -> Result<Symbol> {
        (**self).symbol_at(index)
    }
    fn universality(&self) -> Universality {
        (**self).universality()
    }
    fn occurrence_bound(&self, w: &[Symbol]) -> Option<usize> {
        (**self).occurrence_bound(w)
    }
    fn symbols_from(&self, start: usize) -> SymbolStream<'_> {
        (**self).symbols_from(start)
    }
}

/// An infinite word over the countable alphabet `{α₁, α₂, …}`.
pub trait IndexedWord {
    fn letter_at(&self, index: usize) -> Result<Letter>;

    fn universality(&self) -> Universality {
        Universality::Unknown
    }

    fn occurrence_bound(&self, _w: &[Letter]) -> Option<usize> {
        None
    }

    fn letters_from(&self, start: usize) -> LetterStream<'_> {
        Box::new((start.max(1)..).map(move |i| self.letter_at(i)))
    }

    fn prefix(&self, n: usize) -> Result<Vec<Letter>> {
        self.letters_from(1).take(n).collect()
    }
}

impl<T: IndexedWord + ?Sized> IndexedWord for &T {
    fn letter_at(&self, index: usize) -> Result<Letter> {
        (**self).letter_at(index)
    }
    fn universality(&self) -> Universality {
        (**self).universality()
    }
    fn occurrence_bound(&self, w: &[Letter]) -> Option<usize> {
        (**self).occurrence_bound(w)
    }
    fn letters_from(&self, start: usize) -> LetterStream<'_> {
        (**self).letters_from(start)
    }
}

fn saturate(x: u128) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Concatenation of all non-empty words over an alphabet in shortlex order.
#[derive(Debug, Clone)]
pub struct Champernowne {
    alphabet: Alphabet,
}

pub fn champernowne(alphabet: Alphabet) -> Champernowne {
    Champernowne { alphabet }
}

impl Champernowne {
    /// Offset (0-based) where the length-`len` section begins.
    fn section_start(&self, len: usize) -> u128 {
        let k = self.alphabet.len() as u128;
        (1..len).fold(0u128, |acc, j| {
            acc.saturating_add((j as u128).saturating_mul(pow(k, j)))
        })
    }

    fn rank(&self, w: &[Symbol]) -> u128 {
        let k = self.alphabet.len() as u128;
        w.iter()
            .fold(0u128, |acc, s| acc.saturating_mul(k).saturating_add(s.index() as u128))
    }
}

impl InfiniteWord for Champernowne {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn symbol_at(&self, index: usize) -> Result<Symbol> {
        if index == 0 {
            return Err(Error::InvalidArgument("positions start at 1".into()));
        }
        let k = self.alphabet.len() as u128;
        let mut offset = (index - 1) as u128;
        let mut len = 1usize;
        loop {
            let section = (len as u128) * pow(k, len);
            if offset < section {
                break;
            }
            offset -= section;
            len += 1;
        }
        let rank = offset / len as u128;
        let digit = len - 1 - (offset % len as u128) as usize;
        Ok(Symbol(((rank / pow(k, digit)) % k) as u16))
    }

    fn universality(&self) -> Universality {
        Universality::FactorUniversal
    }

    /// End position of the block that enumerates `w` itself.
    fn occurrence_bound(&self, w: &[Symbol]) -> Option<usize> {
        if w.is_empty() {
            return Some(0);
        }
        let start = self.section_start(w.len());
        let end = start
            .saturating_add(self.rank(w).saturating_mul(w.len() as u128))
            .saturating_add(w.len() as u128);
        Some(saturate(end))
    }

    fn symbols_from(&self, start: usize) -> SymbolStream<'_> {
        Box::new(ChampernowneStream::new(self, start.max(1)))
    }
}

/// Odometer over the shortlex enumeration; avoids per-position arithmetic.
struct ChampernowneStream {
    k: u16,
    digits: Vec<u16>,
    pos: usize,
}

impl ChampernowneStream {
    fn new(word: &Champernowne, start: usize) -> Self {
        let k = word.alphabet.len() as u128;
        let mut offset = (start - 1) as u128;
        let mut len = 1usize;
        while offset >= (len as u128) * pow(k, len) {
            offset -= (len as u128) * pow(k, len);
            len += 1;
        }
        let mut rank = offset / len as u128;
        let mut digits = alloc::vec![0u16; len];
        for d in digits.iter_mut().rev() {
            *d = (rank % k) as u16;
            rank /= k;
        }
        ChampernowneStream {
            k: k as u16,
            digits,
            pos: (offset % len as u128) as usize,
        }
    }
}

impl Iterator for ChampernowneStream {
    type Item = Result<Symbol>;
    fn next(&mut self) -> Option<Self::Item> {
        let s = Symbol(self.digits[self.pos]);
        self.pos += 1;
        if self.pos == self.digits.len() {
            self.pos = 0;
            let mut i = self.digits.len();
            loop {
                if i == 0 {
                    let len = self.digits.len() + 1;
                    self.digits.clear();
                    self.digits.resize(len, 0);
                    break;
                }
                i -= 1;
                self.digits[i] += 1;
                if self.digits[i] < self.k {
                    break;
                }
                self.digits[i] = 0;
            }
        }
        Some(Ok(s))
    }
}

/// The word `u·v·v·v·…`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltimatelyPeriodic {
    alphabet: Alphabet,
    stem: Word,
    period: Word,
}

pub fn ultimately_periodic(alphabet: Alphabet, stem: Word, period: Word) -> Result<UltimatelyPeriodic> {
    if period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    for &s in stem.iter().chain(period.iter()) {
        alphabet.check(s)?;
    }
    Ok(UltimatelyPeriodic { alphabet, stem, period })
}

impl UltimatelyPeriodic {
    pub fn stem(&self) -> &Word {
        &self.stem
    }

    pub fn period(&self) -> &Word {
        &self.period
    }
}

impl InfiniteWord for UltimatelyPeriodic {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn symbol_at(&self, index: usize) -> Result<Symbol> {
        if index == 0 {
            return Err(Error::InvalidArgument("positions start at 1".into()));
        }
        let i = index - 1;
        Ok(if i < self.stem.len() {
            self.stem[i]
        } else {
            self.period[(i - self.stem.len()) % self.period.len()]
        })
    }
}

/// A word whose symbols come from a closure.
pub struct WordFn<F> {
    alphabet: Alphabet,
    f: F,
}

impl<F: Fn(usize) -> Symbol> WordFn<F> {
    pub fn new(alphabet: Alphabet, f: F) -> Self {
        WordFn { alphabet, f }
    }
}

impl<F: Fn(usize) -> Symbol> InfiniteWord for WordFn<F> {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn symbol_at(&self, index: usize) -> Result<Symbol> {
        let s = (self.f)(index);
        self.alphabet.check(s)?;
        Ok(s)
    }
}

/// A countable-alphabet word whose letters come from a closure.
pub struct LetterFn<F>(pub F);

impl<F: Fn(usize) -> Letter> IndexedWord for LetterFn<F> {
    fn letter_at(&self, index: usize) -> Result<Letter> {
        match (self.0)(index) {
            0 => Err(Error::InvalidArgument("letters are numbered from 1".into())),
            l => Ok(l),
        }
    }
}

/// Round-based word containing every finite word over `{α₁, α₂, …}`.
///
/// Round `n` emits, in shortlex order of index sequences, every word of
/// length at most `n` over `{α₁..αₙ}` not emitted by an earlier round, i.e.
/// all words of length `n` together with the shorter words that use `αₙ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniversalIndexedWord;

pub fn universal_indexed_word() -> UniversalIndexedWord {
    UniversalIndexedWord
}

impl UniversalIndexedWord {
    /// Number of words of length `len` emitted in round `round`.
    pub fn words_in_group(round: usize, len: usize) -> u128 {
        let n = round as u128;
        if len == round {
            pow(n, len)
        } else {
            pow(n, len).saturating_sub(pow(n - 1, len))
        }
    }

    /// Number of letters emitted by round `round`.
    pub fn round_len(round: usize) -> u128 {
        (1..=round).fold(0u128, |acc, len| {
            acc.saturating_add((len as u128).saturating_mul(Self::words_in_group(round, len)))
        })
    }

    /// Position of the last letter of round `round` (0 for round 0).
    pub fn round_end(round: usize) -> usize {
        saturate((1..=round).fold(0u128, |acc, r| acc.saturating_add(Self::round_len(r))))
    }

    /// Round and 0-based offset inside it for a 1-based position.
    fn locate(index: usize) -> (usize, u128) {
        let mut offset = (index - 1) as u128;
        let mut round = 1;
        loop {
            let len = Self::round_len(round);
            if offset < len {
                return (round, offset);
            }
            offset -= len;
            round += 1;
        }
    }

    /// The `rank`-th word (lexicographic, 0-based) of length `len` in round `round`.
    fn unrank(round: usize, len: usize, mut rank: u128) -> Vec<Letter> {
        let n = round;
        let mut out = Vec::with_capacity(len);
        let mut has_top = len == round;
        for p in 0..len {
            let rest = len - p - 1;
            for d in 1..=n {
                let top = has_top || d == n;
                let completions = if top {
                    pow(n as u128, rest)
                } else {
                    pow(n as u128, rest).saturating_sub(pow(n as u128 - 1, rest))
                };
                if rank < completions {
                    out.push(d);
                    has_top = top;
                    break;
                }
                rank -= completions;
            }
        }
        out
    }
}

impl IndexedWord for UniversalIndexedWord {
    fn letter_at(&self, index: usize) -> Result<Letter> {
        if index == 0 {
            return Err(Error::InvalidArgument("positions start at 1".into()));
        }
        let (round, mut offset) = Self::locate(index);
        for len in 1..=round {
            let group = (len as u128) * Self::words_in_group(round, len);
            if offset < group {
                let word = Self::unrank(round, len, offset / len as u128);
                return Ok(word[(offset % len as u128) as usize]);
            }
            offset -= group;
        }
        unreachable!("offset lies inside its round")
    }

    fn universality(&self) -> Universality {
        Universality::FactorUniversal
    }

    /// End of round `max(max letter, length)`, which emits the word whole.
    fn occurrence_bound(&self, w: &[Letter]) -> Option<usize> {
        if w.is_empty() {
            return Some(0);
        }
        let round = w.iter().copied().max().unwrap_or(0).max(w.len());
        Some(Self::round_end(round))
    }

    fn letters_from(&self, start: usize) -> LetterStream<'_> {
        Box::new(UniversalStream::new().skip(start.max(1) - 1))
    }
}

/// Sequential generator of the universal indexed word.
struct UniversalStream {
    round: usize,
    len: usize,
    digits: Vec<Letter>,
    pos: usize,
    exhausted_group: bool,
}

impl UniversalStream {
    fn new() -> Self {
        let mut s = UniversalStream {
            round: 1,
            len: 1,
            digits: Vec::new(),
            pos: 0,
            exhausted_group: false,
        };
        s.start_group();
        s
    }

    fn valid(&self) -> bool {
        self.len == self.round || self.digits.contains(&self.round)
    }

    fn start_group(&mut self) {
        self.digits.clear();
        self.digits.resize(self.len, 1);
        self.pos = 0;
        self.exhausted_group = false;
        if !self.valid() {
            self.next_word();
        }
    }

    /// Lexicographic successor among words of the current group.
    fn next_word(&mut self) {
        loop {
            let mut i = self.len;
            loop {
                if i == 0 {
                    self.exhausted_group = true;
                    return;
                }
                i -= 1;
                if self.digits[i] < self.round {
                    self.digits[i] += 1;
                    for d in &mut self.digits[i + 1..] {
                        *d = 1;
                    }
                    break;
                }
            }
            if self.valid() {
                return;
            }
        }
    }
}

impl Iterator for UniversalStream {
    type Item = Result<Letter>;
    fn next(&mut self) -> Option<Self::Item> {
        while self.exhausted_group {
            if self.len < self.round {
                self.len += 1;
            } else {
                self.round += 1;
                self.len = 1;
            }
            self.start_group();
        }
        let l = self.digits[self.pos];
        self.pos += 1;
        if self.pos == self.len {
            self.pos = 0;
            self.next_word();
        }
        Some(Ok(l))
    }
}

/// A computable map from letters to finite words, together with a decision
/// procedure for regular realizability of its image language `L_φ`.
pub trait EffectiveMorphism {
    fn target(&self) -> &Alphabet;

    fn image(&self, letter: Letter) -> Result<Word>;

    /// Decides `L(r) ∩ L_φ ≠ ∅` for a DFA `r` over the target alphabet.
    fn image_meets(&self, r: &Dfa) -> Result<bool>;
}

impl<T: EffectiveMorphism + ?Sized> EffectiveMorphism for &T {
    fn target(&self) -> &Alphabet {
        (**self).target()
    }
    fn image(&self, letter: Letter) -> Result<Word> {
        (**self).image(letter)
    }
    fn image_meets(&self, r: &Dfa) -> Result<bool> {
        (**self).image_meets(r)
    }
}

/// `φ(α_k) = prefix_r · unit_r^q` for `k = q·m + r`, `0 ≤ r < m`.
///
/// The image language is `⋃_r prefix_r · unit_r^{q_min(r)} · unit_r*` with
/// `q_min(0) = 1` (letters start at 1) and `q_min(r) = 0` otherwise, so it
/// is regular and the realizability oracle is a product-emptiness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicMorphism {
    target: Alphabet,
    rules: Vec<(Word, Word)>,
}

impl PeriodicMorphism {
    /// `rules[r] = (prefix_r, unit_r)`; the modulus is `rules.len()`.
    pub fn new(target: Alphabet, rules: Vec<(Word, Word)>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidArgument(
                "periodic morphism needs at least one rule".into(),
            ));
        }
        for (p, u) in &rules {
            for &s in p.iter().chain(u.iter()) {
                target.check(s)?;
            }
        }
        Ok(PeriodicMorphism { target, rules })
    }

    pub fn modulus(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    /// `φ(α_{2k}) = 0^k`, `φ(α_{2k+1}) = 1^k` over `{0, 1}`.
    pub fn runs_of_zeros_and_ones() -> Self {
        let bin = Alphabet::binary();
        PeriodicMorphism::new(
            bin,
            alloc::vec![
                (Word::empty(), Word::from(alloc::vec![Symbol(0)])),
                (Word::empty(), Word::from(alloc::vec![Symbol(1)])),
            ],
        )
        .expect("static rules")
    }

    /// `α_i ↦ σ_{(i−1) mod |Σ|}`: the identity on `α₁..α_|Σ|`, repeated.
    pub fn relabel(target: Alphabet) -> Self {
        let k = target.len();
        let rules = (0..k)
            .map(|r| {
                let s = Symbol(((r + k - 1) % k) as u16);
                (Word::from(alloc::vec![s]), Word::empty())
            })
            .collect();
        PeriodicMorphism { target, rules }
    }

    /// An NFA for the image language.
    pub fn image_language(&self) -> Nfa {
        let mut lang = Dfa::universal(self.target.clone(), false).to_nfa();
        for (r, (prefix, unit)) in self.rules.iter().enumerate() {
            let mut head = prefix.clone();
            let q_min = usize::from(r == 0);
            for _ in 0..q_min {
                head.extend_from(unit);
            }
            let head = Dfa::single_word(self.target.clone(), &head).expect("checked").to_nfa();
            let part = if unit.is_empty() {
                head
            } else {
                let unit = Dfa::single_word(self.target.clone(), unit).expect("checked").to_nfa();
                head.concatenate(&unit.star()).expect("same alphabet")
            };
            lang = lang.union(&part).expect("same alphabet");
        }
        lang
    }
}

impl EffectiveMorphism for PeriodicMorphism {
    fn target(&self) -> &Alphabet {
        &self.target
    }

    fn image(&self, letter: Letter) -> Result<Word> {
        if letter == 0 {
            return Err(Error::InvalidArgument("letters are numbered from 1".into()));
        }
        let m = self.rules.len();
        let (prefix, unit) = &self.rules[letter % m];
        let mut w = prefix.clone();
        for _ in 0..letter / m {
            w.extend_from(unit);
        }
        Ok(w)
    }

    fn image_meets(&self, r: &Dfa) -> Result<bool> {
        if r.alphabet() != &self.target {
            return Err(Error::AlphabetMismatch);
        }
        Ok(!self.image_language().determinize().intersect(r)?.is_empty())
    }
}

/// `φ(α_{2k}) = 0^k 1^k`, `φ(α_{2k+1}) = 1^k`: a morphism whose image
/// language `{0^k 1^k : k ≥ 1} ∪ 1*` is context-free but not regular.
#[derive(Debug, Clone)]
pub struct BalancedBlockMorphism {
    target: Alphabet,
}

impl Default for BalancedBlockMorphism {
    fn default() -> Self {
        BalancedBlockMorphism {
            target: Alphabet::binary(),
        }
    }
}

/// Tail length and period of the iterates of a self-map given as a table.
fn iterate_period<T: Clone + Ord>(start: T, mut step: impl FnMut(&T) -> T) -> (usize, usize) {
    let mut seen = alloc::collections::BTreeMap::new();
    let mut cur = start;
    let mut i = 0;
    loop {
        if let Some(&j) = seen.get(&cur) {
            return (j, i - j);
        }
        seen.insert(cur.clone(), i);
        cur = step(&cur);
        i += 1;
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl EffectiveMorphism for BalancedBlockMorphism {
    fn target(&self) -> &Alphabet {
        &self.target
    }

    fn image(&self, letter: Letter) -> Result<Word> {
        if letter == 0 {
            return Err(Error::InvalidArgument("letters are numbered from 1".into()));
        }
        let k = letter / 2;
        let mut w = Word::empty();
        if letter.is_multiple_of(2) {
            (0..k).for_each(|_| w.push(Symbol(0)));
        }
        (0..k).for_each(|_| w.push(Symbol(1)));
        Ok(w)
    }

    /// `k ↦ δ(1^k, δ(0^k, q₀))` is eventually periodic; scanning one tail
    /// plus one common period of the two iterated maps covers every value.
    fn image_meets(&self, r: &Dfa) -> Result<bool> {
        if r.alphabet() != &self.target {
            return Err(Error::AlphabetMismatch);
        }
        let zero = Symbol(0);
        let one = Symbol(1);
        let ones = Dfa::single_word(self.target.clone(), &[one])?
            .to_nfa()
            .star()
            .determinize();
        if !ones.intersect(r)?.is_empty() {
            return Ok(true);
        }
        let (t0, p0) = iterate_period(r.initial(), |&q| r.step(q, zero));
        let identity: Vec<usize> = r.states().collect();
        let (t1, p1) = iterate_period(identity, |f| f.iter().map(|&q| r.step(q, one)).collect());
        let bound = t0.max(t1) + p0 / gcd(p0, p1) * p1;
        let mut after_zeros = r.initial();
        for k in 1..=bound.max(1) {
            after_zeros = r.step(after_zeros, zero);
            let end = (0..k).fold(after_zeros, |q, _| r.step(q, one));
            if r.is_accepting(end) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `φ(W∞)`: the concatenation of the images of the letters of `W∞`.
pub struct MorphicImage<M, W> {
    morphism: M,
    source: W,
    stall_budget: usize,
    cache: Mutex<ImageCache>,
}

#[derive(Default)]
struct ImageCache {
    symbols: Vec<Symbol>,
    letters_read: usize,
}

/// Consecutive erasing letters tolerated before reporting a stall.
pub const DEFAULT_STALL_BUDGET: usize = 100_000;

pub fn apply_morphism<M: EffectiveMorphism, W: IndexedWord>(morphism: M, source: W) -> MorphicImage<M, W> {
    MorphicImage {
        morphism,
        source,
        stall_budget: DEFAULT_STALL_BUDGET,
        cache: Mutex::new(ImageCache::default()),
    }
}

impl<M: EffectiveMorphism, W: IndexedWord> MorphicImage<M, W> {
    pub fn with_stall_budget(mut self, budget: usize) -> Self {
        self.stall_budget = budget;
        self
    }

    pub fn morphism(&self) -> &M {
        &self.morphism
    }

    pub fn source(&self) -> &W {
        &self.source
    }

    /// Length of `φ(W∞[1, m])`.
    pub fn image_len(&self, letters: usize) -> Result<usize> {
        self.source
            .letters_from(1)
            .take(letters)
            .try_fold(0usize, |acc, l| Ok(acc + self.morphism.image(l?)?.len()))
    }
}

impl<M: EffectiveMorphism, W: IndexedWord> InfiniteWord for MorphicImage<M, W> {
    fn alphabet(&self) -> &Alphabet {
        self.morphism.target()
    }

    fn symbol_at(&self, index: usize) -> Result<Symbol> {
        if index == 0 {
            return Err(Error::InvalidArgument("positions start at 1".into()));
        }
        let mut cache = self.cache.lock();
        let mut erasing = 0;
        while cache.symbols.len() < index {
            let letter = self.source.letter_at(cache.letters_read + 1)?;
            let image = self.morphism.image(letter)?;
            cache.letters_read += 1;
            if image.is_empty() {
                erasing += 1;
                if erasing > self.stall_budget {
                    return Err(Error::Stalled { index });
                }
            } else {
                erasing = 0;
                cache.symbols.extend_from_slice(&image);
            }
        }
        Ok(cache.symbols[index - 1])
    }

    fn symbols_from(&self, start: usize) -> SymbolStream<'_> {
        let start = start.max(1);
        let mut letters = self.source.letters_from(1);
        let mut buffer: Vec<Symbol> = Vec::new();
        let mut at = 0usize;
        let mut produced = 0usize;
        let budget = self.stall_budget;
        Box::new(core::iter::from_fn(move || loop {
            if at < buffer.len() {
                let s = buffer[at];
                at += 1;
                produced += 1;
                if produced >= start {
                    return Some(Ok(s));
                }
                continue;
            }
            let mut erasing = 0;
            loop {
                let image = match letters.next()?.and_then(|l| self.morphism.image(l)) {
                    Ok(w) => w,
                    Err(e) => return Some(Err(e)),
                };
                if !image.is_empty() {
                    buffer = image.into_vec();
                    at = 0;
                    break;
                }
                erasing += 1;
                if erasing > budget {
                    return Some(Err(Error::Stalled { index: produced + 1 }));
                }
            }
        }))
    }
}

/// Least start position `p ≤ limit − |w| + 1` of an occurrence of `w`.
pub fn factor_search<W: InfiniteWord + ?Sized>(word: &W, w: &[Symbol], limit: usize) -> Result<Option<usize>> {
    if w.is_empty() {
        return Ok(Some(1));
    }
    if limit < w.len() {
        return Err(Error::InvalidArgument("search limit shorter than the pattern".into()));
    }
    // Knuth–Morris–Pratt failure table
    let mut fail = alloc::vec![0usize; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut matched = 0;
    for (i, s) in word.symbols_from(1).take(limit).enumerate() {
        let s = s?;
        while matched > 0 && s != w[matched] {
            matched = fail[matched - 1];
        }
        if s == w[matched] {
            matched += 1;
        }
        if matched == w.len() {
            return Ok(Some(i + 2 - w.len()));
        }
    }
    Ok(None)
}
