//! A binary word built from blocks `b_m = 1 0^m 1`, prefix decidable by a
//! tailored procedure while its Büchi problem encodes halting.
//!
//! Stage `n` appends `w_n u_n`: `w_n` lists the blocks of the machines
//! `k ≤ n` still running after `n` steps, and `u_n` is the shortlex least
//! block concatenation over the allowed ranks that drives the `n`-th DFA
//! (started where `v_n = w₁u₁…w_n` leaves it) through an accepting state.

use alloc::boxed::Box;
use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use spin::Mutex;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::decide::{Answer, Verdict};
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::omega::absorbing_accepting;
use crate::words::{InfiniteWord, SymbolStream};

use super::bijection;
use super::machine::{Configuration, MachineList};

const ZERO: Symbol = Symbol(0);
const ONE: Symbol = Symbol(1);

/// Default bound on the number of stages a word will materialize.
pub const DEFAULT_MAX_STAGE: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block(pub usize);

impl Block {
    pub fn rank(self) -> usize {
        self.0
    }

    pub fn len(self) -> usize {
        self.0 + 2
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn render(self) -> Word {
        core::iter::once(ONE)
            .chain(core::iter::repeat_n(ZERO, self.0))
            .chain(core::iter::once(ONE))
            .collect()
    }
}

/// Splits a block concatenation into ranks.
pub fn parse_blocks(w: &[Symbol]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        if w[i] != ONE {
            return None;
        }
        let zeros = w[i + 1..].iter().take_while(|&&s| s == ZERO).count();
        if w.get(i + 1 + zeros) != Some(&ONE) {
            return None;
        }
        out.push(zeros);
        i += zeros + 2;
    }
    Some(out)
}

/// `(1 0* 1)*`: every block concatenation, including the empty one.
pub fn block_concatenations() -> Dfa {
    Dfa::new(
        Alphabet::binary(),
        ["between".into(), "inside".into(), "sink".into()].into(),
        alloc::vec![alloc::vec![2, 1], alloc::vec![1, 0], alloc::vec![2, 2]],
        0,
        [0],
    )
    .expect("static automaton")
}

/// Block concatenations avoiding the given ranks. Ranks above `bound` are
/// all allowed; every forbidden rank must be at most `bound`.
pub fn allowed_blocks(bound: usize, forbidden: &BTreeSet<usize>) -> Result<Dfa> {
    if forbidden.iter().any(|&r| r > bound) {
        return Err(Error::InvalidArgument(format!(
            "forbidden ranks must not exceed {bound}"
        )));
    }
    // 0: between blocks, 1 + c: inside after c zeros (c = bound + 1 means more), last: sink.
    let sink = bound + 3;
    let step = |q: StateId, s: Symbol| -> StateId {
        match (q, s) {
            (0, s) if s == ONE => 1,
            (0, _) => sink,
            (q, _) if q == sink => sink,
            (q, s) if s == ZERO => (q + 1).min(bound + 2),
            (q, _) if forbidden.contains(&(q - 1)) => sink,
            _ => 0,
        }
    };
    Dfa::from_fn(Alphabet::binary(), bound + 4, step, 0, [0])
}

/// The same language as the difference `L ∖ ⋃_b L·b·L` over forbidden blocks.
pub fn allowed_blocks_by_difference(forbidden: &BTreeSet<usize>) -> Result<Dfa> {
    let l = block_concatenations();
    let ln = l.to_nfa();
    let mut patterns: Option<crate::Nfa> = None;
    for &r in forbidden {
        let b = Dfa::single_word(Alphabet::binary(), &Block(r).render())?.to_nfa();
        let p = ln.concatenate(&b)?.concatenate(&ln)?;
        patterns = Some(match patterns {
            None => p,
            Some(acc) => acc.union(&p)?,
        });
    }
    match patterns {
        None => Ok(l),
        Some(p) => l.difference(&p.determinize()),
    }
}

fn blocks_to_state(a: &Dfa, orbits: &ZeroOrbits, mut q: StateId, blocks: &[usize]) -> StateId {
    for &m in blocks {
        q = a.step(orbits.after(a.step(q, ONE), m), ONE);
    }
    q
}

/// Where `0^m` leads from each state, without reading `m` symbols.
struct ZeroOrbits {
    seqs: Vec<Vec<StateId>>,
    loop_start: Vec<usize>,
    first_accept: Vec<Option<usize>>,
}

impl ZeroOrbits {
    fn new(a: &Dfa) -> Self {
        let mut seqs = Vec::new();
        let mut loop_start = Vec::new();
        let mut first_accept = Vec::new();
        for p in a.states() {
            let mut seq = alloc::vec![p];
            let mut q = a.step(p, ZERO);
            while !seq.contains(&q) {
                seq.push(q);
                q = a.step(q, ZERO);
            }
            loop_start.push(seq.iter().position(|&x| x == q).expect("repeat"));
            first_accept.push((1..=seq.len()).find(|&d| a.is_accepting(Self::at(&seq, loop_start[p], d))));
            seqs.push(seq);
        }
        ZeroOrbits {
            seqs,
            loop_start,
            first_accept,
        }
    }

    fn at(seq: &[StateId], mu: usize, m: usize) -> StateId {
        if m < seq.len() {
            seq[m]
        } else {
            seq[mu + (m - mu) % (seq.len() - mu)]
        }
    }

    fn after(&self, p: StateId, m: usize) -> StateId {
        Self::at(&self.seqs[p], self.loop_start[p], m)
    }
}

/// One stage of the construction. Positions are symbol counts from the
/// start of the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    /// `T_n`, ascending.
    pub survivors: Vec<usize>,
    /// Ranks excluded from `S_n`: `0` and every `k ≤ n` outside `T_n`.
    pub forbidden: Vec<usize>,
    /// Block ranks of `w_n`.
    pub w: Vec<usize>,
    /// Block ranks of `u_n`.
    pub u: Vec<usize>,
    /// State of the stage's DFA after `v_n`.
    pub state_after_v: StateId,
    pub start: usize,
    /// `|v_n|`.
    pub v_len: usize,
    /// `|v_n u_n|`.
    pub end: usize,
    /// Number of blocks in `v_n u_n`.
    pub blocks_through: usize,
}

struct MachineRun {
    config: Configuration,
    halted_at: Option<usize>,
}

#[derive(Default)]
struct Generation {
    stages: Vec<StageRecord>,
    blocks: Vec<usize>,
    ends: Vec<usize>,
    runs: Vec<MachineRun>,
}

/// The word `w₁u₁w₂u₂…`, materialized stage by stage on demand.
pub struct Theorem1Word {
    machines: MachineList,
    alphabet: Alphabet,
    max_stage: usize,
    generation: Mutex<Generation>,
}

pub fn theorem1_word(machines: MachineList) -> Theorem1Word {
    Theorem1Word::new(machines)
}

impl core::fmt::Debug for Theorem1Word {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Theorem1Word")
            .field("machines", &self.machines.len())
            .field("max_stage", &self.max_stage)
            .finish()
    }
}

impl Theorem1Word {
    pub fn new(machines: MachineList) -> Self {
        Theorem1Word {
            machines,
            alphabet: Alphabet::binary(),
            max_stage: DEFAULT_MAX_STAGE,
            generation: Mutex::new(Generation::default()),
        }
    }

    pub fn with_max_stage(mut self, max_stage: usize) -> Self {
        self.max_stage = max_stage;
        self
    }

    pub fn machines(&self) -> &MachineList {
        &self.machines
    }

    pub fn max_stage(&self) -> usize {
        self.max_stage
    }

    /// The record of stage `n ≥ 1`.
    pub fn stage(&self, n: usize) -> Result<StageRecord> {
        if n == 0 {
            return Err(Error::InvalidArgument("stages are numbered from 1".into()));
        }
        let mut g = self.generation.lock();
        while g.stages.len() < n {
            self.next_stage(&mut g)?;
        }
        Ok(g.stages[n - 1].clone())
    }

    /// Block ranks `[from, to)` in emission order, generating as needed.
    pub fn blocks(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        let mut g = self.generation.lock();
        while g.blocks.len() < to {
            self.next_stage(&mut g)?;
        }
        Ok(g.blocks[from.min(to)..to].to_vec())
    }

    fn next_stage(&self, g: &mut Generation) -> Result<()> {
        let n = g.stages.len() + 1;
        if n > self.max_stage {
            return Err(Error::InvalidArgument(format!(
                "stage {n} exceeds the configured limit {}",
                self.max_stage
            )));
        }
        while g.runs.len() < n.min(self.machines.len()) {
            let m = self.machines.get(g.runs.len() + 1).expect("index within list");
            g.runs.push(MachineRun {
                config: m.start(),
                halted_at: None,
            });
        }
        for (i, run) in g.runs.iter_mut().enumerate() {
            let m = self.machines.get(i + 1).expect("index within list");
            while run.halted_at.is_none() && run.config.steps < n {
                if !run.config.step(m) {
                    run.halted_at = Some(run.config.steps + 1);
                }
            }
        }
        let running = |k: usize| g.runs.get(k - 1).is_none_or(|r| r.halted_at.is_none_or(|t| t > n));
        let survivors: Vec<usize> = (1..=n).filter(|&k| running(k)).collect();
        let forbidden: BTreeSet<usize> = core::iter::once(0).chain((1..=n).filter(|&k| !running(k))).collect();

        let a = bijection::decode(n as u128)?;
        let orbits = ZeroOrbits::new(&a);
        let after_previous = blocks_to_state(&a, &orbits, a.initial(), &g.blocks);
        let state_after_v = blocks_to_state(&a, &orbits, after_previous, &survivors);
        let target = absorbing_accepting(&a.with_initial(state_after_v)?).intersect(&allowed_blocks(n, &forbidden)?)?;
        let u = match target.shortlex_smallest() {
            Some(word) => parse_blocks(&word)
                .ok_or_else(|| Error::InconsistentEffective("u_n is not a block concatenation".into()))?,
            None => Vec::new(),
        };
        if let Some(r) = survivors.iter().chain(&u).find(|r| forbidden.contains(r)) {
            return Err(Error::InconsistentEffective(format!(
                "stage {n} emitted forbidden block rank {r}"
            )));
        }

        let start = g.ends.last().copied().unwrap_or(0);
        let mut pos = start;
        let mut v_len = start;
        for (i, &m) in survivors.iter().chain(&u).enumerate() {
            pos += m + 2;
            g.blocks.push(m);
            g.ends.push(pos);
            if i + 1 == survivors.len() {
                v_len = pos;
            }
        }
        g.stages.push(StageRecord {
            stage: n,
            w: survivors.clone(),
            survivors,
            forbidden: forbidden.into_iter().collect(),
            u,
            state_after_v,
            start,
            v_len,
            end: pos,
            blocks_through: g.blocks.len(),
        });
        Ok(())
    }

    fn ensure_symbols(&self, g: &mut Generation, len: usize) -> Result<()> {
        while g.ends.last().copied().unwrap_or(0) < len {
            self.next_stage(g)?;
        }
        Ok(())
    }
}

impl InfiniteWord for Theorem1Word {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn symbol_at(&self, index: usize) -> Result<Symbol> {
        if index == 0 {
            return Err(Error::InvalidArgument("positions are 1-based".into()));
        }
        let mut g = self.generation.lock();
        self.ensure_symbols(&mut g, index)?;
        let b = g.ends.partition_point(|&e| e < index);
        let first = g.ends[b] - (g.blocks[b] + 2) + 1;
        Ok(if index == first || index == g.ends[b] {
            ONE
        } else {
            ZERO
        })
    }

    fn symbols_from(&self, start: usize) -> SymbolStream<'_> {
        Box::new(BlockStream {
            word: self,
            next_block: 0,
            pending: VecDeque::new(),
            skip: start.max(1) - 1,
            failed: false,
        })
    }
}

struct BlockStream<'a> {
    word: &'a Theorem1Word,
    next_block: usize,
    pending: VecDeque<Symbol>,
    skip: usize,
    failed: bool,
}

impl Iterator for BlockStream<'_> {
    type Item = Result<Symbol>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.pending.is_empty() {
            if self.failed {
                return None;
            }
            let batch = match self.word.blocks(self.next_block, self.next_block + 256) {
                Ok(b) => b,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            };
            self.next_block += batch.len();
            for m in batch {
                if self.skip >= m + 2 {
                    self.skip -= m + 2;
                    continue;
                }
                self.pending.extend(&Block(m).render()[self.skip..]);
                self.skip = 0;
            }
        }
        self.pending.pop_front().map(Ok)
    }
}

/// Runs `a` over `v_n u_n`, where `n` is the bijection index of `a`.
pub fn decide_prefix_theorem1(word: &Theorem1Word, a: &Dfa) -> Result<Verdict> {
    if a.alphabet() != word.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let yes = |p: usize| Verdict {
        answer: Answer::Yes,
        evidence: p,
        steps_used: p,
    };
    if a.is_accepting(a.initial()) {
        return Ok(yes(0));
    }
    let n = usize::try_from(bijection::encode(a)?)
        .map_err(|_| Error::InvalidArgument("automaton index too large".into()))?;
    let record = word.stage(n)?;
    let blocks = word.blocks(0, record.blocks_through)?;
    let orbits = ZeroOrbits::new(a);
    let mut q = a.initial();
    let mut pos = 0;
    for m in blocks {
        q = a.step(q, ONE);
        pos += 1;
        if a.is_accepting(q) {
            return Ok(yes(pos));
        }
        if let Some(d) = orbits.first_accept[q].filter(|&d| d <= m) {
            return Ok(yes(pos + d));
        }
        q = a.step(orbits.after(q, m), ONE);
        pos += m + 1;
        if a.is_accepting(q) {
            return Ok(yes(pos));
        }
    }
    Ok(Verdict {
        answer: Answer::No,
        evidence: record.end,
        steps_used: record.end,
    })
}
