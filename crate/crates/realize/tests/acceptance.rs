//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realizability_core::bridge::theorem1::parse_blocks;
use realizability_core::bridge::{
    decide_prefix_theorem1, decode, prefix_via_morphism, prefix_via_rr, rr_to_prefix, rr_via_prefix, theorem1_word,
    FilterMorphism, MachineList, RegularFilter, TuringMachine,
};
use realizability_core::decide::{
    brute_force_prefix_check, certified_buchi_fuel, certified_fuel, count_accepted_prefixes, decide_buchi,
    decide_prefix, Answer, Fuel, Outcome,
};
use realizability_core::definitive::{definitive_language, find_definitive_word, is_definitive};
use realizability_core::infalpha::{
    decide_prefix_infinite, decide_prefix_morphism, reduce_morphism_automaton, IndexSetAutomaton,
};
use realizability_core::omega::{
    absorbing_accepting, macrostate_automaton, muller_acceptance_via_buchi_queries, muller_accepts_ultper,
    prepend_sigma_star, MullerAutomaton, UltimatelyPeriodicOracle,
};
use realizability_core::words::{
    apply_morphism, champernowne, factor_search, universal_indexed_word, BalancedBlockMorphism, EffectiveMorphism,
    InfiniteWord, PeriodicMorphism,
};
use realizability_core::{Alphabet, Dfa, StateSet, Symbol, Word};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| i.to_string())).unwrap()
}

fn random_dfa(rng: &mut ChaCha8Rng, max_states: usize, symbols: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..symbols).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let init = rng.gen_range(0..n);
    Dfa::new(
        alphabet(symbols),
        (0..n).map(|q| format!("s{q}")).collect(),
        table,
        init,
        accepting,
    )
    .unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, len: usize, symbols: usize) -> Word {
    (0..len)
        .map(|_| Symbol(rng.gen_range(0..symbols) as u16))
        .collect::<Vec<_>>()
        .into()
}

fn all_words(max_len: usize, symbols: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..symbols {
                let mut v: Vec<Symbol> = w.clone();
                v.push(Symbol(s as u16));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Word::from));
        layer = next;
    }
    out
}

fn criterion1_suite() -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut suite: Vec<Dfa> = (0..1000)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            random_dfa(&mut rng, 8, k)
        })
        .collect();
    suite.extend((3..=66u128).map(|i| decode(i).unwrap()));
    suite
}

fn binary_suite(seed: u64, count: usize, max_states: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dfa(&mut rng, max_states, 2)).collect()
}

fn c1() -> Check {
    let suite = criterion1_suite();
    for (i, a) in suite.iter().enumerate() {
        let w = find_definitive_word(a);
        if !is_definitive(a, &w).map_err(|e| e.to_string())?.is_certified() {
            return Err(format!("automaton {i}: word of length {} not certified", w.len()));
        }
    }
    Ok(format!("{} automata certified", suite.len()))
}

fn c2() -> Check {
    let words = all_words(6, 2);
    let suite = binary_suite(2, 200, 5);
    for (i, a) in suite.iter().enumerate() {
        let lang = definitive_language(a);
        for w in &words {
            let member = lang.accepts(w).map_err(|e| e.to_string())?;
            let cert = is_definitive(a, w).map_err(|e| e.to_string())?.is_certified();
            if member != cert {
                return Err(format!(
                    "automaton {i}, word of length {}: language {member}, certificate {cert}",
                    w.len()
                ));
            }
        }
    }
    Ok(format!("{} automata x {} words", suite.len(), words.len()))
}

fn c3() -> Check {
    let suite = criterion1_suite();
    for (i, a) in suite.iter().enumerate() {
        let Some(w) = definitive_language(a).shortlex_smallest() else {
            return Err(format!("automaton {i}: empty definitive language"));
        };
        if !is_definitive(a, &w).map_err(|e| e.to_string())?.is_certified() {
            return Err(format!("automaton {i}: shortlex witness not certified"));
        }
    }
    Ok(format!("{} languages non-empty", suite.len()))
}

fn c4() -> Check {
    let w = champernowne(Alphabet::binary());
    let (mut yes, mut no) = (0, 0);
    for (i, a) in binary_suite(4, 200, 5).iter().enumerate() {
        let fuel = certified_fuel(a, &w).ok_or(format!("automaton {i}: no certified fuel"))?;
        let out = decide_prefix(a, &w, fuel).map_err(|e| e.to_string())?;
        let Outcome::Decided(v) = out else {
            return Err(format!("automaton {i}: fuel {} exhausted", fuel.get()));
        };
        match v.answer {
            Answer::Yes => {
                yes += 1;
                let brute = brute_force_prefix_check(a, &w, v.evidence).map_err(|e| e.to_string())?;
                if brute != Some(v.evidence) {
                    return Err(format!("automaton {i}: Yes at {}, brute force {brute:?}", v.evidence));
                }
            }
            Answer::No => {
                no += 1;
                let limit = 10 * fuel.get();
                let brute = brute_force_prefix_check(a, &w, limit).map_err(|e| e.to_string())?;
                if let Some(p) = brute {
                    return Err(format!("automaton {i}: No, but prefix of length {p} accepted"));
                }
            }
        }
    }
    Ok(format!("{yes} Yes, {no} No"))
}

fn c5() -> Check {
    let w = champernowne(Alphabet::binary());
    let (mut yes, mut no) = (0, 0);
    let count = |a: &Dfa, n: usize| count_accepted_prefixes(a, &w, n).map_err(|e| e.to_string());
    for (i, a) in binary_suite(4, 200, 5).iter().enumerate() {
        let fuel = certified_buchi_fuel(a, &w).ok_or(format!("automaton {i}: no certified fuel"))?;
        let Outcome::Decided(v) = decide_buchi(a, &w, fuel).map_err(|e| e.to_string())? else {
            return Err(format!("automaton {i}: fuel {} exhausted", fuel.get()));
        };
        match v.answer {
            Answer::Yes => {
                yes += 1;
                let n = v.evidence + 100;
                let c = [count(a, n)?, count(a, 2 * n)?, count(a, 4 * n)?];
                if !(c[0] < c[1] && c[1] < c[2]) {
                    return Err(format!("automaton {i}: Yes, counts {c:?} at N = {n}"));
                }
            }
            Answer::No => {
                no += 1;
                let e = v.evidence;
                let c = [count(a, e)?, count(a, 4 * (e + 100))?];
                if c[0] != c[1] {
                    return Err(format!("automaton {i}: No at {e}, counts {c:?}"));
                }
            }
        }
    }
    Ok(format!("{yes} Yes, {no} No"))
}

fn c6() -> Check {
    let w = champernowne(Alphabet::binary());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut implied = 0;
    for (i, a) in binary_suite(6, 100, 5).iter().enumerate() {
        let fuel = certified_fuel(a, &w).ok_or(format!("automaton {i}: no certified fuel"))?;
        if decide_prefix(a, &w, fuel).map_err(|e| e.to_string())?.answer() == Some(Answer::Yes) {
            implied += 1;
            let abs = absorbing_accepting(a);
            let fuel = certified_buchi_fuel(&abs, &w).ok_or(format!("automaton {i}: no Büchi fuel"))?;
            let b = decide_buchi(&abs, &w, fuel).map_err(|e| e.to_string())?;
            if b.answer() != Some(Answer::Yes) {
                return Err(format!("automaton {i}: prefix Yes, Büchi {b:?}"));
            }
        }
    }
    for j in 0..100 {
        let len = rng.gen_range(1..=8);
        let x = random_word(&mut rng, len, 2);
        let q = prepend_sigma_star(&Dfa::single_word(Alphabet::binary(), &x).unwrap());
        let fuel = certified_fuel(&q, &w).ok_or(format!("query {j}: no certified fuel"))?;
        let v = *decide_prefix(&q, &w, fuel)
            .map_err(|e| e.to_string())?
            .verdict()
            .ok_or(format!("query {j}: exhausted"))?;
        let direct = factor_search(&w, &x, fuel.get().max(len)).map_err(|e| e.to_string())?;
        let via = (v.answer == Answer::Yes).then(|| v.evidence + 1 - len);
        if direct != via {
            return Err(format!(
                "query {j} (length {len}): factor_search {direct:?}, prefix {via:?}"
            ));
        }
    }
    Ok(format!("{implied} prefix-Yes automata lifted, 100 factor queries"))
}

fn m2() -> MullerAutomaton {
    let ab = Alphabet::from_chars("ab").unwrap();
    let d = Dfa::from_fn(ab, 2, |_, s| s.index(), 0, []).unwrap();
    MullerAutomaton::new(d, vec![StateSet::from([0, 1])]).unwrap()
}

fn c7() -> Check {
    let words = all_words(3, 2);
    let periods: Vec<&Word> = words.iter().filter(|w| !w.is_empty()).collect();
    let mut checked = 0u64;
    for n in 1..=3usize {
        let subsets: Vec<StateSet> = (0..1u32 << n)
            .map(|m| (0..n).filter(|q| m >> q & 1 == 1).collect())
            .collect();
        let mut families: Vec<Vec<StateSet>> = vec![Vec::new()];
        for (i, s) in subsets.iter().enumerate() {
            families.push(vec![s.clone()]);
            for t in &subsets[i + 1..] {
                families.push(vec![s.clone(), t.clone()]);
            }
        }
        for code in 0..n.pow(2 * n as u32) {
            let d = Dfa::from_fn(
                Alphabet::binary(),
                n,
                |q, s| code / n.pow((2 * q + s.index()) as u32) % n,
                0,
                [],
            )
            .unwrap();
            for u in &words {
                for v in &periods {
                    let oracle = UltimatelyPeriodicOracle {
                        stem: u.clone(),
                        period: (*v).clone(),
                    };
                    for f in &families {
                        let m = MullerAutomaton::new(d.clone(), f.clone()).map_err(|e| e.to_string())?;
                        let via = muller_acceptance_via_buchi_queries(&m, &oracle).map_err(|e| e.to_string())?;
                        let exact = muller_accepts_ultper(&m, u, v).map_err(|e| e.to_string())?;
                        if via != exact {
                            return Err(format!("{n} states, code {code}, family {f:?}: {via} vs {exact}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let m = m2();
    let ab = Alphabet::from_chars("ab").unwrap();
    let period = ab.parse_word("ab").unwrap();
    let f = StateSet::from([0, 1]);
    let literal = macrostate_automaton(&m, &f).map_err(|e| e.to_string())?;
    let word: Vec<Symbol> = period
        .iter()
        .copied()
        .cycle()
        .take(2 * (literal.state_count() + 1))
        .collect();
    let visits = literal
        .visited_states(literal.initial(), &word)
        .map_err(|e| e.to_string())?;
    if visits.iter().any(|&q| literal.is_accepting(q)) {
        return Err("macrostate automaton of M2 visits F on (ab)^ω".into());
    }
    if !muller_accepts_ultper(&m, &[], &period).map_err(|e| e.to_string())? {
        return Err("M2 rejects (ab)^ω".into());
    }
    Ok(format!("{checked} Muller queries agree, M2 counterexample confirmed"))
}

fn random_morphism(rng: &mut ChaCha8Rng) -> PeriodicMorphism {
    let m = rng.gen_range(1..=3);
    let rules = (0..m)
        .map(|_| {
            let p = rng.gen_range(0..=2);
            let u = rng.gen_range(1..=2);
            (random_word(rng, p, 2), random_word(rng, u, 2))
        })
        .collect();
    PeriodicMorphism::new(Alphabet::binary(), rules).unwrap()
}

const LETTER_FUEL: usize = 2_000;

/// Agreement of the reduced decision with the symbol-level one, when the
/// latter resolves within the image of the same letter budget.
fn morphism_agrees<M: EffectiveMorphism + Clone>(a: &Dfa, m: M) -> Result<bool, String> {
    let u = universal_indexed_word();
    let reduced = decide_prefix_morphism(a, m.clone(), &u, Fuel::at_least(LETTER_FUEL)).map_err(|e| e.to_string())?;
    let image = apply_morphism(m, u);
    let symbols = image.image_len(LETTER_FUEL).map_err(|e| e.to_string())?;
    let direct = decide_prefix(a, &image, Fuel::at_least(symbols.max(1))).map_err(|e| e.to_string())?;
    Ok(match direct.answer() {
        Some(d) => reduced.answer() == Some(d),
        None => true,
    })
}

fn c8() -> Check {
    let u = universal_indexed_word();
    let example = IndexSetAutomaton::parity_example([0]);
    let v = *decide_prefix_infinite(&example, &u, Fuel::at_least(100))
        .map_err(|e| e.to_string())?
        .verdict()
        .ok_or("example exhausted")?;
    if (v.answer, v.evidence) != (Answer::Yes, 0) {
        return Err(format!("parity example with F = {{q0}}: {v:?}"));
    }
    let fixtures: Vec<Dfa> = (1..=66u128).map(|i| decode(i).unwrap()).collect();
    for (i, a) in fixtures.iter().enumerate() {
        if !morphism_agrees(a, BalancedBlockMorphism::default())? {
            return Err(format!("balanced morphism, automaton {}", i + 1));
        }
        if !morphism_agrees(a, PeriodicMorphism::runs_of_zeros_and_ones())? {
            return Err(format!("runs morphism, automaton {}", i + 1));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for j in 0..50 {
        let a = random_dfa(&mut rng, 4, 2);
        let m = random_morphism(&mut rng);
        if !morphism_agrees(&a, m)? {
            return Err(format!("random pair {j}"));
        }
    }
    for j in 0..1000 {
        let a = random_dfa(&mut rng, 5, 2);
        let m = random_morphism(&mut rng);
        let r = reduce_morphism_automaton(&a, &m).map_err(|e| e.to_string())?;
        let mut state = r.augmented_initial();
        let len = rng.gen_range(1..=12);
        for _ in 0..len {
            let l = rng.gen_range(1..=40);
            let image = m.image(l).map_err(|e| e.to_string())?;
            let visited = a.visited_states(state.base, &image).map_err(|e| e.to_string())?;
            let next = r.step(l, state).map_err(|e| e.to_string())?;
            let bit = visited.iter().any(|&q| a.is_accepting(q));
            if next.base != *visited.last().unwrap() || next.bit != bit {
                return Err(format!("stream {j}: letter {l} gives {next:?}"));
            }
            state = next;
        }
    }
    Ok(format!(
        "{} fixtures x 2 morphisms, 50 random pairs, 1000 streams",
        fixtures.len()
    ))
}

fn c9() -> Check {
    let bin = Alphabet::binary();
    let filters = [
        (
            "0+",
            Dfa::from_fn(bin.clone(), 3, |q, s| if s.0 == 0 && q < 2 { 1 } else { 2 }, 0, [1]).unwrap(),
        ),
        (
            "(01)*",
            Dfa::from_fn(
                bin.clone(),
                3,
                |q, s| match (q, s.0) {
                    (0, 0) => 1,
                    (1, 1) => 0,
                    _ => 2,
                },
                0,
                [0],
            )
            .unwrap(),
        ),
        (
            "S*11S*",
            Dfa::from_fn(
                bin,
                3,
                |q, s| {
                    if q == 2 {
                        2
                    } else if s.0 == 1 {
                        q + 1
                    } else {
                        0
                    }
                },
                0,
                [2],
            )
            .unwrap(),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut yes = 0;
    for (name, l) in &filters {
        let filter = RegularFilter::new(l.clone()).map_err(|e| e.to_string())?;
        for j in 0..50 {
            let r = random_dfa(&mut rng, 4, 2);
            let product = if l.intersect(&r).map_err(|e| e.to_string())?.is_empty() {
                Answer::No
            } else {
                Answer::Yes
            };
            let quotient = rr_via_prefix(&r, |a| prefix_via_rr(a, &filter)).map_err(|e| e.to_string())?;
            let morphism = FilterMorphism::new(&filter).map_err(|e| e.to_string())?;
            let pipeline = rr_to_prefix(&r).map_err(|e| e.to_string())?;
            let direct = prefix_via_morphism(&pipeline, morphism.with_regular_image(l).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                .answer();
            if quotient != Some(product) || direct != Some(product) {
                return Err(format!(
                    "filter {name}, R {j}: product {product}, prefix_via_rr {quotient:?}, pipeline {direct:?}"
                ));
            }
            yes += usize::from(product == Answer::Yes);
        }
    }
    Ok(format!("150 pairs, {yes} realizable"))
}

fn c10() -> Check {
    let machines = || {
        MachineList::new(vec![
            TuringMachine::halting_after(3),
            TuringMachine::looping(),
            TuringMachine::halting_after(7),
        ])
    };
    let a = theorem1_word(machines()).prefix(10_000).map_err(|e| e.to_string())?;
    let b = theorem1_word(machines()).prefix(10_000).map_err(|e| e.to_string())?;
    if a != b {
        return Err("two generations differ".into());
    }
    let w = theorem1_word(machines());
    let mut n = 1;
    while w.stage(n + 1).map_err(|e| e.to_string())?.end <= a.len() {
        n += 1;
    }
    let end = w.stage(n).map_err(|e| e.to_string())?.end;
    let Some(blocks) = parse_blocks(&a[..end]) else {
        return Err("prefix is not a block concatenation".into());
    };
    // machine k halting at step t is forbidden from stage max(k, t) on
    for (k, t) in [(1usize, 3usize), (3, 7)] {
        let after = w.stage(k.max(t) - 1).map_err(|e| e.to_string())?.blocks_through;
        if blocks[after.min(blocks.len())..].contains(&k) {
            return Err(format!("block {k} emitted after its halting stage"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let indices: BTreeSet<u128> = std::iter::from_fn(|| Some(rng.gen_range(1..=150u128)))
        .take(200)
        .collect();
    let indices: Vec<u128> = indices.into_iter().take(50).collect();
    for &i in &indices {
        let d = decode(i).map_err(|e| e.to_string())?;
        let v = decide_prefix_theorem1(&w, &d).map_err(|e| e.to_string())?;
        let end = w.stage(i as usize).map_err(|e| e.to_string())?.end.max(1);
        let g = decide_prefix(&d, &w, Fuel::at_least(10 * end)).map_err(|e| e.to_string())?;
        if g.answer().is_some_and(|g| g != v.answer) {
            return Err(format!("automaton {i}: block decider {v:?}, generic {g:?}"));
        }
        if let (Answer::Yes, Some(g)) = (v.answer, g.verdict()) {
            if g.evidence != v.evidence {
                return Err(format!("automaton {i}: evidence {} vs {}", v.evidence, g.evidence));
            }
        }
    }
    Ok(format!(
        "{} blocks scanned, {} automata agree",
        blocks.len(),
        indices.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("definitive-word soundness", c1),
        ("definitive-language exactness", c2),
        ("definitive-language non-emptiness", c3),
        ("prefix decider vs oracle", c4),
        ("Büchi decider behaviour", c5),
        ("prefix to Büchi and factor reductions", c6),
        ("Muller acceptance via Büchi queries", c7),
        ("infinite-alphabet morphism reduction", c8),
        ("regular realizability round trip", c9),
        ("undecidable-instance word", c10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
