mod common;

use common::{dfa_strategy, word_strategy};
use proptest::prelude::*;
use realizability_core::omega::{
    deterministic_lasso, macrostate_automaton, muller_acceptance_via_buchi_queries, muller_accepts_ultper,
    MullerAutomaton, UltimatelyPeriodicOracle,
};
use realizability_core::StateSet;

fn muller_strategy() -> impl Strategy<Value = MullerAutomaton> {
    dfa_strategy(4, 2).prop_flat_map(|d| {
        let n = d.state_count();
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n), 0..4)
            .prop_map(move |family| MullerAutomaton::new(d.clone(), family).unwrap())
    })
}

proptest! {
    #[test]
    fn state_queries_recover_limit_sets(m in muller_strategy(), u in word_strategy(4, 2), v in word_strategy(4, 2)) {
        prop_assume!(!v.is_empty());
        let oracle = UltimatelyPeriodicOracle { stem: u.clone(), period: v.clone() };
        prop_assert_eq!(
            muller_acceptance_via_buchi_queries(&m, &oracle).unwrap(),
            muller_accepts_ultper(&m, &u, &v).unwrap()
        );
    }

    #[test]
    fn macrostate_automaton_tracks_visited_sets(m in muller_strategy(), u in word_strategy(6, 2)) {
        let d = m.structure();
        let all: StateSet = d.states().collect();
        let macro_all = macrostate_automaton(&m, &all).unwrap();
        let end = macro_all.run(macro_all.initial(), &u).unwrap();
        let expected: StateSet = [d.run(d.initial(), &u).unwrap()].into();
        prop_assert_eq!(macro_all.state_name(end), format!("{{{}}}", d.state_name(*expected.iter().next().unwrap())));
    }

    #[test]
    fn lasso_cycle_is_the_limit(m in muller_strategy(), u in word_strategy(4, 2), v in word_strategy(4, 2)) {
        prop_assume!(!v.is_empty());
        let d = m.structure();
        let lasso = deterministic_lasso(d, &u, &v).unwrap();
        let limit = lasso.limit_set();
        let mut q = d.run(d.initial(), &u).unwrap();
        for _ in 0..(d.state_count() + 1) {
            q = d.run(q, &v).unwrap();
        }
        let mut seen = StateSet::new();
        for _ in 0..(d.state_count() + 1) {
            seen.extend(d.visited_states(q, &v).unwrap());
            q = d.run(q, &v).unwrap();
        }
        prop_assert_eq!(limit, seen);
    }
}
