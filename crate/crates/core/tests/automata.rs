mod common;

use hdbuchi::construct::{
    delay, delay_k, reachability_lift, reachable_pairs, trim, universalize, DEFAULT_STATE_CAP,
};
use hdbuchi::fixtures::{fig1, t_acc, FIG1_TAF};
use hdbuchi::games::build_simulation;
use hdbuchi::hd::{eve_wins_g1, is_sd, sprint_simulates};
use hdbuchi::lasso::{for_each_lasso, lasso_accepts};
use hdbuchi::oracles::{bounded_lasso_equiv, gen, GenKind, GenSpec};
use hdbuchi::solver::solve_02;
use hdbuchi::taf::{parse, serialize};
use hdbuchi::{ParityAutomaton, Transition};

#[test]
fn fig1_shape() {
    let a = fig1();
    assert_eq!(a.num_states(), 2);
    assert_eq!(a.transitions().len(), 8);
    assert_eq!(a.index(), (1, 3));
    assert!(!a.is_deterministic());
    assert_eq!(trim(&a), a);
    assert_eq!(parse(FIG1_TAF).unwrap(), a);
    assert_eq!(parse(&serialize(&a)).unwrap(), a);
}

#[test]
fn round_trip_on_generated_corpus() {
    for seed in 0..60 {
        for kind in [GenKind::UniversalSd, GenKind::DbaCopies, GenKind::RawRandom] {
            let a = gen(&GenSpec::new(kind, 1 + seed as usize % 4, 2, seed)).unwrap().automaton;
            let text = serialize(&a);
            assert_eq!(parse(&text).unwrap(), a);
            assert_eq!(serialize(&parse(&text).unwrap()), text);
        }
    }
}

#[test]
fn trim_is_idempotent_and_drops_isolated_states() {
    let a = parse("parity 1 2\nalphabet a\nstates s x\ninitial s\ntrans s a 2 s\ntrans x a 1 s\n").unwrap();
    let t = trim(&a);
    assert_eq!(t.states(), &["s".to_string()]);
    assert_eq!(trim(&t), t);
}

#[test]
fn delay_preserves_fig1_language() {
    let a = fig1();
    assert_eq!(bounded_lasso_equiv(&a, &delay(&a), 4, 4).unwrap(), None);
    assert_eq!(delay_k(&a, 1, DEFAULT_STATE_CAP).unwrap(), delay(&a));
    assert_eq!(delay_k(&a, 0, DEFAULT_STATE_CAP).unwrap(), a);
}

#[test]
fn delay_preserves_language_on_random_instances() {
    for seed in 0..30 {
        let a = common::raw(2 + seed as usize % 3, seed);
        assert_eq!(bounded_lasso_equiv(&a, &delay(&a), 3, 3).unwrap(), None, "seed {seed}");
    }
}

#[test]
fn delay_k_sizes_on_single_loop() {
    let once = delay(&t_acc());
    assert_eq!(once.num_states(), 2);
    let twice = delay_k(&t_acc(), 2, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(twice.num_states(), 1 + once.num_states());
    assert!(matches!(
        delay_k(&fig1(), 6, 10),
        Err(hdbuchi::Error::ResourceLimit { .. })
    ));
}

#[test]
fn g1_winner_simulates_its_delays() {
    let mut checked = 0;
    for seed in 0..40 {
        let a = common::raw(4, seed);
        if !eve_wins_g1(&a).unwrap() {
            continue;
        }
        let d = delay_k(&a, 3, DEFAULT_STATE_CAP).unwrap();
        assert!(solve_02(&build_simulation(&a, &d).unwrap()).unwrap().eve_wins(0), "seed {seed}");
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn lift_moves_to_f_exactly_on_accepting_transitions() {
    for seed in 0..20 {
        let a = common::raw(3, seed);
        let lifted = reachability_lift(&a).unwrap();
        let f = a.num_states();
        for q in 0..a.num_states() {
            for l in 0..a.num_letters() {
                let to_f = lifted.out(q, l).iter().any(|t| t.dst == f);
                let accepting = a.out(q, l).iter().any(|t| t.priority == 2);
                assert_eq!(to_f, accepting);
            }
        }
    }
    let r = parse("parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 1 s\n").unwrap();
    let lifted = reachability_lift(&r).unwrap();
    assert!(!hdbuchi::construct::reachable_states(&lifted)[1]);
}

#[test]
fn sprint_simulation_matches_stepahead_on_lifts() {
    for seed in 0..25 {
        let a = common::raw(3, seed);
        let lifted = reachability_lift(&a).unwrap();
        for p in 0..a.num_states() {
            for q in 0..a.num_states() {
                let sprint = sprint_simulates(&a, p, q).unwrap();
                let g = hdbuchi::games::build_stepahead_seeded(&lifted, &lifted, &[(p, q)]).unwrap();
                assert_eq!(sprint, solve_02(&g).unwrap().eve_wins(0), "seed {seed} ({p},{q})");
            }
        }
    }
}

fn random_safety(seed: u64, states: usize) -> ParityAutomaton {
    let mut ts = Vec::new();
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    for q in 0..states {
        for l in 0..2 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let r = (x >> 33) as usize % (states + 1);
            if r < states {
                ts.push(Transition::new(q, l, 0, r));
            }
        }
    }
    ParityAutomaton::new(
        (0..states).map(|i| format!("s{i}")).collect(),
        hdbuchi::Alphabet::new(["a", "b"]).unwrap(),
        0,
        (0, 1),
        ts,
    )
    .unwrap()
}

#[test]
fn universalize_yields_universal_sd_automata() {
    for seed in 0..12 {
        // L(S) ⊆ Σ^ω = L(A) holds trivially for universal A.
        let a = gen(&GenSpec::new(GenKind::UniversalSd, 2, 2, seed)).unwrap().automaton;
        let s = random_safety(seed, 2);
        let u = universalize(&a, &s).unwrap();
        assert!(u.is_complete());
        for q in 0..u.num_states() {
            for_each_lasso(2, 3, 3, |w| {
                assert!(lasso_accepts(&u, w, q), "seed {seed} state {q}");
                true
            });
        }
        assert!(is_sd(&u).unwrap().sd, "seed {seed}");
    }
}

#[test]
fn reachable_pairs_match_subset_construction() {
    for seed in 0..40 {
        let a = common::raw(4, seed);
        assert_eq!(reachable_pairs(&a), common::pairs_via_subsets(&a), "seed {seed}");
    }
    let d = gen(&GenSpec::new(GenKind::DbaCopies, 3, 2, 1)).unwrap().witness.unwrap();
    let reach = hdbuchi::construct::reachable_states(&d);
    let expected: std::collections::BTreeSet<_> = (0..d.num_states()).filter(|&q| reach[q]).map(|q| (q, q)).collect();
    assert_eq!(reachable_pairs(&d), expected);
}
