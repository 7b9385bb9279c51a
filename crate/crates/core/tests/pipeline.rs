mod common;

use hdbuchi::arena::Player;
use hdbuchi::determinize::{
    build_d, determinize_hd, normalize, opt_ranks, prune_step, promote_step, verify_determinization,
};
use hdbuchi::construct::trim;
use hdbuchi::fixtures::t_acc;
use hdbuchi::hd::{goodness, hd_language_equiv, is_hd_buchi, joker_witness, make_good, mutually_simulate, sprint_simulates};
use hdbuchi::lasso::{for_each_lasso, lasso_accepts};
use hdbuchi::oracles::{bounded_lasso_equiv, hd_exact_given_dba};
use hdbuchi::taf::parse;
use hdbuchi::{ParityAutomaton, Transition};

const PROMOTE: &str = "parity 1 2\nalphabet a b\nstates q0 q1\ninitial q0\n\
    trans q0 a 1 q0\ntrans q0 a 1 q1\ntrans q0 b 2 q1\ntrans q1 a 2 q1\ntrans q1 b 1 q1\n";

const PRUNE: &str = "parity 1 2\nalphabet a b\nstates q0 q1\ninitial q0\n\
    trans q0 a 1 q0\ntrans q0 b 1 q1\ntrans q0 b 2 q1\ntrans q1 a 2 q0\ntrans q1 b 1 q0\ntrans q1 b 1 q1\n";

fn same_lassos(a: &ParityAutomaton, b: &ParityAutomaton, q: usize) -> bool {
    let mut ok = true;
    for_each_lasso(a.num_letters(), 3, 3, |w| {
        ok = lasso_accepts(a, w, q) == lasso_accepts(b, w, q);
        ok
    });
    ok
}

#[test]
fn ranks_of_two_loops() {
    let h = parse("parity 1 2\nalphabet a b\nstates p q\ninitial p\ntrans p a 1 p\ntrans p b 2 p\ntrans q a 2 q\ntrans q b 1 q\n").unwrap();
    assert_eq!(opt_ranks(&trim(&h)).unwrap().opt, vec![0]);
    assert_eq!(opt_ranks(&trim(&h.with_initial(1))).unwrap().opt, vec![0]);
}

#[test]
fn ranks_refuse_non_good_input() {
    let a = parse(
        "parity 1 2\nalphabet a b\nstates s x y\ninitial s\n\
         trans s a 1 x\ntrans s a 1 y\ntrans x a 2 x\ntrans x b 1 x\ntrans y a 1 y\ntrans y b 2 y\n",
    )
    .unwrap();
    assert!(matches!(opt_ranks(&a), Err(hdbuchi::Error::Integrity(_))));
    assert!(matches!(normalize(&a), Err(hdbuchi::Error::Integrity(_))));
}

#[test]
fn promotion_of_a_rank_decreasing_transition() {
    let h = parse(PROMOTE).unwrap();
    assert!(goodness(&h).unwrap().is_good);
    let r = opt_ranks(&h).unwrap();
    assert_eq!(r.opt, vec![1, 0]);
    assert_eq!(prune_step(&h, &r), h);
    let next = promote_step(&h, &r);
    let changed: Vec<&Transition> = h.transitions().iter().filter(|t| !next.transitions().contains(t)).collect();
    assert_eq!(changed.len(), 1);
    assert_eq!(h.describe(changed[0]), "q0 a 1 q1");
    assert!(next.transitions().contains(&Transition { priority: 2, ..*changed[0] }));
    assert!(same_lassos(&h, &next, 0) && same_lassos(&h, &next, 1));

    let (hstar, trace) = normalize(&h).unwrap();
    assert_eq!(hstar, next);
    assert_eq!(trace.terminated_at, 1);
    assert_eq!(trace.iterations[0].promoted, vec!["q0 a 1 q1".to_string()]);
    assert!(trace.iterations[1].opt.values().all(|&o| o == 0));
}

#[test]
fn pruning_of_a_rank_increasing_transition() {
    let h = parse(PRUNE).unwrap();
    assert!(goodness(&h).unwrap().is_good);
    let r = opt_ranks(&h).unwrap();
    assert_eq!(r.opt, vec![0, 1]);
    let pruned = prune_step(&h, &r);
    let removed: Vec<String> = h.transitions().iter().filter(|t| !pruned.transitions().contains(t)).map(|t| h.describe(t)).collect();
    assert_eq!(removed, vec!["q0 b 1 q1".to_string()]);
    assert!(mutually_simulate(&h, &pruned).unwrap());

    let (_, trace) = normalize(&h).unwrap();
    assert_eq!(trace.iterations[0].removed, removed);
    assert_eq!(trace.iterations[0].promoted, vec!["q1 b 1 q0".to_string()]);
}

#[test]
fn opt_zero_is_a_fixpoint() {
    let h = parse("parity 1 2\nalphabet a b\nstates p q\ninitial p\ntrans p a 2 q\ntrans p b 1 p\ntrans q a 1 p\ntrans q b 2 q\n").unwrap();
    let r = opt_ranks(&h).unwrap();
    if r.opt.iter().all(|&o| o == 0) {
        assert_eq!(promote_step(&prune_step(&h, &r), &r), h);
    }
    let (hstar, trace) = normalize(&t_acc()).unwrap();
    assert_eq!((hstar, trace.iterations.len()), (t_acc(), 1));
}

#[test]
fn deterministic_inputs_normalise_quickly() {
    for seed in 0..30 {
        let d = common::copies_corpus(1, 8, 0.0, 5000 + seed)[0].witness.clone().unwrap();
        let d = trim(&d);
        let (hstar, trace) = normalize(&d).unwrap();
        assert!(trace.iterations.len() <= 2, "seed {seed}");
        for p in 0..hstar.num_states() {
            assert!(sprint_simulates(&hstar, p, p).unwrap(), "seed {seed} state {p}");
        }
        // The first component of every pair follows the unique run of the input.
        let built = build_d(&hstar).unwrap();
        let first = |name: &str| hstar.state_index(name.trim_start_matches('(').split(',').next().unwrap()).unwrap();
        for t in built.transitions() {
            let (q, q2) = (first(built.state_name(t.src)), first(built.state_name(t.dst)));
            assert_eq!(hstar.out(q, t.letter).iter().map(|u| u.dst).collect::<Vec<_>>(), vec![q2]);
        }
        assert!(built.num_states() <= hstar.num_states().pow(2));
        assert!(verify_determinization(&d, &built).unwrap().ok);
    }
}

#[test]
fn promoted_rounds_keep_every_state_language() {
    let mut rounds = 0;
    let corpus = common::copies_corpus(300, 8, 0.15, 6000).into_iter().filter_map(|g| make_good(&g.automaton).ok());
    for good in [parse(PROMOTE).unwrap(), parse(PRUNE).unwrap()].into_iter().chain(corpus) {
        let (_, trace) = normalize(&good).unwrap();
        let snaps = trace.snapshots().unwrap();
        for it in trace.iterations.iter().zip(snaps.iter()) {
            if it.0.promoted.is_empty() && it.0.removed.is_empty() {
                continue;
            }
            let h = it.1;
            let r = opt_ranks(h).unwrap();
            let pruned = prune_step(h, &r);
            let next = promote_step(&pruned, &r);
            for q in 0..pruned.num_states() {
                assert!(same_lassos(&pruned, &next, q));
            }
            rounds += 1;
        }
    }
    assert!(rounds >= 2);
}

#[test]
fn output_matches_the_known_witness() {
    for (i, g) in common::copies_corpus(60, 8, 0.1, 7000).iter().enumerate() {
        let w = g.witness.as_ref().unwrap();
        if !hd_exact_given_dba(&g.automaton, w).unwrap() {
            continue;
        }
        let (d, _) = determinize_hd(&g.automaton).unwrap();
        assert!(d.is_deterministic(), "#{i}");
        assert!(hd_language_equiv(&d, w).unwrap(), "#{i}");
        assert!(hd_language_equiv(&d, &g.automaton).unwrap(), "#{i}");
    }
}

#[test]
fn non_hd_input_is_refused_with_a_certificate() {
    let mut refused = 0;
    for g in common::copies_corpus(80, 8, 0.8, 8000) {
        if hd_exact_given_dba(&g.automaton, g.witness.as_ref().unwrap()).unwrap() {
            continue;
        }
        assert!(matches!(determinize_hd(&g.automaton), Err(hdbuchi::Error::NotHd)));
        let cert = joker_witness(&g.automaton).unwrap();
        assert_eq!(cert.winner, Player::Adam);
        assert!(!cert.lines.is_empty());
        refused += 1;
    }
    assert!(refused > 3);
}

#[test]
fn verification_catches_mutations() {
    let mut caught = 0;
    for g in common::copies_corpus(40, 6, 0.0, 9500) {
        let (d, _) = determinize_hd(&g.automaton).unwrap();
        for (i, t) in d.transitions().iter().enumerate().filter(|(_, t)| t.priority == 2) {
            let mutant = d.map_transitions(|u| Some(if u == t { Transition { priority: 1, ..*u } } else { *u }));
            let report = verify_determinization(&g.automaton, &mutant).unwrap();
            if report.ok {
                assert_eq!(bounded_lasso_equiv(&g.automaton, &mutant, 4, 4).unwrap(), None, "mutant {i}");
            } else {
                let w = report.counterexample.expect("demotion only loses words");
                assert!(lasso_accepts(&g.automaton, &w, g.automaton.initial()));
                assert!(!lasso_accepts(&mutant, &w, mutant.initial()));
                caught += 1;
            }
        }
    }
    assert!(caught > 10);
    let h = t_acc();
    assert!(verify_determinization(&h, &h).unwrap().ok);
}

#[test]
fn hd_check_of_outputs() {
    for g in common::copies_corpus(20, 8, 0.0, 9900) {
        let (d, _) = determinize_hd(&g.automaton).unwrap();
        assert!(is_hd_buchi(&d).unwrap());
        assert!(d.num_states() <= g.automaton.num_states().pow(2));
    }
}

#[test]
#[ignore = "slow; run with --ignored"]
fn every_snapshot_is_good() {
    for (i, g) in common::copies_corpus(200, 10, 0.15, 1000).iter().enumerate() {
        let Ok((d, trace)) = determinize_hd(&g.automaton) else { continue };
        for snap in trace.snapshots().unwrap() {
            assert!(goodness(&snap).unwrap().is_good, "#{i}");
        }
        assert_eq!(bounded_lasso_equiv(&d, g.witness.as_ref().unwrap(), 6, 6).unwrap(), None, "#{i}");
    }
}
