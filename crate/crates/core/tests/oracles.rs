mod common;

use hdbuchi::arena::{GameArena, Player};
use hdbuchi::fixtures::{fig1, t_acc, t_rej};
use hdbuchi::hd::{is_hd_buchi, is_sd};
use hdbuchi::lasso::{for_each_lasso, lasso_accepts};
use hdbuchi::oracles::{bounded_lasso_equiv, brute_force_02_winner, gen, hd_exact_given_dba, GenKind, GenSpec, BRUTE_FORCE_CAP};

#[test]
fn one_state_universal_instance_is_an_accepting_loop() {
    for seed in 0..10 {
        let a = gen(&GenSpec::new(GenKind::UniversalSd, 1, 1, seed)).unwrap().automaton;
        assert_eq!(a.num_states(), 1);
        assert!(a.out(0, 0).iter().any(|t| t.priority == 2 && t.dst == 0));
        assert_eq!(bounded_lasso_equiv(&a, &t_acc(), 4, 4).unwrap(), None);
    }
}

#[test]
fn universal_instances_accept_every_lasso() {
    for seed in 0..15 {
        let a = gen(&GenSpec::new(GenKind::UniversalSd, 1 + seed as usize % 4, 2, seed)).unwrap().automaton;
        assert!(a.is_complete());
        for q in 0..a.num_states() {
            for_each_lasso(2, 4, 4, |w| {
                assert!(lasso_accepts(&a, w, q), "seed {seed}");
                true
            });
        }
    }
}

#[test]
fn copies_keep_witness_language_and_semantic_determinism() {
    for seed in 0..30 {
        let spec = GenSpec {
            copies: 1 + seed as usize % 3,
            ..GenSpec::new(GenKind::DbaCopies, 1 + seed as usize % 3, 2, seed)
        };
        let g = gen(&spec).unwrap();
        let w = g.witness.unwrap();
        assert!(w.is_deterministic() && w.is_complete());
        assert_eq!(g.automaton.num_states(), spec.states * spec.copies);
        assert_eq!(bounded_lasso_equiv(&g.automaton, &w, 3, 3).unwrap(), None, "seed {seed}");
        assert!(is_sd(&g.automaton).unwrap().sd, "seed {seed}");
    }
}

#[test]
fn sabotage_keeps_the_language() {
    for seed in 0..30 {
        let g = gen(&GenSpec {
            sabotage: 0.6,
            ..GenSpec::new(GenKind::DbaCopies, 2, 2, seed)
        })
        .unwrap();
        assert_eq!(bounded_lasso_equiv(&g.automaton, g.witness.as_ref().unwrap(), 3, 3).unwrap(), None, "seed {seed}");
    }
}

#[test]
fn generation_is_pure_and_validated() {
    let spec = GenSpec::new(GenKind::RawRandom, 5, 3, 42);
    assert_eq!(gen(&spec).unwrap().automaton, gen(&spec).unwrap().automaton);
    let json = r#"{"kind":"dba_copies","states":3,"alphabet_size":2,"seed":7}"#;
    let parsed: GenSpec = serde_json::from_str(json).unwrap();
    assert_eq!(parsed, GenSpec::new(GenKind::DbaCopies, 3, 2, 7));
    for bad in [
        GenSpec::new(GenKind::RawRandom, 0, 2, 0),
        GenSpec::new(GenKind::RawRandom, 2, 0, 0),
        GenSpec { density: 1.5, ..GenSpec::new(GenKind::RawRandom, 2, 2, 0) },
        GenSpec { copies: 0, ..GenSpec::new(GenKind::DbaCopies, 2, 2, 0) },
    ] {
        assert!(matches!(gen(&bad), Err(hdbuchi::Error::InvalidSpec(_))));
    }
}

#[test]
fn exact_oracle_basics() {
    assert!(hd_exact_given_dba(&t_acc(), &t_acc()).unwrap());
    assert!(matches!(hd_exact_given_dba(&t_acc(), &t_rej()), Err(hdbuchi::Error::Precondition(_))));
    for (i, g) in common::copies_corpus(100, 6, 0.5, 321).iter().enumerate() {
        let exact = hd_exact_given_dba(&g.automaton, g.witness.as_ref().unwrap()).unwrap();
        assert_eq!(exact, is_hd_buchi(&g.automaton).unwrap(), "#{i}");
    }
}

#[test]
fn lasso_equivalence_basics() {
    let a = fig1();
    assert_eq!(bounded_lasso_equiv(&a, &a, 4, 4).unwrap(), None);
    let w = bounded_lasso_equiv(&t_acc(), &t_rej(), 4, 4).unwrap().unwrap();
    assert!(w.spoke().is_empty());
    assert_eq!(w.cycle(), &[0]);
    assert!(bounded_lasso_equiv(&t_acc(), &a, 2, 2).is_err());
}

#[test]
fn brute_force_single_loops() {
    for (p, winner) in [(2, Player::Eve), (1, Player::Adam), (0, Player::Eve)] {
        for owner in [Player::Eve, Player::Adam] {
            let g = GameArena::from_edges(vec![owner], &[(0, 0, p)], 0).unwrap();
            assert_eq!(brute_force_02_winner(&g).unwrap(), vec![winner]);
        }
    }
    let big = GameArena::from_edges(vec![Player::Eve; BRUTE_FORCE_CAP + 1], &(0..=BRUTE_FORCE_CAP).map(|v| (v, v, 0)).collect::<Vec<_>>(), 0).unwrap();
    assert!(matches!(brute_force_02_winner(&big), Err(hdbuchi::Error::ResourceLimit { .. })));
}

#[test]
fn raw_instances_are_complete() {
    for seed in 0..20 {
        assert!(common::raw(1 + seed as usize % 5, seed).is_complete());
    }
}
