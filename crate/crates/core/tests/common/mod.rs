//! Test-only oracles written without the game machinery, and corpus helpers.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use hdbuchi::construct::productive;
use hdbuchi::lasso::for_each_word;
use hdbuchi::oracles::{gen, GenKind, GenSpec, Generated};
use hdbuchi::ParityAutomaton;

/// Whether some run of `a` from `from` on the finite `word` takes an
/// accepting transition, by forward simulation of the state set reached
/// without one.
pub fn some_run_accepts_once(a: &ParityAutomaton, from: usize, word: &[usize]) -> bool {
    let mut current: BTreeSet<usize> = BTreeSet::from([from]);
    for &l in word {
        let mut next = BTreeSet::new();
        for &q in &current {
            for t in a.out(q, l) {
                if t.priority % 2 == 0 {
                    return true;
                }
                next.insert(t.dst);
            }
        }
        current = next;
    }
    false
}

/// Whether the run of a deterministic `f` from `from` on `word` exists up
/// to the first accepting transition and takes one.
pub fn unique_run_accepts_once(f: &ParityAutomaton, from: usize, word: &[usize]) -> bool {
    let mut q = from;
    for &l in word {
        match f.out(q, l) {
            [t] => {
                if t.priority % 2 == 0 {
                    return true;
                }
                q = t.dst;
            }
            [] => return false,
            _ => panic!("witness is not deterministic"),
        }
    }
    false
}

/// Checks the sprint-determinism witness property on every word of length
/// at most `max_len`. Returns the first failing `(state, word)`.
pub fn witness_failure(h: &ParityAutomaton, sd: &[bool], f: &ParityAutomaton, max_len: usize) -> Option<(usize, Vec<usize>)> {
    for q in (0..h.num_states()).filter(|&q| sd[q]) {
        for len in 1..=max_len {
            let mut bad = None;
            for_each_word(h.num_letters(), len, |w| {
                if some_run_accepts_once(h, q, w) && !unique_run_accepts_once(f, q, w) {
                    bad = Some(w.to_vec());
                    false
                } else {
                    true
                }
            });
            if let Some(w) = bad {
                return Some((q, w));
            }
        }
    }
    None
}

/// Pairs of states reachable on a common word, read off the reachable
/// subsets of the powerset automaton.
pub fn pairs_via_subsets(a: &ParityAutomaton) -> BTreeSet<(usize, usize)> {
    let start = vec![a.initial()];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut pairs = BTreeSet::new();
    while let Some(s) = queue.pop_front() {
        for &p in &s {
            for &q in &s {
                pairs.insert((p, q));
            }
        }
        for l in 0..a.num_letters() {
            let next: BTreeSet<usize> = s.iter().flat_map(|&q| a.out(q, l).iter().map(|t| t.dst)).collect();
            let next: Vec<usize> = next.into_iter().collect();
            if !next.is_empty() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    pairs
}

/// Semantically deterministic instances with deterministic witnesses, from
/// both generator families, at most `max_states` states each.
pub fn sd_corpus(count: usize, max_states: usize, seed0: u64) -> Vec<Generated> {
    let mut out = Vec::new();
    let mut seed = seed0;
    while out.len() < count {
        let spec = if seed.is_multiple_of(2) {
            GenSpec {
                density: 0.4,
                ..GenSpec::new(GenKind::UniversalSd, 1 + (seed as usize / 2) % max_states, 2, seed)
            }
        } else {
            let d0 = 1 + (seed as usize / 2) % (max_states / 2).max(1);
            GenSpec {
                sabotage: 0.7,
                accept_prob: 0.8,
                density: 1.0,
                ..GenSpec::new(GenKind::DbaCopies, d0, 2, seed)
            }
        };
        seed += 1;
        out.push(gen(&spec).expect("valid spec"));
    }
    out
}

/// dba_copies instances with non-empty language and at most `max_states`
/// states.
pub fn copies_corpus(count: usize, max_states: usize, sabotage: f64, seed0: u64) -> Vec<Generated> {
    let mut out = Vec::new();
    let mut seed = seed0;
    while out.len() < count {
        let copies = 2;
        let d0 = 1 + (seed as usize) % (max_states / copies);
        let spec = GenSpec {
            sabotage,
            ..GenSpec::new(GenKind::DbaCopies, d0, 2, seed)
        };
        seed += 1;
        let g = gen(&spec).expect("valid spec");
        if productive(&g.automaton).is_some() {
            out.push(g);
        }
    }
    out
}

pub fn raw(states: usize, seed: u64) -> ParityAutomaton {
    gen(&GenSpec::new(GenKind::RawRandom, states, 2, seed)).expect("valid spec").automaton
}
