//! Automaton-to-automaton constructions.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{Alphabet, NameGen, ParityAutomaton, Transition};
use crate::error::{Error, Result};
use crate::graph::EdgeGraph;

/// Default bound on the number of states a construction may produce.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Restriction to the states in `keep`, renumbered in their original order.
/// The initial state must be kept.
pub fn restrict(a: &ParityAutomaton, keep: &[bool]) -> ParityAutomaton {
    assert!(keep[a.initial()], "restriction must keep the initial state");
    let mut new_id = vec![usize::MAX; a.num_states()];
    let mut names = Vec::new();
    for q in 0..a.num_states() {
        if keep[q] {
            new_id[q] = names.len();
            names.push(a.state_name(q).to_string());
        }
    }
    let transitions = a
        .transitions()
        .iter()
        .filter(|t| keep[t.src] && keep[t.dst])
        .map(|t| Transition::new(new_id[t.src], t.letter, t.priority, new_id[t.dst]));
    ParityAutomaton::new(names, a.alphabet().clone(), new_id[a.initial()], a.index(), transitions)
        .expect("restriction of a valid automaton is valid")
}

pub fn reachable_states(a: &ParityAutomaton) -> Vec<bool> {
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::from([a.initial()]);
    seen[a.initial()] = true;
    while let Some(q) = queue.pop_front() {
        for t in a.out_all(q) {
            if !seen[t.dst] {
                seen[t.dst] = true;
                queue.push_back(t.dst);
            }
        }
    }
    seen
}

/// The part of `a` reachable from its initial state.
pub fn trim(a: &ParityAutomaton) -> ParityAutomaton {
    restrict(a, &reachable_states(a))
}

fn transition_graph(a: &ParityAutomaton) -> EdgeGraph {
    EdgeGraph::new(a.num_states(), a.transitions().iter().map(|t| (t.src, t.dst)).collect())
}

/// States whose language is non-empty: those that reach a cycle whose
/// maximal priority is even.
pub fn nonempty_states(a: &ParityAutomaton) -> Vec<bool> {
    let g = transition_graph(a);
    let (_, hi) = a.index();
    let mut on_good_cycle = vec![false; a.num_states()];
    for d in (0..=hi).filter(|d| d % 2 == 0) {
        let ts = a.transitions();
        let marked = g.nodes_on_cycles(|e| ts[e].priority <= d, |e| ts[e].priority == d);
        for (q, m) in marked.into_iter().enumerate() {
            on_good_cycle[q] |= m;
        }
    }
    g.can_reach(&on_good_cycle)
}

/// Removes the states with empty language. Returns `None` when the initial
/// state itself has empty language. Accepting runs never visit removed
/// states, so the language of every remaining state is unchanged.
pub fn remove_empty_states(a: &ParityAutomaton) -> Option<ParityAutomaton> {
    let keep = nonempty_states(a);
    keep[a.initial()].then(|| restrict(a, &keep))
}

/// Trimmed, with all empty-language states removed.
pub fn productive(a: &ParityAutomaton) -> Option<ParityAutomaton> {
    remove_empty_states(&trim(a)).map(|b| trim(&b))
}

/// The automaton that reads one letter ahead of its runs: state `(q,a)`
/// means the run is at `q` and the pending letter is `a`.
pub fn delay(a: &ParityAutomaton) -> ParityAutomaton {
    let sigma = a.num_letters();
    let mut names = NameGen::new();
    let mut states = Vec::with_capacity(1 + a.num_states() * sigma);
    let mut pair_names = Vec::with_capacity(a.num_states() * sigma);
    for q in 0..a.num_states() {
        for l in 0..sigma {
            pair_names.push(names.fresh(format!("({},{})", a.state_name(q), a.alphabet().name(l))));
        }
    }
    states.push(names.fresh("s"));
    states.extend(pair_names);

    let pair = |q: usize, l: usize| 1 + q * sigma + l;
    let (lo, _) = a.index();
    let mut transitions = Vec::new();
    for l in 0..sigma {
        transitions.push(Transition::new(0, l, lo, pair(a.initial(), l)));
    }
    for t in a.transitions() {
        for next in 0..sigma {
            transitions.push(Transition::new(pair(t.src, t.letter), next, t.priority, pair(t.dst, next)));
        }
    }
    ParityAutomaton::new(states, a.alphabet().clone(), 0, a.index(), transitions).expect("delay is well-formed")
}

/// `k`-fold [`delay`], refusing to build more than `cap` states.
pub fn delay_k(a: &ParityAutomaton, k: usize, cap: usize) -> Result<ParityAutomaton> {
    let mut current = a.clone();
    for _ in 0..k {
        let needed = current
            .num_states()
            .checked_mul(current.num_letters())
            .and_then(|x| x.checked_add(1))
            .unwrap_or(usize::MAX);
        if needed > cap {
            return Err(Error::ResourceLimit {
                what: "delayed automaton states",
                needed,
                cap,
            });
        }
        current = delay(&current);
    }
    Ok(current)
}

/// The reachability automaton `A#`: accepting transitions are redirected to
/// an accepting sink `f`, and a fresh letter `#` leads every state to a
/// rejecting sink `r`. Both sinks loop on every letter, `#` included.
pub fn reachability_lift(a: &ParityAutomaton) -> Result<ParityAutomaton> {
    a.require_buchi()?;
    let mut letter_names = NameGen::new();
    letter_names.reserve(a.alphabet().names());
    let mut letters = a.alphabet().names().to_vec();
    letters.push(letter_names.fresh("#"));
    let hash = letters.len() - 1;

    let mut state_names = NameGen::new();
    state_names.reserve(a.states());
    let mut states = a.states().to_vec();
    let f = states.len();
    states.push(state_names.fresh("f"));
    let r = states.len();
    states.push(state_names.fresh("r"));

    let mut transitions = Vec::new();
    for t in a.transitions() {
        if t.priority == 2 {
            transitions.push(Transition::new(t.src, t.letter, 1, f));
        } else {
            transitions.push(*t);
        }
    }
    for q in 0..a.num_states() {
        transitions.push(Transition::new(q, hash, 1, r));
    }
    for l in 0..letters.len() {
        transitions.push(Transition::new(f, l, 2, f));
        transitions.push(Transition::new(r, l, 1, r));
    }
    ParityAutomaton::new(states, Alphabet::new(letters)?, a.initial(), (1, 2), transitions)
}

/// Product of `a` with the deterministic safety automaton `s`, completed by
/// an accepting sink `f` wherever the product has no move.
pub fn universalize(a: &ParityAutomaton, s: &ParityAutomaton) -> Result<ParityAutomaton> {
    a.same_alphabet(s)?;
    if !s.is_deterministic() {
        return Err(Error::NotSafety("not deterministic".into()));
    }
    if s.transitions().iter().any(|t| t.priority != 0) {
        return Err(Error::NotSafety("has a non-zero priority".into()));
    }
    let sigma = a.num_letters();
    let m = s.num_states();
    let id = |q: usize, p: usize| q * m + p;
    let mut names = NameGen::new();
    let mut states = Vec::new();
    for q in 0..a.num_states() {
        for p in 0..m {
            states.push(names.fresh(format!("({},{})", a.state_name(q), s.state_name(p))));
        }
    }
    let f = states.len();
    states.push(names.fresh("f"));

    let (lo, hi) = a.index();
    let accepting = (lo..=hi).find(|c| c % 2 == 0).expect("index has an even priority");
    let mut transitions = Vec::new();
    for q in 0..a.num_states() {
        for p in 0..m {
            for l in 0..sigma {
                let succ = s.out(p, l).first();
                let moves = a.out(q, l);
                match succ {
                    Some(sp) if !moves.is_empty() => {
                        transitions.extend(moves.iter().map(|t| Transition::new(id(q, p), l, t.priority, id(t.dst, sp.dst))));
                    }
                    _ => transitions.push(Transition::new(id(q, p), l, accepting, f)),
                }
            }
        }
    }
    for l in 0..sigma {
        transitions.push(Transition::new(f, l, accepting, f));
    }
    ParityAutomaton::new(states, a.alphabet().clone(), id(a.initial(), s.initial()), (lo, hi), transitions)
}

/// Pairs of states reachable from the initial state on a common word.
pub fn reachable_pairs(a: &ParityAutomaton) -> BTreeSet<(usize, usize)> {
    let start = (a.initial(), a.initial());
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        for l in 0..a.num_letters() {
            for tp in a.out(p, l) {
                for tq in a.out(q, l) {
                    if seen.insert((tp.dst, tq.dst)) {
                        queue.push_back((tp.dst, tq.dst));
                    }
                }
            }
        }
    }
    seen
}

/// Disjoint union of two automata over the same alphabet and index; the
/// initial state is `a`'s. Returns the offset of `b`'s states.
pub fn disjoint_union(a: &ParityAutomaton, b: &ParityAutomaton) -> Result<(ParityAutomaton, usize)> {
    a.same_alphabet(b)?;
    let offset = a.num_states();
    let mut names = NameGen::new();
    names.reserve(a.states());
    let mut states = a.states().to_vec();
    let mut renamed: HashMap<usize, String> = HashMap::new();
    for q in 0..b.num_states() {
        let n = names.fresh(b.state_name(q));
        renamed.insert(q, n.clone());
        states.push(n);
    }
    let (alo, ahi) = a.index();
    let (blo, bhi) = b.index();
    let index = (alo.min(blo), ahi.max(bhi));
    let transitions = a.transitions().iter().copied().chain(
        b.transitions()
            .iter()
            .map(|t| Transition::new(t.src + offset, t.letter, t.priority, t.dst + offset)),
    );
    Ok((ParityAutomaton::new(states, a.alphabet().clone(), a.initial(), index, transitions)?, offset))
}
