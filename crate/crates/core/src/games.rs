//! The games on Büchi automata, as explicit arenas with priorities in
//! `{0,1,2}`: an edge gets 2 when Eve's token takes an accepting
//! transition and 1 when Adam's does, so Eve wins a play exactly when
//! "Adam's run accepts implies Eve's run accepts".
//!
//! Automata need not be complete. A player with no transition on the chosen
//! letter is routed to a sink: Eve stuck loses if Adam can still move,
//! Adam stuck loses. On automata without empty-language states this matches
//! the games on the completed automata.

use crate::arena::{explore, GameArena, Labels, Move, Payload, Player};
use crate::automaton::ParityAutomaton;
use crate::construct::{delay_k, reachable_pairs, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};

/// Default bound on arena vertices for the games whose size is exponential
/// in a parameter.
pub const DEFAULT_ARENA_CAP: usize = 10_000_000;

fn sink(winner: Player) -> Payload {
    Payload::Sink { winner }
}

fn accepting(priority: u32) -> bool {
    priority == 2
}

/// Sink moves shared by every arena. In sprint arenas Eve's sink loops on 0.
fn sink_moves(winner: Player, sprint: bool) -> (Player, Vec<(Payload, u8, Move)>) {
    let priority = match (winner, sprint) {
        (Player::Eve, false) => 2,
        (Player::Eve, true) => 0,
        (Player::Adam, _) => 1,
    };
    (winner, vec![(sink(winner), priority, Move::Loop)])
}

fn check_pair(x: &ParityAutomaton, y: &ParityAutomaton) -> Result<()> {
    x.require_buchi()?;
    y.require_buchi()?;
    x.same_alphabet(y)
}

fn letters(n: usize, eve: usize, adam: usize) -> (Player, Vec<(Payload, u8, Move)>) {
    let moves = (0..n)
        .map(|a| (Payload::Letter { eve, letter: a, adam }, 0, Move::Letter(a)))
        .collect();
    (Player::Adam, moves)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    /// Adam letter, Eve transition, Adam transition.
    EveFirst,
    /// Adam letter, Adam transition, Eve transition.
    AdamFirst,
}

/// Two-token games: Eve's token on `x`, Adam's on `y`.
fn two_token(x: &ParityAutomaton, y: &ParityAutomaton, seeds: &[(usize, usize)], order: Order, sprint: bool) -> Result<GameArena> {
    check_pair(x, y)?;
    let seeds = seeds.iter().map(|&(eve, adam)| Payload::Pair { eve, adam }).collect();
    explore(Labels::of(x, y), seeds, usize::MAX, |pos| match *pos {
        Payload::Pair { eve, adam } => letters(x.num_letters(), eve, adam),
        Payload::Letter { eve, letter, adam } if order == Order::EveFirst => {
            let ids = x.out_ids(eve, letter);
            if ids.is_empty() {
                let winner = if y.out(adam, letter).is_empty() { Player::Eve } else { Player::Adam };
                return (Player::Eve, vec![(sink(winner), 0, Move::Stuck)]);
            }
            let moves = ids
                .map(|id| {
                    let t = x.transition(id);
                    let next = Payload::Moved {
                        eve: t.dst,
                        adam,
                        letter,
                        eve_from: None,
                    };
                    match (sprint, accepting(t.priority)) {
                        (true, true) => (sink(Player::Eve), 0, Move::Eve(id)),
                        (false, true) => (next, 2, Move::Eve(id)),
                        (_, false) => (next, 0, Move::Eve(id)),
                    }
                })
                .collect();
            (Player::Eve, moves)
        }
        Payload::Moved { eve, adam, letter, .. } if order == Order::EveFirst => {
            let ids = y.out_ids(adam, letter);
            if ids.is_empty() {
                return (Player::Adam, vec![(sink(Player::Eve), 0, Move::Stuck)]);
            }
            let moves = ids
                .map(|id| {
                    let t = y.transition(id);
                    let next = Payload::Pair { eve, adam: t.dst };
                    match (sprint, accepting(t.priority)) {
                        (true, true) => (sink(Player::Adam), 0, Move::Adam(id)),
                        (false, true) => (next, 1, Move::Adam(id)),
                        (_, false) => (next, 0, Move::Adam(id)),
                    }
                })
                .collect();
            (Player::Adam, moves)
        }
        Payload::Letter { eve, letter, adam } => {
            let ids = y.out_ids(adam, letter);
            if ids.is_empty() {
                return (Player::Adam, vec![(sink(Player::Eve), 0, Move::Stuck)]);
            }
            let moves = ids
                .map(|id| {
                    let t = y.transition(id);
                    let next = Payload::Moved {
                        eve,
                        adam: t.dst,
                        letter,
                        eve_from: None,
                    };
                    (next, if accepting(t.priority) { 1 } else { 0 }, Move::Adam(id))
                })
                .collect();
            (Player::Adam, moves)
        }
        Payload::Moved { eve, adam, letter, .. } => {
            let ids = x.out_ids(eve, letter);
            if ids.is_empty() {
                return (Player::Eve, vec![(sink(Player::Adam), 0, Move::Stuck)]);
            }
            let moves = ids
                .map(|id| {
                    let t = x.transition(id);
                    (Payload::Pair { eve: t.dst, adam }, if accepting(t.priority) { 2 } else { 0 }, Move::Eve(id))
                })
                .collect();
            (Player::Eve, moves)
        }
        Payload::Sink { winner } => sink_moves(winner, sprint),
        _ => unreachable!("two-token arenas only hold pair, letter, moved and sink positions"),
    })
}

/// The 1-token game on `a`: positions are pairs reachable on a common word.
pub fn build_g1(a: &ParityAutomaton) -> Result<GameArena> {
    let g = two_token(a, a, &[(a.initial(), a.initial())], Order::EveFirst, false)?;
    debug_assert_eq!(
        (0..g.num_vertices())
            .filter(|&v| matches!(g.payload(v), Payload::Pair { .. }))
            .count(),
        reachable_pairs(a).len()
    );
    Ok(g)
}

/// Simulation game in which Eve moves on `x` and Adam on `y`, i.e. "`x`
/// simulates `y`". Each round: Adam's letter, Adam's move, Eve's move.
pub fn build_simulation(x: &ParityAutomaton, y: &ParityAutomaton) -> Result<GameArena> {
    build_simulation_from(x, x.initial(), y, y.initial())
}

pub fn build_simulation_from(x: &ParityAutomaton, p: usize, y: &ParityAutomaton, q: usize) -> Result<GameArena> {
    two_token(x, y, &[(p, q)], Order::AdamFirst, false)
}

/// Simulation game over all pairs of states; the initial vertex is the
/// pair of initial states.
pub fn build_simulation_all(x: &ParityAutomaton, y: &ParityAutomaton) -> Result<GameArena> {
    two_token(x, y, &all_pairs(x, y), Order::AdamFirst, false)
}

/// Step-ahead simulation: Eve moves on `x` before Adam moves on `y`.
pub fn build_stepahead(x: &ParityAutomaton, y: &ParityAutomaton) -> Result<GameArena> {
    build_stepahead_seeded(x, y, &[(x.initial(), y.initial())])
}

/// Step-ahead simulation from several start pairs; the first is initial.
pub fn build_stepahead_seeded(x: &ParityAutomaton, y: &ParityAutomaton, seeds: &[(usize, usize)]) -> Result<GameArena> {
    two_token(x, y, seeds, Order::EveFirst, false)
}

/// Sprint game from `(p, q)`: Eve's first accepting transition wins for
/// her, and otherwise Adam's first accepting transition wins for him.
pub fn build_sprint(x: &ParityAutomaton, p: usize, y: &ParityAutomaton, q: usize) -> Result<GameArena> {
    two_token(x, y, &[(p, q)], Order::EveFirst, true)
}

/// Sprint game over all pairs of states of `x` against `y`.
pub fn build_sprint_all(x: &ParityAutomaton, y: &ParityAutomaton) -> Result<GameArena> {
    two_token(x, y, &all_pairs(x, y), Order::EveFirst, true)
}

fn all_pairs(x: &ParityAutomaton, y: &ParityAutomaton) -> Vec<(usize, usize)> {
    let mut seeds = vec![(x.initial(), y.initial())];
    for p in 0..x.num_states() {
        for q in 0..y.num_states() {
            if (p, q) != seeds[0] {
                seeds.push((p, q));
            }
        }
    }
    seeds
}

/// `k`-lookahead game: `a` against `Delay^k(a)`, with Eve on `a`.
pub fn build_lookahead(a: &ParityAutomaton, k: usize) -> Result<GameArena> {
    build_lookahead_capped(a, k, DEFAULT_STATE_CAP)
}

pub fn build_lookahead_capped(a: &ParityAutomaton, k: usize, cap: usize) -> Result<GameArena> {
    if k == 0 {
        return Err(Error::Precondition("lookahead must be positive".into()));
    }
    a.require_buchi()?;
    let delayed = delay_k(a, k, cap)?;
    build_simulation(a, &delayed)
}

/// The Joker game over all pairs of states; the initial vertex is
/// `(q0, q0)`. A Joker re-seats Adam's token on a successor of Eve's state
/// before her move, so the positions after Eve's move remember that state.
pub fn build_joker(a: &ParityAutomaton) -> Result<GameArena> {
    a.require_buchi()?;
    let seeds = all_pairs(a, a).into_iter().map(|(eve, adam)| Payload::Pair { eve, adam }).collect();
    explore(Labels::of(a, a), seeds, usize::MAX, |pos| match *pos {
        Payload::Pair { eve, adam } => letters(a.num_letters(), eve, adam),
        Payload::Letter { eve, letter, adam } => {
            let ids = a.out_ids(eve, letter);
            if ids.is_empty() {
                let winner = if a.out(adam, letter).is_empty() { Player::Eve } else { Player::Adam };
                return (Player::Eve, vec![(sink(winner), 0, Move::Stuck)]);
            }
            let moves = ids
                .map(|id| {
                    let t = a.transition(id);
                    let next = Payload::Moved {
                        eve: t.dst,
                        adam,
                        letter,
                        eve_from: Some(eve),
                    };
                    (next, if accepting(t.priority) { 2 } else { 0 }, Move::Eve(id))
                })
                .collect();
            (Player::Eve, moves)
        }
        Payload::Moved {
            eve,
            adam,
            letter,
            eve_from,
        } => {
            let from = eve_from.expect("joker positions record Eve's previous state");
            let mut moves: Vec<_> = a
                .out_ids(adam, letter)
                .map(|id| {
                    let t = a.transition(id);
                    (Payload::Pair { eve, adam: t.dst }, if accepting(t.priority) { 1 } else { 0 }, Move::Adam(id))
                })
                .collect();
            moves.extend(a.out_ids(from, letter).map(|id| {
                let t = a.transition(id);
                (Payload::Pair { eve, adam: t.dst }, 2, Move::Joker(id))
            }));
            (Player::Adam, moves)
        }
        Payload::Sink { winner } => sink_moves(winner, false),
        _ => unreachable!("joker arenas only hold pair, letter, moved and sink positions"),
    })
}

/// The `k`-token game: Adam moves `k` tokens at once, and the edge gets
/// priority 1 when at least one of them takes an accepting transition.
pub fn build_k_token(a: &ParityAutomaton, k: usize) -> Result<GameArena> {
    build_k_token_capped(a, k, DEFAULT_ARENA_CAP)
}

pub fn build_k_token_capped(a: &ParityAutomaton, k: usize, cap: usize) -> Result<GameArena> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    a.require_buchi()?;
    let n = a.num_states();
    let estimate = (0..=k)
        .try_fold(k.saturating_mul(a.num_letters()), |acc, _| acc.checked_mul(n))
        .unwrap_or(usize::MAX);
    if estimate > cap {
        return Err(Error::ResourceLimit {
            what: "k-token arena vertices",
            needed: estimate,
            cap,
        });
    }
    let seed = Payload::Tokens {
        eve: a.initial(),
        adams: vec![Some(a.initial()); k],
        letter: None,
        eve_moved: false,
    };
    explore(Labels::of(a, a), vec![seed], cap, |pos| match pos {
        Payload::Tokens {
            eve,
            adams,
            letter: None,
            ..
        } => {
            let moves = (0..a.num_letters())
                .map(|l| {
                    let next = Payload::Tokens {
                        eve: *eve,
                        adams: adams.clone(),
                        letter: Some(l),
                        eve_moved: false,
                    };
                    (next, 0, Move::Letter(l))
                })
                .collect();
            (Player::Adam, moves)
        }
        Payload::Tokens {
            eve,
            adams,
            letter: Some(l),
            eve_moved: false,
        } => {
            let ids = a.out_ids(*eve, *l);
            if ids.is_empty() {
                let adam_can_move = adams.iter().flatten().any(|&q| !a.out(q, *l).is_empty());
                let winner = if adam_can_move { Player::Adam } else { Player::Eve };
                return (Player::Eve, vec![(sink(winner), 0, Move::Stuck)]);
            }
            let moves = ids
                .map(|id| {
                    let t = a.transition(id);
                    let next = Payload::Tokens {
                        eve: t.dst,
                        adams: adams.clone(),
                        letter: Some(*l),
                        eve_moved: true,
                    };
                    (next, if accepting(t.priority) { 2 } else { 0 }, Move::Eve(id))
                })
                .collect();
            (Player::Eve, moves)
        }
        Payload::Tokens {
            eve,
            adams,
            letter: Some(l),
            eve_moved: true,
        } => {
            // Every combination of one transition per live token; a token
            // without a transition on the letter dies.
            let options: Vec<Vec<Option<usize>>> = adams
                .iter()
                .map(|tok| match tok {
                    Some(q) if !a.out(*q, *l).is_empty() => a.out_ids(*q, *l).map(Some).collect(),
                    _ => vec![None],
                })
                .collect();
            if options.iter().all(|o| o[0].is_none()) {
                return (Player::Adam, vec![(sink(Player::Eve), 0, Move::Stuck)]);
            }
            let mut moves = Vec::new();
            let mut choice = vec![0; k];
            loop {
                let picked: Vec<Option<usize>> = (0..k).map(|i| options[i][choice[i]]).collect();
                let priority = if picked.iter().flatten().any(|&id| accepting(a.transition(id).priority)) { 1 } else { 0 };
                let next = Payload::Tokens {
                    eve: *eve,
                    adams: picked.iter().map(|id| id.map(|id| a.transition(id).dst)).collect(),
                    letter: None,
                    eve_moved: false,
                };
                moves.push((next, priority, Move::Tokens(picked)));
                let mut i = k;
                loop {
                    if i == 0 {
                        return (Player::Adam, moves);
                    }
                    i -= 1;
                    choice[i] += 1;
                    if choice[i] < options[i].len() {
                        break;
                    }
                    choice[i] = 0;
                }
            }
        }
        Payload::Sink { winner } => sink_moves(*winner, false),
        _ => unreachable!("k-token arenas only hold token and sink positions"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, t_acc, t_rej};

    #[test]
    fn g1_of_single_loop() {
        let g = build_g1(&t_acc()).unwrap();
        assert_eq!(g.num_vertices(), 3);
        let eve_edge = g.edges().iter().find(|e| matches!(e.mv, Move::Eve(_))).unwrap();
        let adam_edge = g.edges().iter().find(|e| matches!(e.mv, Move::Adam(_))).unwrap();
        assert_eq!(eve_edge.priority, 2);
        assert_eq!(adam_edge.priority, 1);
        assert_eq!(g.owner(g.vertex_of(&Payload::Letter { eve: 0, letter: 0, adam: 0 }).unwrap()), Player::Eve);
    }

    #[test]
    fn non_buchi_inputs_are_refused() {
        assert!(matches!(build_g1(&fig1()), Err(Error::NotBuchi { lo: 1, hi: 3 })));
        assert!(build_joker(&fig1()).is_err());
        assert!(build_k_token(&fig1(), 2).is_err());
    }

    #[test]
    fn joker_arena_has_all_pairs() {
        let g = build_joker(&t_acc()).unwrap();
        // (s,s), (s,a,s), (s>s,s,a)
        assert_eq!(g.num_vertices(), 3);
        let jokers = g.edges().iter().filter(|e| matches!(e.mv, Move::Joker(_))).count();
        assert_eq!(jokers, 1);
        assert!(g.edges().iter().filter(|e| matches!(e.mv, Move::Joker(_))).all(|e| e.priority == 2));
    }

    #[test]
    fn sprint_sinks() {
        let (u, off) = crate::construct::disjoint_union(&t_acc(), &t_rej()).unwrap();
        let g = build_sprint(&u, 0, &u, off).unwrap();
        assert!(g.edges().iter().all(|e| e.priority <= 1));
        assert!(g.vertex_of(&Payload::Sink { winner: Player::Eve }).is_some());
        assert!(g.vertex_of(&Payload::Sink { winner: Player::Adam }).is_none());
    }

    #[test]
    fn k_token_shape() {
        let g = build_k_token(&t_acc(), 2).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert!(matches!(build_k_token_capped(&fig1_buchi(), 3, 10), Err(Error::ResourceLimit { .. })));
    }

    fn fig1_buchi() -> ParityAutomaton {
        crate::taf::parse("parity 1 2\nalphabet a b\nstates p q\ninitial p\ntrans p a 1 p\ntrans p b 2 p\ntrans q a 2 q\ntrans q b 1 q\n").unwrap()
    }
}
