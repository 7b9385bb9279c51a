mod common;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hdbuchi::arena::{GameArena, Player};
use hdbuchi::games::{build_g1, build_sprint_all};
use hdbuchi::solver::{rank_monotonicity_check, solve_01, solve_02, zielonka, Rank};

fn random_arena(rng: &mut ChaCha8Rng, max_priority: u8) -> GameArena {
    let n = rng.gen_range(1..=30);
    let owners: Vec<Player> = (0..n).map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam }).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        for _ in 0..rng.gen_range(1..=3) {
            edges.push((v, rng.gen_range(0..n), rng.gen_range(0..=max_priority)));
        }
    }
    GameArena::from_edges(owners, &edges, 0).unwrap()
}

/// Restriction of `g` to the winning region of `player` under its
/// strategy, as a graph of edge priorities.
fn restricted(g: &GameArena, winner: &[Player], strategy: &[Option<usize>], player: Player) -> Option<DiGraph<(), u8>> {
    let mut graph = DiGraph::<(), u8>::new();
    let nodes: Vec<_> = (0..g.num_vertices()).map(|_| graph.add_node(())).collect();
    for v in (0..g.num_vertices()).filter(|&v| winner[v] == player) {
        let ids: Vec<usize> = if g.owner(v) == player { vec![strategy[v]?] } else { g.out_ids(v).collect() };
        for id in ids {
            let e = g.edge(id);
            if winner[e.dst] != player {
                return None;
            }
            graph.add_edge(nodes[v], nodes[e.dst], e.priority);
        }
    }
    Some(graph)
}

/// Whether some edge with priority `p` lies on a cycle using only edges of
/// priority at most `max`.
fn cycle_through(graph: &DiGraph<(), u8>, p: u8, max: u8) -> bool {
    let sub = graph.filter_map(|_, _| Some(()), |_, &w| (w <= max).then_some(w));
    let mut scc = vec![0; sub.node_count()];
    for (i, comp) in tarjan_scc(&sub).iter().enumerate() {
        for n in comp {
            scc[n.index()] = i;
        }
    }
    sub.edge_indices().any(|e| {
        let (s, t) = sub.edge_endpoints(e).unwrap();
        sub[e] == p && scc[s.index()] == scc[t.index()]
    })
}

/// Every cycle Eve can be held to has even maximum; every cycle Adam can be
/// held to has maximum 1.
fn strategy_is_winning(g: &GameArena, winner: &[Player], strategy: &[Option<usize>], player: Player) -> bool {
    let Some(graph) = restricted(g, winner, strategy, player) else { return false };
    match player {
        Player::Eve => !cycle_through(&graph, 1, 1),
        Player::Adam => !cycle_through(&graph, 2, 2) && !cycle_through(&graph, 0, 0),
    }
}

#[test]
fn solve_01_agrees_on_sprint_arenas() {
    for seed in 0..40 {
        let a = common::raw(3, seed);
        let g = build_sprint_all(&a, &a).unwrap();
        let s1 = solve_01(&g).unwrap();
        let s2 = solve_02(&g).unwrap();
        assert_eq!(s1.winner, s2.winner, "seed {seed}");
    }
}

#[test]
fn solve_01_agrees_on_random_01_arenas() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let g = random_arena(&mut rng, 1);
        assert_eq!(solve_01(&g).unwrap().winner, solve_02(&g).unwrap().winner);
    }
}

#[test]
fn zielonka_agrees_with_progress_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let g = random_arena(&mut rng, 2);
        assert_eq!(zielonka(&g).0, solve_02(&g).unwrap().winner);
    }
}

#[test]
fn strategies_are_winning() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..300 {
        let g = random_arena(&mut rng, 2);
        let s = solve_02(&g).unwrap();
        assert!(strategy_is_winning(&g, &s.winner, &s.eve_strategy, Player::Eve), "arena {i}");
        let (winner, strategy) = zielonka(&g);
        assert!(strategy_is_winning(&g, &winner, &strategy, Player::Eve), "arena {i}");
        assert!(strategy_is_winning(&g, &winner, &strategy, Player::Adam), "arena {i}");
    }
}

#[test]
fn solving_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let g = random_arena(&mut rng, 2);
        assert_eq!(solve_02(&g).unwrap(), solve_02(&g).unwrap());
    }
}

#[test]
fn corrupted_ranks_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut corrupted = 0;
    for _ in 0..200 {
        let g = random_arena(&mut rng, 2);
        let mut s = solve_02(&g).unwrap();
        assert!(rank_monotonicity_check(&g, &s));
        if let Some(v) = (0..g.num_vertices()).find(|&v| matches!(s.rank[v], Rank::Finite(r) if r > 0)) {
            let Rank::Finite(r) = s.rank[v] else { unreachable!() };
            s.rank[v] = Rank::Finite(r - 1);
            assert!(!rank_monotonicity_check(&g, &s));
            corrupted += 1;
        }
    }
    assert!(corrupted > 20);
}

#[test]
fn g1_solutions_on_hd_corpus_are_monotone() {
    for g in common::copies_corpus(40, 8, 0.0, 9000) {
        let arena = build_g1(&g.automaton).unwrap();
        let s = solve_02(&arena).unwrap();
        assert!(s.eve_wins(arena.initial()));
        assert!(rank_monotonicity_check(&arena, &s));
    }
}
