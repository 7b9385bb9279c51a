//! Solvers for arenas with edge priorities in `{0,1,2}` (and `{0,1}`).
//! Eve wins a play when the largest priority seen infinitely often is even.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::arena::{GameArena, Player};
use crate::error::{Error, Result};

/// Number of priority-1 edges Adam can force before a priority-2 edge, or
/// `Top` when he can force infinitely many.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rank {
    Finite(u32),
    Top,
}

impl Rank {
    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }

    pub fn value(self) -> Option<u32> {
        match self {
            Rank::Finite(r) => Some(r),
            Rank::Top => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub rank: Vec<Rank>,
    /// Chosen edge id at every Eve vertex won by Eve.
    pub eve_strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn eve_wins(&self, v: usize) -> bool {
        self.winner[v] == Player::Eve
    }
}

fn check_priorities(g: &GameArena, max: u8) -> Result<()> {
    match g.edges().iter().find(|e| e.priority > max) {
        Some(e) => Err(Error::PriorityOutOfRange(e.priority)),
        None => Ok(()),
    }
}

/// Predecessor edge ids per vertex.
fn predecessors(g: &GameArena) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); g.num_vertices()];
    for (id, e) in g.edges().iter().enumerate() {
        pred[e.dst].push(id);
    }
    pred
}

const TOP: u32 = u32::MAX;

/// Small progress measures. Ranks start at 0 and are lifted to the least
/// fixpoint, visiting vertices in ascending id order with FIFO re-insertion.
/// A rank above the number of vertices owning a priority-1 edge means Adam
/// can repeat a priority-1 edge without a 2 in between, so it becomes `Top`.
pub fn solve_02(g: &GameArena) -> Result<Solution> {
    check_priorities(g, 2)?;
    let n = g.num_vertices();
    let bound = (0..n).filter(|&v| g.out(v).iter().any(|e| e.priority == 1)).count() as u32;
    let pred = predecessors(g);
    let mut rho = vec![0u32; n];

    let lift = |rho: &[u32], e: usize| -> u32 {
        let edge = g.edge(e);
        let r = rho[edge.dst];
        match edge.priority {
            2 => {
                if r == TOP {
                    TOP
                } else {
                    0
                }
            }
            1 => {
                if r == TOP || r >= bound {
                    TOP
                } else {
                    r + 1
                }
            }
            _ => r,
        }
    };
    let value = |rho: &[u32], v: usize| -> u32 {
        let lifted = g.out_ids(v).map(|e| lift(rho, e));
        match g.owner(v) {
            Player::Eve => lifted.min(),
            Player::Adam => lifted.max(),
        }
        .expect("arenas have no dead ends")
    };

    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let new = value(&rho, v);
        if new > rho[v] {
            rho[v] = new;
            for &e in &pred[v] {
                let u = g.edge(e).src;
                if !queued[u] && rho[u] != TOP {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    let mut winner = Vec::with_capacity(n);
    let mut rank = Vec::with_capacity(n);
    let mut eve_strategy = vec![None; n];
    for v in 0..n {
        if rho[v] == TOP {
            winner.push(Player::Adam);
            rank.push(Rank::Top);
            continue;
        }
        winner.push(Player::Eve);
        rank.push(Rank::Finite(rho[v]));
        if g.owner(v) == Player::Eve {
            // min_by_key keeps the first minimum, i.e. the least edge id.
            eve_strategy[v] = g.out_ids(v).min_by_key(|&e| lift(&rho, e));
        }
    }
    let solution = Solution {
        winner,
        rank,
        eve_strategy,
    };
    debug_assert!(rank_monotonicity_check(g, &solution), "progress measure is not monotone");
    Ok(solution)
}

/// Solves an arena with priorities in `{0,1}`: Eve wins when priority 1 is
/// seen finitely often. Computed by attractors: Adam's edge-attractor to the
/// priority-1 edges leaves a region where Eve avoids them forever; her
/// attractor to that region is won by her and removed, until nothing
/// remains to remove.
///
/// Ranks are the largest number of priority-1 edges Adam can force while
/// Eve follows the extracted strategy.
pub fn solve_01(g: &GameArena) -> Result<Solution> {
    check_priorities(g, 1)?;
    let n = g.num_vertices();
    let pred = predecessors(g);
    let mut alive = vec![true; n];
    let mut eve_won = vec![false; n];
    let mut strategy: Vec<Option<usize>> = vec![None; n];

    loop {
        // Adam's edge-attractor to priority-1 edges inside the alive part.
        let mut attracted = vec![false; n];
        let mut count = vec![0usize; n];
        let mut queue = VecDeque::new();
        for v in (0..n).filter(|&v| alive[v]) {
            let mut edges = g.out_ids(v).filter(|&e| alive[g.edge(e).dst]);
            let forced = match g.owner(v) {
                Player::Adam => edges.any(|e| g.edge(e).priority == 1),
                Player::Eve => {
                    count[v] = edges.filter(|&e| g.edge(e).priority == 0).count();
                    count[v] == 0
                }
            };
            if forced {
                attracted[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &pred[u] {
                let edge = g.edge(e);
                let v = edge.src;
                if !alive[v] || attracted[v] {
                    continue;
                }
                let add = match g.owner(v) {
                    Player::Adam => true,
                    Player::Eve => {
                        if edge.priority == 0 {
                            count[v] -= 1;
                        }
                        count[v] == 0
                    }
                };
                if add {
                    attracted[v] = true;
                    queue.push_back(v);
                }
            }
        }

        let safe: Vec<bool> = (0..n).map(|v| alive[v] && !attracted[v]).collect();
        if !safe.iter().any(|&s| s) {
            break;
        }
        for v in (0..n).filter(|&v| safe[v] && g.owner(v) == Player::Eve) {
            strategy[v] = g.out_ids(v).find(|&e| g.edge(e).priority == 0 && safe[g.edge(e).dst]);
            debug_assert!(strategy[v].is_some());
        }

        // Eve's attractor to the safe region.
        let mut won = safe.clone();
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| g.out_ids(v).filter(|&e| alive[g.edge(e).dst]).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| safe[v]).collect();
        while let Some(u) = queue.pop_front() {
            for &e in &pred[u] {
                let v = g.edge(e).src;
                if !alive[v] || won[v] {
                    continue;
                }
                let add = match g.owner(v) {
                    Player::Eve => {
                        strategy[v] = Some(e);
                        true
                    }
                    Player::Adam => {
                        remaining[v] -= 1;
                        remaining[v] == 0
                    }
                };
                if add {
                    won[v] = true;
                    queue.push_back(v);
                }
            }
        }
        for v in 0..n {
            if won[v] {
                eve_won[v] = true;
                alive[v] = false;
            }
        }
    }

    for v in 0..n {
        if !eve_won[v] || g.owner(v) == Player::Adam {
            strategy[v] = None;
        }
    }
    let rank = count_ones_against(g, &eve_won, &strategy);
    let winner = eve_won.iter().map(|&w| if w { Player::Eve } else { Player::Adam }).collect();
    Ok(Solution {
        winner,
        rank,
        eve_strategy: strategy,
    })
}

/// Longest number of priority-1 edges on a path inside Eve's region when
/// she follows `strategy`. Cycles in that graph carry only priority 0.
fn count_ones_against(g: &GameArena, eve_won: &[bool], strategy: &[Option<usize>]) -> Vec<Rank> {
    let n = g.num_vertices();
    let allowed = |e: usize| {
        let edge = g.edge(e);
        eve_won[edge.src]
            && match g.owner(edge.src) {
                Player::Eve => strategy[edge.src] == Some(e),
                Player::Adam => true,
            }
    };
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, g.num_edges());
    for _ in 0..n {
        graph.add_node(());
    }
    for e in (0..g.num_edges()).filter(|&e| allowed(e)) {
        graph.add_edge(NodeIndex::new(g.edge(e).src), NodeIndex::new(g.edge(e).dst), ());
    }
    let sccs = tarjan_scc(&graph);
    let mut comp = vec![0; n];
    for (c, scc) in sccs.iter().enumerate() {
        for v in scc {
            comp[v.index()] = c;
        }
    }
    // Tarjan lists components sinks first, so successors are done earlier.
    let mut best = vec![0u32; sccs.len()];
    for (c, scc) in sccs.iter().enumerate() {
        let mut b = 0;
        for v in scc {
            for e in g.out_ids(v.index()).filter(|&e| allowed(e)) {
                let edge = g.edge(e);
                let w = edge.priority as u32;
                if comp[edge.dst] == c {
                    debug_assert_eq!(w, 0, "a priority-1 cycle inside Eve's region");
                } else {
                    b = b.max(best[comp[edge.dst]] + w);
                }
            }
        }
        best[c] = b;
    }
    (0..n)
        .map(|v| if eve_won[v] { Rank::Finite(best[comp[v]]) } else { Rank::Top })
        .collect()
}

/// Checks the rank invariants of a solution: finite ranks exactly on Eve's
/// vertices, a strategy exactly on Eve-won Eve vertices, and along every
/// edge Adam may take or Eve's strategy takes from an Eve-won vertex, the
/// rank does not increase unless the edge has priority 2, and it strictly
/// decreases across priority 1.
pub fn rank_monotonicity_check(g: &GameArena, s: &Solution) -> bool {
    let n = g.num_vertices();
    if s.winner.len() != n || s.rank.len() != n || s.eve_strategy.len() != n {
        return false;
    }
    for v in 0..n {
        let eve_won = s.winner[v] == Player::Eve;
        if eve_won != s.rank[v].is_finite() {
            return false;
        }
        let should_have_strategy = eve_won && g.owner(v) == Player::Eve;
        if s.eve_strategy[v].is_some() != should_have_strategy {
            return false;
        }
        if !eve_won {
            continue;
        }
        let relevant: Vec<usize> = match g.owner(v) {
            Player::Adam => g.out_ids(v).collect(),
            Player::Eve => match s.eve_strategy[v] {
                Some(e) if g.out_ids(v).contains(&e) => vec![e],
                _ => return false,
            },
        };
        for e in relevant {
            let edge = g.edge(e);
            let (rv, ru) = (s.rank[v], s.rank[edge.dst]);
            let ok = match edge.priority {
                2 => ru.is_finite(),
                1 => ru.is_finite() && rv > ru,
                _ => rv >= ru,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Winners and positional strategies for both players in an arena with any
/// edge priorities, by Zielonka's recursive algorithm. The strategy entry
/// of a vertex is set when its owner wins it.
pub fn zielonka(g: &GameArena) -> (Vec<Player>, Vec<Option<usize>>) {
    let n = g.num_vertices();
    let pred = predecessors(g);
    let mut strategy = vec![None; n];
    let alive = vec![true; n];
    let won = zielonka_rec(g, &pred, &alive, g.max_priority(), &mut strategy);
    let winner: Vec<Player> = won.into_iter().map(|w| w.expect("every vertex is decided")).collect();
    for v in 0..n {
        if g.owner(v) != winner[v] {
            strategy[v] = None;
        }
    }
    (winner, strategy)
}

/// Attractor for `player` inside `alive` to the vertices in `target` and to
/// the edges accepted by `target_edge`, using edges with priority at most
/// `bound`. Records attractor moves for `player` in `strategy`.
#[allow(clippy::too_many_arguments)]
fn attractor(
    g: &GameArena,
    pred: &[Vec<usize>],
    alive: &[bool],
    bound: u8,
    player: Player,
    target: &[bool],
    target_edge: impl Fn(usize) -> bool,
    strategy: &mut [Option<usize>],
) -> Vec<bool> {
    let n = g.num_vertices();
    let usable = |e: usize| {
        let edge = g.edge(e);
        alive[edge.src] && alive[edge.dst] && edge.priority <= bound
    };
    let mut attracted = vec![false; n];
    let mut remaining = vec![0usize; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| alive[v]) {
        if target[v] {
            attracted[v] = true;
            queue.push_back(v);
            continue;
        }
        let edges: Vec<usize> = g.out_ids(v).filter(|&e| usable(e)).collect();
        let hits: Vec<usize> = edges.iter().copied().filter(|&e| target_edge(e)).collect();
        if g.owner(v) == player {
            if let Some(&e) = hits.first() {
                strategy[v] = Some(e);
                attracted[v] = true;
                queue.push_back(v);
            }
        } else {
            remaining[v] = edges.len() - hits.len();
            if remaining[v] == 0 {
                attracted[v] = true;
                queue.push_back(v);
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        for &e in &pred[u] {
            if !usable(e) || target_edge(e) {
                continue;
            }
            let v = g.edge(e).src;
            if attracted[v] {
                continue;
            }
            let add = if g.owner(v) == player {
                strategy[v] = Some(e);
                true
            } else {
                remaining[v] -= 1;
                remaining[v] == 0
            };
            if add {
                attracted[v] = true;
                queue.push_back(v);
            }
        }
    }
    attracted
}

fn zielonka_rec(
    g: &GameArena,
    pred: &[Vec<usize>],
    alive: &[bool],
    bound: u8,
    strategy: &mut [Option<usize>],
) -> Vec<Option<Player>> {
    let n = g.num_vertices();
    let mut result = vec![None; n];
    let usable = |e: usize| {
        let edge = g.edge(e);
        alive[edge.src] && alive[edge.dst] && edge.priority <= bound
    };
    let Some(d) = (0..g.num_edges()).filter(|&e| usable(e)).map(|e| g.edge(e).priority).max() else {
        return result;
    };
    let player = if d % 2 == 0 { Player::Eve } else { Player::Adam };
    let opponent = player.opponent();
    if d == 0 {
        for v in (0..n).filter(|&v| alive[v]) {
            result[v] = Some(Player::Eve);
            if g.owner(v) == Player::Eve {
                strategy[v] = g.out_ids(v).find(|&e| usable(e));
            }
        }
        return result;
    }

    let mut alive = alive.to_vec();
    loop {
        let none = vec![false; n];
        let mut attr_strategy = strategy.to_vec();
        let top = attractor(g, pred, &alive, bound, player, &none, |e| g.edge(e).priority == d, &mut attr_strategy);
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !top[v]).collect();
        let sub = zielonka_rec(g, pred, &rest, d - 1, strategy);
        let opponent_region: Vec<bool> = sub.iter().map(|w| *w == Some(opponent)).collect();
        if !opponent_region.iter().any(|&b| b) {
            for v in (0..n).filter(|&v| alive[v]) {
                result[v] = Some(player);
                if top[v] && g.owner(v) == player {
                    strategy[v] = attr_strategy[v];
                }
            }
            return result;
        }
        let mut escape_strategy = strategy.to_vec();
        let escape = attractor(g, pred, &alive, bound, opponent, &opponent_region, |_| false, &mut escape_strategy);
        for v in (0..n).filter(|&v| escape[v]) {
            result[v] = Some(opponent);
            alive[v] = false;
            if !opponent_region[v] && g.owner(v) == opponent {
                strategy[v] = escape_strategy[v];
            }
        }
        if !alive.iter().any(|&a| a) {
            return result;
        }
    }
}
