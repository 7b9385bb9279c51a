//! Decision procedures built from the games.
//!
//! The deciders first drop states with empty language (see
//! [`construct::productive`]); on the remaining automaton the stuck-player
//! conventions of the arenas coincide with the games on the completed
//! automaton.

use std::collections::{HashMap, VecDeque};

use crate::arena::{GameArena, Move, Payload, Player};
use crate::automaton::{Lasso, LetterMap, ParityAutomaton, Transition};
use crate::construct::{self, nonempty_states, productive, reachability_lift, restrict, trim};
use crate::error::{Error, Result};
use crate::games::{
    build_g1, build_joker, build_k_token_capped, build_simulation_all, build_simulation_from, build_sprint_all,
    build_stepahead_seeded, DEFAULT_ARENA_CAP,
};
use crate::graph::EdgeGraph;
use crate::lasso::{for_each_lasso, lasso_accepts};
use crate::solver::{solve_01, solve_02, zielonka, Solution};

/// Büchi check followed by removal of empty-language states; `None` when
/// the whole language is empty.
fn prepared(a: &ParityAutomaton) -> Result<Option<ParityAutomaton>> {
    a.require_buchi()?;
    Ok(productive(a))
}

fn eve_wins_initial(g: &GameArena) -> Result<bool> {
    Ok(solve_02(g)?.eve_wins(g.initial()))
}

pub fn eve_wins_g1(a: &ParityAutomaton) -> Result<bool> {
    match prepared(a)? {
        Some(p) => eve_wins_initial(&build_g1(&p)?),
        None => Ok(true),
    }
}

pub fn eve_wins_joker(a: &ParityAutomaton) -> Result<bool> {
    match prepared(a)? {
        Some(p) => eve_wins_initial(&build_joker(&p)?),
        None => Ok(true),
    }
}

pub fn eve_wins_k_token(a: &ParityAutomaton, k: usize) -> Result<bool> {
    eve_wins_k_token_capped(a, k, DEFAULT_ARENA_CAP)
}

pub fn eve_wins_k_token_capped(a: &ParityAutomaton, k: usize, cap: usize) -> Result<bool> {
    match prepared(a)? {
        Some(p) => eve_wins_initial(&build_k_token_capped(&p, k, cap)?),
        None => Ok(true),
    }
}

/// History-determinism of a Büchi automaton, decided by the Joker game.
pub fn is_hd_buchi(a: &ParityAutomaton) -> Result<bool> {
    eve_wins_joker(a)
}

/// Whether `(x, p)` simulates `(y, q)`, computed on the game as built.
pub fn simulates(x: &ParityAutomaton, p: usize, y: &ParityAutomaton, q: usize) -> Result<bool> {
    eve_wins_initial(&build_simulation_from(x, p, y, q)?)
}

/// Each automaton simulates the other. For history-deterministic automata
/// this is language equivalence.
pub fn mutually_simulate(a: &ParityAutomaton, b: &ParityAutomaton) -> Result<bool> {
    a.same_alphabet(b)?;
    match (prepared(a)?, prepared(b)?) {
        (None, None) => Ok(true),
        (Some(x), Some(y)) => Ok(simulates(&x, x.initial(), &y, y.initial())? && simulates(&y, y.initial(), &x, x.initial())?),
        _ => Ok(false),
    }
}

/// Exact language equivalence of two history-deterministic automata.
/// Refuses inputs that are not history-deterministic.
pub fn hd_language_equiv(a: &ParityAutomaton, b: &ParityAutomaton) -> Result<bool> {
    for x in [a, b] {
        if !is_hd_buchi(x)? {
            return Err(Error::Precondition("exact equivalence needs history-deterministic automata".into()));
        }
    }
    mutually_simulate(a, b)
}

/// The single-state automaton with no transitions, named after `a`'s
/// initial state. It accepts nothing.
pub(crate) fn empty_like(a: &ParityAutomaton) -> ParityAutomaton {
    let mut keep = vec![false; a.num_states()];
    keep[a.initial()] = true;
    restrict(a, &keep).filter_transitions(|_| false)
}

/// Positions of `g` reachable from its initial vertex when `player` follows
/// `strategy` and the opponent moves freely.
fn reachable_under(g: &GameArena, player: Player, strategy: &[Option<usize>]) -> Result<Vec<bool>> {
    let mut seen = vec![false; g.num_vertices()];
    let mut queue = VecDeque::from([g.initial()]);
    seen[g.initial()] = true;
    while let Some(v) = queue.pop_front() {
        let edges: Vec<usize> = if g.owner(v) == player {
            match strategy[v] {
                Some(e) => vec![e],
                None => return Err(Error::StrategyNotTotal(format!("no move at {}", g.render_payload(v)))),
            }
        } else {
            g.out_ids(v).collect()
        };
        for e in edges {
            let w = g.edge(e).dst;
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(seen)
}

/// Good subautomaton: the transitions Eve's token takes in some play of
/// the Joker game where she follows a fixed positional winning strategy.
pub fn make_good(h: &ParityAutomaton) -> Result<ParityAutomaton> {
    let Some(p) = prepared(h)? else {
        return Ok(empty_like(h));
    };
    let g = build_joker(&p)?;
    let s = solve_02(&g)?;
    if !s.eve_wins(g.initial()) {
        return Err(Error::NotHd);
    }
    let seen = reachable_under(&g, Player::Eve, &s.eve_strategy)?;
    let mut used = vec![false; p.transitions().len()];
    for v in (0..g.num_vertices()).filter(|&v| seen[v] && g.owner(v) == Player::Eve) {
        if let Some(e) = s.eve_strategy[v] {
            if let Move::Eve(id) = g.edge(e).mv {
                used[id] = true;
            }
        }
    }
    let kept = p.filter_transitions(|t| used[p.transition_id(t).expect("transition of p")]);
    Ok(trim(&kept))
}

/// The Joker game winner with its positional strategy as readable lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JokerWitness {
    pub winner: Player,
    pub lines: Vec<String>,
}

/// Solves the Joker game and describes the winner's positional strategy on
/// the positions reachable when the winner follows it.
pub fn joker_witness(a: &ParityAutomaton) -> Result<JokerWitness> {
    let Some(p) = prepared(a)? else {
        return Ok(JokerWitness {
            winner: Player::Eve,
            lines: vec!["the language is empty".into()],
        });
    };
    let g = build_joker(&p)?;
    let (winners, strategy) = zielonka(&g);
    let winner = winners[g.initial()];
    let seen = reachable_under(&g, winner, &strategy)?;
    let mut lines = Vec::new();
    for v in (0..g.num_vertices()).filter(|&v| seen[v] && g.owner(v) == winner) {
        let Some(e) = strategy[v] else { continue };
        let edge = g.edge(e);
        let what = match &edge.mv {
            Move::Letter(l) => format!("letter {}", p.alphabet().name(*l)),
            Move::Eve(id) | Move::Adam(id) => format!("trans {}", p.describe(&p.transition(*id))),
            Move::Joker(id) => format!("joker {}", p.describe(&p.transition(*id))),
            Move::Stuck => "stuck".to_string(),
            Move::Loop | Move::Plain | Move::Tokens(_) => continue,
        };
        lines.push(format!("{} -> {}", g.render_payload(v), what));
    }
    Ok(JokerWitness { winner, lines })
}

/// Result of a semantic-determinism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdVerdict {
    pub sd: bool,
    /// The answer is a decision rather than the outcome of a bounded search.
    pub exact: bool,
    pub counterexample: Option<SdCounterexample>,
}

/// Two transitions `p -a-> q1` and `p -a-> q2` whose targets differ on `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdCounterexample {
    pub state: usize,
    pub letter: usize,
    pub targets: (usize, usize),
    pub word: Option<Lasso>,
}

/// Default lasso bounds for refutations.
pub const DEFAULT_LASSO_BOUND: (usize, usize) = (4, 4);

pub fn is_sd(a: &ParityAutomaton) -> Result<SdVerdict> {
    is_sd_bounded(a, DEFAULT_LASSO_BOUND)
}

/// Semantic determinism on the reachable part: all `a`-successors of a
/// state recognise the same language. Exact for Büchi automata whose
/// states with non-empty language are all history-deterministic
/// (equivalence is then mutual simulation); otherwise a bounded lasso
/// search.
pub fn is_sd_bounded(a: &ParityAutomaton, (max_u, max_v): (usize, usize)) -> Result<SdVerdict> {
    let t = trim(a);
    let nonempty = nonempty_states(&t);

    // A transition into an empty-language state is language-preserving only
    // when every sibling is empty too.
    for q in 0..t.num_states() {
        for l in 0..t.num_letters() {
            let out = t.out(q, l);
            let live = out.iter().find(|x| nonempty[x.dst]);
            let dead = out.iter().find(|x| !nonempty[x.dst]);
            if let (Some(x), Some(y)) = (live, dead) {
                return Ok(SdVerdict {
                    sd: false,
                    exact: true,
                    counterexample: Some(SdCounterexample {
                        state: q,
                        letter: l,
                        targets: (x.dst, y.dst),
                        word: distinguishing_lasso(&t, x.dst, y.dst, (max_u, max_v)),
                    }),
                });
            }
        }
    }
    if !nonempty[t.initial()] {
        return Ok(SdVerdict {
            sd: true,
            exact: true,
            counterexample: None,
        });
    }
    let p = restrict(&t, &nonempty);
    let back: Vec<usize> = (0..t.num_states()).filter(|&q| nonempty[q]).collect();

    let all_hd = p.is_buchi() && joker_winning_states(&p)?.into_iter().all(|x| x);

    if all_hd {
        let equiv = EquivalenceTable::from_simulation(&p)?;
        for q in 0..p.num_states() {
            for l in 0..p.num_letters() {
                let out = p.out(q, l);
                for x in out.iter().skip(1) {
                    if !equiv.equivalent(out[0].dst, x.dst) {
                        return Ok(SdVerdict {
                            sd: false,
                            exact: true,
                            counterexample: Some(SdCounterexample {
                                state: back[q],
                                letter: l,
                                targets: (back[out[0].dst], back[x.dst]),
                                word: distinguishing_lasso(&p, out[0].dst, x.dst, (max_u, max_v)),
                            }),
                        });
                    }
                }
            }
        }
        return Ok(SdVerdict {
            sd: true,
            exact: true,
            counterexample: None,
        });
    }

    for q in 0..p.num_states() {
        for l in 0..p.num_letters() {
            let out = p.out(q, l);
            for x in out.iter().skip(1) {
                if let Some(w) = distinguishing_lasso(&p, out[0].dst, x.dst, (max_u, max_v)) {
                    return Ok(SdVerdict {
                        sd: false,
                        exact: true,
                        counterexample: Some(SdCounterexample {
                            state: back[q],
                            letter: l,
                            targets: (back[out[0].dst], back[x.dst]),
                            word: Some(w),
                        }),
                    });
                }
            }
        }
    }
    Ok(SdVerdict {
        sd: true,
        exact: false,
        counterexample: None,
    })
}

fn distinguishing_lasso(a: &ParityAutomaton, p: usize, q: usize, (max_u, max_v): (usize, usize)) -> Option<Lasso> {
    let mut found = None;
    for_each_lasso(a.num_letters(), max_u, max_v, |w| {
        if lasso_accepts(a, w, p) != lasso_accepts(a, w, q) {
            found = Some(w.clone());
            false
        } else {
            true
        }
    });
    found
}

fn pair_vertex(g: &GameArena, eve: usize, adam: usize) -> usize {
    g.vertex_of(&Payload::Pair { eve, adam }).expect("all-pairs arena holds every pair")
}

/// Language equivalence between all pairs of states, read off one solved
/// all-pairs simulation game. Valid when every state is history-deterministic.
#[derive(Clone, Debug)]
pub struct EquivalenceTable {
    n: usize,
    simulates: Vec<bool>,
}

impl EquivalenceTable {
    /// The caller guarantees that every state of `h` is history-deterministic.
    pub fn from_simulation(h: &ParityAutomaton) -> Result<EquivalenceTable> {
        let n = h.num_states();
        let g = build_simulation_all(h, h)?;
        let s = solve_02(&g)?;
        let mut simulates = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                simulates[p * n + q] = s.eve_wins(pair_vertex(&g, p, q));
            }
        }
        Ok(EquivalenceTable { n, simulates })
    }

    /// `L(q) ⊆ L(p)`.
    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.simulates[p * self.n + q]
    }

    pub fn equivalent(&self, p: usize, q: usize) -> bool {
        self.contains(p, q) && self.contains(q, p)
    }
}

/// States from which Eve wins the Joker game, on the automaton as given.
pub fn joker_winning_states(h: &ParityAutomaton) -> Result<Vec<bool>> {
    h.require_buchi()?;
    let g = build_joker(h)?;
    let s = solve_02(&g)?;
    Ok((0..h.num_states()).map(|q| s.eve_wins(pair_vertex(&g, q, q))).collect())
}

/// Language equivalence of two states, decided by mutual simulation. Both
/// states must be history-deterministic; this is checked with the Joker game.
pub fn state_equiv(h: &ParityAutomaton, p: usize, q: usize) -> Result<bool> {
    h.require_buchi()?;
    if p == q {
        return Ok(true);
    }
    let nonempty = nonempty_states(h);
    match (nonempty[p], nonempty[q]) {
        (false, false) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let r =restrict(&h.with_initial(p), &nonempty);
    let index: Vec<usize> = (0..h.num_states()).scan(0, |next, x| {
        let i = *next;
        if nonempty[x] {
            *next += 1;
        }
        Some(i)
    }).collect();
    let (p, q) = (index[p], index[q]);
    let hd = joker_winning_states(&r)?;
    if !hd[p] || !hd[q] {
        return Err(Error::Precondition("mutual simulation decides equivalence only between history-deterministic states".into()));
    }
    Ok(simulates(&r, p, &r, q)? && simulates(&r, q, &r, p)?)
}

/// Properties that make an automaton "good".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessReport {
    pub is_sd: bool,
    pub sd_exact: bool,
    /// Reachable states from which Eve wins the Joker game.
    pub joker_winning_states: Vec<usize>,
    pub is_good: bool,
}

pub fn goodness(h: &ParityAutomaton) -> Result<GoodnessReport> {
    let sd = is_sd(h)?;
    let t = trim(h);
    let wins = joker_winning_states(&t)?;
    let joker_winning_states: Vec<usize> = (0..t.num_states()).filter(|&q| wins[q]).collect();
    let all = joker_winning_states.len() == t.num_states();
    Ok(GoodnessReport {
        is_sd: sd.sd,
        sd_exact: sd.exact,
        joker_winning_states,
        is_good: sd.sd && all,
    })
}

/// The sprint relation over all pairs of states, with Eve's positional
/// strategy from a single solve.
#[derive(Clone, Debug)]
pub struct SprintRelation {
    automaton: ParityAutomaton,
    arena: GameArena,
    solution: Solution,
}

impl SprintRelation {
    pub fn new(h: &ParityAutomaton) -> Result<SprintRelation> {
        let arena = build_sprint_all(h, h)?;
        let solution = solve_01(&arena)?;
        Ok(SprintRelation {
            automaton: h.clone(),
            arena,
            solution,
        })
    }

    /// `p` sprint simulates `q`.
    pub fn simulates(&self, p: usize, q: usize) -> bool {
        self.solution.eve_wins(pair_vertex(&self.arena, p, q))
    }

    /// Eve's transition from `p` when Adam plays `letter` and his token is at
    /// `q`, if the position is won by Eve and she has a transition.
    pub fn tau(&self, p: usize, letter: usize, q: usize) -> Option<Transition> {
        let v = self.arena.vertex_of(&Payload::Letter { eve: p, letter, adam: q })?;
        let e = self.solution.eve_strategy[v]?;
        match self.arena.edge(e).mv {
            Move::Eve(id) => Some(self.automaton.transition(id)),
            _ => None,
        }
    }
}

pub fn sprint_simulates(h: &ParityAutomaton, p: usize, q: usize) -> Result<bool> {
    h.require_buchi()?;
    Ok(SprintRelation::new(h)?.simulates(p, q))
}

/// States that sprint simulate themselves, and one deterministic
/// subautomaton `F` witnessing sprint determinism for all of them.
///
/// `F` comes from a positional Eve strategy in the 1-token game on `H#`,
/// solved once from all diagonal positions: at `(q,a,q)` a move to the sink
/// `f` is replaced by the least accepting `a`-transition of `q`, any other
/// move is kept. States whose diagonal positions Eve loses keep their least
/// transition per letter.
pub fn sprint_deterministic_witness(h: &ParityAutomaton) -> Result<(Vec<bool>, ParityAutomaton)> {
    h.require_buchi()?;
    let n = h.num_states();
    let lifted = reachability_lift(h)?;
    let diagonal: Vec<(usize, usize)> = (0..n).map(|q| (q, q)).collect();
    let g = build_stepahead_seeded(&lifted, &lifted, &diagonal)?;
    let s = solve_02(&g)?;
    let sink_f = n;

    let sd: Vec<bool> = (0..n).map(|q| s.eve_wins(pair_vertex(&g, q, q))).collect();
    let mut chosen = Vec::new();
    for q in 0..n {
        for l in 0..h.num_letters() {
            let out = h.out(q, l);
            if out.is_empty() {
                continue;
            }
            if let Some(t) = out.iter().find(|t| t.priority == 2) {
                chosen.push(*t);
                continue;
            }
            let strategy_move = g
                .vertex_of(&Payload::Letter { eve: q, letter: l, adam: q })
                .and_then(|v| s.eve_strategy[v])
                .and_then(|e| match g.edge(e).mv {
                    Move::Eve(id) => Some(lifted.transition(id)),
                    _ => None,
                });
            let pick = match strategy_move {
                Some(t) if t.dst != sink_f => Transition::new(q, l, t.priority, t.dst),
                Some(_) => return Err(Error::Integrity(format!("strategy moves to the accepting sink from {} without an accepting transition", h.state_name(q)))),
                None => out[0],
            };
            chosen.push(pick);
        }
    }
    let f = ParityAutomaton::new(h.states().to_vec(), h.alphabet().clone(), h.initial(), h.index(), chosen)?;
    debug_assert!(f.is_deterministic());
    Ok((sd, f))
}

/// An Eve strategy in the Joker game given per position `(eve, letter, adam)`
/// as a transition id of the automaton.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitionStrategy {
    map: HashMap<(usize, usize, usize), usize>,
}

impl TransitionStrategy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: &ParityAutomaton, eve: usize, letter: usize, adam: usize, transition: usize) -> Result<()> {
        let t = a.transitions().get(transition).ok_or_else(|| Error::Precondition(format!("no transition {transition}")))?;
        if t.src != eve || t.letter != letter {
            return Err(Error::Precondition(format!("transition {} does not leave {} on {}", a.describe(t), a.state_name(eve), a.alphabet().name(letter))));
        }
        self.map.insert((eve, letter, adam), transition);
        Ok(())
    }

    pub fn get(&self, eve: usize, letter: usize, adam: usize) -> Option<usize> {
        self.map.get(&(eve, letter, adam)).copied()
    }

    fn build(a: &ParityAutomaton, choose: impl Fn(usize, usize, usize) -> Option<usize>) -> Self {
        let mut map = HashMap::new();
        for p in 0..a.num_states() {
            for l in 0..a.num_letters() {
                for q in 0..a.num_states() {
                    if let Some(t) = choose(p, l, q) {
                        map.insert((p, l, q), t);
                    }
                }
            }
        }
        TransitionStrategy { map }
    }

    /// Move to Adam's state when the tokens are apart, stay when together.
    /// Falls back to staying, then to the least transition.
    pub fn chase(a: &ParityAutomaton) -> Self {
        Self::build(a, |p, l, q| {
            let ids = a.out_ids(p, l);
            let to = |target: usize| ids.clone().find(|&id| a.transition(id).dst == target);
            (if p != q { to(q) } else { None }).or_else(|| to(p)).or_else(|| ids.clone().next())
        })
    }

    /// Always take a self-loop when there is one, else the least transition.
    pub fn stay(a: &ParityAutomaton) -> Self {
        Self::build(a, |p, l, _| {
            let ids = a.out_ids(p, l);
            ids.clone().find(|&id| a.transition(id).dst == p).or_else(|| ids.clone().next())
        })
    }
}

/// Checks a fixed Eve strategy in the Joker game on an automaton of any
/// index, using the raw priorities. Adam wins iff he can reach a cycle
/// without Jokers on which his run's maximal priority is even and Eve's is
/// odd.
pub fn verify_fixed_joker_strategy(a: &ParityAutomaton, eve: &TransitionStrategy) -> Result<bool> {
    let n = a.num_states();
    let node = |p: usize, q: usize| p * n + q;
    struct Step {
        eve: u32,
        adam: u32,
        joker: bool,
    }
    let mut edges = Vec::new();
    let mut steps = Vec::new();
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([(a.initial(), a.initial())]);
    seen[node(a.initial(), a.initial())] = true;
    while let Some((p, q)) = queue.pop_front() {
        for l in 0..a.num_letters() {
            if a.out(p, l).is_empty() {
                if a.out(q, l).is_empty() {
                    continue;
                }
                // Eve has no run on a word Adam can continue.
                return Ok(false);
            }
            let id = eve.get(p, l, q).ok_or_else(|| {
                Error::StrategyNotTotal(format!("no move at ({},{},{})", a.state_name(p), a.alphabet().name(l), a.state_name(q)))
            })?;
            let te = a.transition(id);
            if te.src != p || te.letter != l {
                return Err(Error::Precondition(format!("strategy plays {} at {}", a.describe(&te), a.state_name(p))));
            }
            let adam_moves = a.out(q, l).iter().map(|t| (t, false)).chain(a.out(p, l).iter().map(|t| (t, true)));
            for (ta, joker) in adam_moves {
                edges.push((node(p, q), node(te.dst, ta.dst)));
                steps.push(Step {
                    eve: te.priority,
                    adam: ta.priority,
                    joker,
                });
                if !seen[node(te.dst, ta.dst)] {
                    seen[node(te.dst, ta.dst)] = true;
                    queue.push_back((te.dst, ta.dst));
                }
            }
        }
    }
    let g = EdgeGraph::new(n * n, edges);
    let (_, hi) = a.index();
    let start = [node(a.initial(), a.initial())];
    for da in (0..=hi).filter(|d| d % 2 == 0) {
        for de in (0..=hi).filter(|d| d % 2 == 1) {
            let allowed = |e: usize| !steps[e].joker && steps[e].adam <= da && steps[e].eve <= de;
            let adam_top = |e: usize| steps[e].adam == da;
            let eve_top = |e: usize| steps[e].eve == de;
            if g.find_cycle(&start, allowed, &[&adam_top, &eve_top]).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks a letter strategy for Adam in the history-determinism game that
/// picks the next letter from Eve's current state. Adam wins iff every
/// cycle Eve can reach has an odd maximal priority, provided every
/// reachable state accepts all words. With `assume_universal` unset that
/// premise is tested on lassos within [`DEFAULT_LASSO_BOUND`].
pub fn verify_adam_letter_strategy(a: &ParityAutomaton, letters: &LetterMap, assume_universal: bool) -> Result<bool> {
    let reach = construct::reachable_states(a);
    if !assume_universal {
        let (max_u, max_v) = DEFAULT_LASSO_BOUND;
        for q in (0..a.num_states()).filter(|&q| reach[q]) {
            let mut refuted = None;
            for_each_lasso(a.num_letters(), max_u, max_v, |w| {
                if lasso_accepts(a, w, q) {
                    true
                } else {
                    refuted = Some(w.clone());
                    false
                }
            });
            if let Some(w) = refuted {
                return Err(Error::Precondition(format!(
                    "state {} rejects {}",
                    a.state_name(q),
                    w.render(a.alphabet())
                )));
            }
        }
    }
    let mut edges = Vec::new();
    let mut priorities = Vec::new();
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::from([a.initial()]);
    seen[a.initial()] = true;
    while let Some(q) = queue.pop_front() {
        let l = letters
            .get(q)
            .ok_or_else(|| Error::StrategyNotTotal(format!("no letter for state {}", a.state_name(q))))?;
        for t in a.out(q, l) {
            edges.push((t.src, t.dst));
            priorities.push(t.priority);
            if !seen[t.dst] {
                seen[t.dst] = true;
                queue.push_back(t.dst);
            }
        }
    }
    let g = EdgeGraph::new(a.num_states(), edges);
    let (_, hi) = a.index();
    Ok(crate::graph::even_cycle(&g, &[a.initial()], |e| priorities[e], hi).is_none())
}
