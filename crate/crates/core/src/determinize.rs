//! Determinisation of history-deterministic Büchi automata.
//!
//! A good automaton is first normalised by iterating optimal ranks of the
//! 1-token game until every state sprint simulates an equivalent state;
//! the deterministic automaton then runs over pairs `(q, p)` where `p`
//! is a sprint-deterministic partner of `q`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{Lasso, NameGen, ParityAutomaton, Transition};
use crate::construct::{productive, trim};
use crate::error::{Error, Result};
use crate::games::{build_g1, build_simulation};
use crate::graph::EdgeGraph;
use crate::hd::{empty_like, is_hd_buchi, make_good, sprint_deterministic_witness, EquivalenceTable, SprintRelation};
use crate::solver::{solve_02, Rank};
use crate::taf;

/// Ranks of the 1-token game at its round-start positions and, per state,
/// the least rank over positions where Eve's token is on that state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptRanks {
    pub states: Vec<String>,
    /// `(eve, adam, rank)` for every reachable pair.
    pub ranks: Vec<(usize, usize, u32)>,
    pub opt: Vec<u32>,
}

impl OptRanks {
    pub fn rank(&self, eve: usize, adam: usize) -> Option<u32> {
        self.ranks.iter().find(|r| r.0 == eve && r.1 == adam).map(|r| r.2)
    }

    fn opt_of(&self, name: &str) -> u32 {
        let q = self.states.iter().position(|s| s == name).expect("state of the ranked automaton");
        self.opt[q]
    }
}

pub fn opt_ranks(h: &ParityAutomaton) -> Result<OptRanks> {
    h.require_buchi()?;
    let g = build_g1(h)?;
    let s = solve_02(&g)?;
    let mut ranks = Vec::new();
    let mut opt = vec![u32::MAX; h.num_states()];
    for v in 0..g.num_vertices() {
        let crate::arena::Payload::Pair { eve, adam } = *g.payload(v) else { continue };
        match s.rank[v] {
            Rank::Finite(r) => {
                ranks.push((eve, adam, r));
                opt[eve] = opt[eve].min(r);
            }
            Rank::Top => {
                return Err(Error::Integrity(format!(
                    "Adam wins the 1-token game from ({},{}); the automaton is not good",
                    h.state_name(eve),
                    h.state_name(adam)
                )))
            }
        }
    }
    ranks.sort_unstable();
    if let Some(q) = (0..h.num_states()).find(|&q| opt[q] == u32::MAX) {
        return Err(Error::Integrity(format!("state {} never holds Eve's token", h.state_name(q))));
    }
    Ok(OptRanks {
        states: h.states().to_vec(),
        ranks,
        opt,
    })
}

fn rejecting_where(h: &ParityAutomaton, r: &OptRanks, f: impl Fn(u32, u32) -> bool) -> Vec<Transition> {
    h.transitions()
        .iter()
        .filter(|t| t.priority == 1 && f(r.opt_of(h.state_name(t.src)), r.opt_of(h.state_name(t.dst))))
        .copied()
        .collect()
}

/// Drops rejecting transitions along which the optimal rank increases,
/// then trims.
pub fn prune_step(h: &ParityAutomaton, r: &OptRanks) -> ParityAutomaton {
    let removed = rejecting_where(h, r, |a, b| a < b);
    trim(&h.filter_transitions(|t| !removed.contains(t)))
}

/// Makes rejecting transitions along which the optimal rank decreases
/// accepting. `r` is keyed by state names, so it may come from the
/// automaton before pruning.
pub fn promote_step(h: &ParityAutomaton, r: &OptRanks) -> ParityAutomaton {
    let promoted = rejecting_where(h, r, |a, b| a > b);
    h.map_transitions(|t| Some(if promoted.contains(t) { Transition { priority: 2, ..*t } } else { *t }))
}

/// One round of the normalisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Iteration {
    /// The automaton the round started from, in TAF.
    pub automaton: String,
    pub opt: BTreeMap<String, u32>,
    pub removed: Vec<String>,
    pub promoted: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub iterations: Vec<Iteration>,
    /// Number of rounds that changed the automaton.
    pub terminated_at: usize,
}

impl PipelineTrace {
    /// The automata the rounds started from, and the fixpoint last.
    pub fn snapshots(&self) -> Result<Vec<ParityAutomaton>> {
        self.iterations.iter().map(|i| taf::parse(&i.automaton)).collect()
    }
}

/// Iterates `opt_ranks`, `prune_step` and `promote_step` until nothing
/// changes. The input must be good.
pub fn normalize(h: &ParityAutomaton) -> Result<(ParityAutomaton, PipelineTrace)> {
    h.require_buchi()?;
    let mut current = trim(h);
    let bound = current.transitions().len();
    let mut trace = PipelineTrace::default();
    loop {
        let r = opt_ranks(&current)?;
        let removed = rejecting_where(&current, &r, |a, b| a < b);
        let pruned = prune_step(&current, &r);
        let promoted = rejecting_where(&pruned, &r, |a, b| a > b);
        let next = promote_step(&pruned, &r);
        trace.iterations.push(Iteration {
            automaton: taf::serialize(&current),
            opt: r.states.iter().cloned().zip(r.opt.iter().copied()).collect(),
            removed: removed.iter().map(|t| current.describe(t)).collect(),
            promoted: promoted.iter().map(|t| pruned.describe(t)).collect(),
        });
        if next == current {
            break;
        }
        trace.terminated_at += 1;
        if trace.terminated_at > bound {
            return Err(Error::Integrity(format!("normalisation exceeded {bound} rounds")));
        }
        current = next;
    }
    check_sprint_self_simulation(&current)?;
    Ok((current, trace))
}

/// Every state sprint simulates some language-equivalent state.
fn check_sprint_self_simulation(h: &ParityAutomaton) -> Result<()> {
    let equiv = EquivalenceTable::from_simulation(h)?;
    let sprint = SprintRelation::new(h)?;
    let n = h.num_states();
    match (0..n).find(|&p| !(0..n).any(|q| equiv.equivalent(p, q) && sprint.simulates(p, q))) {
        Some(p) => Err(Error::Integrity(format!("state {} sprint simulates no equivalent state", h.state_name(p)))),
        None => Ok(()),
    }
}

/// Deterministic automaton over pairs `(q, p)`: `q` and `p` are
/// equivalent, `q` sprint simulates `p`, and `p` is sprint deterministic.
/// Input must be good with a sprint self-simulation.
pub fn build_d(h: &ParityAutomaton) -> Result<ParityAutomaton> {
    h.require_buchi()?;
    let n = h.num_states();
    let equiv = EquivalenceTable::from_simulation(h)?;
    let sprint = SprintRelation::new(h)?;
    let (sd, f) = sprint_deterministic_witness(h)?;
    let valid = |q: usize, p: usize| equiv.equivalent(q, p) && sprint.simulates(q, p) && sd[p];
    let partner = |q: usize| {
        (0..n)
            .find(|&p| valid(q, p))
            .ok_or_else(|| Error::Integrity(format!("state {} has no valid partner", h.state_name(q))))
    };

    let start = (h.initial(), partner(h.initial())?);
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut edges = Vec::new();
    while let Some((q, p)) = queue.pop_front() {
        for l in 0..h.num_letters() {
            let out = h.out(q, l);
            if out.is_empty() {
                continue;
            }
            let (next, priority) = match out.iter().find(|t| t.priority == 2) {
                Some(t) => ((t.dst, partner(t.dst)?), 2),
                None => {
                    let tq = sprint.tau(q, l, p).ok_or_else(|| {
                        Error::Integrity(format!("no sprint move from ({},{}) on {}", h.state_name(q), h.state_name(p), h.alphabet().name(l)))
                    })?;
                    let tp = f.out(p, l).first().copied().ok_or_else(|| {
                        Error::Integrity(format!("witness has no {}-move from {}", h.alphabet().name(l), h.state_name(p)))
                    })?;
                    if tq.priority != 1 || tp.priority != 1 || !valid(tq.dst, tp.dst) {
                        return Err(Error::Integrity(format!(
                            "sprint step from ({},{}) on {} leaves the valid pairs",
                            h.state_name(q),
                            h.state_name(p),
                            h.alphabet().name(l)
                        )));
                    }
                    ((tq.dst, tp.dst), 1)
                }
            };
            let id = *ids.entry(next).or_insert_with(|| {
                order.push(next);
                queue.push_back(next);
                order.len() - 1
            });
            edges.push(Transition::new(ids[&(q, p)], l, priority, id));
        }
    }
    let mut names = NameGen::new();
    let states = order
        .iter()
        .map(|&(q, p)| names.fresh(format!("({},{})", h.state_name(q), h.state_name(p))))
        .collect();
    ParityAutomaton::new(states, h.alphabet().clone(), 0, (1, 2), edges)
}

/// Full pipeline: trim, make good, normalise, build the pair automaton and
/// verify it against the input.
pub fn determinize_hd(a: &ParityAutomaton) -> Result<(ParityAutomaton, PipelineTrace)> {
    determinize_hd_with(a, true)
}

pub fn determinize_hd_with(a: &ParityAutomaton, verify: bool) -> Result<(ParityAutomaton, PipelineTrace)> {
    a.require_buchi()?;
    let t = trim(a);
    if productive(&t).is_none() {
        return Ok((empty_like(&t), PipelineTrace::default()));
    }
    if !is_hd_buchi(&t)? {
        return Err(Error::NotHd);
    }
    let good = make_good(&t)?;
    let (hstar, trace) = normalize(&good)?;
    let d = build_d(&hstar)?;
    if verify {
        let report = verify_determinization(&t, &d)?;
        if !report.ok {
            return Err(Error::Integrity(format!(
                "determinisation check failed: {}",
                report.reason.unwrap_or_default()
            )));
        }
    }
    Ok((d, trace))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub reason: Option<String>,
    /// A word in `L(H)` rejected by `D`, when that is the failure.
    pub counterexample: Option<Lasso>,
}

impl VerifyReport {
    fn fail(reason: impl Into<String>) -> Self {
        VerifyReport {
            ok: false,
            reason: Some(reason.into()),
            counterexample: None,
        }
    }
}

/// Checks that `d` is a deterministic Büchi automaton with at most `n²`
/// states recognising `L(h)`, for `h` history-deterministic with `n`
/// reachable states.
pub fn verify_determinization(h: &ParityAutomaton, d: &ParityAutomaton) -> Result<VerifyReport> {
    h.require_buchi()?;
    d.require_buchi()?;
    h.same_alphabet(d)?;
    if !d.is_deterministic() {
        return Ok(VerifyReport::fail("not deterministic"));
    }
    let n = trim(h).num_states();
    if d.num_states() > n * n {
        return Ok(VerifyReport::fail(format!("{} states exceed {}²", d.num_states(), n)));
    }
    let ph = productive(h);
    let pd = productive(d);
    // L(D) ⊆ L(H)
    match (&ph, &pd) {
        (_, None) => {}
        (None, Some(_)) => return Ok(VerifyReport::fail("L(D) is not empty but L(H) is")),
        (Some(x), Some(y)) => {
            if !solve_02(&build_simulation(x, y)?)?.eve_wins(0) {
                return Ok(VerifyReport::fail("L(D) is not contained in L(H)"));
            }
        }
    }
    // L(H) ⊆ L(D)
    if let Some(w) = containment_counterexample(h, d) {
        return Ok(VerifyReport {
            ok: false,
            reason: Some(format!("D rejects {}", w.render(h.alphabet()))),
            counterexample: Some(w),
        });
    }
    Ok(VerifyReport {
        ok: true,
        reason: None,
        counterexample: None,
    })
}

/// A lasso accepted by `h` and rejected by the deterministic `d`: a cycle
/// in the product of `h` with the completed complement of `d` that sees an
/// accepting transition of `h` and none of `d`.
pub fn containment_counterexample(h: &ParityAutomaton, d: &ParityAutomaton) -> Option<Lasso> {
    let m = d.num_states() + 1;
    let sink = d.num_states();
    let node = |x: usize, y: usize| x * m + y;
    let mut edges = Vec::new();
    let mut info = Vec::new();
    for t in h.transitions() {
        for y in 0..m {
            let step = if y == sink { None } else { d.out(y, t.letter).first() };
            let (dst, d_accepts) = step.map_or((sink, false), |u| (u.dst, u.priority == 2));
            edges.push((node(t.src, y), node(t.dst, dst)));
            info.push((t.letter, t.priority == 2, d_accepts));
        }
    }
    let g = EdgeGraph::new(h.num_states() * m, edges);
    let w = g.find_cycle(&[node(h.initial(), d.initial())], |e| !info[e].2, &[&|e: usize| info[e].1])?;
    let letters = |ids: &[usize]| ids.iter().map(|&e| info[e].0).collect::<Vec<_>>();
    Some(Lasso::new(letters(&w.stem), letters(&w.cycle)).expect("cycles are non-empty"))
}
