//! Independent checks and random instance generation.
//!
//! These avoid the Joker game and the progress-measure solver so they can
//! cross-examine them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arena::{GameArena, Player};
use crate::automaton::{Alphabet, Lasso, ParityAutomaton, Transition};
use crate::construct::productive;
use crate::error::{Error, Result};
use crate::games::build_simulation;
use crate::lasso::{for_each_lasso, lasso_accepts};
use crate::solver::solve_02;

/// A non-deterministic `a` is history-deterministic iff it simulates a
/// deterministic automaton `d` with the same language. The caller vouches
/// for `L(a) = L(d)`.
pub fn hd_exact_given_dba(a: &ParityAutomaton, d: &ParityAutomaton) -> Result<bool> {
    a.require_buchi()?;
    d.require_buchi()?;
    a.same_alphabet(d)?;
    if !d.is_deterministic() {
        return Err(Error::NotDeterministic("the reference automaton".into()));
    }
    match (productive(a), productive(d)) {
        (None, None) => Ok(true),
        (Some(x), Some(y)) => Ok(solve_02(&build_simulation(&x, &y)?)?.eve_wins(0)),
        _ => Err(Error::Precondition("the automata have different languages".into())),
    }
}

/// First lasso within the bounds on which the two automata disagree, in
/// the order of [`for_each_lasso`].
pub fn bounded_lasso_equiv(a: &ParityAutomaton, b: &ParityAutomaton, max_u: usize, max_v: usize) -> Result<Option<Lasso>> {
    a.same_alphabet(b)?;
    let mut found = None;
    for_each_lasso(a.num_letters(), max_u, max_v, |w| {
        if lasso_accepts(a, w, a.initial()) != lasso_accepts(b, w, b.initial()) {
            found = Some(w.clone());
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// Largest arena [`brute_force_02_winner`] accepts.
pub const BRUTE_FORCE_CAP: usize = 60;

/// Winners of a game with edge priorities in `{0,1,2}`, by value iteration
/// on counters of priority-1 edges seen since the last priority-2 edge.
/// Values are recomputed from scratch each round until nothing changes.
pub fn brute_force_02_winner(g: &GameArena) -> Result<Vec<Player>> {
    let n = g.num_vertices();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::ResourceLimit {
            what: "brute-force arena vertices",
            needed: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if let Some(e) = g.edges().iter().find(|e| e.priority > 2) {
        return Err(Error::PriorityOutOfRange(e.priority));
    }
    // Values range over 0..=top; top means Adam escapes.
    let top = g.edges().iter().filter(|e| e.priority == 1).count() as u32 + 1;
    let mut value = vec![0u32; n];
    loop {
        let next: Vec<u32> = (0..n)
            .map(|v| {
                let options = g.out(v).iter().map(|e| match e.priority {
                    2 if value[e.dst] < top => 0,
                    2 => top,
                    1 => (value[e.dst] + 1).min(top),
                    _ => value[e.dst],
                });
                match g.owner(v) {
                    Player::Eve => options.min().expect("every vertex has a move"),
                    Player::Adam => options.max().expect("every vertex has a move"),
                }
            })
            .collect();
        if next == value {
            break;
        }
        value = next;
    }
    Ok(value.iter().map(|&x| if x < top { Player::Eve } else { Player::Adam }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    /// Every state accepts everything: one accepting move per state and
    /// letter plus random rejecting extras.
    UniversalSd,
    /// Copies of a random complete deterministic automaton `D0`.
    DbaCopies,
    /// Random complete automaton.
    RawRandom,
}

/// Parameters of a random instance. `states` counts the states of `D0`
/// for [`GenKind::DbaCopies`] and of the automaton otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub states: usize,
    pub alphabet_size: usize,
    #[serde(default = "default_copies")]
    pub copies: usize,
    /// Probability of each optional transition.
    #[serde(default = "default_density")]
    pub density: f64,
    #[serde(default = "default_accept")]
    pub accept_prob: f64,
    /// Probability that a copy loses acceptance on a letter, which can
    /// break history-determinism while keeping the language.
    #[serde(default)]
    pub sabotage: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_copies() -> usize {
    2
}

fn default_density() -> f64 {
    0.3
}

fn default_accept() -> f64 {
    0.4
}

impl GenSpec {
    pub fn new(kind: GenKind, states: usize, alphabet_size: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            states,
            alphabet_size,
            copies: default_copies(),
            density: default_density(),
            accept_prob: default_accept(),
            sabotage: 0.0,
            seed,
        }
    }
}

/// A generated automaton and, when one is known, a deterministic automaton
/// with the same language.
#[derive(Clone, Debug)]
pub struct Generated {
    pub automaton: ParityAutomaton,
    pub witness: Option<ParityAutomaton>,
}

fn letter_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("l{i}") })
        .collect()
}

fn priority(rng: &mut ChaCha8Rng, accept_prob: f64) -> u32 {
    if rng.gen_bool(accept_prob) {
        2
    } else {
        1
    }
}

pub fn gen(spec: &GenSpec) -> Result<Generated> {
    if spec.states == 0 || spec.alphabet_size == 0 || spec.copies == 0 {
        return Err(Error::InvalidSpec("states, letters and copies must be positive".into()));
    }
    for (name, p) in [("density", spec.density), ("accept_prob", spec.accept_prob), ("sabotage", spec.sabotage)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidSpec(format!("{name} must lie in [0,1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let alphabet = Alphabet::new(letter_names(spec.alphabet_size))?;
    let n = spec.states;
    let k = spec.alphabet_size;
    let names = |n: usize| (0..n).map(|i| format!("q{i}")).collect::<Vec<_>>();
    match spec.kind {
        GenKind::UniversalSd => {
            let mut ts = Vec::new();
            for q in 0..n {
                for l in 0..k {
                    ts.push(Transition::new(q, l, 2, rng.gen_range(0..n)));
                    for r in 0..n {
                        if rng.gen_bool(spec.density) {
                            ts.push(Transition::new(q, l, 1, r));
                        }
                    }
                }
            }
            let a = ParityAutomaton::new(names(n), alphabet.clone(), 0, (1, 2), ts)?;
            let d = ParityAutomaton::new(vec!["u".into()], alphabet, 0, (1, 2), (0..k).map(|l| Transition::new(0, l, 2, 0)))?;
            Ok(Generated {
                automaton: a,
                witness: Some(d),
            })
        }
        GenKind::RawRandom => {
            let mut ts = Vec::new();
            for q in 0..n {
                for l in 0..k {
                    ts.push(Transition::new(q, l, priority(&mut rng, spec.accept_prob), rng.gen_range(0..n)));
                    for r in 0..n {
                        if rng.gen_bool(spec.density) {
                            ts.push(Transition::new(q, l, priority(&mut rng, spec.accept_prob), r));
                        }
                    }
                }
            }
            Ok(Generated {
                automaton: ParityAutomaton::new(names(n), alphabet, 0, (1, 2), ts)?,
                witness: None,
            })
        }
        GenKind::DbaCopies => {
            let c = spec.copies;
            let delta: Vec<Vec<(usize, u32)>> = (0..n)
                .map(|_| (0..k).map(|_| (rng.gen_range(0..n), priority(&mut rng, spec.accept_prob))).collect())
                .collect();
            let d0 = ParityAutomaton::new(
                names(n),
                alphabet.clone(),
                0,
                (1, 2),
                (0..n).flat_map(|q| (0..k).map(move |l| (q, l))).map(|(q, l)| Transition::new(q, l, delta[q][l].1, delta[q][l].0)),
            )?;
            // demoted[q][i][l]: copy i of q loses acceptance on l. At least one
            // copy of each state keeps every letter.
            let mut demoted = vec![vec![vec![false; k]; c]; n];
            for row in demoted.iter_mut() {
                for l in 0..k {
                    for copy in row.iter_mut() {
                        copy[l] = rng.gen_bool(spec.sabotage);
                    }
                    if row.iter().all(|copy| copy[l]) {
                        let keep = rng.gen_range(0..c);
                        row[keep][l] = false;
                    }
                }
            }
            let id = |q: usize, i: usize| q * c + i;
            let mut ts = Vec::new();
            for q in 0..n {
                for i in 0..c {
                    for l in 0..k {
                        let (r, p) = delta[q][l];
                        let mut targets: Vec<usize> = (0..c).filter(|_| rng.gen_bool(spec.density)).collect();
                        if targets.is_empty() {
                            targets.push(rng.gen_range(0..c));
                        }
                        // Every letter read next must have an undemoted copy
                        // among the targets, so each copy keeps D0's language.
                        #[allow(clippy::needless_range_loop)]
                        for m in 0..k {
                            if targets.iter().all(|&j| demoted[r][j][m]) {
                                let mut good: Vec<usize> = (0..c).filter(|&j| !demoted[r][j][m]).collect();
                                good.shuffle(&mut rng);
                                targets.push(good[0]);
                            }
                        }
                        let p = if demoted[q][i][l] { 1 } else { p };
                        for j in targets {
                            ts.push(Transition::new(id(q, i), l, p, id(r, j)));
                        }
                    }
                }
            }
            let states = (0..n).flat_map(|q| (0..c).map(move |i| format!("q{q}_{i}"))).collect();
            Ok(Generated {
                automaton: ParityAutomaton::new(states, alphabet, 0, (1, 2), ts)?,
                witness: Some(d0),
            })
        }
    }
}
