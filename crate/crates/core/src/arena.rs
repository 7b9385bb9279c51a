//! Explicit two-player game graphs with priorities on edges.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::automaton::ParityAutomaton;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Eve => "Eve",
            Player::Adam => "Adam",
        })
    }
}

/// What a vertex stands for. Eve's token always lives in the first
/// automaton of a game and Adam's in the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    /// Start of a round; Adam picks the next letter.
    Pair { eve: usize, adam: usize },
    /// The letter is fixed and no token has moved yet.
    Letter { eve: usize, letter: usize, adam: usize },
    /// Exactly one token has moved on `letter`. In the Joker game
    /// `eve_from` records Eve's state before her move.
    Moved {
        eve: usize,
        adam: usize,
        letter: usize,
        eve_from: Option<usize>,
    },
    /// k-token game position; dead tokens are `None`.
    Tokens {
        eve: usize,
        adams: Vec<Option<usize>>,
        letter: Option<usize>,
        eve_moved: bool,
    },
    /// Absorbing vertex won by `winner`.
    Sink { winner: Player },
    /// A vertex of an arena given directly as a graph.
    Plain(usize),
}

/// Why an edge exists. Transition ids index the automaton the token lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Letter(usize),
    Eve(usize),
    Adam(usize),
    Joker(usize),
    Tokens(Vec<Option<usize>>),
    /// The player to move has no transition on the letter.
    Stuck,
    /// Self-loop on a sink.
    Loop,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub priority: u8,
    pub mv: Move,
}

/// State and letter names used to render payloads.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    pub eve_states: Vec<String>,
    pub adam_states: Vec<String>,
    pub letters: Vec<String>,
}

impl Labels {
    pub fn of(eve: &ParityAutomaton, adam: &ParityAutomaton) -> Labels {
        Labels {
            eve_states: eve.states().to_vec(),
            adam_states: adam.states().to_vec(),
            letters: eve.alphabet().names().to_vec(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GameArena {
    owners: Vec<Player>,
    payloads: Vec<Payload>,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    initial: usize,
    lookup: HashMap<Payload, usize>,
    labels: Labels,
}

impl GameArena {
    /// An arena given as a plain graph. Every vertex needs an outgoing edge.
    pub fn from_edges(owners: Vec<Player>, edges: &[(usize, usize, u8)], initial: usize) -> Result<GameArena> {
        let n = owners.len();
        if initial >= n {
            return Err(Error::Precondition(format!("initial vertex {initial} out of range")));
        }
        let mut sorted: Vec<Edge> = Vec::with_capacity(edges.len());
        for &(src, dst, priority) in edges {
            if src >= n || dst >= n {
                return Err(Error::Precondition(format!("edge {src}->{dst} out of range")));
            }
            sorted.push(Edge {
                src,
                dst,
                priority,
                mv: Move::Plain,
            });
        }
        sorted.sort_by_key(|e| e.src);
        let payloads: Vec<Payload> = (0..n).map(Payload::Plain).collect();
        GameArena::assemble(owners, payloads, sorted, initial, Labels::default())
    }

    fn assemble(
        owners: Vec<Player>,
        payloads: Vec<Payload>,
        edges: Vec<Edge>,
        initial: usize,
        labels: Labels,
    ) -> Result<GameArena> {
        let n = owners.len();
        let mut offsets = vec![0; n + 1];
        for e in &edges {
            offsets[e.src + 1] += 1;
        }
        for i in 0..n {
            if offsets[i + 1] == 0 {
                return Err(Error::Precondition(format!("vertex {i} has no outgoing edge")));
            }
            offsets[i + 1] += offsets[i];
        }
        let lookup = payloads.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(GameArena {
            owners,
            payloads,
            edges,
            offsets,
            initial,
            lookup,
            labels,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.owners.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    pub fn payload(&self, v: usize) -> &Payload {
        &self.payloads[v]
    }

    pub fn vertex_of(&self, payload: &Payload) -> Option<usize> {
        self.lookup.get(payload).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Edge ids leaving `v`.
    pub fn out_ids(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn out(&self, v: usize) -> &[Edge] {
        &self.edges[self.out_ids(v)]
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn max_priority(&self) -> u8 {
        self.edges.iter().map(|e| e.priority).max().unwrap_or(0)
    }

    /// Same graph with a different initial vertex.
    pub fn with_initial(&self, v: usize) -> GameArena {
        assert!(v < self.num_vertices());
        GameArena {
            initial: v,
            ..self.clone()
        }
    }

    pub fn render_payload(&self, v: usize) -> String {
        let l = &self.labels;
        let name = |names: &Vec<String>, i: usize| names.get(i).cloned().unwrap_or_else(|| i.to_string());
        let eve = |i| name(&l.eve_states, i);
        let adam = |i| name(&l.adam_states, i);
        let letter = |i| name(&l.letters, i);
        match &self.payloads[v] {
            Payload::Pair { eve: p, adam: q } => format!("({},{})", eve(*p), adam(*q)),
            Payload::Letter { eve: p, letter: a, adam: q } => format!("({},{},{})", eve(*p), letter(*a), adam(*q)),
            Payload::Moved {
                eve: p,
                adam: q,
                letter: a,
                eve_from,
            } => match eve_from {
                Some(from) => format!("({}>{},{},{})", eve(*from), eve(*p), adam(*q), letter(*a)),
                None => format!("({},{},{})", eve(*p), adam(*q), letter(*a)),
            },
            Payload::Tokens {
                eve: p,
                adams,
                letter: a,
                eve_moved,
            } => {
                let tokens: Vec<String> = adams.iter().map(|t| t.map(adam).unwrap_or_else(|| "-".into())).collect();
                let a = a.map(letter).unwrap_or_else(|| "-".into());
                format!("({};{};{};{})", eve(*p), tokens.join(","), a, if *eve_moved { "moved" } else { "waiting" })
            }
            Payload::Sink { winner } => format!("sink:{winner}"),
            Payload::Plain(i) => i.to_string(),
        }
    }

    /// Debug listing: one `V <id> <owner> <payload>` line per vertex, then
    /// one `E <src> <dst> <priority>` line per edge.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in 0..self.num_vertices() {
            let _ = writeln!(out, "V {v} {} {}", self.owners[v], self.render_payload(v));
        }
        for e in &self.edges {
            let _ = writeln!(out, "E {} {} {}", e.src, e.dst, e.priority);
        }
        out
    }
}

/// Breadth-first construction of an arena from seed positions. `expand`
/// returns the owner of a position and its moves. Vertices are numbered in
/// discovery order and the first seed is the initial vertex.
pub(crate) fn explore(
    labels: Labels,
    seeds: Vec<Payload>,
    cap: usize,
    mut expand: impl FnMut(&Payload) -> (Player, Vec<(Payload, u8, Move)>),
) -> Result<GameArena> {
    assert!(!seeds.is_empty(), "an arena needs a seed position");
    let mut payloads: Vec<Payload> = Vec::new();
    let mut ids: HashMap<Payload, usize> = HashMap::new();
    let mut intern = |p: Payload, payloads: &mut Vec<Payload>| -> Result<usize> {
        if let Some(&id) = ids.get(&p) {
            return Ok(id);
        }
        if payloads.len() >= cap {
            return Err(Error::ResourceLimit {
                what: "arena vertices",
                needed: payloads.len() + 1,
                cap,
            });
        }
        ids.insert(p.clone(), payloads.len());
        payloads.push(p);
        Ok(payloads.len() - 1)
    };
    for s in seeds {
        intern(s, &mut payloads)?;
    }
    let mut owners = Vec::new();
    let mut edges = Vec::new();
    let mut next = 0;
    while next < payloads.len() {
        let (owner, moves) = expand(&payloads[next]);
        assert!(!moves.is_empty(), "arena construction left a dead end at {:?}", payloads[next]);
        owners.push(owner);
        for (dst, priority, mv) in moves {
            let dst = intern(dst, &mut payloads)?;
            edges.push(Edge {
                src: next,
                dst,
                priority,
                mv,
            });
        }
        next += 1;
    }
    GameArena::assemble(owners, payloads, edges, 0, labels)
}
