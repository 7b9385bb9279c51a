//! Transition-based parity automata.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// An ordered, duplicate-free list of letter names. Letter indices follow
/// declaration order, which is also the tie-breaking order everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        check_names("letter", &letters)?;
        Ok(Alphabet { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.letters[letter]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    /// Renders a finite word. Single-character letters are concatenated,
    /// longer names are separated by dots.
    pub fn render_word(&self, word: &[usize]) -> String {
        let sep = if self.letters.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            "."
        };
        word.iter()
            .map(|&a| self.letters[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

fn check_names(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidAutomaton(format!(
                "{kind} name {name:?} is empty or contains whitespace"
            )));
        }
        if let Some(j) = seen.insert(name.as_str(), i) {
            return Err(Error::InvalidAutomaton(format!(
                "duplicate {kind} {name:?} (positions {j} and {i})"
            )));
        }
    }
    Ok(())
}

/// `src --letter:priority--> dst`, all components as indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transition {
    pub src: usize,
    pub letter: usize,
    pub priority: u32,
    pub dst: usize,
}

impl Transition {
    pub fn new(src: usize, letter: usize, priority: u32, dst: usize) -> Self {
        Transition {
            src,
            letter,
            priority,
            dst,
        }
    }
}

/// A non-deterministic parity automaton with priorities on transitions.
///
/// Transitions are kept sorted by `(src, letter, priority, dst)` and
/// deduplicated, so a transition's position in [`transitions`] is a stable
/// identifier and all transitions of a `(state, letter)` pair are contiguous.
///
/// [`transitions`]: ParityAutomaton::transitions
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityAutomaton {
    states: Vec<String>,
    alphabet: Alphabet,
    initial: usize,
    lo: u32,
    hi: u32,
    transitions: Vec<Transition>,
    offsets: Vec<usize>,
}

impl ParityAutomaton {
    pub fn new<I>(
        states: Vec<String>,
        alphabet: Alphabet,
        initial: usize,
        (lo, hi): (u32, u32),
        transitions: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = Transition>,
    {
        if states.is_empty() {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        check_names("state", &states)?;
        if lo > 1 || lo >= hi {
            return Err(Error::InvalidAutomaton(format!(
                "parity index [{lo},{hi}] must have lo in {{0,1}} and lo < hi"
            )));
        }
        if initial >= states.len() {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range"
            )));
        }
        let mut transitions: Vec<Transition> = transitions.into_iter().collect();
        for t in &transitions {
            if t.src >= states.len() || t.dst >= states.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "transition {t:?} refers to a missing state"
                )));
            }
            if t.letter >= alphabet.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "transition {t:?} refers to a missing letter"
                )));
            }
            if t.priority < lo || t.priority > hi {
                return Err(Error::InvalidAutomaton(format!(
                    "priority {} outside index [{lo},{hi}]",
                    t.priority
                )));
            }
        }
        transitions.sort_unstable();
        transitions.dedup();

        let sigma = alphabet.len();
        let mut offsets = vec![0; states.len() * sigma + 1];
        for t in &transitions {
            offsets[t.src * sigma + t.letter + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }

        Ok(ParityAutomaton {
            states,
            alphabet,
            initial,
            lo,
            hi,
            transitions,
            offsets,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn index(&self) -> (u32, u32) {
        (self.lo, self.hi)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, id: usize) -> Transition {
        self.transitions[id]
    }

    pub fn transition_id(&self, t: &Transition) -> Option<usize> {
        self.transitions.binary_search(t).ok()
    }

    /// Identifiers of the transitions leaving `q` on `letter`.
    pub fn out_ids(&self, q: usize, letter: usize) -> Range<usize> {
        let k = q * self.alphabet.len() + letter;
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn out(&self, q: usize, letter: usize) -> &[Transition] {
        &self.transitions[self.out_ids(q, letter)]
    }

    /// All transitions leaving `q`, grouped by letter.
    pub fn out_all(&self, q: usize) -> &[Transition] {
        let sigma = self.alphabet.len();
        &self.transitions[self.offsets[q * sigma]..self.offsets[(q + 1) * sigma]]
    }

    pub fn is_buchi(&self) -> bool {
        (self.lo, self.hi) == (1, 2)
    }

    pub fn require_buchi(&self) -> Result<()> {
        if self.is_buchi() {
            Ok(())
        } else {
            Err(Error::NotBuchi {
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    pub fn is_deterministic(&self) -> bool {
        (0..self.num_states())
            .all(|q| (0..self.num_letters()).all(|a| self.out(q, a).len() <= 1))
    }

    /// Every state has at least one transition on every letter.
    pub fn is_complete(&self) -> bool {
        (0..self.num_states())
            .all(|q| (0..self.num_letters()).all(|a| !self.out(q, a).is_empty()))
    }

    pub fn same_alphabet(&self, other: &ParityAutomaton) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// The same automaton started from `q`.
    pub fn with_initial(&self, q: usize) -> ParityAutomaton {
        assert!(q < self.num_states(), "state {q} out of range");
        ParityAutomaton {
            initial: q,
            ..self.clone()
        }
    }

    /// Keeps exactly the transitions accepted by `keep`.
    pub fn filter_transitions(&self, mut keep: impl FnMut(&Transition) -> bool) -> ParityAutomaton {
        self.map_transitions(|t| keep(t).then_some(*t))
    }

    /// Rebuilds the transition set; `f` may drop (`None`) or rewrite a transition.
    pub fn map_transitions(
        &self,
        f: impl FnMut(&Transition) -> Option<Transition>,
    ) -> ParityAutomaton {
        let transitions: Vec<Transition> = self.transitions.iter().filter_map(f).collect();
        ParityAutomaton::new(
            self.states.clone(),
            self.alphabet.clone(),
            self.initial,
            (self.lo, self.hi),
            transitions,
        )
        .expect("rewritten transitions must stay within the automaton's index")
    }

    /// Human-readable form of a transition, as it would appear in TAF.
    pub fn describe(&self, t: &Transition) -> String {
        format!(
            "{} {} {} {}",
            self.states[t.src],
            self.alphabet.name(t.letter),
            t.priority,
            self.states[t.dst]
        )
    }
}

/// The ultimately periodic word `spoke · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    spoke: Vec<usize>,
    cycle: Vec<usize>,
}

impl Lasso {
    pub fn new(spoke: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Precondition("lasso cycle must be non-empty".into()));
        }
        Ok(Lasso { spoke, cycle })
    }

    pub fn spoke(&self) -> &[usize] {
        &self.spoke
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> usize {
        if i < self.spoke.len() {
            self.spoke[i]
        } else {
            self.cycle[(i - self.spoke.len()) % self.cycle.len()]
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> LassoDisplay<'_> {
        LassoDisplay {
            lasso: self,
            alphabet: alphabet.clone(),
        }
    }
}

pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    alphabet: Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u={};v={}",
            self.alphabet.render_word(&self.lasso.spoke),
            self.alphabet.render_word(&self.lasso.cycle)
        )
    }
}

/// A positional letter choice per state, e.g. Adam choosing the next letter
/// from Eve's current state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LetterMap {
    map: Vec<Option<usize>>,
}

impl LetterMap {
    pub fn new(num_states: usize) -> Self {
        LetterMap {
            map: vec![None; num_states],
        }
    }

    pub fn set(&mut self, state: usize, letter: usize) {
        self.map[state] = Some(letter);
    }

    pub fn get(&self, state: usize) -> Option<usize> {
        self.map.get(state).copied().flatten()
    }

    /// Parses `p=a,q=b` against the automaton's state and letter names.
    pub fn parse(a: &ParityAutomaton, text: &str) -> Result<Self> {
        let mut map = LetterMap::new(a.num_states());
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (state, letter) = item
                .split_once('=')
                .ok_or_else(|| Error::Precondition(format!("expected state=letter, got {item:?}")))?;
            let q = a
                .state_index(state.trim())
                .ok_or_else(|| Error::Precondition(format!("unknown state {state:?}")))?;
            let l = a
                .alphabet()
                .index_of(letter.trim())
                .ok_or_else(|| Error::Precondition(format!("unknown letter {letter:?}")))?;
            map.set(q, l);
        }
        Ok(map)
    }
}

/// Produces names that do not clash with an existing set.
pub(crate) struct NameGen {
    used: std::collections::HashSet<String>,
}

impl NameGen {
    pub(crate) fn new() -> Self {
        NameGen {
            used: Default::default(),
        }
    }

    pub(crate) fn reserve<'a>(&mut self, names: impl IntoIterator<Item = &'a String>) {
        self.used.extend(names.into_iter().cloned());
    }

    pub(crate) fn fresh(&mut self, base: impl Into<String>) -> String {
        let mut name = base.into();
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        name
    }
}
