//! The line-based textual automaton format.
//!
//! ```text
//! parity 1 2
//! alphabet a b
//! states p q
//! initial p
//! trans p a 2 q
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Header lines may
//! appear in any order but each exactly once, and before the first `trans`.

use std::fmt::Write as _;

use crate::automaton::{Alphabet, ParityAutomaton, Transition};
use crate::error::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_bytes(bytes: &[u8]) -> Result<ParityAutomaton> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        err(line, "input is not valid UTF-8")
    })?;
    parse(text)
}

pub fn parse(text: &str) -> Result<ParityAutomaton> {
    let mut index: Option<(u32, u32)> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<Vec<String>> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut transitions = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        let once = |seen: bool| {
            if seen {
                Err(err(line_no, format!("duplicate `{keyword}` line")))
            } else {
                Ok(())
            }
        };
        match keyword {
            "parity" => {
                once(index.is_some())?;
                let [lo, hi] = args[..] else {
                    return Err(err(line_no, "expected `parity <lo> <hi>`"));
                };
                let lo: u32 = lo.parse().map_err(|_| err(line_no, format!("bad integer {lo:?}")))?;
                let hi: u32 = hi.parse().map_err(|_| err(line_no, format!("bad integer {hi:?}")))?;
                if lo > 1 || lo >= hi {
                    return Err(err(
                        line_no,
                        format!("parity index [{lo},{hi}] must have lo in {{0,1}} and lo < hi"),
                    ));
                }
                index = Some((lo, hi));
            }
            "alphabet" => {
                once(alphabet.is_some())?;
                if args.is_empty() {
                    return Err(err(line_no, "expected at least one letter"));
                }
                alphabet = Some(Alphabet::new(args.iter().copied()).map_err(|e| err(line_no, e.to_string()))?);
            }
            "states" => {
                once(states.is_some())?;
                if args.is_empty() {
                    return Err(err(line_no, "expected at least one state"));
                }
                let names: Vec<String> = args.iter().map(|s| s.to_string()).collect();
                for (j, name) in names.iter().enumerate() {
                    if names[..j].contains(name) {
                        return Err(err(line_no, format!("duplicate state {name:?}")));
                    }
                }
                states = Some(names);
            }
            "initial" => {
                once(initial.is_some())?;
                let [name] = args[..] else {
                    return Err(err(line_no, "expected `initial <state>`"));
                };
                initial = Some((line_no, name.to_string()));
            }
            "trans" => {
                let (Some((lo, hi)), Some(sigma), Some(names)) = (index, &alphabet, &states) else {
                    return Err(err(
                        line_no,
                        "`trans` before the `parity`, `alphabet` and `states` lines",
                    ));
                };
                let [src, letter, priority, dst] = args[..] else {
                    return Err(err(line_no, "expected `trans <src> <letter> <priority> <dst>`"));
                };
                let state = |name: &str| {
                    names
                        .iter()
                        .position(|s| s == name)
                        .ok_or_else(|| err(line_no, format!("unknown state {name:?}")))
                };
                let src = state(src)?;
                let dst = state(dst)?;
                let letter = sigma
                    .index_of(letter)
                    .ok_or_else(|| err(line_no, format!("unknown letter {letter:?}")))?;
                let priority: u32 = priority
                    .parse()
                    .map_err(|_| err(line_no, format!("bad priority {priority:?}")))?;
                if priority < lo || priority > hi {
                    return Err(err(
                        line_no,
                        format!("priority {priority} outside index [{lo},{hi}]"),
                    ));
                }
                transitions.push(Transition::new(src, letter, priority, dst));
            }
            other => return Err(err(line_no, format!("unknown keyword {other:?}"))),
        }
    }

    let last = text.lines().count().max(1);
    let index = index.ok_or_else(|| err(last, "missing `parity` line"))?;
    let alphabet = alphabet.ok_or_else(|| err(last, "missing `alphabet` line"))?;
    let states = states.ok_or_else(|| err(last, "missing `states` line"))?;
    let (init_line, init_name) = initial.ok_or_else(|| err(last, "missing `initial` line"))?;
    let initial = states
        .iter()
        .position(|s| *s == init_name)
        .ok_or_else(|| err(init_line, format!("unknown state {init_name:?}")))?;

    ParityAutomaton::new(states, alphabet, initial, index, transitions).map_err(|e| err(last, e.to_string()))
}

/// Canonical text form: headers in fixed order, transitions in index order.
pub fn serialize(a: &ParityAutomaton) -> String {
    let mut out = String::new();
    let (lo, hi) = a.index();
    let _ = writeln!(out, "parity {lo} {hi}");
    let _ = writeln!(out, "alphabet {}", a.alphabet().names().join(" "));
    let _ = writeln!(out, "states {}", a.states().join(" "));
    let _ = writeln!(out, "initial {}", a.state_name(a.initial()));
    for t in a.transitions() {
        let _ = writeln!(out, "trans {}", a.describe(t));
    }
    out
}
