//! Small named automata used in examples and tests.

use crate::automaton::ParityAutomaton;
use crate::taf::parse;

/// Two states over `{a,b}` with index [1,3]. Every word is accepted and the
/// automaton is semantically deterministic, yet it is not history-deterministic.
pub const FIG1_TAF: &str = "\
parity 1 3
alphabet a b
states p q
initial p
trans p a 1 p
trans p b 2 p
trans p a 3 q
trans p b 3 q
trans q a 2 q
trans q b 1 q
trans q a 3 p
trans q b 3 p
";

pub const T_ACC_TAF: &str = "parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 2 s\n";

pub const T_REJ_TAF: &str = "parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 1 s\n";

pub fn fig1() -> ParityAutomaton {
    parse(FIG1_TAF).expect("fixture parses")
}

/// One state with an accepting `a` loop: accepts `a^ω`.
pub fn t_acc() -> ParityAutomaton {
    parse(T_ACC_TAF).expect("fixture parses")
}

/// One state with a rejecting `a` loop: accepts nothing.
pub fn t_rej() -> ParityAutomaton {
    parse(T_REJ_TAF).expect("fixture parses")
}
