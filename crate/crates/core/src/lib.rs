pub mod arena;
pub mod automaton;
pub mod construct;
pub mod determinize;
pub mod error;
pub mod fixtures;
pub mod games;
pub mod graph;
pub mod hd;
pub mod lasso;
pub mod oracles;
pub mod solver;
pub mod taf;

pub use automaton::{Alphabet, Lasso, LetterMap, ParityAutomaton, Transition};
pub use error::{Error, Result};
