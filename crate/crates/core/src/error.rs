use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("expected a Büchi automaton (index [1,2]), found index [{lo},{hi}]")]
    NotBuchi { lo: u32, hi: u32 },

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("automaton is not deterministic: {0}")]
    NotDeterministic(String),

    #[error("automaton is not a deterministic safety automaton: {0}")]
    NotSafety(String),

    #[error("resource limit: {what} would need {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("arena edge priority {0} outside the solver's range")]
    PriorityOutOfRange(u8),

    #[error("automaton is not history-deterministic")]
    NotHd,

    #[error("automaton is not good: {0}")]
    NotGood(String),

    #[error("strategy is not total: {0}")]
    StrategyNotTotal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    /// A postcondition that the theory guarantees did not hold. This
    /// always indicates a bug, never a property of the input.
    #[error("pipeline integrity failure: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
