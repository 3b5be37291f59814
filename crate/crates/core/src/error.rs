use std::fmt;

use thiserror::Error;

/// A position in source text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {message}")]
pub struct ParseError {
    pub position: Position,
    pub message: String,
}

impl ParseError {
    pub fn new(position: Position, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Syntax(#[from] ParseError),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("invalid game: {0}")]
    Game(String),
    #[error("invalid nature strategy: {0}")]
    Nature(String),
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("invalid event: {0}")]
    Event(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("not a sentence: free variables {}", .0.join(", "))]
    NotASentence(Vec<String>),
    #[error("structure is not suitable: {0}")]
    Unsuitable(String),
    #[error("game tree exceeds the node cap: {count} nodes > {cap}")]
    NodeCapExceeded { count: usize, cap: usize },
    #[error("strategy budget exceeded for {player}: reached {count} strategies, budget {budget}")]
    BudgetExceeded {
        player: String,
        count: usize,
        budget: usize,
    },
    #[error("history is not terminal")]
    NotTerminal,
    #[error("no distribution for reachable chance point {0}")]
    MissingChance(String),
    #[error("classical truth is undefined for sentences with chance moves")]
    ChancePresent,
    #[error("event has probability zero under the profile")]
    ZeroProbabilityEvent,
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Budget-type failures map to their own exit status in the CLI.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::NodeCapExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
