use thiserror::Error;

use crate::trade::TradingTransform;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("player {player} is out of range for a game on {n} players")]
    PlayerOutOfRange { player: usize, n: usize },

    #[error("player count {0} is outside 1..=64")]
    PlayerCount(usize),

    #[error("minimal winning coalitions must form a nonempty antichain: {0}")]
    NotAntichain(String),

    #[error("degenerate game: {0}")]
    Degenerate(String),

    #[error("game is not complete")]
    NotComplete(Box<TradingTransform>),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{family} constraint violated: {constraint}")]
    Constraint { family: &'static str, constraint: String },

    #[error("dummy players present: {0:?}")]
    DummiesPresent(Vec<usize>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("game too large for exhaustive evaluation ({n} players, limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn constraint(family: &'static str, constraint: impl Into<String>) -> Self {
        Error::Constraint {
            family,
            constraint: constraint.into(),
        }
    }
}
