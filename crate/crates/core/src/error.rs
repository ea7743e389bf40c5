use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("negative constant at byte {pos}")]
    NegativeConstant { pos: usize },

    #[error("between[{lo}, {hi}] at byte {pos}: lower bound exceeds upper bound")]
    EmptyBetween { pos: usize, lo: Rational, hi: Rational },

    #[error("invalid number `{0}`")]
    InvalidNumber(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("timestamps must strictly increase: {next} does not follow {prev}")]
    NonIncreasingTime { prev: Rational, next: Rational },

    #[error("a run must start at time 0, found {0}")]
    RunStartsLate(Rational),

    #[error("run prefix needs at least {needed} timed states, got {got}")]
    PrefixTooShort { needed: usize, got: usize },

    #[error("formula contains the monadic predicate P{0}; expected a predicate-free formula")]
    UnexpectedPredicate(u32),

    #[error("formula has free variables other than z: {0}")]
    UnexpectedFreeVariables(String),

    #[error("no extension given for predicate P{0}")]
    MissingPredicateSet(u32),

    #[error("horizon {horizon} precedes the last timestamp {last}")]
    HorizonTooEarly { horizon: Rational, last: Rational },

    #[error("no value for variable {0}")]
    UnboundVariable(String),

    #[error("the monitor already reached a verdict ({0}); no further input accepted")]
    AlreadyDecided(String),

    #[error("trace line {line}: {msg}")]
    Trace { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
