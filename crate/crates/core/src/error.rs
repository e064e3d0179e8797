use thiserror::Error;

use crate::dyadic::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("conservation fails at word {word:?}: {detail}")]
    Conservation { word: Word, detail: String },

    #[error("additivity fails at word {word:?}: {detail}")]
    Additivity { word: Word, detail: String },

    #[error("concentration fails at word {word:?}: {detail}")]
    Concentration { word: Word, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no witness yet: {0}")]
    NoWitness(String),

    #[error("stage budget of {budget} exhausted at level {level}")]
    StageBudgetExhausted { budget: usize, level: usize },

    #[error("no Frostman measure at this depth")]
    NoFrostmanMeasure,

    #[error("zero mass on the chain at level {0}")]
    ZeroMass(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
