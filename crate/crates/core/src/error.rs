use thiserror::Error;

/// Errors raised by the coding, search and scoring layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("character {ch:?} in word {word:?} is not in the alphabet")]
    Alphabet { ch: char, word: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("value outside domain: {0}")]
    Domain(String),

    #[error("representation has {got} values but the model has {expected} slots")]
    Arity { expected: usize, got: usize },

    #[error("model is not in canonical form: {0}")]
    CanonicalForm(String),

    #[error("candidate enumeration exceeded its cap ({limit}): {found} candidates")]
    Resource { limit: usize, found: usize },

    #[error("search failed: {0}")]
    Search(String),

    #[error("synthetic space schema error: {0}")]
    Schema(String),

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("no solution: {0}")]
    EmptySolution(String),

    #[error("cannot parse model expression at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
