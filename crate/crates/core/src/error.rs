use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dictionary is empty")]
    EmptyDictionary,

    #[error("line {line}: word has length {found}, expected {expected}")]
    LengthMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("duplicate word `{0}`")]
    DuplicateWord(String),

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid marking `{text}`: {reason}")]
    MarkingParse { text: String, reason: String },

    #[error("incompatible words: length {left} vs {right}")]
    IncompatibleWords { left: usize, right: usize },

    #[error("`{0}` is not in the dictionary")]
    NotInDictionary(String),

    #[error("feasible set is empty")]
    EmptyFeasibleSet,

    #[error("search node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("vertex {vertex} has degree {degree}, expected 4")]
    NotFourRegular { vertex: usize, degree: usize },

    #[error("invalid set family: {0}")]
    InvalidSetFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("feedback {marking} for `{guess}` rules out every remaining word")]
    InconsistentFeedback { guess: String, marking: String },

    #[error("no feedback to undo")]
    NothingToUndo,
}
