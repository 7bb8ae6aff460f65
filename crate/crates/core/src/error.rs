use alloc::string::String;

use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: &'static str,
    },
    #[error("word entries must be positive integers")]
    ZeroEntry,
    #[error("descent position {position} is outside 1..{length}")]
    InvalidDescentPosition { position: usize, length: usize },
    #[error("descent word must end with 0")]
    InvalidDescentWord,
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("arity {q} outside the admissible range {min}..={max}")]
    ArityOutOfRange { q: u32, min: u32, max: u32 },
    #[error("{0} is not a pattern")]
    NotAPattern(Word),
    #[error("{0} is already the lexicographic minimum of its class")]
    AlreadyCanonical(Word),
    #[error("no lexicographic reduction applies to {0}")]
    NoReduction(Word),
    #[error("f-path exceeded its budget of {0} steps")]
    StepBudgetExceeded(usize),
    #[error("breadth-first search is limited to length {cap}, got {length}")]
    SearchTooLarge { length: usize, cap: usize },
    #[error("expected {expected} positions, got {found}")]
    PositionCountMismatch { expected: usize, found: usize },
    #[error("positions must be strictly increasing and at least 1")]
    PositionsNotIncreasing,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("trace is not a trace of {0}")]
    NotATrace(Word),
    #[error("interval [{low},{high}] is invalid")]
    InvalidInterval { low: usize, high: usize },
    #[error("substitution word {0} does not fit the restricted subword")]
    SubstitutionMismatch(Word),
    #[error("word {word} is not over the alphabet [{q}]")]
    OutOfAlphabet { word: Word, q: u32 },
    #[error("descent and ascent cells for {0} have different sizes")]
    CellMismatch(Word),
    #[error("table for q^n = {size} words exceeds the limit {limit}")]
    TableTooLarge { size: u64, limit: u64 },
    #[error("malformed lemma instance: {0}")]
    MalformedInstance(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
