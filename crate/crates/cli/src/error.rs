use dequiv::Word;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dequiv::Error),
    #[error("{0} and {1} are d-equivalent, so no class separates them")]
    Equivalent(Word, Word),
    #[error(
        "no class separates {0} and {1}; which contradicts the characterisation being checked"
    )]
    NoSeparation(Word, Word),
    #[error("({0}, {1}) does not have the required shape: {2}")]
    Shape(Word, Word, &'static str),
    #[error("class has {size} words, above the limit of {limit}")]
    ClassTooLarge { size: u64, limit: u64 },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
