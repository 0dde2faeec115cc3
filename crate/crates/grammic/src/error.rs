//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} out of range (expected 1..=9)")]
    AlphabetSize(u8),

    #[error("letter {letter} outside alphabet 1..={k}")]
    LetterOutOfRange { letter: u8, k: u8 },

    #[error("cannot parse {text:?} as a word: {reason}")]
    Parse { text: String, reason: String },

    #[error("subalphabet must be nonempty")]
    EmptySubalphabet,

    #[error("operands use different alphabets ({left} vs {right} letters)")]
    AlphabetMismatch { left: u8, right: u8 },

    #[error("coordinate {coord} outside 1..={k}")]
    CoordinateOutOfRange { coord: u8, k: u8 },

    #[error("word {0:?} is not in row normal form")]
    NotRowNormalForm(String),

    #[error("row index {index} out of range (tableau has {rows} rows)")]
    RowIndexOutOfRange { index: usize, rows: usize },

    #[error("tail evaluation point {t} must exceed the word length {n}")]
    AffineTailRange { t: u64, n: usize },

    #[error("operation requires a three-letter alphabet, got {0}")]
    NotThreeLetters(u8),

    #[error("Knuth rules need at least two letters, got {0}")]
    KnuthAlphabetTooSmall(u8),

    #[error("unknown rule set or rule variant {0:?}")]
    UnknownRuleSet(String),

    #[error("unknown relation {0:?}")]
    UnknownRelation(String),

    #[error("invalid tableau parameters: {0}")]
    InvalidParams(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("derivation references unknown rule {0:?}")]
    UnknownRule(String),

    #[error("derivation step {step} does not match the word at its position")]
    ReplayMismatch { step: usize },

    #[error("partitions cover different word sets (length or alphabet differ)")]
    MismatchedPartitions,

    #[error("projection scan supports alphabets of size 3 or 4, got {0}")]
    ProjectionScanAlphabet(u8),

    #[error("numeric overflow in {0}")]
    Numeric(&'static str),
}
