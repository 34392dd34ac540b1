use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuzzleError {
    #[error("grid must have at least one row and one column")]
    EmptyGrid,
    #[error("island at ({row}, {col}) lies outside the grid")]
    OutOfBounds { row: usize, col: usize },
    #[error("island at ({row}, {col}) has degree {degree}, expected 1..=8")]
    BadDegree { row: usize, col: usize, degree: u8 },
    #[error("two islands at ({row}, {col})")]
    DuplicateIsland { row: usize, col: usize },
    #[error("a puzzle needs at least two islands, found {0}")]
    TooFewIslands(usize),
}

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected `<rows> <cols>`")]
    BadHeader,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("expected {expected} characters, found {found}")]
    RowLength { expected: usize, found: usize },
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("island degree {0} outside 1..=8")]
    BadDegree(char),
    #[error("missing trailing newline")]
    MissingNewline,
    #[error("invalid puzzle: {0}")]
    Puzzle(PuzzleError),
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        Self { line, col, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("assignment has {found} entries but the puzzle has {expected} candidate edges")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {edge} has multiplicity {mult}, which has no glyph")]
    BadMultiplicity { edge: usize, mult: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("generation failed in {step} after {retries} retries")]
    GenerationFailed { step: &'static str, retries: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{edges} candidate edges exceed the enumeration limit of {limit}")]
    EdgeLimitExceeded { edges: usize, limit: usize },
}
