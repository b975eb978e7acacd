use thiserror::Error;

use crate::pda::Violation;

/// Errors raised by the toolkit.
///
/// Structural defects found while *checking* an array are not errors: the
/// checkers return them as values. An [`Error::NotAPda`] only appears where a
/// caller asked for a validated array and the input failed the check.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "grid rows have different lengths (row {row} has {found} entries, expected {expected})"
    )]
    NonRectangular {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("grid must have at least one row and one column")]
    EmptyGrid,

    #[error("code entries must be positive, found 0 at row {row}, column {col}")]
    NonPositiveCode { row: usize, col: usize },

    #[error("array is not a PDA ({} violation(s))", .0.len())]
    NotAPda(Vec<Violation>),

    #[error("not a permutation of 0..{len}: {perm:?}")]
    InvalidPermutation { len: usize, perm: Vec<usize> },

    #[error("{what} = {value} is out of range (expected {expected})")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        expected: String,
    },

    #[error("code {0} does not occur in the array")]
    CodeAbsent(u32),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("invalid association profile: {0}")]
    InvalidProfile(String),

    #[error("profile sums to {profile_sum} but the array has {columns} columns")]
    ProfileMismatch { profile_sum: usize, columns: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("grouping search limited to {limit} columns, array has {columns}")]
    SearchTooLarge { columns: usize, limit: usize },

    #[error("search needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("helper group {group} has {available} all-star rows, {required} required")]
    InsufficientStarRows {
        group: usize,
        available: usize,
        required: usize,
    },

    #[error("demand {demand} for user {user} is outside the library of {files} files")]
    DemandOutOfRange {
        user: usize,
        demand: usize,
        files: usize,
    },

    #[error("user {user} cannot cancel subfile (file {file}, row {row}) of transmission {code}")]
    MissingComponent {
        user: usize,
        code: u32,
        file: usize,
        row: usize,
    },

    #[error("Λ = {lambda} does not equal q(m+1) = {expected}")]
    MemoryMismatch { lambda: usize, expected: usize },

    #[error("memory ratio {0} cannot be realized by this scheme")]
    UnrealizableMemory(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
