use thiserror::Error;

use crate::diagram::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("E001 syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("E002 dangling reference: {kind} '{id}' on line {line} is not declared")]
    Dangling { kind: String, id: String, line: usize },
    #[error("E007 vertex germs on line {line}: {msg}")]
    Germ { line: usize, msg: String },
    #[error("E013 duplicate {kind} id '{id}'")]
    Duplicate { kind: String, id: String, line: usize },
    #[error("{0}")]
    Invalid(Violation),
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "E001",
            ParseError::Dangling { .. } => "E002",
            ParseError::Germ { .. } => "E007",
            ParseError::Duplicate { .. } => "E013",
            ParseError::Invalid(v) => v.code,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoveError {
    #[error("finger move: {0}")]
    Finger(String),
    #[error("erase: {0}")]
    Erase(String),
    #[error("surgery: {0}")]
    Surge(String),
    #[error("destabilization: {0}")]
    Destabilize(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("operation needs a pointed diagram with {expected} marked point(s), found {found}")]
    Points { expected: String, found: usize },
    #[error("domain has {found} coefficients but the diagram has {expected} regions")]
    IndexMismatch { expected: usize, found: usize },
    #[error("domain is not periodic: arc {arc} has an unbalanced boundary coefficient")]
    NotPeriodic { arc: String },
    #[error("cohomology class must have {expected} entries, found {found}")]
    ClassLength { expected: usize, found: usize },
    #[error("class does not vanish on relator {relator}")]
    NotCocycle { relator: usize },
    #[error("cover is disconnected: holonomy generates the subgroup {generator}Z/{sheets}Z of Z/{sheets}Z")]
    DisconnectedCover { generator: u64, sheets: u64 },
    #[error("number of sheets must be at least 2, got {0}")]
    Sheets(u64),
    #[error("no spanning-tree discard exists: {0}")]
    NoSpanningTree(String),
    #[error("winding verification failed: {0}")]
    Verification(String),
    #[error("rank of the intersection matrix is inconsistent: {0}")]
    Rank(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error("{0}")]
    Bounds(#[from] BoundsError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("intersection count k_{0} is zero; entropy bounds need every k_i >= 1")]
    ZeroIntersections(usize),
    #[error("fiber genus must be at least 2, got {0}")]
    FiberGenus(u32),
    #[error("need at least two of r, l, volume, wrist")]
    Underdetermined,
    #[error("inconsistent tube data: {0}")]
    Inconsistent(String),
    #[error("parameter {0} must be positive and finite")]
    NonPositive(&'static str),
    #[error("epsilon must lie in (0, 1], got {0}")]
    Epsilon(f64),
    #[error("D(mu) is required for the constant C")]
    MissingDmu,
    #[error("genus must be at least 2, got {0}")]
    Genus(u32),
    #[error("multiple and cover degree must be at least 1")]
    Multiple,
    #[error("tube count s = {s} exceeds genus g = {g}")]
    TubeCount { s: u32, g: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
