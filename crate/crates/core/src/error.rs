use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library. Every variant maps onto one of two
/// CLI outcomes: invalid input (exit 2) or an exhausted resource (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid splitting type: {0}")]
    SplittingType(String),

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("diagram {rows:?} is not a {k}-core")]
    NotCore { rows: Vec<usize>, k: usize },

    #[error("invalid window: {0}")]
    Window(String),

    #[error("box ({r}, {c}) lies outside the diagram")]
    OutsideDiagram { r: usize, c: usize },

    #[error("word is not reduced at step {step}: letter {letter} {reason}")]
    NotReduced { step: usize, letter: String, reason: &'static str },

    #[error("move {tag} is undefined at position {position}: {reason}")]
    UndefinedMove { tag: char, position: usize, reason: String },

    #[error("filling shape {found:?} does not match staircase {expected:?}")]
    ShapeMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("class exponent is negative: g - d + r = {0}")]
    NegativeExponent(i64),

    #[error("degree distribution sums to {found}, expected {expected}")]
    DistributionSum { expected: i64, found: i64 },

    #[error("chain model invalid: {0}")]
    ChainModel(String),

    #[error("limit line bundle is not positive: {0}")]
    NotPositive(String),

    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit} (use --force to override)")]
    ResourceLimit { what: &'static str, needed: String, limit: u64 },

    #[error("memo table is for k = {cache}, query has k = {query}")]
    CacheMismatch { cache: usize, query: usize },

    #[error("cache {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by hitting a size or memory guard rather than
    /// by malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
