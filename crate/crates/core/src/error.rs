use std::path::PathBuf;

use thiserror::Error;

/// Which argument of a correlation had zero variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("family has no members")]
    EmptyFamily,
    #[error("empty input sequence")]
    EmptyInput,
    #[error("shape mismatch: expected length {expected}, got {actual}")]
    ShapeError { expected: usize, actual: usize },
    #[error("non-finite value in series `{id}` at index {index}")]
    NonFinite { id: String, index: usize },
    #[error("split segment `{segment}` has {len} samples (need at least 2)")]
    DegenerateSplit { segment: &'static str, len: usize },
    #[error("range {start}..{end} is invalid for length {len}")]
    RangeError { start: usize, end: usize, len: usize },
    #[error("zero variance in {0} argument of correlation")]
    DegenerateCorrelation(Side),
    #[error("value {0} outside the transform domain [-1, 1]")]
    DomainError(f64),
    #[error("candidate has zero norm")]
    ZeroCandidate,
    #[error("residual has zero variance")]
    DegenerateResidual,
    #[error("no family member reaches the selection threshold {lbound}")]
    NoAdmissibleMember { lbound: f64 },
    #[error("panel member `{0}` is missing from the family")]
    MissingPanelMember(String),
    #[error("every sweep configuration failed")]
    SweepFailed,
    #[error("time column is not uniformly spaced at row {row}")]
    IrregularGrid { row: usize },
    #[error("duplicate series id `{0}`")]
    DuplicateId(String),
    #[error("missing value at row {row}, column `{column}`")]
    MissingValue { row: usize, column: String },
    #[error("series id `{0}` is reserved")]
    ReservedId(String),
    #[error("unsupported model file: {0}")]
    UnsupportedVersion(String),
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable machine-readable code, used by the CLI error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::EmptyFamily => "EmptyFamily",
            Error::EmptyInput => "EmptyInput",
            Error::ShapeError { .. } => "ShapeError",
            Error::NonFinite { .. } => "NonFinite",
            Error::DegenerateSplit { .. } => "DegenerateSplit",
            Error::RangeError { .. } => "RangeError",
            Error::DegenerateCorrelation(_) => "DegenerateCorrelation",
            Error::DomainError(_) => "DomainError",
            Error::ZeroCandidate => "ZeroCandidate",
            Error::DegenerateResidual => "DegenerateResidual",
            Error::NoAdmissibleMember { .. } => "NoAdmissibleMember",
            Error::MissingPanelMember(_) => "MissingPanelMember",
            Error::SweepFailed => "SweepFailed",
            Error::IrregularGrid { .. } => "IrregularGrid",
            Error::DuplicateId(_) => "DuplicateId",
            Error::MissingValue { .. } => "MissingValue",
            Error::ReservedId(_) => "ReservedId",
            Error::UnsupportedVersion(_) => "UnsupportedVersion",
            Error::Parse { .. } => "ParseError",
            Error::Io { .. } => "IoError",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn shape(expected: usize, actual: usize) -> Self {
        Error::ShapeError { expected, actual }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
