use thiserror::Error;

use crate::ring::ParsePolyError;
use crate::strata::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] ParsePolyError),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid stratified space:\n{}", format_diagnostics(.0))]
    InvalidSpace(Vec<Diagnostic>),
    #[error("missing {what} for `{id}`")]
    MissingData { what: &'static str, id: String },
    #[error("{0} requires Hodge-level data, but the input is genus-only")]
    HodgeDataRequired(&'static str),
    #[error("a (1 + y) denominator survives in {0}")]
    DenominatorSurvives(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("Chern root has a nonzero constant term: {0}")]
    RootConstantTerm(String),
    #[error("unknown example kind `{0}`")]
    UnknownKind(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code: 1 for bad input, 2 for a failed internal
    /// consistency assertion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DenominatorSurvives(_) => 2,
            _ => 1,
        }
    }
}

fn format_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}
