//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("elements do not generate the group")]
    NotGenerating,
    #[error("operation undefined on the trivial group")]
    TrivialGroup,
    #[error("prime {0} does not divide the group order")]
    PrimeDoesNotDivide(usize),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("choice index out of range at level {level}, step {step}")]
    ChoiceOutOfRange { level: usize, step: usize },
    #[error("choice sequence does not match the recursion at level {level}")]
    NonMatchingChoice { level: usize },
    #[error("alpha too large: no prime is at least {0}")]
    AlphaTooLarge(f64),
    #[error("resource limit exceeded ({0} search nodes)")]
    ResourceLimit(u64),
    #[error("malformed canonical graph: {0}")]
    MalformedCanonGraph(String),
    #[error("method not applicable: {0}")]
    MethodNotApplicable(String),
    #[error("not a p-group")]
    NotPGroup,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
