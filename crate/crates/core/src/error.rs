use thiserror::Error;

/// Errors raised by model construction, solvers and I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate applicant `{0}`")]
    DuplicateApplicant(String),
    #[error("duplicate project `{0}`")]
    DuplicateProject(String),
    #[error("project `{name}`: lower quota {lower} exceeds upper quota {upper}")]
    QuotaOrder {
        name: String,
        lower: u32,
        upper: u32,
    },
    #[error("project `{0}`: lower quota must be at least 1")]
    ZeroLowerQuota(String),
    #[error("applicant `{applicant}` lists unknown project #{project}")]
    UnknownProject { applicant: String, project: usize },
    #[error("applicant `{applicant}` lists project `{project}` more than once")]
    DuplicatePreference { applicant: String, project: String },
    #[error("unknown applicant #{0}")]
    UnknownApplicant(usize),
    #[error("matching has {found} entries but the instance has {expected} applicants")]
    MatchingSize { expected: usize, found: usize },
    #[error("applicant `{applicant}` is assigned to unacceptable project `{project}`")]
    Unacceptable { applicant: String, project: String },
    #[error("matching violates a project quota")]
    InfeasibleMatching,
    #[error("maximum lower quota is {0}, this method requires at most 2")]
    LowerQuotaTooLarge(u32),
    #[error("matching must assign every applicant")]
    NotPerfect,
    #[error("{what} guard exceeded: {value} > {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("this mode needs an input matching")]
    MissingMatching,
    #[error("invalid weights: {0}")]
    Weights(String),
    #[error("invalid flow network: {0}")]
    Network(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid X3C instance: {0}")]
    X3c(String),
    #[error("invalid roommates instance: {0}")]
    Roommates(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("{0}")]
    Format(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
