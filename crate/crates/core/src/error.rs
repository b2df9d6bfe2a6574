use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("cover pair ({0}, {1}) is not in linear-extension order")]
    BadIndexOrder(usize, usize),
    #[error("element index {index} out of range for a lattice of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size {n} exceeds the limit of {max} for this operation")]
    SizeLimit { n: usize, max: usize },
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("cannot parse expression `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("generating set is empty")]
    EmptyGenerator,
    #[error("a principal congruence needs two distinct elements, got {0} twice")]
    EqualElements(usize),
    #[error("verification failed: {check}{}", counterexample.as_ref().map(|c| format!(" (counterexample {c})")).unwrap_or_default())]
    VerdictFailure {
        check: String,
        counterexample: Option<String>,
    },
}

pub(crate) fn check_size(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::SizeLimit { n, max })
    } else {
        Ok(())
    }
}
