use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("o applied to a non-atomic quantifier-free subformula: {0}")]
    MalformedCirc(String),

    #[error("formula is not quantifier-free: {0}")]
    NotQuantifierFree(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("truth value {value} is not admissible in {space}")]
    Inadmissible { value: String, space: String },

    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit { what: String, needed: u64, cap: u64 },

    #[error("term {0} is missing from the chain's term set")]
    MissingTerm(String),

    #[error("formula is not closed; free variables: {0:?}")]
    OpenFormula(Vec<String>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("engine invariant violated: {0}")]
    Engine(String),
}

impl Error {
    pub(crate) fn limit(what: impl Into<String>, needed: u64, cap: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            needed,
            cap,
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
