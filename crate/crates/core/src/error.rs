use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("malformed input at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("word is not a member of the subgroup")]
    NotAMember,

    /// An operation needs an injective map; kernels of non-injective maps
    /// are not finitely generated and cannot be represented.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid stable domain: {0}")]
    InvalidStableDomain(String),

    #[error("subgroup is not invariant under the endomorphism")]
    NotInvariant,

    #[error("wrong solver: {0}")]
    WrongSolver(String),

    #[error("invalid map set: {0}")]
    InvalidMapSet(String),

    #[error("hypothesis not verified: {0}")]
    HypothesisNotVerified(String),

    /// A proven bound or termination guarantee failed; this indicates a
    /// defect in the implementation, never in the input.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
}
