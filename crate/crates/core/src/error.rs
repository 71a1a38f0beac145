use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: syntax error: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<&'static str>,
        found: String,
    },

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("atom `{atom}` is not in the signature")]
    SignatureMismatch { atom: String },

    #[error("signature has {atoms} atoms, enumeration cap is {cap}")]
    CapExceeded { atoms: usize, cap: usize },

    #[error("signature has {0} atoms; interpretations support at most 64")]
    SignatureTooLarge(usize),

    #[error("here set must be a subset of the there set, which must be a subset of the signature")]
    InvalidInterpretation,

    #[error("`{0}` is not a rule: body and head must be nested expressions")]
    NotARule(String),

    #[error("set is not total-closed: contains ({total}) but not ({missing})")]
    NotTotalClosed { total: String, missing: String },

    #[error("interpretation sets are over different signatures")]
    MixedSignatures,

    #[error("n = {n} exceeds the supported bound {max}")]
    BoundExceeded { n: usize, max: usize },
}
