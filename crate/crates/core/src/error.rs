use thiserror::Error;

/// Errors raised by group construction, validation and the regular-set machinery.
///
/// Mathematical negatives ("not regular", "no transversal") are *not* errors;
/// they are reported through the outcome types of each module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("i/o error reading `{path}`: {reason}")]
    Io { path: String, reason: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("set belongs to a group of order {found}, expected {expected}")]
    GroupMismatch { expected: usize, found: usize },

    #[error("not a subgroup")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup must be nontrivial")]
    TrivialSubgroup,

    #[error("subset must be a nonempty proper subset of the group")]
    ImproperSubset,

    #[error("connection set contains the identity")]
    ContainsIdentity,

    #[error("set is not inverse-closed: inverse of `{0}` missing")]
    NotInverseClosed(String),

    #[error("element `{0}` is not an involution")]
    NotInvolution(String),

    #[error("coset of `{0}` is not inverse-closed")]
    CosetNotInverseClosed(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid ordered transversal: {0}")]
    InvalidTransversal(String),

    #[error("connection set does not make the subgroup a regular set")]
    NotCertified,

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
