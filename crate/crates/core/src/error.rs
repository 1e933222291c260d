use thiserror::Error;

use crate::lattice::NpLevel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("adjacency parameter u = {u} outside 1..={dimension}")]
    AdjacencyOutOfRange { u: usize, dimension: usize },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate point {0:?}")]
    DuplicatePoint(Vec<i64>),

    #[error("adjacency is not antireflexive at index {0}")]
    SelfLoop(usize),

    #[error("graph of {size} vertices exceeds the search bound {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("more than {limit} automorphisms")]
    AutomorphismLimit { limit: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("no identity element")]
    NoIdentity,

    #[error("not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("element {0} has no inverse")]
    NoInverse(usize),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element set is not a subgroup")]
    NotSubgroup,

    #[error("image has {points} points but the group has order {order}")]
    SizeMismatch { points: usize, order: usize },

    #[error("not verified as an {required} digital topological group")]
    NotVerified { required: NpLevel },

    #[error("generating set is not symmetrized: inverse of {0} missing")]
    NotSymmetrized(usize),

    #[error("generating set contains the identity")]
    IdentityInGenerators,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computational check of a theorem-level statement failed.
    #[error("falsified: {statement}: {detail}")]
    TheoremFalsified { statement: String, detail: String },

    #[error("{0}")]
    InvalidArgument(String),

    /// A document failed to load; `field` names the offending schema field.
    #[error("invalid `{field}`: {message}")]
    Schema { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
