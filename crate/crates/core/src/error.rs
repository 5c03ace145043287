use thiserror::Error;

use crate::weyl::GroupType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {reason}")]
    Parse { what: &'static str, reason: String },

    #[error("{0} is not a signed permutation: {1}")]
    InvalidPermutation(String, &'static str),

    #[error("{w} is not an element of the type {ty} group")]
    NotInGroup { ty: GroupType, w: String },

    #[error("t({i},{j}) is not a reflection of type {ty}")]
    InvalidReflection { ty: GroupType, i: i32, j: i32 },

    #[error("{0} is Grassmannian and has no descent")]
    NoDescent(String),

    #[error("{0} is not Grassmannian")]
    NotGrassmannian(String),

    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: GroupType, found: GroupType },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("{inner} is not contained in {outer}")]
    NotContained { outer: String, inner: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
