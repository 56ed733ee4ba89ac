//! Explicit cover constructions: symplectic covers over `GF(p)^m`, the
//! skew-product covers over `GF(2^t)`, and the correspondence with
//! generalized Hadamard matrices.

mod dcff;
mod hadamard;
mod symplectic;

pub use dcff::{dcff, LatinSquare, SkewProduct};
pub use hadamard::{cover_to_gh, gh_to_cover, gh_validate, GhMatrix, GhValidation};
pub use symplectic::{thas_somma, AlternatingForm};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::covers::CoverError;
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid dimensions: {0}")]
    Dimensions(String),
    #[error("no default alternating form for m={m}, s={s}; supply one")]
    NeedsForm { m: usize, s: usize },
    #[error("alternating form is not skew at ({i},{j}) of component {component}")]
    NotSkew { component: usize, i: usize, j: usize },
    #[error("B_a is not surjective for a={a:?}")]
    NotSurjective { a: Vec<u32> },
    #[error("skew products exist only for odd d (got d={0})")]
    EvenDimension(u32),
    #[error("invalid skew product: {0}")]
    InvalidSkew(String),
    #[error("invalid latin square: {0}")]
    InvalidLatin(String),
    #[error("generalized Hadamard bridge needs delta = -2, got delta = {0}")]
    DeltaNotMinusTwo(i64),
    #[error("diagonal of the GH matrix is not constant")]
    DiagonalNotConstant,
    #[error("GH matrix is not self-adjoint at ({u},{v})")]
    NotSelfAdjoint { u: usize, v: usize },
    #[error("H H* fails the group ring identity at ({u},{v})")]
    GhIdentity { u: usize, v: usize },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
