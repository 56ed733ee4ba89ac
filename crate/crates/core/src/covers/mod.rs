//! Covers of complete graphs given by arc functions over abelian groups:
//! validation, DRACKN verification by a combinatorial and an algebraic route,
//! normalization and quotients.

mod arc;
mod ingest;
mod quotient;
mod verify;

pub use arc::{normalize, validate_cover, ArcMatrix};
pub use ingest::CoverGraph;
pub use quotient::{quotient, QuotientMap};
pub use verify::{drackn_verify, small_params, verify_graph, BlockMultiplicity, CoverCertificate};

pub(crate) use verify::annihilator_delta;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groups::{AbelianGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("malformed cover: {0}")]
    Malformed(String),
    #[error("f({v},{u}) is not the inverse of f({u},{v})")]
    InversePair { u: usize, v: usize },
    #[error("fibre {fibre} contains the edge {a}-{b}")]
    FibreEdge { fibre: usize, a: usize, b: usize },
    #[error("fibres {u} and {v} are not joined by a perfect matching")]
    NotMatching { u: usize, v: usize },
    #[error("cover graph is not connected ({components} components)")]
    NotConnected { components: usize },
    #[error("not distance-regular at vertices {x},{y}: {what} is {found}, expected {expected}")]
    NotDistanceRegular { x: usize, y: usize, what: &'static str, found: usize, expected: usize },
    #[error("character {character} does not give a Seidel matrix with two eigenvalues")]
    CharacterPolynomial { character: usize },
    #[error("verification routes disagree: combinatorial {combinatorial}, algebraic {algebraic}")]
    RoutesDisagree { combinatorial: String, algebraic: String },
    #[error("the cover group is trivial")]
    TrivialGroup,
    #[error("quotients of {0} are not supported")]
    UnsupportedQuotient(AbelianGroup),
    #[error("matchings do not generate a regular cyclic group of prime order")]
    NotRegularAbelian,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
