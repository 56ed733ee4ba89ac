//! Exact computations with distance-regular antipodal covers of complete
//! graphs (`(n, r, c)`-covers) and the equiangular line systems they carry.
//!
//! Everything is exact: rationals, cyclotomic fields `Q(ζ_r)`, their
//! quadratic extensions, finite fields and abelian group rings. A cover is
//! certified by two independent routes, a combinatorial one on the expanded
//! graph and an algebraic one through the characters of the voltage group,
//! and the two must agree.

pub mod algebra;
pub mod constructions;
pub mod covers;
pub mod feasibility;
pub mod formats;
pub mod graph;
pub mod groups;
pub mod lines;

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Group(#[from] groups::GroupError),
    #[error(transparent)]
    Cover(#[from] covers::CoverError),
    #[error(transparent)]
    Lines(#[from] lines::LinesError),
    #[error(transparent)]
    Construction(#[from] constructions::ConstructionError),
    #[error(transparent)]
    Family(#[from] feasibility::FamilyError),
    #[error(transparent)]
    Format(#[from] formats::FormatError),
}
