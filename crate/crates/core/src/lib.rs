//! Exact integer linear algebra, group homology from presentations, and
//! coinvariant computations for the Lagrangian subgroups of the mapping
//! class group.

pub mod coinvariants;
pub mod error;
pub mod fgab;
pub mod homology;
pub mod johnson;
mod json;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod symplectic;

pub use error::{Error, Result};
pub use fgab::{FgAbelianGroup, Order};
pub use presentation::{GroupPresentation, IntRepresentation, Letter, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linalg.md")]
    mod linalg {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/symplectic.md")]
    mod symplectic {}
    #[doc = include_str!("../../../book/src/johnson.md")]
    mod johnson {}
    #[doc = include_str!("../../../book/src/coinvariants.md")]
    mod coinvariants {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
