//! Exact integer linear algebra: sparse matrices, certified Smith normal
//! form, kernels, cokernels and lattice membership.

mod cokernel;
mod echelon;
mod matrix;
mod smith;
mod sparse;

pub(crate) use cokernel::lattice_factors;
pub use cokernel::{cokernel_invariants, generates_full_lattice, is_unimodular, rank};
pub use echelon::{kernel_basis, solve_in_column_lattice, ColumnEchelon};
pub use matrix::IntMatrix;
pub use smith::{determinant, smith_normal_form, unimodular_inverse, SmithDecomposition};
pub use sparse::SparseVec;
