//! Dense complex linear algebra for small quantum systems.

pub mod bits;
pub mod density;
pub mod eigen;
pub mod matrix;
pub mod mub;
pub mod tol;

pub use bits::BitString;
pub use density::{partial_trace, shannon_entropy, von_neumann_entropy, DensityMatrix, Keep};
pub use eigen::{hermitian_eigendecomposition, hermitian_eigenvalues, Spectrum};
pub use matrix::{tensor_product, ComplexMatrix, StateVector, C64};
pub use mub::mub_transform;
