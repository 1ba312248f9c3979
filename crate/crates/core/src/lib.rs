#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canonical;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod linalg;
pub mod random;
pub mod spectral;
pub mod verify;

pub use canonical::{canonical_code, CanonicalCode};
pub use families::{make_family, predicted_spectrum, FamilyDescriptor, FamilyError, FamilyTree};

pub use graph::{BranchDecomposition, GraphError, GraphWithBoundary, Tree};
pub use linalg::{DenseSymmetricMatrix, EigenError};
pub use spectral::{steklov_spectrum, SymmetricSpectrum};

/// Absolute tolerance under which two eigenvalues are treated as equal.
pub const EIGEN_TOL: f64 = 1e-9;
