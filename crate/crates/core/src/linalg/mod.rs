//! Dense complex linear algebra: matrices, the Hermitian eigensolver,
//! singular values, moduli, constants and seeded random ensembles.

pub mod constants;
pub mod hermitian;
pub mod matrix;
pub mod modulus;
pub mod random;
pub mod svd;

pub use hermitian::{jacobi_eig, trace_product, DensityMatrix, EigenDecomposition, Hermitian, UnitVector};
pub use matrix::{inner, vec_norm, ComplexMatrix, C64};
pub use modulus::{cartesian_parts, modulus, modulus_squared, rotated_real_part, ModulusKind};
pub use svd::{singular_values, SingularSpectrum};
