//! Sparse exact linear algebra and homology of finite graded complexes.
//!
//! Everything downstream reduces to ranks, kernels and subquotients of sparse
//! matrices over an exact field: ℚ by default, or a prime field on the fast
//! path. No floating point anywhere.

mod complex;
mod scalar;
mod sparse;
mod subquotient;

pub use complex::FiniteComplex;
pub use scalar::{Field, FieldMode, Fp, Rat, is_prime_u64, DEFAULT_PRIME};
pub use sparse::{ColumnSolver, SparseMatrix};
pub use subquotient::Subquotient;
