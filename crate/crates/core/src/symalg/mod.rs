//! Exact sparse polynomial algebra over complex rationals, polynomial
//! matrices, and the small dense numeric layer used for metrics.

mod matrix;
mod numeric;
mod poly;

pub use matrix::PolyMatrix;
pub use numeric::{det, herm_eig_min, HermitianMatrix, HERMITIAN_TOL};
pub use poly::{rat, Coeff, CompiledPoly, Monomial, Poly};
