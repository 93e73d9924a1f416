//! Kähler–Einstein metrics on generalized flag manifolds and complete
//! Ricci-flat metrics on the total space of their canonical bundles, built
//! from root data and checked numerically.
//!
//! The pipeline runs bottom-up:
//!
//! 1. [`rootsys`]: root systems, parabolic data, Koszul coefficients.
//! 2. [`symalg`]: exact polynomials with complex rational coefficients and
//!    small dense numeric linear algebra.
//! 3. [`matrep`]: matrix realizations of classical algebras and the
//!    big-cell chart `n(z) = exp(Z(z))`.
//! 4. [`repfun`]: orbit vectors of highest-weight vectors via minors.
//! 5. [`kahler`]: the quasi-potential and the base Kähler–Einstein metric.
//! 6. [`calabi`]: the Calabi metric on the canonical bundle.

pub mod calabi;
pub mod error;
pub mod fd;
pub mod flag;
pub mod kahler;
pub mod matrep;
pub mod repfun;
pub mod rootsys;
pub mod sampling;
pub mod symalg;

pub use calabi::{CalabiMetric, CalabiParams, Profile, TotalMetricSample, Variant};
pub use error::{Error, Result};
pub use flag::FlagManifold;
pub use kahler::{MetricSample, PotentialSpec};
pub use matrep::{BigCellChart, MatrixRealization};
pub use repfun::OrbitVector;
pub use rootsys::{Family, LieType, ParabolicData, Root, RootSystem};
pub use symalg::{HermitianMatrix, Poly, PolyMatrix};

pub use num_complex::Complex64;
