//! Dense complex linear algebra, a certified numerical-radius solver, and
//! evaluators for a family of numerical-radius inequalities.
//!
//! Every inequality is returned as a [`BoundRecord`] (`lhs ≤ rhs` plus
//! metadata) so that callers can sweep, classify and tabulate them uniformly.

pub mod block_bounds;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod numrad;
pub mod product_bounds;
pub mod profile;
pub mod random;
pub mod record;
pub mod scalar_bounds;

pub use error::{Error, Result};
pub use linalg::{
    absolute_value, aluthge, eigenvalues, hermitian_eigen, min_gauge, operator_norm, polar, positive_power, spectral_radius,
    HermitianEigen, PolarParts, PowerFunction,
};
pub use matrix::{ComplexMatrix, MatrixJson};
pub use numrad::{default_tolerance, numerical_radius, numerical_radius_default, rayleigh_samples, RadiusEstimate};
pub use profile::Profile;
pub use record::{BoundRecord, TolerancePolicy};
