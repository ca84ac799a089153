//! Exact E-characteristic polynomials of hypermatrices.
//!
//! The crate builds the E-characteristic polynomial `psi_A(lambda)` of an
//! order-`m`, dimension-`n` hypermatrix `A` from exact resultants, evaluates
//! the closed forms for its constant and leading coefficients, and
//! enumerates eigenpair classes in dimension two.
//!
//! All algebra is generic over a [`Field`]; the aliases below fix the exact
//! rational instantiation that every public entry point works with.

pub mod echar;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use echar::{EcharResult, Route};
pub use eigen::{Eigenpair, EigenKind, EigenStructure, RegularityReport};
pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use poly::{Degree, Poly};
pub use resultant::{BinaryForm, Form, HomogeneousSystem};
pub use scalar::Field;
pub use tensor::{Hypermatrix, OrthogonalMatrix, SliceCoeffs};

pub use num_bigint::BigInt;
pub use num_complex::{Complex, Complex64};
pub use num_rational::BigRational;

/// Exact rational scalar.
pub type Rational = BigRational;
/// `a + b i` with rational parts.
pub type GaussianRational = Complex<Rational>;
/// Polynomial in `lambda` with rational coefficients.
pub type RatPoly = Poly<Rational>;
pub type GaussianPoly = Poly<GaussianRational>;
/// Hypermatrix with exact rational entries.
pub type Tensor = Hypermatrix<Rational>;
pub type RatMatrix = PolyMatrix<Rational>;
pub type RatOrthogonal = OrthogonalMatrix<Rational>;
pub type RatSystem = HomogeneousSystem<Rational>;
pub type RatBinaryForm = BinaryForm<Rational>;
