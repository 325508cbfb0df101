//! Graded conformal algebras over the rationals: grading data, cocycles,
//! conformal products, current and conformal endomorphism algebras, and
//! the structure theory of graded associative algebras.

pub mod algebra;
pub mod cend;
pub mod closure;
pub mod cohomology;
pub mod conformal;
pub mod error;
pub mod grading;
pub mod group;
pub mod hnf;
pub mod irreducible;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod polymat;
pub mod scalar;
pub mod semisimple;
pub mod simplicity;
pub mod twisted;
pub mod upoly;

pub use error::{Error, Result};
pub use grading::{GradingContext, CONVENTION_VERSION};
pub use group::{FineSubgroupData, FiniteGroup};
pub use scalar::{ExactField, Rational, Scalar};

/// Polynomials in `T, x, lambda, mu` over `Q`.
pub type MPoly = poly::Poly<Rational>;
/// Dense matrices over `Q`.
pub type QMatrix = matrix::Matrix<Rational>;
/// Univariate polynomials over `Q`.
pub type QPoly = upoly::UPoly<Rational>;
