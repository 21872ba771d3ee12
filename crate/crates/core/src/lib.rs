//! Grunsky coefficients of normalized analytic functions and the coefficient
//! bounds they imply.
//!
//! The pipeline is: coefficients `a_2..a_N` of `f(z) = z + a_2 z^2 + ...`
//! → odd transform `sqrt(f(z^2))` → Grunsky matrix from the bivariate
//! logarithm of its difference quotient → identities, inequality functionals
//! and Hankel determinants. [`bounds`] recomputes the published bound
//! constants with an independent scalar maximizer and [`extremal`] probes how
//! close the bounds come to being attained.
//!
//! The series, Grunsky and Hankel code is generic over [`Real`] (`f32` or
//! `f64`); the aliases below fix the scalar to double precision.

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod grunsky;
pub mod hankel;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Series1F64 = series::Series1<f64>;
pub type Series2F64 = series::Series2<f64>;
pub type CoefficientVectorF64 = grunsky::CoefficientVector<f64>;
pub type GrunskyMatrixF64 = grunsky::GrunskyMatrix<f64>;
pub type OddEntriesF64 = grunsky::OddEntries<f64>;
pub type InequalityWeightsF64 = grunsky::InequalityWeights<f64>;
pub type IdentityResidualF64 = grunsky::IdentityResidual<f64>;
pub type HankelReportF64 = hankel::HankelReport<f64>;

pub type Series1F32 = series::Series1<f32>;
pub type CoefficientVectorF32 = grunsky::CoefficientVector<f32>;
pub type GrunskyMatrixF32 = grunsky::GrunskyMatrix<f32>;
