//! Numerical laboratory for the Selberg zeta-function `Z(s)` of a compact
//! hyperbolic surface of genus `g >= 2`.
//!
//! - [`geodesics`] builds the length spectrum of a cocompact Fuchsian group
//!   from explicit generator matrices.
//! - [`specfun`] evaluates the dilogarithm, the antiderivative `F(s)` of
//!   `4π(g-1) v tan(πv)`, the functional-equation factor `X(s)` and the
//!   double gamma function.
//! - [`zeta`] evaluates `Z(s)` from the truncated Euler product, continues it
//!   to the left half-plane through `Z(s) = X(s) Z(1-s)`, and counts zeros by
//!   winding numbers.
//! - [`verify`] turns the growth, inequality and zero-multiplicity facts into
//!   repeatable pass/fail reports.
//!
//! Heavy loops go through [`exec::Execution`], which runs on rayon when the
//! `parallel` feature is enabled and sequentially otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod geodesics;
pub mod specfun;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geodesics::{GeodesicClass, GroupPresentation, LengthSpectrum, Word};
pub use specfun::{ComplexPoint, EvalResult, Method};
pub use zeta::{ContourSpec, OrientationMode, WindingReport, ZetaEvaluator};
