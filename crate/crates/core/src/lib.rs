//! Yangian representations and the rational R-matrix.
//!
//! The crate builds finite-dimensional representations of the Yangian
//! `Y_ħ(g)` from zero modes, forms standard and Drinfeld tensor products,
//! and constructs the three Gauss factors `R⁺ R⁰ R⁻` of the universal
//! R-matrix on a pair of representations. Every identity used along the
//! way can be verified on concrete inputs, exactly where possible.

pub mod cartan;
pub mod drinfeld;
pub mod eigen;
pub mod error;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod rfull;
pub mod rminus;
pub mod rzero;
pub mod roots;
pub mod repn;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod series;
pub mod suite;
pub mod tensor;

pub use error::{Result, YrkError};
pub use matrix::{Mat, RatMat};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use repn::{Provenance, Representation, TensorKind};
pub use scalar::{Backend, DynScalar, Field, GaussRat, Ring, Scalar};
pub use series::PowerSeries;
