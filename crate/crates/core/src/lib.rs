//! Partial sums of the generalized hypergeometric series and the identities
//! they satisfy: recurrences in the degree, a differential equation, Sobolev
//! orthogonality on the unit circle, integral representations, zero
//! localization, and their place among R_I recurrences and Jacobi-type
//! pencils.

#![allow(clippy::needless_range_loop)]

pub mod diffop;
pub mod error;
pub mod hyp;
pub mod kernel;
pub mod literal;
pub mod pencil;
pub mod pfq;
pub mod poly;
pub mod ri;
pub mod roots;
pub mod sample;
pub mod sobolev;
pub mod verify;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use hyp::{HypParams, PowerSeriesCoeffs};
pub use pencil::JacobiPencil;
pub use poly::Poly;
