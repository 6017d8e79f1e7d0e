//! Finite Fourier transforms `∫_{-1}^{1} P(x) e^{iλx} dx` of the classical
//! orthogonal polynomials.

pub mod config;
pub mod dd;
pub mod error;
pub mod exact;
pub mod mp;
pub mod numerics;
pub mod operator;
pub mod oracle;
pub mod parseval;
pub mod polyfamilies;
pub mod scalar;
pub mod specialfns;
pub mod transforms;

pub use dd::Dd;
pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type ComplexDd = num_complex::Complex<Dd>;
