//! Numerical and symbolic tools for Eisenstein-series spectral problems at
//! desk scale: scattering phases, truncated norms, and the interlacing
//! discrete spectrum of a θ-restricted boundary-value problem on GL(2),
//! together with exact gl(n) enveloping-algebra and intertwining symbolics.

pub mod analytic;
pub mod error;
pub mod intertwine;
pub mod io;
pub mod liealg;
pub mod maass_selberg;
pub mod numeric;
pub mod scattering;
pub mod spectrum;

pub use error::{Error, Result};
