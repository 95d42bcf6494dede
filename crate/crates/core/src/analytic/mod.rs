//! Special functions and completed L-functions.
//!
//! Everything is generic over [`Real`], so the same code runs in hardware
//! double precision and in [`DoubleDouble`] for cross-checks.

pub mod bernoulli;
pub mod dd;
pub mod gamma;
pub mod lfunc;
pub mod real;
pub mod zeta;

pub use dd::DoubleDouble;
pub use gamma::{gamma, lngamma};
pub use lfunc::{completed, CoefficientSource, GammaFactor, LFunctionSpec};
pub use real::Real;
pub use zeta::{dedekind_gaussian, dirichlet_l_chi4, periodic_dirichlet, zeta};

/// The double-precision complex scalar used at module boundaries.
pub type ComplexScalar = num_complex::Complex64;

/// Working precision selector for computations that offer a cross-check path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}
